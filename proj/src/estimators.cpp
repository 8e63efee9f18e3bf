// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparsetrain {

namespace {

// Dictionary column for delay d over the selected harmonics, scaled so that
// measurements = scale * Phi * h + noise with Phi[j][d] = e^{-2pi j q_j d / k_c}.
struct HarmonicDictionary {
    std::uint32_t k_d = 0;
    std::uint32_t m = 0;
    double scale = 1.0;
    std::vector<cdouble> columns;  // column-major, m * k_d

    HarmonicDictionary(const FrequencySubset& subset, std::uint32_t k_d_in, double snr)
        : k_d(k_d_in), m(subset.size()) {
        scale = std::sqrt(snr * static_cast<double>(subset.k_c) / static_cast<double>(m));
        columns.resize(static_cast<std::size_t>(m) * k_d);
        for (std::uint32_t d = 0; d < k_d; ++d) {
            cdouble* col = column(d);
            for (std::uint32_t j = 0; j < m; ++j) {
                col[j] = harmonic_phase(subset.k_c, subset.indices[j], d);
            }
        }
    }

    cdouble* column(std::uint32_t d) { return columns.data() + static_cast<std::size_t>(d) * m; }
    const cdouble* column(std::uint32_t d) const {
        return columns.data() + static_cast<std::size_t>(d) * m;
    }

    // y := y - scale * coefficient * column(d)
    void subtract_scaled(std::vector<cdouble>& y, std::uint32_t d, cdouble coefficient) const {
        const cdouble* col = column(d);
        const cdouble factor = scale * coefficient;
        for (std::uint32_t j = 0; j < m; ++j) y[j] -= factor * col[j];
    }

    // <scale * column(d), v> with the conjugate on the column.
    cdouble correlate(std::uint32_t d, const std::vector<cdouble>& v) const {
        const cdouble* col = column(d);
        cdouble acc(0.0, 0.0);
        for (std::uint32_t j = 0; j < m; ++j) acc += std::conj(col[j]) * v[j];
        return scale * acc;
    }
};

double norm(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const cdouble& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Least squares min ||y - A x|| for the selected dictionary columns via the
// Gram system; the selected sets stay small (<= sparsity), so a dense
// Cholesky on A^H A is adequate. Returns false if a ridge was needed.
bool solve_least_squares(const HarmonicDictionary& dict, const std::vector<std::uint32_t>& sel,
                         const std::vector<cdouble>& y, std::vector<cdouble>& coeffs) {
    const std::size_t s = sel.size();
    std::vector<cdouble> gram(s * s);
    std::vector<cdouble> rhs(s);
    const double scale2 = dict.scale * dict.scale;
    for (std::size_t a = 0; a < s; ++a) {
        const cdouble* col_a = dict.column(sel[a]);
        for (std::size_t b = 0; b <= a; ++b) {
            const cdouble* col_b = dict.column(sel[b]);
            cdouble acc(0.0, 0.0);
            for (std::uint32_t j = 0; j < dict.m; ++j) acc += std::conj(col_a[j]) * col_b[j];
            gram[a * s + b] = scale2 * acc;
            gram[b * s + a] = std::conj(scale2 * acc);
        }
        cdouble acc(0.0, 0.0);
        for (std::uint32_t j = 0; j < dict.m; ++j) acc += std::conj(col_a[j]) * y[j];
        rhs[a] = dict.scale * acc;
    }

    double trace = 0.0;
    for (std::size_t a = 0; a < s; ++a) trace += gram[a * s + a].real();
    const double ridge_floor = 1e-12 * std::max(trace / static_cast<double>(s), 1.0);

    // Cholesky with a ridge retry when a pivot collapses.
    bool clean = true;
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<cdouble> chol = gram;
        if (attempt == 1) {
            for (std::size_t a = 0; a < s; ++a) chol[a * s + a] += 1e6 * ridge_floor;
        }
        bool ok = true;
        for (std::size_t a = 0; a < s && ok; ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                cdouble acc = chol[a * s + b];
                for (std::size_t k = 0; k < b; ++k) {
                    acc -= chol[a * s + k] * std::conj(chol[b * s + k]);
                }
                chol[a * s + b] = acc / chol[b * s + b].real();
            }
            double diag = chol[a * s + a].real();
            for (std::size_t k = 0; k < a; ++k) diag -= std::norm(chol[a * s + k]);
            if (diag <= ridge_floor) {
                ok = false;
                break;
            }
            chol[a * s + a] = std::sqrt(diag);
        }
        if (!ok) {
            clean = false;
            continue;
        }
        // Forward, then backward substitution.
        coeffs.assign(s, cdouble(0.0, 0.0));
        for (std::size_t a = 0; a < s; ++a) {
            cdouble acc = rhs[a];
            for (std::size_t k = 0; k < a; ++k) acc -= chol[a * s + k] * coeffs[k];
            coeffs[a] = acc / chol[a * s + a].real();
        }
        for (std::size_t a = s; a-- > 0;) {
            cdouble acc = coeffs[a];
            for (std::size_t k = a + 1; k < s; ++k) {
                acc -= std::conj(chol[k * s + a]) * coeffs[k];
            }
            coeffs[a] = acc / chol[a * s + a].real();
        }
        return clean;
    }
    coeffs.assign(s, cdouble(0.0, 0.0));
    return false;
}

}  // namespace

ChannelEstimate threshold_detect(const ImpulseObservation& obs, const ModelParams& params) {
    params.validate();
    if (obs.samples.size() != params.k_c) {
        throw std::domain_error("threshold_detect: observation length mismatch");
    }
    const double threshold = detection_threshold(params);
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(params.path_count));

    ChannelEstimate est;
    est.method = EstimatorMethod::Threshold;
    est.estimate.assign(params.k_c, 0.0);
    for (std::uint32_t i = 0; i < params.k_d; ++i) {
        const double y = obs.samples[i];
        if (std::abs(y) >= threshold) {
            est.detected_support.push_back(i);
            est.estimate[i] = y >= 0.0 ? magnitude : -magnitude;
        }
    }
    return est;
}

double bg_scalar_posterior_mean(double y, double gamma, double sigma2, double p) {
    const double v1 = gamma * sigma2 + 1.0;
    const double active_gain = std::sqrt(gamma) * sigma2 / v1;
    if (p >= 1.0) return active_gain * y;
    // Posterior activity probability as a logistic in y^2; evaluated in log
    // space so extreme observations stay finite.
    const double t = std::log((1.0 - p) / p) + 0.5 * std::log(v1) -
                     0.5 * (1.0 - 1.0 / v1) * y * y;
    const double activity = t >= 0.0 ? std::exp(-t) / (1.0 + std::exp(-t))
                                     : 1.0 / (1.0 + std::exp(t));
    return activity * active_gain * y;
}

ChannelEstimate bg_posterior_mean(const ImpulseObservation& obs, const ModelParams& params) {
    params.validate();
    if (obs.samples.size() != params.k_c) {
        throw std::domain_error("bg_posterior_mean: observation length mismatch");
    }
    const double gamma = obs.snr * static_cast<double>(params.k_c);
    const double sigma2 = 1.0 / static_cast<double>(params.path_count);
    const double p = params.activation_probability();

    ChannelEstimate est;
    est.method = EstimatorMethod::BGPosterior;
    est.estimate.assign(params.k_c, 0.0);
    for (std::uint32_t i = 0; i < params.k_d; ++i) {
        est.estimate[i] = bg_scalar_posterior_mean(obs.samples[i], gamma, sigma2, p);
        if (est.estimate[i] != 0.0) est.detected_support.push_back(i);
    }
    return est;
}

ChannelEstimate omp_recover(const FrequencyObservation& obs, const ModelParams& params,
                            const OmpOptions& options) {
    params.validate();
    obs.subset.validate();
    if (obs.measurements.size() != obs.subset.size()) {
        throw std::domain_error("omp_recover: measurement length mismatch");
    }

    const HarmonicDictionary dict(obs.subset, params.k_d, obs.snr);
    const double noise_floor =
        options.noise_floor_delta < 0.0
            ? -1.0
            : std::sqrt(static_cast<double>(dict.m)) * (1.0 + options.noise_floor_delta);
    const std::uint32_t max_picks =
        options.sparsity == 0 ? std::min(dict.m, params.k_d) : options.sparsity;

    ChannelEstimate est;
    est.method = EstimatorMethod::OMP;
    est.estimate.assign(params.k_c, 0.0);
    est.rank_deficient = dict.m < max_picks;

    std::vector<cdouble> residual = obs.measurements;
    std::vector<std::uint32_t> selected;
    std::vector<char> in_set(params.k_d, 0);
    std::vector<cdouble> coeffs;

    est.residual_norms.push_back(norm(residual));
    for (std::uint32_t iter = 0; iter < max_picks; ++iter) {
        if (est.residual_norms.back() <= noise_floor) break;

        std::uint32_t best = params.k_d;
        double best_corr = -1.0;
        for (std::uint32_t d = 0; d < params.k_d; ++d) {
            if (in_set[d]) continue;
            const double corr = std::abs(dict.correlate(d, residual));
            if (corr > best_corr) {
                best_corr = corr;
                best = d;
            }
        }
        if (best == params.k_d) break;
        selected.push_back(best);
        in_set[best] = 1;

        if (!solve_least_squares(dict, selected, obs.measurements, coeffs)) {
            est.rank_deficient = true;
        }
        residual = obs.measurements;
        for (std::size_t t = 0; t < selected.size(); ++t) {
            dict.subtract_scaled(residual, selected[t], coeffs[t]);
        }
        est.residual_norms.push_back(norm(residual));
    }

    for (std::size_t t = 0; t < selected.size(); ++t) {
        est.estimate[selected[t]] = coeffs[t].real();
        est.imag_residual = std::max(est.imag_residual, std::abs(coeffs[t].imag()));
    }
    est.detected_support = selected;
    std::sort(est.detected_support.begin(), est.detected_support.end());
    return est;
}

ChannelEstimate omp_recover(const FrequencyObservation& obs, const ModelParams& params,
                            std::uint32_t sparsity) {
    OmpOptions options;
    options.sparsity = sparsity;
    return omp_recover(obs, params, options);
}

ChannelEstimate iht_recover(const FrequencyObservation& obs, const ModelParams& params,
                            const IhtOptions& options) {
    params.validate();
    obs.subset.validate();
    if (options.iterations == 0) throw std::domain_error("iht_recover: iterations must be >= 1");
    if (options.sparsity == 0) throw std::domain_error("iht_recover: sparsity must be >= 1");
    if (obs.measurements.size() != obs.subset.size()) {
        throw std::domain_error("iht_recover: measurement length mismatch");
    }

    const HarmonicDictionary dict(obs.subset, params.k_d, obs.snr);

    // ||A||^2 = lambda_max(A^H A) via power iteration; deterministic start.
    // For a unit iterate v, the Rayleigh quotient is ||A v||^2.
    std::vector<cdouble> v(params.k_d, cdouble(1.0 / std::sqrt(double(params.k_d)), 0.0));
    std::vector<cdouble> av(dict.m);
    double norm_sq_estimate = 0.0;
    for (int it = 0; it < 100; ++it) {
        std::fill(av.begin(), av.end(), cdouble(0.0, 0.0));
        for (std::uint32_t d = 0; d < params.k_d; ++d) {
            const cdouble* col = dict.column(d);
            const cdouble f = dict.scale * v[d];
            for (std::uint32_t j = 0; j < dict.m; ++j) av[j] += f * col[j];
        }
        double rayleigh = 0.0;
        for (const cdouble& x : av) rayleigh += std::norm(x);
        if (rayleigh == 0.0) break;
        for (std::uint32_t d = 0; d < params.k_d; ++d) v[d] = dict.correlate(d, av);
        double v_norm = 0.0;
        for (const cdouble& x : v) v_norm += std::norm(x);
        v_norm = std::sqrt(v_norm);
        if (v_norm == 0.0) break;
        for (cdouble& x : v) x /= v_norm;
        const bool converged = std::abs(rayleigh - norm_sq_estimate) <= 1e-12 * rayleigh;
        norm_sq_estimate = std::max(norm_sq_estimate, rayleigh);
        if (converged) break;
    }
    if (norm_sq_estimate <= 0.0) {
        norm_sq_estimate = dict.scale * dict.scale * static_cast<double>(dict.m);
    }
    const double step = 1.0 / norm_sq_estimate;

    std::vector<double> x(params.k_d, 0.0);
    std::vector<cdouble> residual(dict.m);
    std::vector<std::uint32_t> order(params.k_d);
    for (std::uint32_t it = 0; it < options.iterations; ++it) {
        residual = obs.measurements;
        for (std::uint32_t d = 0; d < params.k_d; ++d) {
            if (x[d] != 0.0) dict.subtract_scaled(residual, d, cdouble(x[d], 0.0));
        }
        std::vector<double> next(params.k_d);
        for (std::uint32_t d = 0; d < params.k_d; ++d) {
            next[d] = x[d] + step * dict.correlate(d, residual).real();
        }
        // Keep the top-sparsity magnitudes; ties break toward lower index.
        std::iota(order.begin(), order.end(), 0u);
        const std::uint32_t keep = std::min(options.sparsity, params.k_d);
        std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                          [&](std::uint32_t a, std::uint32_t b) {
                              const double ma = std::abs(next[a]);
                              const double mb = std::abs(next[b]);
                              return ma != mb ? ma > mb : a < b;
                          });
        std::vector<double> thresholded(params.k_d, 0.0);
        for (std::uint32_t t = 0; t < keep; ++t) thresholded[order[t]] = next[order[t]];

        double delta = 0.0;
        double scale_ref = 1.0;
        for (std::uint32_t d = 0; d < params.k_d; ++d) {
            delta += (thresholded[d] - x[d]) * (thresholded[d] - x[d]);
            scale_ref = std::max(scale_ref, x[d] * x[d]);
        }
        x = std::move(thresholded);
        if (delta <= 1e-24 * scale_ref) break;
    }

    ChannelEstimate est;
    est.method = EstimatorMethod::IHT;
    est.estimate.assign(params.k_c, 0.0);
    est.rank_deficient = dict.m < options.sparsity;
    for (std::uint32_t d = 0; d < params.k_d; ++d) {
        if (x[d] != 0.0) {
            est.estimate[d] = x[d];
            est.detected_support.push_back(d);
        }
    }
    return est;
}

ChannelEstimate iht_recover(const FrequencyObservation& obs, const ModelParams& params,
                            std::uint32_t sparsity, std::uint32_t iterations) {
    IhtOptions options;
    options.sparsity = sparsity;
    options.iterations = iterations;
    return iht_recover(obs, params, options);
}

EvaluationReport evaluate_estimate(const ChannelRealization& h, const ChannelEstimate& est,
                                   double support_tol) {
    if (est.estimate.size() != h.length) {
        throw std::domain_error("evaluate_estimate: length mismatch");
    }

    EvaluationReport report;
    std::size_t truth_cursor = 0;
    std::size_t detected = 0;
    std::size_t hits = 0;
    for (std::uint32_t i = 0; i < h.length; ++i) {
        double truth = 0.0;
        if (truth_cursor < h.support.size() && h.support[truth_cursor] == i) {
            truth = h.gains[truth_cursor];
            ++truth_cursor;
        }
        const double diff = truth - est.estimate[i];
        report.squared_error += diff * diff;

        const bool est_active = std::abs(est.estimate[i]) > support_tol;
        if (est_active) {
            ++detected;
            if (truth != 0.0) ++hits;
        }
    }
    const std::size_t truth_count = h.support.size();
    report.support_precision = detected == 0 ? 1.0 : static_cast<double>(hits) / detected;
    report.support_recall = truth_count == 0 ? 1.0 : static_cast<double>(hits) / truth_count;
    return report;
}

double default_support_tol(EstimatorMethod method, const ModelParams& params) {
    if (method == EstimatorMethod::Threshold || method == EstimatorMethod::BGPosterior) {
        return 0.5 / std::sqrt(static_cast<double>(params.path_count));
    }
    return 1e-6;
}

const char* to_string(EstimatorMethod method) {
    switch (method) {
        case EstimatorMethod::Threshold: return "threshold";
        case EstimatorMethod::BGPosterior: return "bg_posterior";
        case EstimatorMethod::OMP: return "omp";
        case EstimatorMethod::IHT: return "iht";
    }
    return "unknown";
}

}  // namespace sparsetrain

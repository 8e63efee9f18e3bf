// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/theory.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace sparsetrain {

namespace {

constexpr double kSqrtTwoOverPi = 0.79788456080286535587989211986876;

// Adaptive Simpson quadrature with absolute tolerance.
double simpson_segment(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double lm = 0.5 * (a + mid);
    const double rm = 0.5 * (mid + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_segment(a, mid, fa, flm, fm);
    const double right = simpson_segment(mid, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_segment(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

void TheoryCurve::validate() const {
    if (snr_grid.size() != values.size()) {
        throw std::invalid_argument("curve: snr_grid and values lengths differ");
    }
    for (std::size_t i = 0; i < snr_grid.size(); ++i) {
        if (!(snr_grid[i] > 0.0)) throw std::invalid_argument("curve.snr_grid: must be positive");
        if (i > 0 && snr_grid[i] <= snr_grid[i - 1]) {
            throw std::invalid_argument("curve.snr_grid: must be strictly increasing");
        }
    }
}

double mmse_hc_step(double snr, const ModelParams& params, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::domain_error("mmse_hc_step: epsilon must lie in (0, 1)");
    }
    if (!(snr > 0.0)) throw std::domain_error("mmse_hc_step: snr must be positive");
    const double snr0 = snr_zero(params);
    const double lower = (1.0 - epsilon) * snr0;
    const double upper = (1.0 + epsilon) * snr0;
    if (snr <= lower) return 1.0;
    if (snr >= upper) return 0.0;
    return (upper - snr) / (upper - lower);
}

double mmse_hg_theory(double snr, const ModelParams& params) {
    if (!(snr > 0.0)) throw std::domain_error("mmse_hg_theory: snr must be positive");
    const double snr0 = snr_zero(params);
    const double a = std::sqrt(snr0 / snr);
    return std::erf(a / std::sqrt(2.0)) - a * kSqrtTwoOverPi * std::exp(-0.5 * a * a);
}

double training_mutual_info(double snr, const ModelParams& params, GainModel model,
                            double epsilon) {
    if (!(snr >= 0.0)) throw std::domain_error("training_mutual_info: snr must be nonnegative");
    const double rate = rate_distortion(params);
    if (snr == 0.0 || rate == 0.0) return 0.0;
    const double half_kc = 0.5 * static_cast<double>(params.k_c);

    double integral = 0.0;
    if (model == GainModel::ConstantMagnitude) {
        // Piecewise exact: constant 1, linear ramp, constant 0.
        const double snr0 = snr_zero(params);
        const double lower = (1.0 - epsilon) * snr0;
        const double upper = (1.0 + epsilon) * snr0;
        const double flat = std::min(snr, lower);
        integral = flat;
        if (snr > lower) {
            const double end = std::min(snr, upper);
            const double v_start = mmse_hc_step(lower, params, epsilon);
            const double v_end = mmse_hc_step(end, params, epsilon);
            integral += 0.5 * (v_start + v_end) * (end - lower);
        }
    } else {
        const double snr0 = snr_zero(params);
        const double tol = std::max(1e-6 * snr0, 1e-15);  // comfortably below 1e-4 relative
        const auto mmse = [&](double s) {
            return s <= 0.0 ? 1.0 : mmse_hg_theory(s, params);  // limit value at s = 0
        };
        // Split at SNR0 so the adaptive rule resolves the knee of the curve.
        const double split = std::min(snr, snr0);
        integral = integrate(mmse, 0.0, split, tol);
        if (snr > split) integral += integrate(mmse, split, snr, tol);
    }

    // Information about h cannot exceed its description complexity.
    return std::min(half_kc * integral, rate);
}

PenaltyBound penalty_bound(double snr, const ModelParams& params, GainModel model,
                           double epsilon) {
    const double rate = rate_distortion(params);
    const double info = training_mutual_info(snr, params, model, epsilon);
    PenaltyBound bound;
    bound.penalty = std::max(0.0, rate - info);
    bound.rdf_after = bound.penalty;
    return bound;
}

RipCounts rip_counts(const ModelParams& params, double c_harmonic, double c_gaussian) {
    if (!(c_harmonic > 0.0) || !(c_gaussian > 0.0)) {
        throw std::domain_error("rip_counts: constants must be positive");
    }
    params.validate();
    const double log_l = std::max(1.0, std::log(static_cast<double>(params.path_count)));
    const double log_l4 = log_l * log_l * log_l * log_l;
    const double harmonic = c_harmonic * static_cast<double>(params.path_count) *
                            std::log(static_cast<double>(params.k_c)) * log_l4;
    RipCounts counts;
    counts.harmonic_m = static_cast<std::uint64_t>(std::ceil(harmonic));
    counts.gaussian_m = static_cast<std::uint64_t>(std::ceil(c_gaussian * rate_distortion(params)));
    return counts;
}

FletcherComparison fletcher_compare(const ModelParams& params, double snr,
                                    double measurement_constant) {
    if (!(snr > 0.0)) throw std::domain_error("fletcher_compare: snr must be positive");
    params.validate();
    const double l = static_cast<double>(params.path_count);
    const double k_c = static_cast<double>(params.k_c);
    const double log_rest = std::log(k_c - l);
    const double log_ratio = std::log(k_c / l);

    FletcherComparison cmp;
    cmp.fletcher_measurements = 8.0 / snr * (1.0 + snr) * l * log_rest;
    cmp.fletcher_energy = 8.0 * l * log_rest;
    cmp.our_measurements = measurement_constant * l * log_ratio;
    cmp.our_energy = 2.0 * l * log_ratio;
    cmp.energy_ratio = cmp.fletcher_energy / cmp.our_energy;
    return cmp;
}

}  // namespace sparsetrain

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sparsetrain/theory.hpp"

using namespace sparsetrain;

namespace {

ModelParams p0_params() {
    ModelParams params;
    params.k_c = 16384;
    params.k_d = 4096;
    params.path_count = 16;
    return params;
}

// Test-side quadrature oracle for the truncated second moment
// integral of s^2 phi(s) over [-a, a]; composite Simpson, independent of the
// closed form used by the implementation.
double truncated_second_moment(double a) {
    const int n = 4096;  // even
    const double h = 2.0 * a / n;
    auto f = [](double s) {
        return s * s * std::exp(-0.5 * s * s) / std::sqrt(2.0 * 3.14159265358979323846);
    };
    double acc = f(-a) + f(a);
    for (int i = 1; i < n; ++i) acc += f(-a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("mmse_hc_step: plateau, floor and midpoint") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    CHECK(mmse_hc_step(0.5 * snr0, params, 0.25) == 1.0);
    CHECK(mmse_hc_step(2.0 * snr0, params, 0.25) == 0.0);
    CHECK(mmse_hc_step(snr0, params, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mmse_hc_step(0.75 * snr0, params, 0.25) == 1.0);   // band edge
    CHECK(mmse_hc_step(1.25 * snr0, params, 0.25) == 0.0);   // band edge
    CHECK_THROWS_AS(mmse_hc_step(snr0, params, 0.0), std::domain_error);
    CHECK_THROWS_AS(mmse_hc_step(snr0, params, 1.0), std::domain_error);
}

TEST_CASE("mmse_hg_theory: frozen value at SNR0 and limits") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    // a = 1: erf(1/sqrt(2)) - sqrt(2/pi) e^{-1/2}, frozen.
    CHECK(mmse_hg_theory(snr0, params) == doctest::Approx(0.1987480431).epsilon(1e-8));
    CHECK(mmse_hg_theory(1e9 * snr0, params) < 1e-10);
    CHECK(mmse_hg_theory(1e-9 * snr0, params) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mmse_hg_theory matches the quadrature oracle to 1e-8 on a grid") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    for (int i = 0; i < 100; ++i) {
        const double snr = snr0 * std::pow(10.0, -1.5 + 3.0 * i / 99.0);
        const double a = std::sqrt(snr0 / snr);
        CHECK(mmse_hg_theory(snr, params) ==
              doctest::Approx(truncated_second_moment(a)).epsilon(1e-8));
    }
}

TEST_CASE("mmse_hg_theory is strictly decreasing and bounded in (0, 1)") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    double previous = 1.0;
    // Below ~SNR0/30 the curve saturates to 1 within double precision, so the
    // strict inequalities are only checkable from there up.
    for (int i = 0; i < 60; ++i) {
        const double snr = snr0 * std::pow(10.0, -1.4 + 3.4 * i / 59.0);
        const double value = mmse_hg_theory(snr, params);
        CHECK(value > 0.0);
        CHECK(value < 1.0);
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("training_mutual_info: constant-gain branches of the step curve") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);
    const double epsilon = 0.25;

    // Below the band: exactly (1/2) k_c snr.
    for (double frac : {0.1, 0.4, 0.75}) {
        const double snr = frac * snr0;
        CHECK(training_mutual_info(snr, params, GainModel::ConstantMagnitude, epsilon) ==
              doctest::Approx(0.5 * params.k_c * snr).epsilon(1e-12));
    }
    // Above the band: the cap makes it exactly the rate distortion.
    for (double frac : {1.25, 2.0, 10.0}) {
        CHECK(training_mutual_info(frac * snr0, params, GainModel::ConstantMagnitude, epsilon) ==
              doctest::Approx(rate).epsilon(1e-12));
    }
    CHECK(training_mutual_info(0.0, params, GainModel::ConstantMagnitude, epsilon) == 0.0);
}

TEST_CASE("training_mutual_info: gaussian curve against a dense trapezoid oracle") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    for (double frac : {0.5, 1.0, 2.0}) {
        const double snr = frac * snr0;
        const int n = 200000;
        double integral = 0.0;
        double prev = 1.0;  // mmse limit at snr -> 0
        for (int i = 1; i <= n; ++i) {
            const double s = snr * i / n;
            const double cur = mmse_hg_theory(s, params);
            integral += 0.5 * (prev + cur) * (snr / n);
            prev = cur;
        }
        const double expected = std::min(0.5 * params.k_c * integral, rate_distortion(params));
        CHECK(training_mutual_info(snr, params, GainModel::Gaussian) ==
              doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("training_mutual_info orderings at SNR0") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);
    const double mi_hg = training_mutual_info(snr0, params, GainModel::Gaussian);
    const double mi_hc = training_mutual_info(snr0, params, GainModel::ConstantMagnitude);
    // The step curve dominates the gaussian curve below SNR0, so its
    // integral (mutual information) is larger there; both stay below the cap.
    CHECK(mi_hg > 0.0);
    CHECK(mi_hg < mi_hc);
    CHECK(mi_hc < rate);
    // Flat part (1 - eps) plus the half-ramp 0.75 * eps: (1 - eps/4) * rate.
    CHECK(mi_hc == doctest::Approx((1.0 - 0.25 / 4.0) * rate).epsilon(1e-10));
}

TEST_CASE("training_mutual_info is non-decreasing and capped for both models") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);
    for (GainModel model : {GainModel::ConstantMagnitude, GainModel::Gaussian}) {
        double previous = 0.0;
        for (int i = 0; i < 30; ++i) {
            const double snr = snr0 * std::pow(10.0, -1.5 + 3.5 * i / 29.0);
            const double mi = training_mutual_info(snr, params, model);
            CHECK(mi >= previous - 1e-9);
            CHECK(mi <= rate + 1e-9);
            previous = mi;
        }
    }
}

TEST_CASE("penalty_bound: endpoints and monotonicity") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);

    const PenaltyBound at_zero = penalty_bound(0.0, params, GainModel::ConstantMagnitude);
    CHECK(at_zero.penalty == doctest::Approx(rate).epsilon(1e-12));
    CHECK(at_zero.rdf_after == at_zero.penalty);

    CHECK(penalty_bound(2.0 * snr0, params, GainModel::ConstantMagnitude).penalty == 0.0);

    for (GainModel model : {GainModel::ConstantMagnitude, GainModel::Gaussian}) {
        double previous = rate;
        for (int i = 0; i < 25; ++i) {
            const double snr = snr0 * (0.05 + 3.0 * i / 24.0);
            const double penalty = penalty_bound(snr, params, model).penalty;
            CHECK(penalty >= 0.0);
            CHECK(penalty <= previous + 1e-9);
            previous = penalty;
        }
    }
}

TEST_CASE("penalty ordering: gaussian gains pay at least the constant-gain penalty") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    for (int i = 0; i < 20; ++i) {
        const double snr = snr0 * (0.1 + 3.9 * i / 19.0);
        const double hc = penalty_bound(snr, params, GainModel::ConstantMagnitude).penalty;
        const double hg = penalty_bound(snr, params, GainModel::Gaussian).penalty;
        CHECK(hg >= hc - 1e-9);
    }
}

TEST_CASE("penalty shapes: linear descent for hc, strict convexity for hg") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);

    // hc below the band: exactly rate - (1/2) k_c snr.
    for (double frac : {0.1, 0.3, 0.6}) {
        const double snr = frac * snr0;
        CHECK(penalty_bound(snr, params, GainModel::ConstantMagnitude).penalty ==
              doctest::Approx(rate - 0.5 * params.k_c * snr).epsilon(1e-10));
    }

    // hg: positive second difference on a uniform grid.
    const double step = 0.2 * snr0;
    for (int i = 1; i <= 14; ++i) {
        const double left = penalty_bound(step * (i - 1) + 1e-6 * snr0, params,
                                          GainModel::Gaussian).penalty;
        const double mid = penalty_bound(step * i, params, GainModel::Gaussian).penalty;
        const double right = penalty_bound(step * (i + 1), params, GainModel::Gaussian).penalty;
        CHECK(left + right - 2.0 * mid > 0.0);
    }
}

TEST_CASE("rip_counts: frozen evaluations and the small-L guard") {
    ModelParams params;
    params.k_c = 4096;
    params.k_d = 1024;
    params.path_count = 8;
    const RipCounts counts = rip_counts(params, 1.0, 4.0);
    CHECK(counts.harmonic_m == 1245);  // ceil(8 * ln(4096) * ln^4(8))

    ModelParams p0 = p0_params();
    CHECK(rip_counts(p0, 1.0, 4.0).gaussian_m == 419);  // ceil(4 * 104.6915)

    ModelParams single = params;
    single.path_count = 1;
    const RipCounts guarded = rip_counts(single, 1.0, 4.0);
    CHECK(guarded.harmonic_m ==
          static_cast<std::uint64_t>(std::ceil(std::log(4096.0))));  // max(1, ln 1)^4 = 1

    CHECK_THROWS_AS(rip_counts(params, 0.0, 1.0), std::domain_error);
}

TEST_CASE("fletcher_compare: frozen Table-I style evaluation") {
    ModelParams params;
    params.k_c = 4096;
    params.k_d = 1024;
    params.path_count = 8;
    const FletcherComparison record = fletcher_compare(params, 0.1);
    CHECK(record.fletcher_energy == doctest::Approx(532.2119).epsilon(1e-6));
    CHECK(record.our_energy == doctest::Approx(99.8131940).epsilon(1e-8));
    CHECK(record.energy_ratio == doctest::Approx(5.33208).epsilon(1e-5));
    CHECK(record.fletcher_measurements ==
          doctest::Approx(8.0 / 0.1 * 1.1 * 8.0 * std::log(4088.0)).epsilon(1e-12));
}

TEST_CASE("fletcher_compare: energy ratio at least four whenever L-sparse is genuine") {
    for (std::uint32_t path_count : {2u, 4u, 8u, 16u, 32u}) {
        for (std::uint32_t ratio : {64u, 128u, 256u, 512u}) {
            ModelParams params;
            params.path_count = path_count;
            params.k_c = path_count * ratio;
            params.k_d = std::max(path_count, params.k_c / 4);
            CHECK(fletcher_compare(params, 0.01).energy_ratio >= 4.0);
        }
    }
}

TEST_CASE("fletcher_compare: vanishing snr blows up measurements, not energy") {
    ModelParams params;
    params.k_c = 4096;
    params.k_d = 1024;
    params.path_count = 8;
    const FletcherComparison coarse = fletcher_compare(params, 1e-2);
    const FletcherComparison fine = fletcher_compare(params, 1e-6);
    CHECK(fine.fletcher_measurements > 1e3 * coarse.fletcher_measurements);
    CHECK(fine.fletcher_energy == doctest::Approx(coarse.fletcher_energy).epsilon(1e-12));
}

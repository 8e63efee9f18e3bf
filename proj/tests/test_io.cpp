// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sparsetrain/io.hpp"

using namespace sparsetrain;

namespace {

SweepResult demo_sweep() {
    ExperimentConfig config;
    config.params.k_c = 1024;
    config.params.k_d = 256;
    config.params.path_count = 4;
    config.params.sampling_mode = SamplingMode::FixedCount;
    config.scheme = TrainingScheme::Impulse;
    config.estimator = EstimatorMethod::Threshold;
    config.snr_grid = {0.5, 1.0, 2.0};
    config.trials_per_point = 10;
    config.master_seed = 31;
    return run_sweep(config, 1);
}

ModelParams p0_params() {
    ModelParams params;
    params.k_c = 16384;
    params.k_d = 4096;
    params.path_count = 16;
    return params;
}

}  // namespace

TEST_CASE("format_number: nine significant digits, dot separator") {
    CHECK(format_number(0.0127797300222055) == "0.01277973");
    CHECK(format_number(104.691548342) == "104.691548");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-3.25e-9) == "-3.25e-09");
}

TEST_CASE("sweep csv: header, round trip within formatting precision") {
    const SweepResult result = demo_sweep();
    std::ostringstream out;
    write_sweep_csv(out, result);
    const std::string text = out.str();
    CHECK(text.rfind("snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials\n", 0) ==
          0);
    CHECK(text.back() == '\n');

    std::istringstream in(text);
    const SweepResult parsed = parse_sweep_csv(in);
    REQUIRE(parsed.points.size() == result.points.size());
    for (std::size_t i = 0; i < parsed.points.size(); ++i) {
        CHECK(parsed.points[i].snr ==
              doctest::Approx(result.points[i].snr).epsilon(1e-8));
        CHECK(parsed.points[i].mean_mse ==
              doctest::Approx(result.points[i].mean_mse).epsilon(1e-8));
        CHECK(parsed.points[i].std_err ==
              doctest::Approx(result.points[i].std_err).epsilon(1e-8));
        CHECK(parsed.points[i].n_trials == result.points[i].n_trials);
    }
}

TEST_CASE("sweep csv: empty result emits the header only and parses back") {
    SweepResult empty;
    std::ostringstream out;
    write_sweep_csv(out, empty);
    CHECK(out.str() ==
          "snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials\n");
    std::istringstream in(out.str());
    CHECK(parse_sweep_csv(in).points.empty());
}

TEST_CASE("sweep csv emission is byte-stable") {
    const SweepResult result = demo_sweep();
    std::ostringstream a, b;
    write_sweep_csv(a, result);
    write_sweep_csv(b, result);
    CHECK(a.str() == b.str());
}

TEST_CASE("sweep csv: malformed inputs raise io errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_sweep_csv(empty), IoError);
    std::istringstream bad_header("wrong,header\n1,2\n");
    CHECK_THROWS_AS(parse_sweep_csv(bad_header), IoError);
    std::istringstream bad_arity(
        "snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials\n1,2,3\n");
    CHECK_THROWS_AS(parse_sweep_csv(bad_arity), IoError);
    std::istringstream bad_cell(
        "snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials\n1,2,x,4,5,6,7\n");
    CHECK_THROWS_AS(parse_sweep_csv(bad_cell), IoError);
}

TEST_CASE("theory csv: declared columns and one row per grid point") {
    const ModelParams params = p0_params();
    const double snr0 = snr_zero(params);
    std::ostringstream out;
    write_theory_csv(out, params, {0.5 * snr0, snr0, 2.0 * snr0}, 0.25);
    std::istringstream in(out.str());
    const CsvDocument doc = parse_csv(in);
    REQUIRE(doc.columns.size() == 10);
    CHECK(doc.columns[0] == "snr");
    CHECK(doc.columns[2] == "mmse_hc");
    CHECK(doc.columns[3] == "mmse_hg");
    CHECK(doc.columns[9] == "rdf_ratio_hg");
    REQUIRE(doc.rows.size() == 3);
    const int mmse_hc = doc.column_index("mmse_hc");
    CHECK(doc.rows[0][static_cast<std::size_t>(mmse_hc)] == 1.0);   // 0.5 SNR0
    CHECK(doc.rows[2][static_cast<std::size_t>(mmse_hc)] == 0.0);   // 2 SNR0
    const int ratio_hc = doc.column_index("rdf_ratio_hc");
    CHECK(doc.rows[2][static_cast<std::size_t>(ratio_hc)] == 0.0);  // cap reached
}

TEST_CASE("compare csv: energy ratio lands in the emitted row") {
    ModelParams params;
    params.k_c = 4096;
    params.k_d = 1024;
    params.path_count = 8;
    const FletcherComparison record = fletcher_compare(params, 0.01);
    std::ostringstream out;
    write_compare_csv(out, params, 0.01, record);
    std::istringstream in(out.str());
    const CsvDocument doc = parse_csv(in);
    REQUIRE(doc.rows.size() == 1);
    const int ratio = doc.column_index("energy_ratio");
    REQUIRE(ratio >= 0);
    CHECK(doc.rows[0][static_cast<std::size_t>(ratio)] >= 4.0);
}

TEST_CASE("generic csv parser rejects ragged and non-numeric rows") {
    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(parse_csv(ragged), IoError);
    std::istringstream alpha("a,b\n1,two\n");
    CHECK_THROWS_AS(parse_csv(alpha), IoError);
    std::istringstream fine("a,b\n1,2\n3,4\n");
    const CsvDocument doc = parse_csv(fine);
    CHECK(doc.rows.size() == 2);
    CHECK(doc.column_index("b") == 1);
    CHECK(doc.column_index("missing") == -1);
}

TEST_CASE("svg chart: one polyline per series, legend, byte-stable") {
    SvgSeries a{"mmse_hc", {0.25, 0.5, 1.0, 2.0}, {1.0, 1.0, 0.5, 0.0}};
    SvgSeries b{"mmse_hg", {0.25, 0.5, 1.0, 2.0}, {0.74, 0.43, 0.2, 0.08}};
    const std::string svg = svg_line_chart("mmse curves", "snr / SNR0", "mmse", {a, b}, true);

    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 2);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("mmse_hc") != std::string::npos);
    CHECK(svg.find("mmse_hg") != std::string::npos);
    CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);

    const std::string again = svg_line_chart("mmse curves", "snr / SNR0", "mmse", {a, b}, true);
    CHECK(svg == again);
}

TEST_CASE("svg chart escapes markup in labels") {
    SvgSeries s{"a<b&c", {1.0, 2.0}, {0.1, 0.2}};
    const std::string svg = svg_line_chart("t", "x", "y", {s}, false);
    CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
    CHECK(svg.find("a<b&c") == std::string::npos);
}

TEST_CASE("file writers surface io errors for unwritable paths") {
    const SweepResult result = demo_sweep();
    CHECK_THROWS_AS(write_sweep_csv("/nonexistent_dir_for_tests/out.csv", result), IoError);
    CHECK_THROWS_AS(write_text_file("/nonexistent_dir_for_tests/out.svg", "x"), IoError);
    CHECK_THROWS_AS(parse_sweep_csv_file("/nonexistent_dir_for_tests/in.csv"), IoError);
}

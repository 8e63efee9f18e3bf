// SPDX-License-Identifier: Apache-2.0
//
// sparsetrain: training over sparse multipath channels at low SNR.
// Subcommands: theory, simulate, sweep, compare, plot.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsetrain/config.hpp"
#include "sparsetrain/io.hpp"
#include "sparsetrain/montecarlo.hpp"
#include "sparsetrain/signals.hpp"
#include "sparsetrain/theory.hpp"

namespace {

using namespace sparsetrain;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint32_t trials = 0;
    bool trials_set = false;
};

CliConfig load_with_overrides(const CommonArgs& args) {
    CliConfig config = load_cli_config(args.config_path);
    if (args.seed_set) config.experiment.master_seed = args.seed;
    if (args.trials_set) config.experiment.trials_per_point = args.trials;
    return config;
}

std::vector<double> theory_grid(const CliConfig& config) {
    if (!config.experiment.snr_grid.empty()) return config.experiment.resolved_snr_grid();
    // Default: 40 log-spaced points over [0.05, 8] * SNR0.
    const double snr0 = snr_zero(config.experiment.params);
    std::vector<double> grid;
    const int n = 40;
    const double lo = std::log(0.05);
    const double hi = std::log(8.0);
    for (int i = 0; i < n; ++i) {
        grid.push_back(snr0 * std::exp(lo + (hi - lo) * i / (n - 1)));
    }
    return grid;
}

int cmd_theory(const CommonArgs& args) {
    const CliConfig config = load_with_overrides(args);
    const ModelParams& params = config.experiment.params;
    params.validate();

    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);
    const double threshold = detection_threshold(params);
    const RipCounts rip = rip_counts(params, config.rip_c_harmonic, config.rip_c_gaussian);

    std::printf("k_c=%u k_d=%u L=%u p=%.9g\n", params.k_c, params.k_d, params.path_count,
                params.activation_probability());
    std::printf("SNR0=%.6e\n", snr0);
    std::printf("rate_distortion_nats=%.9g\n", rate);
    std::printf("detection_threshold=%.9g\n", threshold);
    std::printf("critical_training_energy=%.9g\n", snr0 * static_cast<double>(params.k_c));
    if (snr0 > 0.0) {
        const BaronBounds bounds = baron_bounds(params, snr0);
        std::printf("baron_min_measurements_at_SNR0=%llu\n",
                    static_cast<unsigned long long>(bounds.min_measurements));
        std::printf("baron_min_energy_nats=%.9g\n", bounds.min_energy);
    }
    std::printf("rip_harmonic_m=%llu (c=%.9g)\n",
                static_cast<unsigned long long>(rip.harmonic_m), config.rip_c_harmonic);
    std::printf("rip_gaussian_m=%llu (c=%.9g)\n",
                static_cast<unsigned long long>(rip.gaussian_m), config.rip_c_gaussian);

    if (!args.out_path.empty()) {
        write_theory_csv(args.out_path, params, theory_grid(config), config.experiment.epsilon);
        std::printf("curves_csv=%s\n", args.out_path.c_str());
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args, std::uint32_t point, std::uint32_t trial) {
    const CliConfig config = load_with_overrides(args);
    const ExperimentConfig& exp = config.experiment;
    exp.validate();
    const std::vector<double> grid = exp.resolved_snr_grid();
    if (point >= grid.size()) {
        throw std::invalid_argument("point: exceeds the snr_grid length");
    }
    if (trial >= exp.trials_per_point) {
        throw std::invalid_argument("trial: exceeds trials_per_point");
    }
    const EvaluationReport report = run_trial(exp, point, trial);
    const double snr0 = snr_zero(exp.params);
    std::printf("scheme=%s estimator=%s\n", to_string(exp.scheme), to_string(exp.estimator));
    std::printf("snr=%.9g snr_rel=%.9g point=%u trial=%u seed=%llu\n", grid[point],
                snr0 > 0.0 ? grid[point] / snr0 : 0.0, point, trial,
                static_cast<unsigned long long>(exp.master_seed));
    std::printf("squared_error=%.9g\n", report.squared_error);
    std::printf("support_precision=%.9g\n", report.support_precision);
    std::printf("support_recall=%.9g\n", report.support_recall);
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const CliConfig config = load_with_overrides(args);
    const ExperimentConfig& exp = config.experiment;
    exp.validate();
    const SweepResult result = run_sweep(exp);

    const std::string out = args.out_path.empty() ? "sweep.csv" : args.out_path;
    write_sweep_csv(out, result);
    std::printf("config_hash=%s\n", result.config_hash.c_str());
    std::printf("points=%zu trials_per_point=%u\n", result.points.size(), exp.trials_per_point);
    for (const PointStats& p : result.points) {
        std::printf("snr_rel=%-10.6g mean_mse=%-12.6g std_err=%-10.4g recall=%.4g%s\n", p.snr_rel,
                    p.mean_mse, p.std_err, p.mean_recall, p.anomalous() ? " [anomaly]" : "");
    }
    if (const auto crossing = locate_transition(result.points, 0.5)) {
        const double snr0 = snr_zero(exp.params);
        std::printf("transition_level_0.5_snr=%.9g (%.6g x SNR0)\n", *crossing,
                    snr0 > 0.0 ? *crossing / snr0 : 0.0);
    } else {
        std::printf("transition_level_0.5_snr=none (no crossing in range)\n");
    }
    std::printf("csv=%s\n", out.c_str());
    return 0;
}

int cmd_compare(const CommonArgs& args) {
    const CliConfig config = load_with_overrides(args);
    const ModelParams& params = config.experiment.params;
    params.validate();
    const double snr = config.compare_snr_rel * snr_zero(params);
    if (!(snr > 0.0)) throw std::invalid_argument("compare_snr_rel: needs SNR0 > 0 (L < k_d)");
    const FletcherComparison record =
        fletcher_compare(params, snr, config.measurement_constant);

    std::printf("%-26s %14s %14s\n", "", "fletcher", "this_scheme");
    std::printf("%-26s %14.6g %14.6g\n", "measurements", record.fletcher_measurements,
                record.our_measurements);
    std::printf("%-26s %14.6g %14.6g\n", "total_energy_nats", record.fletcher_energy,
                record.our_energy);
    std::printf("energy_ratio=%.9g\n", record.energy_ratio);

    if (!args.out_path.empty()) {
        write_compare_csv(args.out_path, params, snr, record);
        std::printf("csv=%s\n", args.out_path.c_str());
    }
    return 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, std::string x_column,
             std::vector<std::string> series_names, bool linear_x, const std::string& title) {
    const CsvDocument doc = parse_csv_file(in_path);
    if (x_column.empty()) {
        x_column = doc.column_index("snr_rel") >= 0 ? "snr_rel" : doc.columns.at(0);
    }
    const int x_index = doc.column_index(x_column);
    if (x_index < 0) throw std::invalid_argument("plot x column '" + x_column + "' not in CSV");

    if (series_names.empty()) {
        for (const std::string& name : doc.columns) {
            if (name == x_column || name == "snr" || name == "snr_rel" || name == "n_trials") {
                continue;
            }
            series_names.push_back(name);
        }
    }
    std::vector<SvgSeries> series;
    for (const std::string& name : series_names) {
        const int idx = doc.column_index(name);
        if (idx < 0) throw std::invalid_argument("plot series column '" + name + "' not in CSV");
        SvgSeries s;
        s.label = name;
        for (const std::vector<double>& row : doc.rows) {
            s.x.push_back(row[static_cast<std::size_t>(x_index)]);
            s.y.push_back(row[static_cast<std::size_t>(idx)]);
        }
        series.push_back(std::move(s));
    }
    const std::string chart = svg_line_chart(title.empty() ? in_path : title, x_column, "value",
                                             series, !linear_x);
    write_text_file(out_path, chart);
    std::printf("svg=%s series=%zu\n", out_path.c_str(), series.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse multipath channel training simulator"};
    app.require_subcommand(1);

    CommonArgs common;
    std::uint32_t point = 0;
    std::uint32_t trial = 0;
    std::string plot_in, plot_out, plot_x, plot_title;
    std::vector<std::string> plot_series;
    bool plot_linear_x = false;

    const auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", common.config_path, "JSON experiment config")->required();
        if (needs_out) cmd->add_option("--out", common.out_path, "output file path");
        cmd->add_option("--seed", common.seed, "override master_seed")
            ->each([&](const std::string&) { common.seed_set = true; });
        cmd->add_option("--trials", common.trials, "override trials_per_point")
            ->each([&](const std::string&) { common.trials_set = true; });
    };

    CLI::App* theory = app.add_subcommand("theory", "closed-form quantities and curves CSV");
    add_common(theory, true);

    CLI::App* simulate = app.add_subcommand("simulate", "run one trial and report it");
    add_common(simulate, false);
    simulate->add_option("--point", point, "snr grid index (default 0)");
    simulate->add_option("--trial", trial, "trial index (default 0)");

    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo SNR sweep to CSV");
    add_common(sweep, true);

    CLI::App* compare = app.add_subcommand("compare", "training-energy comparison table");
    add_common(compare, true);

    CLI::App* plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
    plot->add_option("--in", plot_in, "input CSV path")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();
    plot->add_option("--x", plot_x, "x column (default snr_rel when present)");
    plot->add_option("--series", plot_series, "columns to draw")->delimiter(',');
    plot->add_option("--title", plot_title, "chart title");
    plot->add_flag("--linear-x", plot_linear_x, "linear x axis instead of log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (theory->parsed()) return cmd_theory(common);
        if (simulate->parsed()) return cmd_simulate(common, point, trial);
        if (sweep->parsed()) return cmd_sweep(common);
        if (compare->parsed()) return cmd_compare(common);
        if (plot->parsed()) {
            return cmd_plot(plot_in, plot_out, plot_x, plot_series, plot_linear_x, plot_title);
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

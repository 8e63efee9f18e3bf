// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsetrain/montecarlo.hpp"
#include "sparsetrain/theory.hpp"

namespace sparsetrain {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric cell format shared by every CSV emitter: decimal, 9 significant
// digits, '.' separator. Identical inputs yield identical bytes.
std::string format_number(double value);

// Sweep CSV: header
// snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_csv(const std::string& path, const SweepResult& result);
SweepResult parse_sweep_csv(std::istream& in);
SweepResult parse_sweep_csv_file(const std::string& path);

// Theory CSV: mmse/mutual-information/penalty columns for both gain models
// over an absolute SNR grid.
void write_theory_csv(std::ostream& out, const ModelParams& params,
                      const std::vector<double>& snr_grid, double epsilon);
void write_theory_csv(const std::string& path, const ModelParams& params,
                      const std::vector<double>& snr_grid, double epsilon);

// Comparison CSV (one row per record).
void write_compare_csv(std::ostream& out, const ModelParams& params, double snr,
                       const FletcherComparison& record);
void write_compare_csv(const std::string& path, const ModelParams& params, double snr,
                       const FletcherComparison& record);

// Generic numeric CSV reader (for the plot subcommand and round-trips).
struct CsvDocument {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;
};
CsvDocument parse_csv(std::istream& in);
CsvDocument parse_csv_file(const std::string& path);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained SVG line chart; byte-stable for identical inputs.
// log_x draws the x axis on a log10 scale (requires positive x values).
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool log_x);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sparsetrain

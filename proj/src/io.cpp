// SPDX-License-Identifier: Apache-2.0
#include "sparsetrain/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sparsetrain {

namespace {

const char* kSweepHeader = "snr,snr_rel,mean_mse,std_err,mean_precision,mean_recall,n_trials";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_cell(const std::string& cell, const char* context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("csv: non-numeric cell '") + cell + "' in " + context);
    }
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << kSweepHeader << '\n';
    for (const PointStats& p : result.points) {
        out << format_number(p.snr) << ',' << format_number(p.snr_rel) << ','
            << format_number(p.mean_mse) << ',' << format_number(p.std_err) << ','
            << format_number(p.mean_precision) << ',' << format_number(p.mean_recall) << ','
            << p.n_trials << '\n';
    }
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out = open_for_write(path);
    write_sweep_csv(out, result);
    if (!out) throw IoError("write failed: " + path);
}

SweepResult parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("csv: empty sweep file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw IoError("csv: unexpected sweep header '" + line + "'");
    SweepResult result;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 7) throw IoError("csv: sweep row arity mismatch");
        PointStats p;
        p.snr = parse_cell(cells[0], "snr");
        p.snr_rel = parse_cell(cells[1], "snr_rel");
        p.mean_mse = parse_cell(cells[2], "mean_mse");
        p.std_err = parse_cell(cells[3], "std_err");
        p.mean_precision = parse_cell(cells[4], "mean_precision");
        p.mean_recall = parse_cell(cells[5], "mean_recall");
        p.n_trials = static_cast<std::uint32_t>(parse_cell(cells[6], "n_trials"));
        result.points.push_back(p);
    }
    return result;
}

SweepResult parse_sweep_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return parse_sweep_csv(in);
}

void write_theory_csv(std::ostream& out, const ModelParams& params,
                      const std::vector<double>& snr_grid, double epsilon) {
    const double snr0 = snr_zero(params);
    const double rate = rate_distortion(params);
    out << "snr,snr_rel,mmse_hc,mmse_hg,mi_hc,mi_hg,penalty_hc,penalty_hg,"
           "rdf_ratio_hc,rdf_ratio_hg\n";
    for (double snr : snr_grid) {
        const double mmse_hc = mmse_hc_step(snr, params, epsilon);
        const double mmse_hg = mmse_hg_theory(snr, params);
        const double mi_hc =
            training_mutual_info(snr, params, GainModel::ConstantMagnitude, epsilon);
        const double mi_hg = training_mutual_info(snr, params, GainModel::Gaussian, epsilon);
        const PenaltyBound pen_hc =
            penalty_bound(snr, params, GainModel::ConstantMagnitude, epsilon);
        const PenaltyBound pen_hg = penalty_bound(snr, params, GainModel::Gaussian, epsilon);
        out << format_number(snr) << ',' << format_number(snr0 > 0.0 ? snr / snr0 : 0.0) << ','
            << format_number(mmse_hc) << ',' << format_number(mmse_hg) << ','
            << format_number(mi_hc) << ',' << format_number(mi_hg) << ','
            << format_number(pen_hc.penalty) << ',' << format_number(pen_hg.penalty) << ','
            << format_number(rate > 0.0 ? pen_hc.rdf_after / rate : 0.0) << ','
            << format_number(rate > 0.0 ? pen_hg.rdf_after / rate : 0.0) << '\n';
    }
}

void write_theory_csv(const std::string& path, const ModelParams& params,
                      const std::vector<double>& snr_grid, double epsilon) {
    std::ofstream out = open_for_write(path);
    write_theory_csv(out, params, snr_grid, epsilon);
    if (!out) throw IoError("write failed: " + path);
}

void write_compare_csv(std::ostream& out, const ModelParams& params, double snr,
                       const FletcherComparison& record) {
    out << "k_c,k_d,L,snr,fletcher_measurements,fletcher_energy,our_measurements,"
           "our_energy,energy_ratio\n";
    out << params.k_c << ',' << params.k_d << ',' << params.path_count << ','
        << format_number(snr) << ',' << format_number(record.fletcher_measurements) << ','
        << format_number(record.fletcher_energy) << ','
        << format_number(record.our_measurements) << ',' << format_number(record.our_energy)
        << ',' << format_number(record.energy_ratio) << '\n';
}

void write_compare_csv(const std::string& path, const ModelParams& params, double snr,
                       const FletcherComparison& record) {
    std::ofstream out = open_for_write(path);
    write_compare_csv(out, params, snr, record);
    if (!out) throw IoError("write failed: " + path);
}

int CsvDocument::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvDocument parse_csv(std::istream& in) {
    CsvDocument doc;
    std::string line;
    if (!std::getline(in, line)) throw IoError("csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    doc.columns = split_csv_line(line);
    if (doc.columns.empty()) throw IoError("csv: missing header row");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != doc.columns.size()) throw IoError("csv: row arity mismatch");
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            row[i] = parse_cell(cells[i], doc.columns[i].c_str());
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

CsvDocument parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return parse_csv(in);
}

namespace {

// Fixed two-decimal pixel coordinates keep the output byte-stable.
std::string pixel(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool log_x) {
    constexpr double kWidth = 960.0;
    constexpr double kHeight = 600.0;
    constexpr double kLeft = 80.0;
    constexpr double kRight = 30.0;
    constexpr double kTop = 50.0;
    constexpr double kBottom = 70.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    constexpr int kPaletteSize = 8;

    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    bool have_data = false;
    for (const SvgSeries& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            const double x = log_x ? std::log10(s.x[i]) : s.x[i];
            if (!std::isfinite(x) || !std::isfinite(s.y[i])) continue;
            if (!have_data) {
                x_min = x_max = x;
                y_min = 0.0;
                y_max = s.y[i];
                have_data = true;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_max = std::max(y_max, s.y[i]);
            }
            y_min = std::min(y_min, s.y[i]);
        }
    }
    y_max = std::max(y_max, 1.0);  // MSE/ratio curves live in [0, 1]
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;

    const auto px = [&](double x) {
        const double t = log_x ? std::log10(x) : x;
        return kLeft + (t - x_min) / (x_max - x_min) * plot_w;
    };
    const auto py = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << pixel(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << escape_xml(title) << "</text>\n";

    // Frame.
    svg << "<rect x=\"" << pixel(kLeft) << "\" y=\"" << pixel(kTop) << "\" width=\""
        << pixel(plot_w) << "\" height=\"" << pixel(plot_h)
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // X ticks: decades when log scale, else 6 even divisions.
    std::vector<double> x_ticks;
    if (log_x) {
        const int lo = static_cast<int>(std::ceil(x_min - 1e-9));
        const int hi = static_cast<int>(std::floor(x_max + 1e-9));
        for (int d = lo; d <= hi; ++d) x_ticks.push_back(std::pow(10.0, d));
        if (x_ticks.empty()) x_ticks.push_back(std::pow(10.0, 0.5 * (x_min + x_max)));
    } else {
        for (int i = 0; i <= 6; ++i) x_ticks.push_back(x_min + (x_max - x_min) * i / 6.0);
    }
    for (double t : x_ticks) {
        const double x = px(t);
        svg << "<line x1=\"" << pixel(x) << "\" y1=\"" << pixel(kTop + plot_h) << "\" x2=\""
            << pixel(x) << "\" y2=\"" << pixel(kTop + plot_h + 6) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << pixel(x) << "\" y=\"" << pixel(kTop + plot_h + 22)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(t) << "</text>\n";
    }
    // Y ticks: 5 even divisions.
    for (int i = 0; i <= 5; ++i) {
        const double v = y_min + (y_max - y_min) * i / 5.0;
        const double y = py(v);
        svg << "<line x1=\"" << pixel(kLeft - 6) << "\" y1=\"" << pixel(y) << "\" x2=\""
            << pixel(kLeft) << "\" y2=\"" << pixel(y) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << pixel(kLeft - 10) << "\" y=\"" << pixel(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << tick_label(v) << "</text>\n";
    }

    svg << "<text x=\"" << pixel(kLeft + plot_w / 2) << "\" y=\"" << pixel(kHeight - 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << escape_xml(x_label) << "</text>\n";
    svg << "<text x=\"22\" y=\"" << pixel(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
        << "transform=\"rotate(-90 22 " << pixel(kTop + plot_h / 2) << ")\">"
        << escape_xml(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        std::ostringstream points;
        for (std::size_t i = 0; i < std::min(series[s].x.size(), series[s].y.size()); ++i) {
            if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
            if (log_x && !(series[s].x[i] > 0.0)) continue;
            points << pixel(px(series[s].x[i])) << ',' << pixel(py(series[s].y[i])) << ' ';
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << points.str() << "\"/>\n";
        // Legend entry.
        const double ly = kTop + 16.0 + 20.0 * static_cast<double>(s);
        svg << "<line x1=\"" << pixel(kLeft + plot_w - 150) << "\" y1=\"" << pixel(ly)
            << "\" x2=\"" << pixel(kLeft + plot_w - 120) << "\" y2=\"" << pixel(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << pixel(kLeft + plot_w - 114) << "\" y=\"" << pixel(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(series[s].label)
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_for_write(path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace sparsetrain

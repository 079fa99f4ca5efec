#include "randmil/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace randmil {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

std::vector<const ErrorEntry*> sorted_entries(const ErrorReport& report) {
    std::vector<const ErrorEntry*> rows;
    rows.reserve(report.entries.size());
    for (const auto& entry : report.entries) rows.push_back(&entry);
    std::stable_sort(rows.begin(), rows.end(), [](const ErrorEntry* a, const ErrorEntry* b) {
        if (a->scheme != b->scheme) return a->scheme < b->scheme;
        return a->h > b->h;
    });
    return rows;
}

double parse_double_field(const std::string& field, const std::string& what) {
    double value = 0.0;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size()) {
        throw std::runtime_error("CSV: malformed " + what + " field '" + field + "'");
    }
    return value;
}

}  // namespace

void emit_csv(const ErrorReport& report, std::ostream& out) {
    if (report.entries.empty()) throw std::invalid_argument("emit_csv: empty report");
    out << "scheme,n,h,samples,p,error,stderr,cpu_seconds,eoc_slope\n";
    for (const ErrorEntry* entry : sorted_entries(report)) {
        const SchemeFit* fit = report.fit_for(entry->scheme);
        out << entry->scheme << ',' << entry->level << ',' << format_double(entry->h) << ','
            << entry->samples << ',' << format_double(entry->p) << ','
            << format_double(entry->error) << ',' << format_double(entry->std_error) << ','
            << format_double(entry->cpu_seconds) << ','
            << format_double(fit ? fit->slope : 0.0) << '\n';
    }
}

void emit_csv(const ErrorReport& report, const std::string& destination) {
    std::ostringstream buffer;
    emit_csv(report, buffer);
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + destination + "' for writing");
    file << buffer.str();
    if (!file) throw std::runtime_error("write failed for '" + destination + "'");
}

ErrorReport parse_csv(std::istream& in) {
    ErrorReport report;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV: missing header");
    std::vector<std::pair<std::string, double>> slopes;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream row(line);
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 9) throw std::runtime_error("CSV: expected 9 fields per row");
        ErrorEntry entry;
        entry.scheme = fields[0];
        entry.level = static_cast<int>(parse_double_field(fields[1], "n"));
        entry.h = parse_double_field(fields[2], "h");
        entry.samples = static_cast<std::size_t>(parse_double_field(fields[3], "samples"));
        entry.p = parse_double_field(fields[4], "p");
        entry.error = parse_double_field(fields[5], "error");
        entry.std_error = parse_double_field(fields[6], "stderr");
        entry.cpu_seconds = parse_double_field(fields[7], "cpu_seconds");
        const double slope = parse_double_field(fields[8], "eoc_slope");
        report.entries.push_back(entry);
        bool seen = false;
        for (auto& [scheme, s] : slopes) {
            if (scheme == entry.scheme) seen = true;
        }
        if (!seen) slopes.emplace_back(entry.scheme, slope);
    }
    for (const auto& [scheme, slope] : slopes) report.fits.push_back({scheme, slope, 0.0});
    return report;
}

namespace {

struct PlotPoint {
    double x, y;
};

constexpr double kWidth = 760.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 170.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string polyline(const std::vector<PlotPoint>& pts, const char* color, bool dashed,
                     const char* cls) {
    std::ostringstream out;
    out << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << (dashed ? "1.2" : "1.8") << "\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << pts[i].x << ',' << pts[i].y;
    }
    out << "\"/>\n";
    return out.str();
}

}  // namespace

std::string render_svg(const ErrorReport& report) {
    if (report.entries.empty()) throw std::invalid_argument("emit_svg: empty report");
    const bool timing = (report.study == "timing");

    // Collect drawable points per scheme: (x, y) in data space.
    // Convergence: x = level n, y = log10(error).
    // Timing: x = log10(error), y = log10(cpu seconds per sample).
    std::vector<std::string> schemes;
    for (const auto& entry : report.entries) {
        if (std::find(schemes.begin(), schemes.end(), entry.scheme) == schemes.end()) {
            schemes.push_back(entry.scheme);
        }
    }
    std::vector<std::vector<PlotPoint>> series(schemes.size());
    for (const auto& entry : report.entries) {
        if (!(entry.error > 0.0)) continue;
        if (timing && !(entry.cpu_seconds > 0.0)) continue;
        const std::size_t s = static_cast<std::size_t>(
            std::find(schemes.begin(), schemes.end(), entry.scheme) - schemes.begin());
        if (timing) {
            series[s].push_back({std::log10(entry.error), std::log10(entry.cpu_seconds)});
        } else {
            series[s].push_back({static_cast<double>(entry.level), std::log10(entry.error)});
        }
    }
    bool any = false;
    for (const auto& pts : series) any = any || !pts.empty();
    if (!any) throw std::invalid_argument("emit_svg: no drawable entries (log axes)");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& pts : series) {
        for (const auto& pt : pts) {
            xmin = std::min(xmin, pt.x);
            xmax = std::max(xmax, pt.x);
            ymin = std::min(ymin, pt.y);
            ymax = std::max(ymax, pt.y);
        }
    }
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto to_px = [&](PlotPoint pt) {
        return PlotPoint{kMarginLeft + (pt.x - xmin) / (xmax - xmin) * plot_w,
                         kMarginTop + (ymax - pt.y) / (ymax - ymin) * plot_h};
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "  <rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";

    // Horizontal decade grid lines with labels.
    for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
        const PlotPoint px = to_px({xmin, static_cast<double>(e)});
        svg << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << px.y << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << px.y
            << "\" stroke=\"#ddd\" stroke-width=\"0.8\"/>\n"
            << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << px.y + 4
            << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << e
            << "</text>\n";
    }
    // Vertical ticks: integer levels for convergence plots, decades for
    // timing plots.
    std::vector<double> xtick_values;
    if (timing) {
        for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax));
             ++e) {
            xtick_values.push_back(static_cast<double>(e));
        }
    } else {
        const int lo = static_cast<int>(std::ceil(xmin));
        const int hi = static_cast<int>(std::floor(xmax));
        const int step = std::max(1, (hi - lo) / 8 + ((hi - lo) % 8 ? 1 : 0));
        for (int n = lo; n <= hi; n += step) xtick_values.push_back(static_cast<double>(n));
    }
    for (const double xv : xtick_values) {
        const PlotPoint px = to_px({xv, ymin});
        std::ostringstream label;
        if (timing) {
            label << "1e" << static_cast<int>(std::round(xv));
        } else {
            label << static_cast<int>(std::round(xv));
        }
        svg << "  <line x1=\"" << px.x << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px.x
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"#444\"/>\n"
            << "  <text x=\"" << px.x << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << label.str() << "</text>\n";
    }
    svg << "  <text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << (timing ? "error (log scale)" : "level n  (h = 2^-n T)") << "</text>\n"
        << "  <text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">"
        << (timing ? "cpu seconds (log scale)" : "L^p error (log scale)") << "</text>\n";

    double legend_y = kMarginTop + 12.0;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        if (series[s].empty()) continue;
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        auto pts = series[s];
        std::sort(pts.begin(), pts.end(),
                  [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
        std::vector<PlotPoint> px;
        px.reserve(pts.size());
        for (const auto& pt : pts) px.push_back(to_px(pt));
        svg << polyline(px, color, false, "data");
        for (const auto& pt : px) {
            svg << "  <circle cx=\"" << pt.x << "\" cy=\"" << pt.y << "\" r=\"2.6\" fill=\""
                << color << "\"/>\n";
        }

        // Fit line over the series' x-range.
        const SchemeFit* fit = report.fit_for(schemes[s]);
        if (fit) {
            if (!timing) {
                // log(err) = slope*log(h) + intercept, h = 2^-n T. Recover
                // log T from any of this scheme's entries.
                double log_T = 0.0;
                for (const auto& entry : report.entries) {
                    if (entry.scheme == schemes[s] && entry.error > 0.0) {
                        log_T = std::log(entry.h) + entry.level * std::log(2.0);
                        break;
                    }
                }
                const double ln10 = std::log(10.0);
                auto fit_y = [&](double n) {
                    const double log_h = log_T - n * std::log(2.0);
                    return (fit->slope * log_h + fit->intercept) / ln10;
                };
                const double xa = pts.front().x, xb = pts.back().x;
                std::vector<PlotPoint> line = {to_px({xa, fit_y(xa)}), to_px({xb, fit_y(xb)})};
                svg << polyline(line, color, true, "fit");
            } else {
                // Timing report: dashed segment between first and last point
                // keeps the per-scheme trend visible.
                std::vector<PlotPoint> line = {px.front(), px.back()};
                svg << polyline(line, color, true, "fit");
            }
        }

        std::ostringstream label;
        label << schemes[s];
        if (fit) {
            char slope_buf[32];
            std::snprintf(slope_buf, sizeof(slope_buf), "%.2f", fit->slope);
            label << " (slope " << slope_buf << ")";
        }
        svg << "  <line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << legend_y
            << "\" x2=\"" << kWidth - kMarginRight + 34 << "\" y2=\"" << legend_y
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "  <text x=\"" << kWidth - kMarginRight + 40 << "\" y=\"" << legend_y + 4
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << label.str() << "</text>\n";
        legend_y += 18.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const ErrorReport& report, const std::string& destination) {
    const std::string body = render_svg(report);  // may throw before the file opens
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + destination + "' for writing");
    file << body;
    if (!file) throw std::runtime_error("write failed for '" + destination + "'");
}

}  // namespace randmil

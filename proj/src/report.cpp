#include "qdunkl/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace qdunkl::report {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("CsvTable: header must not be empty");
    }
}

void CsvTable::add_comment(std::string_view text) { comments_.emplace_back(text); }

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CsvTable: row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            const double d = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.5;
            lo -= d;
            hi += d;
        }
    }
};

}  // namespace

std::string CsvTable::str() const {
    std::string out;
    for (const auto& c : comments_) {
        out += "# ";
        out += c;
        out += '\n';
    }
    append_line(out, header_);
    for (const auto& r : rows_) {
        append_line(out, r);
    }
    return out;
}

std::string render_svg(const Plot& plot) {
    constexpr double width = 800.0;
    constexpr double height = 600.0;
    constexpr double left = 90.0;
    constexpr double right = 170.0;
    constexpr double top = 50.0;
    constexpr double bottom = 70.0;
    const bool log = plot.scale == Scale::log_log;

    auto tx = [log](double v) { return log ? std::log10(v) : v; };

    Range xr;
    Range yr;
    for (const auto& s : plot.series) {
        if (s.xs.size() != s.ys.size()) {
            throw std::invalid_argument("render_svg: series '" + s.name + "' has mismatched lengths");
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) {
                throw std::invalid_argument("render_svg: series '" + s.name + "' has non-finite data");
            }
            if (log && (s.xs[i] <= 0.0 || s.ys[i] <= 0.0)) {
                throw std::invalid_argument("render_svg: log-log plot of series '" + s.name +
                                            "' requires positive values");
            }
            xr.include(tx(s.xs[i]));
            yr.include(tx(s.ys[i]));
        }
    }
    if (!std::isfinite(xr.lo)) {
        xr = {0.0, 1.0};
        yr = {0.0, 1.0};
    }
    xr.pad();
    yr.pad();

    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double v) { return left + (tx(v) - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double v) { return top + ph - (tx(v) - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed2(left + pw / 2) + "\" y=\"30\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(plot.title) + "</text>\n";
    out += "<rect x=\"" + fixed2(left) + "\" y=\"" + fixed2(top) + "\" width=\"" + fixed2(pw) +
           "\" height=\"" + fixed2(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    constexpr int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / ticks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / ticks;
        const double sx = left + pw * i / ticks;
        const double sy = top + ph - ph * i / ticks;
        out += "<line x1=\"" + fixed2(sx) + "\" y1=\"" + fixed2(top + ph) + "\" x2=\"" + fixed2(sx) +
               "\" y2=\"" + fixed2(top + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fixed2(sx) + "\" y=\"" + fixed2(top + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(log ? std::pow(10.0, fx) : fx) + "</text>\n";
        out += "<line x1=\"" + fixed2(left - 5) + "\" y1=\"" + fixed2(sy) + "\" x2=\"" + fixed2(left) +
               "\" y2=\"" + fixed2(sy) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + fixed2(left - 8) + "\" y=\"" + fixed2(sy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(log ? std::pow(10.0, fy) : fy) + "</text>\n";
    }
    out += "<text x=\"" + fixed2(left + pw / 2) + "\" y=\"" + fixed2(height - 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           xml_escape(plot.x_label) + (log ? " (log scale)" : "") + "</text>\n";
    out += "<text x=\"20\" y=\"" + fixed2(top + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " + fixed2(top + ph / 2) + ")\">" +
           xml_escape(plot.y_label) + (log ? " (log scale)" : "") + "</text>\n";

    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* color = kPalette[si % kPalette.size()];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (i) out += ' ';
            out += fixed2(px(s.xs[i])) + "," + fixed2(py(s.ys[i]));
        }
        out += "\"/>\n";
        const double ly = top + 15.0 + 20.0 * static_cast<double>(si);
        out += "<line x1=\"" + fixed2(width - right + 15) + "\" y1=\"" + fixed2(ly) + "\" x2=\"" +
               fixed2(width - right + 40) + "\" y2=\"" + fixed2(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fixed2(width - right + 45) + "\" y=\"" + fixed2(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(s.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace qdunkl::report

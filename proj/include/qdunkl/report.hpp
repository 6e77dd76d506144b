#pragma once

// CSV tables and static SVG line plots.

#include <string>
#include <string_view>
#include <vector>

namespace qdunkl::report {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Comma-separated table with '#'-prefixed comment lines and '\n' endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_comment(std::string_view text);
    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<std::string> cells);

    std::size_t rows() const noexcept { return rows_.size(); }
    const std::vector<std::string>& header() const noexcept { return header_; }

    /// Comments first, then header, then rows.
    std::string str() const;

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

enum class Scale { linear, log_log };

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    Scale scale = Scale::linear;
    std::vector<Series> series;
};

/// Self-contained 800x600 SVG, one polyline per series. Log-log plots
/// throw std::invalid_argument on nonpositive data.
std::string render_svg(const Plot& plot);

/// Writes content to path; throws std::runtime_error on I/O failure.
void write_file(const std::string& path, std::string_view content);

}  // namespace qdunkl::report

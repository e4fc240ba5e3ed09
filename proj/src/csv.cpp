#include "dwell/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace dwell {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

CsvTable read_csv(std::string_view text) {
    CsvTable table;
    bool first = true;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (first) {
            for (auto c : cells) table.header.emplace_back(c);
            first = false;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(table.header.size()) + " cells");
        }
        std::vector<double> row;
        for (auto c : cells) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
                throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" +
                                         std::string(c) + "'");
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string write_csv(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable sweep_csv(const SpectrumTable& table, const std::vector<std::vector<double>>& effective) {
    CsvTable csv;
    const std::size_t n = table.levels.empty() ? 0 : table.levels.front().size();
    csv.header.push_back("lambda");
    for (std::size_t j = 0; j < n; ++j) csv.header.push_back("E" + std::to_string(j + 1));
    if (!effective.empty()) {
        for (std::size_t j = 0; j < n; ++j) csv.header.push_back("Ep" + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < table.lambdas.size(); ++i) {
        std::vector<double> row{table.lambdas[i]};
        row.insert(row.end(), table.levels[i].begin(), table.levels[i].end());
        if (!effective.empty()) row.insert(row.end(), effective[i].begin(), effective[i].end());
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

void read_sweep_csv(std::string_view text, std::vector<double>& lambdas,
                    std::vector<std::vector<double>>& levels) {
    const CsvTable csv = read_csv(text);
    if (csv.header.empty() || csv.header.front() != "lambda") {
        throw std::runtime_error("not a sweep csv: first column must be 'lambda'");
    }
    std::size_t n = 0;
    while (n + 1 < csv.header.size() && csv.header[n + 1] == "E" + std::to_string(n + 1)) ++n;
    lambdas.clear();
    levels.clear();
    for (const auto& row : csv.rows) {
        lambdas.push_back(row[0]);
        levels.emplace_back(row.begin() + 1, row.begin() + 1 + static_cast<std::ptrdiff_t>(n));
    }
}

CsvTable crossings_csv(const std::vector<AvoidedCrossing>& crossings) {
    CsvTable csv;
    csv.header = {"gap_index", "lambda_star", "gap_ev", "e_mid_ev"};
    std::vector<AvoidedCrossing> sorted = crossings;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
        return l.lambda_star < r.lambda_star;
    });
    for (const auto& ac : sorted) {
        csv.rows.push_back({static_cast<double>(ac.level_index), ac.lambda_star, ac.gap, ac.e_mid});
    }
    return csv;
}

std::string svg_line_chart(const std::vector<double>& x, const std::vector<std::vector<double>>& rows,
                           std::string_view x_label, std::string_view y_label) {
    constexpr double width = 800, height = 500, margin = 60;
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x0 = std::min(x0, x[i]);
        x1 = std::max(x1, x[i]);
        for (double y : rows[i]) {
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    const auto px = [&](double v) { return margin + (v - x0) / (x1 - x0) * (width - 2 * margin); };
    const auto py = [&](double v) { return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin); };

    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<rect x=\"60\" y=\"60\" width=\"680\" height=\"380\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"400\" y=\"485\" text-anchor=\"middle\" font-size=\"14\">" + std::string(x_label) + "</text>\n";
    out += "<text x=\"15\" y=\"250\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 250)\">" +
           std::string(y_label) + "</text>\n";
    out += "<text x=\"60\" y=\"455\" font-size=\"11\">" + format_number(x0) + "</text>\n";
    out += "<text x=\"740\" y=\"455\" font-size=\"11\" text-anchor=\"end\">" + format_number(x1) + "</text>\n";
    out += "<text x=\"55\" y=\"440\" font-size=\"11\" text-anchor=\"end\">" + format_number(y0) + "</text>\n";
    out += "<text x=\"55\" y=\"65\" font-size=\"11\" text-anchor=\"end\">" + format_number(y1) + "</text>\n";

    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    for (std::size_t j = 0; j < n; ++j) {
        out += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"";
        out += palette[j % std::size(palette)];
        out += "\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ' ';
            out += fmt(px(x[i])) + "," + fmt(py(rows[i][j]));
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dwell

#pragma once

// Text serialization: fixed 12-significant-digit CSV and a minimal SVG line chart.

#include <string>
#include <string_view>
#include <vector>

#include "dwell/sweep.hpp"

namespace dwell {

std::string format_number(double v);  // "%.12g"

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Throws std::runtime_error on ragged rows or non-numeric cells.
CsvTable read_csv(std::string_view text);
std::string write_csv(const CsvTable& table);

// `lambda,E1..EN` (+ `Ep1..EpN` when effective is non-empty).
CsvTable sweep_csv(const SpectrumTable& table,
                   const std::vector<std::vector<double>>& effective = {});

// Recovers lambdas and levels from a sweep CSV (Ep columns are ignored).
void read_sweep_csv(std::string_view text, std::vector<double>& lambdas,
                    std::vector<std::vector<double>>& levels);

CsvTable crossings_csv(const std::vector<AvoidedCrossing>& crossings);

// One polyline per series; x shared across series.
std::string svg_line_chart(const std::vector<double>& x, const std::vector<std::vector<double>>& rows,
                           std::string_view x_label, std::string_view y_label);

}  // namespace dwell

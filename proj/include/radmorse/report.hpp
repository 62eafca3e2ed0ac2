#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "radmorse/norms.hpp"

namespace radmorse {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Flat record table shared by the CSV and JSON writers.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Column order of scan output.
inline const std::vector<std::string> kScanColumns = {
    "N",     "r0",          "p",           "q",             "norm_p",           "norm_q",
    "ratio_q_over_p", "index_inner", "index_annulus", "index_whole", "quotient_annulus", "residual"};

Table scan_table(std::span<const ScanRow> rows);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double value);

/// Header row, ',' delimiter, LF line endings.
void write_csv(std::ostream& out, const Table& table);

/// Array of row objects. Non-finite doubles become the strings "inf"/"-inf", NaN becomes null.
void write_json(std::ostream& out, const Table& table);

/// Writes to a sibling temp file then renames over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace radmorse

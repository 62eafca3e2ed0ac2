#include "radmorse/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace radmorse {

namespace {

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (const char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
    return out;
}

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string quoted = "\"";
                for (const char c : v) {
                    if (c == '"') quoted.push_back('"');
                    quoted.push_back(c);
                }
                return quoted + "\"";
            }
        },
        cell);
}

std::string json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (std::isnan(v)) return "null";
                if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return json_escape(v);
            }
        },
        cell);
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Table scan_table(std::span<const ScanRow> rows) {
    Table table;
    table.columns = kScanColumns;
    for (const auto& row : rows) {
        table.rows.push_back({static_cast<std::int64_t>(row.N), row.r0, row.p, row.q, row.norm_p, row.norm_q,
                              row.ratio_q_over_p, static_cast<std::int64_t>(row.index_inner),
                              static_cast<std::int64_t>(row.index_annulus), static_cast<std::int64_t>(row.index_whole),
                              row.quotient_annulus, row.residual});
    }
    return table;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    out << "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r ? ",\n  {" : "\n  {");
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? ", " : "") << json_escape(table.columns[i]) << ": " << json_cell(row[i]);
        }
        out << "}";
    }
    out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target = fs::absolute(path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream file(temp, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw std::system_error(errno, std::generic_category(), "cannot open " + temp.string());
        }
        file << content;
        file.flush();
        if (!file) {
            throw std::system_error(errno, std::generic_category(), "write failed for " + temp.string());
        }
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw std::system_error(ec, "cannot rename onto " + target.string());
    }
}

}  // namespace radmorse

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <string>
#include <system_error>
#include <vector>

#include "frontspec/error.hpp"

namespace frontspec::cli {

/// Shortest representation that parses back to the same double.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::initializer_list<double> row) { add(std::vector<double>(row)); }

    void add(const std::vector<double>& row) {
        if (row.size() != header_.size()) fail(ErrorCode::Input, "csv row width does not match header");
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row) cells.push_back(fmt(v));
        rows_.push_back(std::move(cells));
    }

    /// For the few tables with a categorical column.
    void add_cells(std::vector<std::string> cells) {
        if (cells.size() != header_.size()) fail(ErrorCode::Input, "csv row width does not match header");
        rows_.push_back(std::move(cells));
    }

    [[nodiscard]] std::string str() const {
        std::string out;
        append(out, header_);
        for (const auto& r : rows_) append(out, r);
        return out;
    }

private:
    static void append(std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Relative path -> file content. Ordered, so writing is deterministic.
using FileSet = std::map<std::string, std::string>;

inline void write_files(const std::filesystem::path& root, const FileSet& files) {
    for (const auto& [rel, content] : files) {
        const auto path = root / rel;
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) fail(ErrorCode::Config, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
        std::ofstream os(path, std::ios::binary);
        os << content;
        if (!os) fail(ErrorCode::Config, "cannot write " + path.string());
    }
}

}  // namespace frontspec::cli

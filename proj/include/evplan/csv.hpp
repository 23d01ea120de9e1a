#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "evplan/common.hpp"

namespace evplan {

/**
 * Minimal comma-separated table reader.
 *
 * All ingestion schemas are plain numeric or token columns, so no quoting or
 * escaping is supported. The header row is mandatory and drives column lookup.
 */
class CsvTable {
public:
    static CsvTable read_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("missing file: " + path);
        CsvTable t;
        t.path_ = path;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::vector<std::string> cells = split(line);
            if (first) {
                t.header_ = cells;
                for (std::size_t i = 0; i < cells.size(); ++i) t.index_[cells[i]] = i;
                first = false;
            } else {
                if (cells.size() != t.header_.size()) {
                    throw ValidationError(path + ": row " + std::to_string(t.rows_.size() + 2) +
                                          " has " + std::to_string(cells.size()) +
                                          " cells, header has " + std::to_string(t.header_.size()));
                }
                t.rows_.push_back(std::move(cells));
            }
        }
        if (first) throw ValidationError(path + ": empty file (header row required)");
        return t;
    }

    const std::vector<std::string>& header() const { return header_; }
    std::size_t row_count() const { return rows_.size(); }

    bool has_column(const std::string& name) const { return index_.count(name) > 0; }

    std::size_t column(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw ValidationError(path_ + ": missing column '" + name + "'");
        return it->second;
    }

    const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }

    const std::string& cell(std::size_t row, const std::string& name) const {
        return rows_[row][column(name)];
    }

    double number(std::size_t row, const std::string& name) const {
        const std::string& s = cell(row, name);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(path_ + ": column '" + name + "' row " + std::to_string(row + 2) +
                                  ": not a number: '" + s + "'");
        }
    }

    std::int64_t integer(std::size_t row, const std::string& name) const {
        const std::string& s = cell(row, name);
        std::int64_t v = 0;
        const auto* begin = s.data();
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            throw ValidationError(path_ + ": column '" + name + "' row " + std::to_string(row + 2) +
                                  ": not an integer: '" + s + "'");
        }
        return v;
    }

    const std::string& path() const { return path_; }

private:
    static std::vector<std::string> split(const std::string& line) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        out.push_back(cur);
        return out;
    }

    std::string path_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Row-at-a-time CSV writer; numbers are printed with round-trip precision.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw ValidationError("cannot open for writing: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    static std::string num(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }

private:
    std::ofstream out_;
};

}  // namespace evplan

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace switchsim::csv {

struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Parses a header line plus data rows; blank lines are skipped. Throws when
/// the header differs from `expected_header` or a row has the wrong arity.
inline std::vector<Row> parse(std::string_view text, const std::vector<std::string> &expected_header) {
    std::vector<Row> rows;
    bool seen_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const auto line = trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (line.empty()) continue;
        auto fields = split(line);
        if (!seen_header) {
            if (fields != expected_header) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": unexpected CSV header");
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != expected_header.size()) {
            throw std::runtime_error(
                "line " + std::to_string(line_no) + ": expected " + std::to_string(expected_header.size()) +
                " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back(Row{line_no, std::move(fields)});
    }
    if (!seen_header) {
        throw std::runtime_error("CSV is empty");
    }
    return rows;
}

inline double to_double(const Row &row, std::size_t column) {
    const std::string &field = row.fields.at(column);
    double value = 0;
    const auto *end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error("line " + std::to_string(row.line) + ": \"" + field + "\" is not a number");
    }
    return value;
}

inline int to_int(const Row &row, std::size_t column) {
    const std::string &field = row.fields.at(column);
    int value = 0;
    const auto *end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error("line " + std::to_string(row.line) + ": \"" + field + "\" is not an integer");
    }
    return value;
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace switchsim::csv

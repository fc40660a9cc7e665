#include "qcc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qcc {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool try_parse_double(std::string_view cell, double& out) {
    std::string_view t = trim(cell);
    if (t.empty()) return false;
    if (t.front() == '+') t.remove_prefix(1);  // from_chars rejects a leading '+'
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

}  // namespace

double parse_double(std::string_view cell, const std::string& where) {
    double v = 0.0;
    if (!try_parse_double(cell, v))
        throw ParseError(where + ": not a number: '" + std::string(trim(cell)) + "'");
    return v;
}

Csv read_csv(std::istream& in, const std::string& name) {
    Csv csv;
    std::string line;
    std::size_t line_no = 0;
    bool saw_first = false;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        std::vector<std::string> cells = split_row(sv);

        if (!saw_first) {
            saw_first = true;
            width = cells.size();
            bool all_numeric = true;
            for (const auto& c : cells) {
                double tmp;
                if (!try_parse_double(c, tmp)) {
                    all_numeric = false;
                    break;
                }
            }
            if (!all_numeric) {
                csv.header = std::move(cells);
                continue;
            }
        }
        if (cells.size() != width)
            throw ParseError(name + ":" + std::to_string(line_no) +
                             ": row has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(width));
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

Csv read_csv_file(const std::string& path) {
    if (path == "-") return read_csv(std::cin, "<stdin>");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return read_csv(in, path);
}

std::vector<double> numeric_column(const Csv& csv, std::size_t j,
                                   const std::string& name) {
    std::vector<double> out;
    out.reserve(csv.rows.size());
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        if (j >= csv.rows[i].size())
            throw IndexOutOfRange(name + ": row " + std::to_string(i + 1) +
                                  " has no column " + std::to_string(j + 1));
        out.push_back(parse_double(csv.rows[i][j],
                                   name + ": row " + std::to_string(i + 1)));
    }
    return out;
}

std::vector<double> log_returns(std::span<const double> prices) {
    if (prices.size() < 2)
        throw EmptySample("log_returns: need at least two prices");
    std::vector<double> out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0))
            throw NonPositivePrice("log_returns: non-positive price at row " +
                                   std::to_string(i + 1));
        if (i > 0) out.push_back(std::log(prices[i] / prices[i - 1]));
    }
    return out;
}

std::string config_digest(const nlohmann::json& config) {
    const std::string dump = config.dump();  // nlohmann objects sort keys
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : dump) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

}  // namespace qcc

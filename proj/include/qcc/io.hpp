#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qcc/errors.hpp"

namespace qcc {

/// Shortest decimal string that round-trips to exactly `v`.
[[nodiscard]] std::string format_double(double v);

/// Parse a decimal floating-point cell. `where` names the location (file,
/// line, column) quoted in the ParseError on failure.
[[nodiscard]] double parse_double(std::string_view cell, const std::string& where);

/// A parsed CSV table: raw string cells plus the optional header row.
/// Lines starting with '#' and blank lines are skipped. The first remaining
/// row is taken as a header exactly when at least one of its cells does not
/// parse as a number.
struct Csv {
    std::vector<std::string> header;              ///< empty when headerless
    std::vector<std::vector<std::string>> rows;   ///< data cells, row-major

    [[nodiscard]] std::size_t columns() const {
        return !header.empty() ? header.size() : (rows.empty() ? 0 : rows[0].size());
    }
};

/// Read CSV from a stream. Throws ParseError on ragged rows.
[[nodiscard]] Csv read_csv(std::istream& in, const std::string& name);

/// Read CSV from a file ("-" means stdin). Throws ParseError when the file
/// cannot be opened.
[[nodiscard]] Csv read_csv_file(const std::string& path);

/// Column j of a parsed table as numbers; ParseErrors carry row locations.
[[nodiscard]] std::vector<double> numeric_column(const Csv& csv, std::size_t j,
                                                 const std::string& name);

/// Log-returns ln(v_t / v_{t-1}) of a price series; the first observation is
/// consumed. Throws NonPositivePrice when any price is <= 0 and EmptySample
/// when fewer than two prices are given.
[[nodiscard]] std::vector<double> log_returns(std::span<const double> prices);

/// 16-hex-digit FNV-1a digest of the canonical (sorted-key, compact) dump of
/// a JSON configuration. Equal configurations give equal digests.
[[nodiscard]] std::string config_digest(const nlohmann::json& config);

}  // namespace qcc

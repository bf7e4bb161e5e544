#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "robin/asympt.hpp"

namespace robin::io {

/// 17 significant digits, '.' decimal separator; round-trips every double.
std::string format_number(double x);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells already formatted

  void add_row(std::vector<std::string> row);
};

/// RFC-4180 CSV preceded by '#'-prefixed comment lines.
void write_csv(std::ostream& out, const Table& table, std::span<const std::string> comments);

/// Rows as JSON objects keyed by column name; numeric cells become numbers.
nlohmann::json rows_json(const Table& table);

/// Columns h,trace,weyl,boundary,remainder,remainder_normalized,eig_count,kroger_ok,seconds.
Table sweep_table(std::span<const RieszReport> reports, const RegimeSpec& regime, Dimension d,
                  std::span<const double> seconds = {});

nlohmann::json fit_json(const SweepFit& fit);

}  // namespace robin::io

#include "robin/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "robin/errors.hpp"

namespace robin::io {
namespace {

std::string quote_csv(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw InvalidArgument("Table: row width does not match the columns");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& table, std::span<const std::string> comments) {
  for (const auto& line : comments) out << "# " << line << "\r\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << quote_csv(table.columns[i]);
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote_csv(row[i]);
    out << "\r\n";
  }
}

nlohmann::json rows_json(const Table& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& cell = row[i];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell == "true" || cell == "false") {
        obj[table.columns[i]] = cell == "true";
      } else if (!cell.empty() && end == cell.c_str() + cell.size()) {
        obj[table.columns[i]] = v;
      } else {
        obj[table.columns[i]] = cell;
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

Table sweep_table(std::span<const RieszReport> reports, const RegimeSpec& regime, Dimension d,
                  std::span<const double> seconds) {
  Table t;
  t.columns = {"h", "trace", "weyl", "boundary", "remainder", "remainder_normalized", "eig_count", "kroger_ok",
               "seconds"};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    t.add_row({format_number(r.h), format_number(r.trace), format_number(r.weyl_term),
               format_number(r.boundary_term), format_number(r.remainder),
               format_number(normalized_remainder(r, regime, d)), std::to_string(r.eig_count),
               r.kroger_ok ? "true" : "false", format_number(i < seconds.size() ? seconds[i] : 0.0)});
  }
  return t;
}

nlohmann::json fit_json(const SweepFit& fit) {
  nlohmann::json j;
  j["fitted_exponent"] = fit.fitted_exponent;
  j["fit_residual"] = fit.fit_residual;
  j["sign_flip"] = fit.sign_flip;
  j["decays"] = fit.decays();
  auto pts = nlohmann::json::array();
  for (const auto& p : fit.points) pts.push_back({{"h", p.h}, {"remainder_normalized", p.remainder_normalized}});
  j["points"] = pts;
  return j;
}

}  // namespace robin::io

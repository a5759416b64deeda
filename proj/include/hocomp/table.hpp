#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hocomp/curves.hpp"
#include "hocomp/experiments.hpp"
#include "hocomp/homogenization.hpp"
#include "hocomp/opacity.hpp"

namespace hocomp {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-named result rows, written as CSV with 17 significant digits.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return columns_.size(); }
  const Cell& cell(std::size_t row, std::size_t col) const;
  /// Column index by name, throws invalid_argument when absent.
  std::size_t column(const std::string& name) const;
  /// Numeric view of a cell; strings read as NaN.
  double number(std::size_t row, std::size_t col) const;
  std::string text(std::size_t row, std::size_t col) const;

  /// Optional comment lines are written first, each prefixed with "# ".
  void write_csv(std::ostream& out, const std::vector<std::string>& comments = {}) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// %.17g, with inf, -inf and nan spelled out.
std::string format_number(double x);

/// Sweep rows; runtime_ms is "NA" unless timings is set, so that repeated
/// runs produce identical files.
Table critical_table(const CriticalResult& result, bool timings = false);
Table verdict_table(const CriticalResult& result);
Table norm_table(const NormTable& table);
Table avoidance_table(const AvoidanceReport& report);
Table rate_table(const RateReport& report);
Table bounds_table(const BoundsReport& report);
Table path_table(const Path& path);

}  // namespace hocomp

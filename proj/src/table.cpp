#include "hocomp/table.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "hocomp/error.hpp"

namespace hocomp {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  require(!columns_.empty(), "a table needs at least one column");
}

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == columns_.size(), "row width does not match the column count");
  rows_.push_back(std::move(row));
}

const Cell& Table::cell(std::size_t row, std::size_t col) const {
  require(row < rows_.size() && col < columns_.size(), "table index out of range");
  return rows_[row][col];
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == name) return c;
  fail(ErrorCode::invalid_argument, "no column named " + name);
}

double Table::number(std::size_t row, std::size_t col) const {
  const Cell& c = cell(row, col);
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return double(*i);
  return std::numeric_limits<double>::quiet_NaN();
}

std::string Table::text(std::size_t row, std::size_t col) const {
  const Cell& c = cell(row, col);
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void Table::write_csv(std::ostream& out, const std::vector<std::string>& comments) const {
  for (const std::string& line : comments) out << "# " << line << '\n';
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  out << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << text(r, c);
    out << '\n';
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::int64_t flag(bool b) { return b ? 1 : 0; }

}  // namespace

Table critical_table(const CriticalResult& result, bool timings) {
  Table t({"p", "parity", "k", "epsilon", "distance", "psi_ref", "gap", "envelope", "within_envelope",
           "runtime_ms", "status"});
  // gap(k) = odd(k) - even(k), shared by both rows of the same p and k
  std::map<std::pair<std::string, int>, std::pair<double, double>> by_k;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SequenceRecord& r : result.records) {
    auto& slot = by_k.try_emplace({r.p.to_string(), r.k}, nan, nan).first->second;
    const double d = r.status == RowStatus::inadmissible ? nan : r.distance;
    (r.parity == Parity::even ? slot.first : slot.second) = d;
  }
  for (const SequenceRecord& r : result.records) {
    const auto& [even, odd] = by_k.at({r.p.to_string(), r.k});
    const double gap = odd - even;
    const double env = result.envelope(r.p, r.epsilon);
    const bool within = !std::isnan(gap) && std::abs(gap) <= env;
    t.add_row({r.p.to_string(), std::string(to_string(r.parity)), std::int64_t(r.k), r.epsilon,
               r.status == RowStatus::inadmissible ? nan : r.distance, result.psi_ref, gap, env, flag(within),
               timings ? Cell(r.runtime_ms) : Cell(std::string("NA")), std::string(to_string(r.status))});
  }
  return t;
}

Table verdict_table(const CriticalResult& result) {
  Table t({"p", "verdict", "passed", "detail"});
  for (const Verdict& v : result.verdicts) {
    std::string detail = v.detail;
    for (char& c : detail)
      if (c == ',') c = ';';
    t.add_row({v.p.to_string(), v.kind, flag(v.passed), detail});
  }
  return t;
}

Table norm_table(const NormTable& table) {
  Table t({"angle", "psi", "R_last", "cauchy_tail", "converged"});
  for (std::size_t i = 0; i < table.estimates.size(); ++i) {
    const PsiEstimate& e = table.estimates[i];
    t.add_row({table.angles[i], e.value, e.window_sizes.back(), e.cauchy_tail, flag(e.converged)});
  }
  return t;
}

Table avoidance_table(const AvoidanceReport& report) {
  Table t({"from_x", "from_y", "to_x", "to_y", "distance", "incursion_depth", "violation"});
  for (const AvoidanceTrial& a : report.trials)
    t.add_row({a.from.x, a.from.y, a.to.x, a.to.y, a.distance, a.incursion_depth, flag(a.violation)});
  return t;
}

Table rate_table(const RateReport& report) {
  Table t({"epsilon", "status", "distance", "psi_ref", "deviation", "lower", "upper", "within"});
  for (const RateSample& s : report.samples)
    t.add_row({s.epsilon, std::string(to_string(s.status)), s.distance, report.psi_ref, s.deviation, s.lower,
               s.upper, flag(s.within)});
  return t;
}

Table bounds_table(const BoundsReport& report) {
  Table t({"x1", "y1", "x2", "y2", "status", "distance", "lower", "upper", "growth_ok", "snapped_distance",
           "snap_gap", "snap_bound", "snap_ok"});
  for (const BoundsPair& b : report.pairs)
    t.add_row({b.xi1.x, b.xi1.y, b.xi2.x, b.xi2.y, std::string(to_string(b.status)), b.distance, b.lower,
               b.upper, flag(b.growth_ok), b.snapped_distance, b.snap_gap, b.snap_bound, flag(b.snap_ok)});
  return t;
}

Table path_table(const Path& path) {
  Table t({"x", "y"});
  for (Point2 v : path.vertices()) t.add_row({v.x, v.y});
  return t;
}

}  // namespace hocomp

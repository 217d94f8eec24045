// Report rows and their JSON / CSV / table renderings.
//
// Column names and JSON keys are stable; see docs/report-format.md.

#ifndef STEIN_REPORT_HPP_
#define STEIN_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stein/rational.hpp"
#include "stein/surd.hpp"

namespace stein::report {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { json, csv, table };
enum class Precision { exact, float64 };

/// Missing values (e.g. a bound that is undefined for a degenerate row)
/// render as null / empty.
using Value = std::variant<std::monostate, Rational, Surd, double, long, bool, std::string>;

struct Row {
  std::vector<std::pair<std::string, Value>> cells;
  bool violation = false;

  void add(std::string key, Value value) { cells.emplace_back(std::move(key), std::move(value)); }
  const Value* find(const std::string& key) const;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  Precision precision = Precision::exact;
  std::vector<std::pair<std::string, std::string>> grid;  // parameter grid
  std::vector<Row> rows;

  size_t violations() const;
};

std::string format_name(Format f);
std::string precision_name(Precision p);
std::optional<Format> parse_format(const std::string& s);
std::optional<Precision> parse_precision(const std::string& s);

void write(std::ostream& out, const Report& report, Format format);
void write_json(std::ostream& out, const Report& report);
void write_csv(std::ostream& out, const Report& report);
void write_table(std::ostream& out, const Report& report);

/// Rendering of a single value as used in CSV and table output.
std::string render_text(const Value& v, Precision precision);

}  // namespace stein::report

#endif  // STEIN_REPORT_HPP_

#include "stein/report.hpp"

#include <algorithm>
#include <cstdio>
#include <type_traits>

#include "json.hpp"

namespace stein::report {

namespace {

using nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ordered_json rational_exact(const Rational& q) {
  return ordered_json{{"numerator", q.get_num().get_str()},
                      {"denominator", q.get_den().get_str()}};
}

ordered_json to_json_value(const Value& v, Precision precision) {
  return std::visit(
      [&](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Rational>) {
          if (precision == Precision::float64) return to_double(x);
          return to_decimal_string(x);
        } else if constexpr (std::is_same_v<T, Surd>) {
          return x.to_double();
        } else {
          return x;
        }
      },
      v);
}

}  // namespace

const Value* Row::find(const std::string& key) const {
  for (const auto& [k, v] : cells) {
    if (k == key) return &v;
  }
  return nullptr;
}

size_t Report::violations() const {
  return static_cast<size_t>(
      std::count_if(rows.begin(), rows.end(), [](const Row& r) { return r.violation; }));
}

std::string format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::table: return "table";
  }
  return "json";
}

std::string precision_name(Precision p) {
  return p == Precision::exact ? "exact" : "float64";
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  return std::nullopt;
}

std::optional<Precision> parse_precision(const std::string& s) {
  if (s == "exact") return Precision::exact;
  if (s == "float64") return Precision::float64;
  return std::nullopt;
}

std::string render_text(const Value& v, Precision precision) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, Rational>) {
          if (precision == Precision::float64) return format_double(to_double(x));
          return to_decimal_string(x);
        } else if constexpr (std::is_same_v<T, Surd>) {
          return format_double(x.to_double());
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else {
          return x;
        }
      },
      v);
}

void write_json(std::ostream& out, const Report& report) {
  ordered_json header;
  header["tool"] = "stein_verify";
  header["version"] = kToolVersion;
  header["command"] = report.command;
  header["seed"] = report.seed;
  header["precision"] = precision_name(report.precision);
  ordered_json grid = ordered_json::object();
  for (const auto& [k, v] : report.grid) grid[k] = v;
  header["grid"] = grid;

  ordered_json rows = ordered_json::array();
  for (const Row& row : report.rows) {
    ordered_json obj;
    for (const auto& [key, value] : row.cells) {
      obj[key] = to_json_value(value, report.precision);
      if (const auto* q = std::get_if<Rational>(&value);
          q && report.precision == Precision::exact) {
        obj[key + "_exact"] = rational_exact(*q);
      } else if (const auto* s = std::get_if<Surd>(&value)) {
        // base + sqrt(radicand)
        obj[key + "_exact"] = ordered_json{{"base", to_fraction_string(s->base())},
                                           {"radicand", to_fraction_string(s->radicand())}};
      }
    }
    obj["violation"] = row.violation;
    rows.push_back(std::move(obj));
  }

  ordered_json doc;
  doc["header"] = header;
  doc["rows"] = rows;
  doc["summary"] = ordered_json{{"rows", report.rows.size()},
                                {"violations", report.violations()}};
  out << doc.dump(2) << '\n';
}

namespace {

std::vector<std::string> column_names(const Report& report) {
  std::vector<std::string> names;
  for (const Row& row : report.rows) {
    for (const auto& [key, value] : row.cells) {
      if (std::find(names.begin(), names.end(), key) == names.end()) names.push_back(key);
    }
  }
  names.push_back("violation");
  return names;
}

std::string cell_text(const Row& row, const std::string& key, Precision precision) {
  if (key == "violation") return row.violation ? "true" : "false";
  const Value* v = row.find(key);
  return v ? render_text(*v, precision) : "";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_header_comments(std::ostream& out, const Report& report) {
  out << "# stein_verify " << kToolVersion << " command=" << report.command
      << " seed=" << report.seed << " precision=" << precision_name(report.precision) << '\n';
  for (const auto& [k, v] : report.grid) out << "# " << k << '=' << v << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const Report& report) {
  write_header_comments(out, report);
  const auto names = column_names(report);
  for (size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  for (const Row& row : report.rows) {
    for (size_t i = 0; i < names.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cell_text(row, names[i], report.precision));
    }
    out << '\n';
  }
}

void write_table(std::ostream& out, const Report& report) {
  write_header_comments(out, report);
  const auto names = column_names(report);
  // Long exact decimals would make tables unreadable; tables use float64.
  std::vector<std::vector<std::string>> cells;
  std::vector<size_t> width(names.size());
  for (size_t i = 0; i < names.size(); ++i) width[i] = names[i].size();
  for (const Row& row : report.rows) {
    auto& line = cells.emplace_back();
    for (size_t i = 0; i < names.size(); ++i) {
      std::string text = cell_text(row, names[i], Precision::float64);
      width[i] = std::max(width[i], text.size());
      line.push_back(std::move(text));
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      out << line[i] << std::string(width[i] - line[i].size(), ' ');
    }
    out << '\n';
  };
  emit(names);
  for (const auto& line : cells) emit(line);
  out << "# rows=" << report.rows.size() << " violations=" << report.violations() << '\n';
}

void write(std::ostream& out, const Report& report, Format format) {
  switch (format) {
    case Format::json: write_json(out, report); break;
    case Format::csv: write_csv(out, report); break;
    case Format::table: write_table(out, report); break;
  }
}

}  // namespace stein::report

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "robin/boundary.hpp"
#include "robin/parallel.hpp"
#include "robin/version.hpp"

namespace robin::cli {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_long(long long v) { return std::to_string(v); }

inline double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
}

// Grid grammar:
//   "a"        single value
//   "a,b,c"    explicit list
//   "a:s:b"    linear, start:step:stop inclusive
//   "a:b:Nlog" N log-spaced points from a to b inclusive
inline std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty grid");
  std::vector<std::string> parts;
  {
    std::stringstream ss(spec);
    std::string tok;
    const char sep = spec.find(':') != std::string::npos ? ':' : ',';
    while (std::getline(ss, tok, sep)) parts.push_back(tok);
    if (sep == ',' || parts.size() == 1) {
      std::vector<double> vals;
      for (const auto& p : parts) vals.push_back(parse_number(p));
      return vals;
    }
  }
  if (parts.size() != 3)
    throw std::invalid_argument("grid '" + spec + "' needs start:step:stop or lo:hi:Nlog");

  if (parts[2].size() > 3 && parts[2].substr(parts[2].size() - 3) == "log") {
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const long n = std::lround(parse_number(parts[2].substr(0, parts[2].size() - 3)));
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
      throw std::invalid_argument("log grid needs 0 < lo < hi and N >= 2");
    std::vector<double> vals(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (long i = 0; i < n; ++i)
      vals[static_cast<std::size_t>(i)] =
          std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    vals.front() = lo;
    vals.back() = hi;
    return vals;
  }

  const double start = parse_number(parts[0]);
  const double step = parse_number(parts[1]);
  const double stop = parse_number(parts[2]);
  if (!(step > 0.0) || stop < start)
    throw std::invalid_argument("linear grid needs step > 0 and stop >= start");
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) vals.push_back(start + step * static_cast<double>(i));
  if (std::abs(vals.back() - stop) <= 1e-9 * step) vals.back() = stop;
  return vals;
}

inline std::vector<long> parse_index_grid(const std::string& spec) {
  std::vector<long> out;
  for (double v : parse_grid(spec)) {
    const long k = std::lround(v);
    if (std::abs(v - static_cast<double>(k)) > 1e-9)
      throw std::invalid_argument("index grid must contain integers: '" + spec + "'");
    out.push_back(k);
  }
  return out;
}

// Boundary-condition grid: numbers are Robin parameters; the tokens D and N
// (or dirichlet / neumann) select the limiting conditions.
inline std::vector<BoundaryCondition> parse_bc_grid(const std::string& spec) {
  std::vector<BoundaryCondition> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "D" || tok == "d" || tok == "dirichlet")
      out.push_back(BoundaryCondition::dirichlet());
    else if (tok == "N" || tok == "n" || tok == "neumann")
      out.push_back(BoundaryCondition::neumann());
    else
      for (double b : parse_grid(tok)) out.push_back(BoundaryCondition::robin(b));
  }
  if (out.empty()) throw std::invalid_argument("empty boundary-condition grid");
  return out;
}

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

// A finished sweep: ordered manifest, named columns, preformatted cells, and
// free-form comment lines (period statistics, verdicts). The CSV rendering is
// byte-deterministic for a fixed spec and tool version.
struct Table {
  std::vector<std::pair<std::string, std::string>> manifest;
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void manifest_entry(std::string key, std::string value) {
    manifest.emplace_back(std::move(key), std::move(value));
  }
};

inline void write_csv(const Table& t, std::ostream& os) {
  os << "# tool: robin " << version << "\n";
  for (const auto& [k, v] : t.manifest) os << "# " << k << ": " << v << "\n";
  for (const auto& c : t.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

inline void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  j["manifest"]["tool"] = std::string("robin ") + version;
  for (const auto& [k, v] : t.manifest) j["manifest"][k] = v;
  if (!t.comments.empty()) j["manifest"]["notes"] = t.comments;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  os << j.dump(2) << "\n";
}

// Writes to the given path, or stdout for "-" / empty.
inline void write_table(const Table& t, OutputFormat format, const std::string& path) {
  auto render = [&](std::ostream& os) {
    format == OutputFormat::csv ? write_csv(t, os) : write_json(t, os);
  };
  if (path.empty() || path == "-") {
    render(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  render(os);
}

// Evaluates fn(i) over a grid of cells with a worker pool. Each cell returns
// its preformatted row; a throwing cell becomes a row with an error status so
// nothing is silently dropped. Rows keep grid order regardless of the job
// count. Returns the number of failed cells.
template <class Fn>
std::size_t run_cells(std::size_t n, int jobs, Table& table, Fn&& fn) {
  std::vector<std::vector<std::string>> rows(n);
  std::vector<std::uint8_t> failed(n, 0);
  parallel_for(n, jobs, [&](std::size_t i) {
    try {
      rows[i] = fn(i);
      rows[i].push_back("ok");
    } catch (const std::exception& e) {
      rows[i].assign(table.columns.size() - 1, "");
      rows[i].push_back(std::string("error: ") + e.what());
      failed[i] = 1;
    }
  });
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    table.rows.push_back(std::move(rows[i]));
    bad += failed[i];
  }
  return bad;
}

}  // namespace robin::cli

#ifndef HFLOW_IO_HPP_
#define HFLOW_IO_HPP_

/**
 * @file
 * @brief CSV / JSON serialization of points, witnesses and grid slices,
 * with provenance comment lines.
 */

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hflow/grid.hpp"
#include "hflow/hgroup.hpp"
#include "hflow/qcheck.hpp"

namespace hflow {

using json = nlohmann::json;

/// 17 significant digits, so values round-trip exactly.
inline std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// FNV-1a 64 of the canonical (key-sorted, compact) dump, as 16 hex digits.
inline std::string scenario_hash(const json &j)
{
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Scenario hash and parameter block written into every output file.
struct Provenance
{
  std::string hash;
  json params = json::object();

  std::string comment_lines() const { return "# scenario_hash: " + hash + "\n# params: " + params.dump() + "\n"; }
};

inline json to_json(const Point &p) { return json::array({p.x, p.y, p.z}); }

inline Point point_from_json(const json &j)
{
  if (!j.is_array() || j.size() != 3) { throw std::invalid_argument("a point must be [x, y, z]"); }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json to_json(const HqcWitness &w)
{
  return {{"p", to_json(w.p)}, {"q", to_json(w.q)}, {"w", to_json(w.w)}, {"gap", w.gap}};
}

inline HqcWitness witness_from_json(const json &j)
{
  return {point_from_json(j.at("p")), point_from_json(j.at("q")), point_from_json(j.at("w")), j.at("gap").get<double>()};
}

inline json to_json(const HorizontalDirection &d) { return {{"theta", d.theta}}; }

inline void write_text(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw std::runtime_error("cannot write " + path.string()); }
  out << text;
}

inline void write_json(const std::filesystem::path &path, const json &j) { write_text(path, j.dump(2) + "\n"); }

inline json read_json(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in) { throw std::runtime_error("cannot read " + path.string()); }
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

/// CSV with provenance comments, a header row, and numeric rows.
inline void write_csv(const std::filesystem::path &path, const std::vector<std::string> &columns,
                      const std::vector<std::vector<double>> &rows, const Provenance &prov)
{
  std::ostringstream os;
  os << prov.comment_lines();
  for (std::size_t c = 0; c < columns.size(); ++c) { os << (c ? "," : "") << columns[c]; }
  os << '\n';
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) { os << (c ? "," : "") << format_double(row[c]); }
    os << '\n';
  }
  write_text(path, os.str());
}

inline std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in) { throw std::runtime_error("cannot read " + path.string()); }
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') { continue; }
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) { row.push_back(std::stod(cell)); }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const GridSpec &s)
{
  return {{"lo", s.lo}, {"hi", s.hi}, {"dims", s.dims}};
}

inline GridSpec grid_spec_from_json(const json &j)
{
  GridSpec s;
  s.lo = j.at("lo").get<std::array<double, 3>>();
  s.hi = j.at("hi").get<std::array<double, 3>>();
  if (j.contains("dims")) {
    s.dims = j.at("dims").get<std::array<std::size_t, 3>>();
  } else {
    s = GridSpec::with_spacing(s.lo, s.hi, j.at("spacing").get<double>());
  }
  s.validate();
  return s;
}

/**
 * @brief Writes stem.csv (x, y, z, value; x fastest) and the stem.json header.
 */
inline void save_slice(const std::filesystem::path &dir, const std::string &stem, const GridSlice &s,
                       const Provenance &prov)
{
  const GridSpec &g = s.spec();
  std::vector<std::vector<double>> rows;
  rows.reserve(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Point p = g.node(n);
    rows.push_back({p.x, p.y, p.z, s.values()[n]});
  }
  write_csv(dir / (stem + ".csv"), {"x", "y", "z", "value"}, rows, prov);
  json h = to_json(g);
  h["outside_value"] = s.outside_value();
  h["values_file"] = stem + ".csv";
  h["scenario_hash"] = prov.hash;
  h["params"] = prov.params;
  write_json(dir / (stem + ".json"), h);
}

/// Reloads a slice from its JSON header (values file resolved next to it).
inline GridSlice load_slice(const std::filesystem::path &header_path)
{
  const json h = read_json(header_path);
  const GridSpec g = grid_spec_from_json(h);
  const auto rows = read_csv_rows(header_path.parent_path() / h.at("values_file").get<std::string>());
  if (rows.size() != g.size()) { throw std::invalid_argument("slice values file has the wrong row count"); }
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto &r : rows) {
    if (r.size() != 4) { throw std::invalid_argument("slice rows must be x,y,z,value"); }
    v.push_back(r[3]);
  }
  return GridSlice(g, std::move(v), h.at("outside_value").get<double>());
}

}  // namespace hflow

#endif  // HFLOW_IO_HPP_

// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "format.hpp"
#include "lipderiv/error.hpp"

namespace lipderiv::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

/// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') out.push_back({number, line});
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& what) {
  throw InputError(source + ": row " + std::to_string(line) + ": " + what);
}

double number_at(const std::string& source, std::size_t line, const std::string& token) {
  try {
    return parse_number(token);
  } catch (const InputError& e) {
    fail_at(source, line, e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("error while reading " + path);
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  if (path.empty()) throw InputError("empty output path");
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::string>{}(path) % 100000);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place: " + path);
  }
}

double parse_number(std::string_view token) {
  token = trim(token);
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity")
    return std::numeric_limits<double>::infinity();
  if (lower == "-inf" || lower == "-infinity") return -std::numeric_limits<double>::infinity();
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size() || std::isnan(v))
    throw InputError("not a number: '" + std::string(token) + "'");
  return v;
}

std::string format_number(double v) { return detail::num(v); }

PointCloud parse_point_cloud(std::string_view text, const std::string& source) {
  auto lines = content_lines(text);
  if (lines.empty()) throw InputError(source + ": empty point cloud");
  auto header = split(lines[0].text);
  if (header.size() < 2 || header[0] != "id")
    fail_at(source, lines[0].number, "header must start with 'id' followed by coordinate columns");
  PointCloud pc;
  std::size_t col = 1;
  while (col < header.size() && !header[col].empty() && header[col][0] == 'x') ++col;
  pc.dim = col - 1;
  pc.value_dim = header.size() - col;

  std::unordered_set<std::string> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = split(lines[li].text);
    if (cells.size() != header.size())
      fail_at(source, lines[li].number,
              "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(cells.size()));
    if (cells[0].empty()) fail_at(source, lines[li].number, "empty id");
    if (!seen.insert(cells[0]).second) fail_at(source, lines[li].number, "duplicate id '" + cells[0] + "'");
    pc.ids.push_back(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = number_at(source, lines[li].number, cells[c]);
      if (c <= pc.dim) {
        if (!std::isfinite(v)) fail_at(source, lines[li].number, "coordinates must be finite");
        pc.coords.push_back(v);
      } else {
        pc.values.push_back(v);
      }
    }
  }
  if (pc.ids.empty()) throw InputError(source + ": no points");
  return pc;
}

FiniteMetricSpace parse_distance_matrix(std::string_view text, const std::string& source) {
  auto lines = content_lines(text);
  if (lines.empty()) throw InputError(source + ": empty distance matrix");
  auto header = split(lines[0].text);
  if (header.size() < 2) fail_at(source, lines[0].number, "header needs a corner cell and at least one id");
  std::vector<std::string> ids(header.begin() + 1, header.end());
  const std::size_t n = ids.size();
  if (lines.size() != n + 1)
    throw InputError(source + ": expected " + std::to_string(n) + " matrix rows, got " +
                     std::to_string(lines.size() - 1));
  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 1];
    auto cells = split(line.text);
    if (cells.size() != n + 1)
      fail_at(source, line.number, "expected " + std::to_string(n + 1) + " fields, got " + std::to_string(cells.size()));
    if (cells[0] != ids[i]) fail_at(source, line.number, "row id '" + cells[0] + "' does not match column '" + ids[i] + "'");
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = number_at(source, line.number, cells[j + 1]);
  }
  try {
    return FiniteMetricSpace::from_table(std::move(ids), std::move(table));
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
}

ScalarField parse_scalar_field(std::string_view text, const std::string& source, SpacePtr space) {
  auto lines = content_lines(text);
  if (lines.empty()) throw InputError(source + ": empty field");
  auto header = split(lines[0].text);
  if (header.size() != 2 || header[0] != "id") fail_at(source, lines[0].number, "header must be 'id,value'");
  const std::size_t n = space->size();
  std::vector<double> values(n, 0.0);
  std::vector<bool> set(n, false);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = split(lines[li].text);
    if (cells.size() != 2) fail_at(source, lines[li].number, "expected 2 fields, got " + std::to_string(cells.size()));
    std::size_t idx = 0;
    try {
      idx = space->index_of(cells[0]);
    } catch (const InputError&) {
      fail_at(source, lines[li].number, "unknown id '" + cells[0] + "'");
    }
    if (set[idx]) fail_at(source, lines[li].number, "duplicate id '" + cells[0] + "'");
    values[idx] = number_at(source, lines[li].number, cells[1]);
    set[idx] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!set[i]) throw InputError(source + ": no value for id '" + space->id(i) + "'");
  return ScalarField(std::move(space), std::move(values));
}

SetFamily parse_set_family(std::string_view text, const std::string& source) {
  auto lines = content_lines(text);
  if (lines.empty()) throw InputError(source + ": empty set family");
  std::string_view head = lines[0].text;
  if (head.substr(0, 7) != "ground:") fail_at(source, lines[0].number, "first line must be 'ground: <ids>'");
  std::vector<std::string> ground;
  if (!trim(head.substr(7)).empty()) ground = split(head.substr(7));
  for (const auto& g : ground)
    if (g.empty()) fail_at(source, lines[0].number, "empty ground element");
  std::vector<std::vector<std::string>> sets;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].text == "{}") {
      sets.emplace_back();
      continue;
    }
    auto cells = split(lines[li].text);
    for (const auto& c : cells)
      if (std::find(ground.begin(), ground.end(), c) == ground.end())
        fail_at(source, lines[li].number, "element '" + c + "' is not in the ground set");
    sets.push_back(std::move(cells));
  }
  try {
    return SetFamily::from_sets(std::move(ground), sets);
  } catch (const std::exception& e) {
    throw InputError(source + ": " + e.what());
  }
}

SampledMap map_from_cloud(const PointCloud& cloud, SpacePtr domain, PNorm p) {
  if (cloud.value_dim == 0) throw InputError("point cloud has no value column");
  if (domain->size() != cloud.ids.size()) throw InputError("domain size does not match the point cloud");
  if (cloud.value_dim == 1) {
    for (double v : cloud.values)
      if (!std::isfinite(v)) throw InputError("map values must be finite");
    return SampledMap::real(std::move(domain), cloud.values);
  }
  return SampledMap::normed(std::move(domain), cloud.values, cloud.value_dim, p);
}

std::string format_point_cloud(const SampledMap& f) {
  const FiniteMetricSpace& x = f.domain();
  if (!x.has_embedding()) throw InputError("point-cloud export needs an embedded domain");
  if (f.codomain() == SampledMap::Codomain::Table) throw InputError("point-cloud export needs numeric values");
  std::string out = "id";
  for (std::size_t c = 1; c <= x.dim(); ++c) out += ",x" + std::to_string(c);
  const std::size_t m = f.codomain_dim();
  if (m == 1) out += ",value";
  else
    for (std::size_t c = 1; c <= m; ++c) out += ",v" + std::to_string(c);
  out += '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += x.id(i);
    for (double c : x.coords(i)) out += "," + format_number(c);
    for (double v : f.value(i)) out += "," + format_number(v);
    out += '\n';
  }
  return out;
}

std::string format_scalar_field(const ScalarField& g) {
  std::string out = "id,value\n";
  for (std::size_t i = 0; i < g.size(); ++i) out += g.space().id(i) + "," + format_number(g[i]) + "\n";
  return out;
}

std::string format_set_family(const SetFamily& fam) {
  const auto& ground = fam.ground();
  std::string out = "ground:";
  for (std::size_t i = 0; i < ground.size(); ++i) out += (i ? "," : " ") + ground[i];
  out += '\n';
  for (Mask m : fam.members()) {
    if (m == 0) {
      out += "{}\n";
      continue;
    }
    bool first = true;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (m >> i & 1) {
        out += (first ? "" : ",") + ground[i];
        first = false;
      }
    out += '\n';
  }
  return out;
}

std::string format_profile(const SampledMap& f, const ScaleProfile& p) {
  std::string out = "id,radius,lip_upper,lip_upper_closed,big_below,little_below,little_closed_below,loc\n";
  for (std::size_t i = 0; i < p.points; ++i)
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      const ScaleRow& r = p.at(i, k);
      out += f.domain().id(i) + "," + format_number(p.radii[k]) + "," + format_number(r.lip_upper) + "," +
             format_number(r.lip_upper_closed) + "," + format_number(r.big_below) + "," +
             format_number(r.little_below) + "," + format_number(r.little_closed_below) + "," +
             format_number(r.loc) + "\n";
    }
  return out;
}

std::string format_profile_summary(const SampledMap& f, const ScaleProfile& p) {
  std::string out = "id,lip_hat,big_hat,loc_hat,nearest,unresolved,divergent\n";
  for (std::size_t i = 0; i < p.points; ++i) {
    const PointSummary& s = p.summary[i];
    out += f.domain().id(i) + "," + format_number(s.lip_hat) + "," + format_number(s.big_hat) + "," +
           format_number(s.loc_hat) + "," + format_number(s.nearest) + "," + (s.unresolved ? "1" : "0") +
           "," + (s.divergent ? "1" : "0") + "\n";
  }
  return out;
}

namespace {

nlohmann::json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string report_json(const SuiteReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : report.results)
    checks.push_back({{"name", r.name},
                      {"status", to_string(r.status)},
                      {"discrepancy", json_number(r.discrepancy)},
                      {"tolerance", json_number(r.tolerance)},
                      {"witness", r.witness},
                      {"note", r.note}});
  nlohmann::json doc = {{"passed", report.passed()},
                        {"counts",
                         {{"pass", report.count(CheckStatus::Pass)},
                          {"fail", report.count(CheckStatus::Fail)},
                          {"skipped", report.count(CheckStatus::Skipped)}}},
                        {"checks", std::move(checks)}};
  return doc.dump(2) + "\n";
}

std::string report_table(const SuiteReport& report) {
  std::size_t width = 5;
  for (const auto& r : report.results) width = std::max(width, r.name.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::string out = pad("check", width) + "  " + pad("status", 8) + pad("discrepancy", 24) + "tolerance\n";
  for (const auto& r : report.results) {
    out += pad(r.name, width) + "  " + pad(to_string(r.status), 8);
    if (r.status == CheckStatus::Skipped) out += r.note + "\n";
    else out += pad(format_number(r.discrepancy), 24) + format_number(r.tolerance) + "\n";
  }
  out += std::to_string(report.count(CheckStatus::Pass)) + " passed, " +
         std::to_string(report.count(CheckStatus::Fail)) + " failed, " +
         std::to_string(report.count(CheckStatus::Skipped)) + " skipped\n";
  return out;
}

}  // namespace lipderiv::io

// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lipderiv/error.hpp"

namespace lipderiv {

PNorm parse_pnorm(const std::string& tag) {
  if (tag == "1") return PNorm::L1;
  if (tag == "2") return PNorm::L2;
  if (tag == "inf" || tag == "Inf" || tag == "infinity") return PNorm::Linf;
  throw InputError("unknown p-norm tag '" + tag + "' (expected 1, 2 or inf)");
}

std::string to_string(PNorm p) {
  switch (p) {
    case PNorm::L1: return "1";
    case PNorm::L2: return "2";
    case PNorm::Linf: return "inf";
  }
  return "?";
}

double norm(std::span<const double> v, PNorm p) {
  double acc = 0.0;
  switch (p) {
    case PNorm::L1:
      for (double c : v) acc += std::abs(c);
      return acc;
    case PNorm::L2:
      if (v.size() == 1) return std::abs(v[0]);
      for (double c : v) acc += c * c;
      return std::sqrt(acc);
    case PNorm::Linf:
      for (double c : v) acc = std::max(acc, std::abs(c));
      return acc;
  }
  return acc;
}

double norm_distance(std::span<const double> a, std::span<const double> b, PNorm p) {
  if (a.size() == 1) return std::abs(a[0] - b[0]);
  double acc = 0.0;
  switch (p) {
    case PNorm::L1:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
    case PNorm::L2:
      for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(acc);
    case PNorm::Linf:
      for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
      return acc;
  }
  return acc;
}

FiniteMetricSpace FiniteMetricSpace::from_table(std::vector<std::string> ids,
                                                std::vector<double> table) {
  if (ids.empty()) throw InputError("metric space needs at least one point");
  if (table.size() != ids.size() * ids.size())
    throw InputError("distance table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(ids.size() * ids.size()));
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.table_ = std::move(table);
  s.build_index();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_embedding(std::vector<std::string> ids,
                                                    std::vector<double> coords, std::size_t dim,
                                                    PNorm p) {
  if (ids.empty()) throw InputError("metric space needs at least one point");
  if (dim == 0) throw InputError("embedding dimension must be positive");
  if (coords.size() != ids.size() * dim) throw InputError("coordinate count does not match ids");
  for (double c : coords)
    if (!std::isfinite(c)) throw InputError("non-finite coordinate");
  FiniteMetricSpace s;
  s.ids_ = std::move(ids);
  s.coords_ = std::move(coords);
  s.dim_ = dim;
  s.pnorm_ = p;
  s.build_index();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::on_line(std::span<const double> xs) {
  std::vector<std::string> ids;
  ids.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ids.push_back(std::to_string(i));
  return from_embedding(std::move(ids), std::vector<double>(xs.begin(), xs.end()), 1, PNorm::L2);
}

FiniteMetricSpace FiniteMetricSpace::discrete(std::vector<std::string> ids) {
  std::size_t n = ids.size();
  std::vector<double> t(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) t[i * n + i] = 0.0;
  return from_table(std::move(ids), std::move(t));
}

FiniteMetricSpace FiniteMetricSpace::materialized() const {
  FiniteMetricSpace s = *this;
  const std::size_t n = size();
  s.table_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.table_[i * n + j] = distance(i, j);
  return s;
}

void FiniteMetricSpace::build_index() {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) throw InputError("duplicate point id '" + ids_[i] + "'");
  }
  if (dim_ == 1) {
    line_order_.resize(ids_.size());
    std::iota(line_order_.begin(), line_order_.end(), std::size_t{0});
    std::stable_sort(line_order_.begin(), line_order_.end(),
                     [&](std::size_t a, std::size_t b) { return coords_[a] < coords_[b]; });
    line_rank_.resize(ids_.size());
    line_sorted_.resize(ids_.size());
    for (std::size_t k = 0; k < line_order_.size(); ++k) {
      line_rank_[line_order_[k]] = k;
      line_sorted_[k] = coords_[line_order_[k]];
    }
  }
}

std::size_t FiniteMetricSpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown point id '" + id + "'");
  return it->second;
}

double FiniteMetricSpace::distance(std::size_t i, std::size_t j) const {
  if (!table_.empty()) return table_[i * ids_.size() + j];
  if (dim_ == 1) return std::abs(coords_[i] - coords_[j]);
  return norm_distance(coords(i), coords(j), pnorm_);
}

std::span<const double> FiniteMetricSpace::coords(std::size_t i) const {
  return std::span<const double>(coords_).subspan(i * dim_, dim_);
}

std::pair<std::size_t, std::size_t> FiniteMetricSpace::line_ball_range(std::size_t x, double r,
                                                                       bool closed) const {
  // Bracket by coordinate, then trim with the exact distance so the result
  // agrees with distance() bit for bit.
  const double c = coords_[x];
  std::size_t lo = static_cast<std::size_t>(
      std::lower_bound(line_sorted_.begin(), line_sorted_.end(), c - r) - line_sorted_.begin());
  std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(line_sorted_.begin(), line_sorted_.end(), c + r) - line_sorted_.begin());
  auto inside = [&](std::size_t k) {
    double d = std::abs(line_sorted_[k] - c);
    return closed ? d <= r : d < r;
  };
  while (lo > 0 && inside(lo - 1)) --lo;
  while (lo < hi && !inside(lo)) ++lo;
  while (hi < line_sorted_.size() && inside(hi)) ++hi;
  while (hi > lo && !inside(hi - 1)) --hi;
  return {lo, hi};
}

double FiniteMetricSpace::diameter() const {
  if (dim_ == 1) return line_sorted_.back() - line_sorted_.front();
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, distance(i, j));
  return d;
}

std::string to_string(MetricViolation::Axiom a) {
  switch (a) {
    case MetricViolation::Axiom::Identity: return "identity";
    case MetricViolation::Axiom::Positivity: return "positivity";
    case MetricViolation::Axiom::Symmetry: return "symmetry";
    case MetricViolation::Axiom::Triangle: return "triangle";
    case MetricViolation::Axiom::Embedding: return "embedding";
  }
  return "?";
}

std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& space, double tol) {
  using A = MetricViolation::Axiom;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::isnan(space.distance(i, j)))
        throw InputError("missing distance entry (" + space.id(i) + ", " + space.id(j) + ")");

  std::vector<MetricViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    double dii = space.distance(i, i);
    if (std::abs(dii) > tol) out.push_back({A::Identity, i, i, i, std::abs(dii)});
    for (std::size_t j = i + 1; j < n; ++j) {
      double dij = space.distance(i, j), dji = space.distance(j, i);
      if (std::abs(dij - dji) > tol) out.push_back({A::Symmetry, i, j, j, std::abs(dij - dji)});
      if (!(dij > 0.0)) out.push_back({A::Positivity, i, j, j, -dij});
      if (space.has_table() && space.has_embedding()) {
        double e = norm_distance(space.coords(i), space.coords(j), space.pnorm());
        if (std::abs(e - dij) > tol) out.push_back({A::Embedding, i, j, j, std::abs(e - dij)});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      double dik = space.distance(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        double excess = dik - space.distance(i, j) - space.distance(j, k);
        if (excess > tol) out.push_back({A::Triangle, i, j, k, excess});
      }
    }
  return out;
}

std::vector<std::size_t> ball(const FiniteMetricSpace& space, std::size_t x, double r,
                              bool closed) {
  if (x >= space.size()) throw InputError("ball centre index out of range");
  if (!(r > 0.0)) throw InputError("ball radius must be positive");
  std::vector<std::size_t> out{x};
  for_each_in_punctured_ball(space, x, r, closed, [&](std::size_t u, double) { out.push_back(u); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> resolution_isolated(const FiniteMetricSpace& space, double h) {
  if (!(h > 0.0)) throw InputError("resolution must be positive");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool near = false;
    for_each_in_punctured_ball(space, x, h, false, [&](std::size_t, double) { near = true; });
    if (!near) out.push_back(x);
  }
  return out;
}

}  // namespace lipderiv

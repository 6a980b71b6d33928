// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lipderiv {

enum class PNorm { L1, L2, Linf };

/// Parses "1", "2", "inf" (also "euclidean-1" style suffixes are handled by callers).
PNorm parse_pnorm(const std::string& tag);
std::string to_string(PNorm p);

double norm(std::span<const double> v, PNorm p);
double norm_distance(std::span<const double> a, std::span<const double> b, PNorm p);

/// A finite metric space: point identifiers plus either a dense distance table
/// or a coordinate embedding in R^n under a p-norm. Immutable after construction.
///
/// Embedded spaces compute distances on demand. One-dimensional embeddings keep
/// a sorted coordinate index so that ball queries are contiguous ranges.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_table(std::vector<std::string> ids, std::vector<double> table);
  static FiniteMetricSpace from_embedding(std::vector<std::string> ids, std::vector<double> coords,
                                          std::size_t dim, PNorm p);
  /// Convenience: points on the real line, ids "0".."n-1".
  static FiniteMetricSpace on_line(std::span<const double> xs);
  /// Discrete metric (all off-diagonal distances 1).
  static FiniteMetricSpace discrete(std::vector<std::string> ids);

  /// Copy of an embedded space with its distance table materialized.
  FiniteMetricSpace materialized() const;

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  /// Throws InputError on an unknown id.
  std::size_t index_of(const std::string& id) const;

  double distance(std::size_t i, std::size_t j) const;

  bool has_table() const { return !table_.empty(); }
  bool has_embedding() const { return dim_ > 0; }
  std::size_t dim() const { return dim_; }
  PNorm pnorm() const { return pnorm_; }
  std::span<const double> coords(std::size_t i) const;
  bool is_line() const { return dim_ == 1; }

  /// Sorted coordinate order for one-dimensional embeddings (empty otherwise).
  const std::vector<std::size_t>& line_order() const { return line_order_; }
  const std::vector<std::size_t>& line_rank() const { return line_rank_; }
  /// Half-open range [lo, hi) of line ranks whose coordinate c satisfies
  /// |c - coords(x)| < r (open) or <= r (closed). Only valid for line spaces.
  std::pair<std::size_t, std::size_t> line_ball_range(std::size_t x, double r, bool closed) const;

  double diameter() const;

 private:
  FiniteMetricSpace() = default;
  void build_index();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> table_;
  std::vector<double> coords_;
  std::size_t dim_ = 0;
  PNorm pnorm_ = PNorm::L2;
  std::vector<std::size_t> line_order_;
  std::vector<std::size_t> line_rank_;
  std::vector<double> line_sorted_;
};

struct MetricViolation {
  enum class Axiom { Identity, Positivity, Symmetry, Triangle, Embedding };
  Axiom axiom;
  std::size_t i = 0, j = 0, k = 0;
  double excess = 0.0;
};

std::string to_string(MetricViolation::Axiom a);

/// Empty result iff the distance function is a metric within `tol`.
/// Throws InputError when a table entry is missing (NaN).
std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& space, double tol = 1e-12);

/// Indices u with d(u,x) < r (open) or d(u,x) <= r (closed), ascending.
std::vector<std::size_t> ball(const FiniteMetricSpace& space, std::size_t x, double r, bool closed);

/// Points with no other point strictly closer than h.
std::vector<std::size_t> resolution_isolated(const FiniteMetricSpace& space, double h);

/// Calls fn(u, d(u,x)) for every u != x inside the ball; uses the line index when present.
template <class Fn>
void for_each_in_punctured_ball(const FiniteMetricSpace& space, std::size_t x, double r,
                                bool closed, Fn&& fn) {
  if (space.is_line()) {
    auto [lo, hi] = space.line_ball_range(x, r, closed);
    const auto& order = space.line_order();
    for (std::size_t k = lo; k < hi; ++k) {
      std::size_t u = order[k];
      if (u != x) fn(u, space.distance(u, x));
    }
    return;
  }
  for (std::size_t u = 0; u < space.size(); ++u) {
    if (u == x) continue;
    double d = space.distance(u, x);
    if (closed ? d <= r : d < r) fn(u, d);
  }
}

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

}  // namespace lipderiv

// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"
#include "lipderiv/error.hpp"
#include "lipderiv/harness.hpp"
#include "parallel.hpp"

namespace lipderiv {

using detail::num;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

CheckResult finish(CheckResult r) {
  r.status = r.discrepancy <= r.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  if (r.status == CheckStatus::Fail && r.witness.empty()) r.witness = "none recorded";
  return r;
}

CheckResult skipped(std::string name, std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::Skipped;
  r.note = std::move(reason);
  return r;
}

namespace {

/// Largest violation seen so far and where it happened.
struct Worst {
  double excess = 0.0;
  std::string where;
  void offer(double e, const auto& describe) {
    if (e > excess) {
      excess = e;
      where = describe();
    }
  }
};

constexpr double kHypothesisSlack = 1e-12;

double resolution_of(const ScaleProfile& p) {
  double res = 0.0;
  for (const auto& s : p.summary)
    if (std::isfinite(s.nearest)) res = std::max(res, s.nearest);
  return res;
}

}  // namespace

CheckResult check_chain(const ScaleProfile& p) {
  CheckResult out{.name = "chain", .note = "little <= little_closed <= Lip_r <= LLip^r and Lip^r <= Lip_r, exact"};
  Worst w;
  const std::size_t k = p.radii.size();
  for (std::size_t i = 0; i < p.points; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const ScaleRow& row = p.at(i, j);
      auto at = [&] { return "point=" + std::to_string(i) + " radius=" + num(p.radii[j]); };
      w.offer(row.little_below - row.little_closed_below, at);
      w.offer(row.little_closed_below - row.big_below, at);
      w.offer(row.big_below - row.loc, at);
      w.offer(row.lip_upper - row.big_below, at);
    }
    const PointSummary& s = p.summary[i];
    auto at = [&] { return "point=" + std::to_string(i) + " limit estimates"; };
    w.offer(s.lip_hat - s.big_hat, at);
    w.offer(s.big_hat - s.loc_hat, at);
  }
  out.discrepancy = w.excess;
  out.witness = w.where;
  return finish(out);
}

CheckResult check_chain(const SampledMap& f, const RadiusGrid& grid) {
  return check_chain(scale_profile(f, grid));
}

PlusVariantValues plus_variant_values(const SampledMap& f, std::size_t x, double r) {
  std::vector<double> ds;
  for_each_in_punctured_ball(f.domain(), x, r, false, [&](std::size_t, double d) { ds.push_back(d); });
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

  PlusVariantValues v;
  for (double d : ds) {
    // On (d, next) the open ball is fixed, so sup Lip^rho there is approached at rho -> d+.
    const double interval_sup = lip_upper_r_closed(f, x, d);
    v.alpha = std::max(v.alpha, interval_sup);
    v.beta = std::max(v.beta, interval_sup);
    const double probe = d * (1.0 + 1e-9);
    if (probe < r) {
      v.alpha = std::max(v.alpha, lip_upper_r(f, x, probe));
      v.beta = std::max(v.beta, lip_upper_r_closed(f, x, probe));
    }
    v.alpha = std::max(v.alpha, lip_upper_r(f, x, d));
  }
  v.gamma = big_lip_below_r(f, x, r);
  return v;
}

CheckResult check_plus_variant(const SampledMap& f, std::size_t x, double r, double tol) {
  const std::string name = "plus_variant";
  if (x >= f.size()) throw InputError("point index out of range");
  bool has_neighbour = false;
  for_each_in_punctured_ball(f.domain(), x, r, false, [&](std::size_t, double) { has_neighbour = true; });
  if (!has_neighbour) return skipped(name, "no neighbour within r");

  const auto v = plus_variant_values(f, x, r);
  CheckResult out{.name = name, .tolerance = tol};
  out.discrepancy = std::max({std::abs(v.alpha - v.beta), std::abs(v.beta - v.gamma),
                              std::abs(v.alpha - v.gamma)});
  out.witness = "point=" + f.domain().id(x) + " radius=" + num(r) + " alpha=" + num(v.alpha) +
                " beta=" + num(v.beta) + " gamma=" + num(v.gamma);
  out.note = "max pairwise gap of alpha, beta, gamma";
  return finish(out);
}

CheckResult check_frechet(const LinearMapSpec& a, std::span<const double> x0, double resolution,
                          double rel_tol, int cells) {
  const std::size_t n = a.cols();
  if (x0.size() != n) throw InputError("base point dimension does not match the matrix");
  if (!(resolution > 0.0)) throw InputError("resolution must be positive");
  if (cells < 1) throw InputError("lattice half-width must be at least one cell");

  const std::size_t side = 2 * static_cast<std::size_t>(cells) + 1;
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= side;

  std::vector<std::string> ids(count);
  std::vector<double> coords(count * n), values;
  values.reserve(count * a.rows());
  std::size_t center = 0;
  std::vector<int> digit(n, 0);
  for (std::size_t p = 0; p < count; ++p) {
    ids[p] = std::to_string(p);
    bool is_center = true;
    for (std::size_t c = 0; c < n; ++c) {
      const int offset = digit[c] - cells;
      coords[p * n + c] = x0[c] + offset * resolution;
      is_center = is_center && offset == 0;
    }
    if (is_center) center = p;
    auto y = a.apply(std::span<const double>(coords.data() + p * n, n));
    values.insert(values.end(), y.begin(), y.end());
    for (std::size_t c = 0; c < n && ++digit[c] == static_cast<int>(side); ++c) digit[c] = 0;
  }
  auto dom = std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_embedding(std::move(ids), std::move(coords), n, a.domain_norm()));
  auto f = SampledMap::normed(dom, std::move(values), a.rows(), a.codomain_norm());

  const double reach = cells * resolution * (1.0 + 1e-9);
  const double lip_hat = big_lip_below_r(f, center, reach);
  const double op = operator_norm(a, 20000, 1);
  CheckResult out{.name = "frechet", .tolerance = rel_tol};
  out.discrepancy = op > 0.0 ? std::abs(lip_hat - op) / op : lip_hat;
  out.witness = "Lip-hat=" + num(lip_hat) + " operator_norm=" + num(op);
  out.note = op > 0.0 ? "relative gap |Lip-hat - |A|| / |A|" : "zero map: absolute Lip-hat";
  return finish(out);
}

CheckResult check_gamma_lipschitz(const SampledMap& f, double gamma, const RadiusGrid& grid,
                                  const GammaLipschitzOptions& opt) {
  const std::string name = "gamma_lipschitz";
  if (!(gamma >= 0.0)) throw InputError("gamma must be nonnegative");

  const ScaleProfile p = scale_profile(f, grid);
  const double diam = f.domain().diameter();
  const double tol = opt.tol >= 0.0 ? opt.tol : (diam > 0.0 ? 2.0 * resolution_of(p) / diam : 0.0);

  double max_lip_hat = 0.0;
  for (const auto& s : p.summary) max_lip_hat = std::max(max_lip_hat, s.lip_hat);
  // Hypotheses are read up to rounding of the quotients themselves.
  const double slack = gamma * (1.0 + kHypothesisSlack);
  const bool reverse_hyp = opt.convex_domain && max_lip_hat <= slack;

  // Worst pair quotient, found in parallel per row.
  const std::size_t n = f.size();
  std::vector<std::pair<double, std::size_t>> best(n, {0.0, 0});
  detail::parallel_for(n, [&](std::size_t u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      double q = f.quotient(u, v);
      if (q > best[u].first) best[u] = {q, v};
    }
  });
  std::size_t wu = 0;
  for (std::size_t u = 1; u < n; ++u)
    if (best[u].first > best[wu].first) wu = u;
  const double q_max = n > 0 ? best[wu].first : 0.0;
  const bool forward_hyp = q_max <= slack;
  // (=>) bound: the pair constant itself when it sits within rounding above gamma.
  const double bound = std::max(gamma, q_max);

  if (!reverse_hyp && !forward_hyp && !opt.convex_domain)
    return skipped(name, "domain not flagged convex and f is not pairwise gamma-Lipschitz");
  if (!reverse_hyp && !forward_hyp)
    return skipped(name, "hypothesis-not-met: max lip-hat " + num(max_lip_hat) +
                             " and pair Lipschitz constant " + num(q_max) + " exceed gamma " +
                             num(gamma));

  CheckResult out{.name = name};
  std::string note;
  if (forward_hyp) {
    Worst w;
    for (std::size_t i = 0; i < p.points; ++i)
      for (std::size_t k = 0; k < p.radii.size(); ++k) {
        const ScaleRow& row = p.at(i, k);
        auto at = [&] { return "point=" + f.domain().id(i) + " radius=" + num(p.radii[k]); };
        w.offer(row.little_below - bound, at);
        w.offer(row.little_closed_below - bound, at);
      }
    note += "(=>) excess " + num(w.excess) + " (exact)";
    if (w.excess > 0.0) {
      out.discrepancy = w.excess;
      out.tolerance = 0.0;
      out.witness = w.where;
      out.note = note;
      return finish(out);
    }
  } else {
    note += "(=>) hypothesis-not-met";
  }
  if (reverse_hyp) {
    const double excess = gamma > 0.0 ? std::max(0.0, q_max / gamma - 1.0) : q_max;
    note += "; (<=) relative excess " + num(excess) + ", tol 2*resolution/diameter";
    out.discrepancy = excess;
    out.tolerance = tol;
    if (n > 1)
      out.witness = "pair=" + f.domain().id(wu) + "," + f.domain().id(best[wu].second) +
                    " quotient=" + num(q_max);
  } else {
    note += opt.convex_domain ? "; (<=) hypothesis-not-met" : "; (<=) skipped: domain not convex";
  }
  out.note = note;
  return finish(out);
}

CheckResult check_lipnorm_identity(const SampledMap& f, const RadiusGrid& grid, double rel_tol) {
  const ScaleProfile p = scale_profile(f, grid, ScaleOptions{.compute_loc = false});
  double m = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < p.points; ++i)
    if (p.summary[i].lip_hat > m) {
      m = p.summary[i].lip_hat;
      arg = i;
    }
  const double norm = lip_norm(f);
  CheckResult out{.name = "lipnorm_identity", .tolerance = rel_tol};
  out.discrepancy = norm > 0.0 ? std::abs(norm - m) / norm : m;
  out.witness = "point=" + (f.size() > 0 ? f.domain().id(arg) : std::string("-")) +
                " max lip-hat=" + num(m) + " lip_norm=" + num(norm);
  out.note = "relative gap |lip_norm - sup lip-hat| / lip_norm";
  return finish(out);
}

}  // namespace lipderiv

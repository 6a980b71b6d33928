// SPDX-License-Identifier: Apache-2.0
#include "lipderiv/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lipderiv/error.hpp"

namespace lipderiv {

LinearMapSpec::LinearMapSpec(std::size_t rows, std::size_t cols, std::vector<double> coeffs,
                             PNorm domain_norm, PNorm codomain_norm)
    : rows_(rows), cols_(cols), coeffs_(std::move(coeffs)),
      domain_norm_(domain_norm), codomain_norm_(codomain_norm) {
  if (coeffs_.size() != rows_ * cols_) throw InputError("matrix coefficient count mismatch");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InputError("non-finite matrix entry");
}

LinearMapSpec LinearMapSpec::parse(const std::string& text, PNorm domain_norm,
                                   PNorm codomain_norm) {
  std::vector<double> coeffs;
  std::size_t rows = 0, cols = 0;
  std::stringstream all(text);
  std::string row;
  while (std::getline(all, row, ';')) {
    std::stringstream rs(row);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(rs, cell, ',')) {
      try {
        std::size_t used = 0;
        coeffs.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + cell + "'");
      }
      ++n;
    }
    if (rows == 0) cols = n;
    if (n != cols || n == 0) throw InputError("ragged matrix '" + text + "'");
    ++rows;
  }
  if (rows == 0) throw InputError("empty matrix");
  return LinearMapSpec(rows, cols, std::move(coeffs), domain_norm, codomain_norm);
}

std::vector<double> LinearMapSpec::apply(std::span<const double> v) const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += coeffs_[r * cols_ + c] * v[c];
  return out;
}

double operator_norm(const LinearMapSpec& a, std::size_t sphere_samples, std::uint64_t seed) {
  const std::size_t n = a.cols();
  if (n == 0) throw InputError("operator norm of a map on a zero-dimensional domain");
  if (sphere_samples == 0) throw InputError("sphere_samples must be at least 1");

  double best = 0.0;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(e.begin(), e.end(), 0.0);
    e[i] = 1.0;
    best = std::max(best, norm(a.apply(e), a.codomain_norm()));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t s = 0; s < sphere_samples; ++s) {
    for (auto& c : e) c = gauss(rng);
    double len = norm(e, a.domain_norm());
    if (len == 0.0) continue;
    for (auto& c : e) c /= len;
    best = std::max(best, norm(a.apply(e), a.codomain_norm()));
  }
  return best;
}

}  // namespace lipderiv

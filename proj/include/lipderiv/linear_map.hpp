// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lipderiv/metric_space.hpp"

namespace lipderiv {

/// A linear map R^cols -> R^rows given by a row-major matrix, with the norms
/// used on its domain and codomain.
class LinearMapSpec {
 public:
  LinearMapSpec(std::size_t rows, std::size_t cols, std::vector<double> coeffs,
                PNorm domain_norm = PNorm::L2, PNorm codomain_norm = PNorm::L2);
  /// Parses "a,b;c,d" (rows separated by ';').
  static LinearMapSpec parse(const std::string& text, PNorm domain_norm = PNorm::L2,
                             PNorm codomain_norm = PNorm::L2);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t r, std::size_t c) const { return coeffs_[r * cols_ + c]; }
  PNorm domain_norm() const { return domain_norm_; }
  PNorm codomain_norm() const { return codomain_norm_; }

  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> coeffs_;
  PNorm domain_norm_, codomain_norm_;
};

/// Lower bound on ||A|| from the axis vectors (both signs) plus `sphere_samples`
/// seeded random directions normalized in the domain norm. The random sequence
/// for a seed is prefix-stable, so more samples never lower the result.
double operator_norm(const LinearMapSpec& a, std::size_t sphere_samples, std::uint64_t seed);

}  // namespace lipderiv

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lipderiv {

/// Malformed or out-of-contract input (bad ids, missing entries, invalid grids).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but exceeds what an exhaustive routine is willing to enumerate.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lipderiv

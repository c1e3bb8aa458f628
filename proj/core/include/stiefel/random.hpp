#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "stiefel/matfun.hpp"

namespace stiefel {

/// Seedable standard-normal generator: mt19937_64 feeding a hand-written
/// Box-Muller transform, so draws do not depend on the standard library's
/// unspecified std::normal_distribution.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

  double operator()();

  /// Column-major fill of a rows x cols matrix.
  Matrix matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Derives an independent stream seed from a base seed and a stream index
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace stiefel

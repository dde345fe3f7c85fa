#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "ptgpe/ptgpe.hpp"

namespace testing {

inline const ptgpe::BasisSet& basis11() {
  static const ptgpe::BasisSet b = ptgpe::build_basis(11, ptgpe::default_basis_grid(11));
  return b;
}

inline ptgpe::CoeffVector random_coeffs(int n, unsigned seed, bool normalized = true) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  ptgpe::CoeffVector c(n);
  for (int k = 0; k < n; ++k) c(k) = {d(rng), d(rng)};
  if (normalized) c.normalize();
  return c;
}

inline ptgpe::PotentialSpec kind(ptgpe::PotentialKind k, double gamma, double d = 0.0) {
  ptgpe::PotentialSpec s;
  s.kind = k;
  s.gamma = gamma;
  s.d = d;
  return s;
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::path(PTGPE_TEST_TMP) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testing

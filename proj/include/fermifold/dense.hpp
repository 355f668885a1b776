#pragma once

// Brute-force matrix oracle. Each generator is assembled as a Kronecker
// product of per-mode 2x2 factors: the diagonal sign matrix diag(1,-1) on
// earlier modes of the same sector, the raising/lowering matrix on the acted
// mode and the identity everywhere else. It never touches the bit-string
// fast path in fock.hpp, so the two can be compared entry by entry.
//
// Storage is sparse (one nonzero per column for a generator); the matrices
// are still the full 2^K x 2^K operators.

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <string>

#include "fermifold/fock.hpp"

namespace fermifold {

inline constexpr int kDefaultOracleCeiling = 16;

using IntMatrix = Eigen::SparseMatrix<int, Eigen::ColMajor, std::ptrdiff_t>;

namespace detail {

inline IntMatrix two_level(int a00, int a01, int a10, int a11) {
  IntMatrix m(2, 2);
  if (a00) m.insert(0, 0) = a00;
  if (a01) m.insert(0, 1) = a01;
  if (a10) m.insert(1, 0) = a10;
  if (a11) m.insert(1, 1) = a11;
  m.makeCompressed();
  return m;
}

}  // namespace detail

inline void check_ceiling(const SectorConfig& cfg, int ceiling) {
  if (cfg.total() > ceiling) {
    throw CapacityError("dense oracle needs " + std::to_string(cfg.total()) +
                        " modes, ceiling is " + std::to_string(ceiling));
  }
}

/// Identity on the full 2^K space.
inline IntMatrix dense_identity(const SectorConfig& cfg, int ceiling = kDefaultOracleCeiling) {
  check_ceiling(cfg, ceiling);
  const auto n = static_cast<std::ptrdiff_t>(basis_size(cfg));
  IntMatrix id(n, n);
  id.setIdentity();
  return id;
}

/// Basis {|0>, |1>} per mode; create = [[0,0],[1,0]], annihilate = [[0,1],[0,0]].
inline IntMatrix dense_matrix(const SectorConfig& cfg, const Generator& g,
                              int ceiling = kDefaultOracleCeiling) {
  check_ceiling(cfg, ceiling);
  check_mode(cfg, g.mode);
  const IntMatrix identity = detail::two_level(1, 0, 0, 1);
  const IntMatrix sign = detail::two_level(1, 0, 0, -1);
  const IntMatrix raise = detail::two_level(0, 0, 1, 0);
  const IntMatrix lower = detail::two_level(0, 1, 0, 0);

  IntMatrix result(1, 1);
  result.insert(0, 0) = 1;
  for (Sector s : kSectors) {
    for (int r = 1; r <= cfg.count(s); ++r) {
      const IntMatrix* factor = &identity;
      if (s == g.mode.sector) {
        if (r < g.mode.serial) {
          factor = &sign;
        } else if (r == g.mode.serial) {
          factor = g.kind == Action::create ? &raise : &lower;
        }
      }
      IntMatrix next = Eigen::kroneckerProduct(result, *factor).eval();
      result = std::move(next);
    }
  }
  result.makeCompressed();
  return result;
}

/// Matrix of the bit-string fast path, built column by column from create/annihilate.
inline IntMatrix fast_path_matrix(const SectorConfig& cfg, const Generator& g,
                                  int ceiling = kDefaultOracleCeiling) {
  check_ceiling(cfg, ceiling);
  check_mode(cfg, g.mode);
  const std::size_t n = basis_size(cfg);
  std::vector<Eigen::Triplet<int, std::ptrdiff_t>> trips;
  trips.reserve(n / 2);
  for (std::size_t col = 0; col < n; ++col) {
    if (auto r = apply(g, basis_state_at(cfg, col))) {
      trips.emplace_back(static_cast<std::ptrdiff_t>(basis_index(r->state)),
                         static_cast<std::ptrdiff_t>(col), r->phase);
    }
  }
  IntMatrix m(static_cast<std::ptrdiff_t>(n), static_cast<std::ptrdiff_t>(n));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace fermifold

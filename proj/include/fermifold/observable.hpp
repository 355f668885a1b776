#pragma once

#include <Eigen/Dense>

#include <string>

#include "fermifold/expr.hpp"

namespace fermifold {

/// Second-quantized one-particle observable sum_{rs} A_rs b+_r b-_s on one sector.
inline NumericExpr lift_observable(const Eigen::MatrixXcd& a, const SectorConfig& cfg, Sector sector) {
  const int d = cfg.count(sector);
  if (a.rows() != d || a.cols() != d) {
    throw ShapeError("observable is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " but sector " + std::to_string(sector_code(sector)) + " has " + std::to_string(d) +
                     " modes");
  }
  NumericExpr out;
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) {
      out.add({a(r, s), {creator(sector, r + 1), annihilator(sector, s + 1)}});
    }
  }
  return out;
}

/// Total number operator of a sector.
inline NumericExpr number_operator(const SectorConfig& cfg, Sector sector) {
  const int d = cfg.count(sector);
  return lift_observable(Eigen::MatrixXcd::Identity(d, d), cfg, sector);
}

}  // namespace fermifold

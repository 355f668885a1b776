#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <vector>

#include "fermifold/fields.hpp"
#include "fermifold/forms.hpp"
#include "fermifold/tensor.hpp"

namespace fermifold {

using ComplexForm = Form<cplx>;

/// Degree-n constant form on the 12-slot chart whose coefficient on an increasing slot tuple I
/// is (1/sqrt(n!)) sum_sigma sgn(sigma) S(I o sigma), with S(s) the n-point determinant
/// element at component multi-index s. Only slots of the modes' sectors can be nonzero;
/// repeated modes or points give the zero form exactly.
inline ComplexForm slater_form(std::span<const PointSector> points, std::span<const ModeIndex> modes, cplx amplitude,
                               const WaveFunctionSet& fs) {
  const SlaterGrid grid(points, modes, fs);
  const int n = static_cast<int>(grid.size());
  if (n > kChartDim) throw DegreeError("more points than chart dimensions");
  ComplexForm out(kChartDim, n);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i] == modes[j] || points[i] == points[j]) return out;
    }
  }
  std::set<int> slot_set;
  for (const auto& m : modes) {
    for (int a = 1; a <= 3; ++a) slot_set.insert(chart_slot(m.sector, a));
  }
  const std::vector<int> slots(slot_set.begin(), slot_set.end());
  const double norm = inv_sqrt_factorial(grid.size());
  for (const auto& local : increasing_tuples(static_cast<int>(slots.size()), n)) {
    IndexTuple key(local.size());
    for (std::size_t m = 0; m < local.size(); ++m) key[m] = slots[static_cast<std::size_t>(local[m])];
    cplx acc{};
    std::vector<int> permuted(key.size());
    detail::for_each_permutation(n, [&](const std::vector<int>& perm, int sign) {
      for (std::size_t m = 0; m < key.size(); ++m) permuted[m] = key[static_cast<std::size_t>(perm[m])];
      acc += static_cast<double>(sign) * grid.determinant(permuted);
    });
    acc *= norm * norm * amplitude;
    if (acc != cplx{}) out.add_term(key, Coefficient<cplx>::constant(kChartDim, acc));
  }
  return out;
}

}  // namespace fermifold

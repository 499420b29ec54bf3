#pragma once

#include <optional>
#include <vector>

#include "gmdet/connection.hpp"

namespace gmdet {

// A local one-form a(z) dz + sum_j b_j(z) da_j in the chart (z, a).  Without
// the da part the form is treated as relative and no closedness is checked.
struct LocalOneForm {
  ScalarSeries dz;
  std::optional<FormSeries> da;
};

struct PoleReduction {
  // Principal part of a primitive: exponents < 0 only.
  std::vector<std::pair<int, BaseScalar>> tail;
  // omega - d(tail): at most a simple pole in dz, regular da part.
  LocalOneForm remainder;
};

PoleReduction pole_reduce(const LocalOneForm& w);

struct IrregularityAtPoint {
  Point point;
  int m = 1;
  std::vector<std::pair<int, BaseScalar>> tail;
};

// Rank-1 only: the polar tail of a local primitive of A at every divisor point.
// Closedness is checked through z^order.
std::vector<IrregularityAtPoint> irregularity_class(const Connection& c, int order = 1);

}  // namespace gmdet

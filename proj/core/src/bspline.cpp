#include "spotcast/bspline.hpp"

#include <cmath>
#include <vector>

namespace spotcast {

double eval_bspline(const BSplineSpec& spec, double t) {
  const int D = spec.degree;
  const double d = spec.knot_distance;
  const double k0 = spec.center - d * (D + 1) / 2.0;
  const double x = (t - k0) / d;  // knot units; the spline lives on knots 0..D+1
  if (x <= 0.0 || x >= D + 1) return 0.0;

  // Cox-de Boor on the uniform integer knot ladder. The window N[j] holds
  // B_{i,deg}(x) for i = cell - D + j, the only segments that can be
  // nonzero at x.
  const int cell = static_cast<int>(x);
  std::vector<double> N(D + 1, 0.0);
  N[D] = 1.0;  // degree 0: indicator of [cell, cell+1)
  for (int deg = 1; deg <= D; ++deg) {
    for (int j = 0; j <= D; ++j) {
      const double i = static_cast<double>(cell - D + j);
      const double right = (j + 1 <= D) ? N[j + 1] : 0.0;
      N[j] = ((x - i) * N[j] + (i + deg + 1 - x) * right) / deg;
    }
  }
  const int j0 = D - cell;  // segment i = 0
  if (j0 < 0 || j0 > D) return 0.0;
  return N[j0];
}

double eval_periodic_bspline(double t, double period, double offset, double knot_distance,
                             int degree) {
  const double radius = knot_distance * (degree + 1) / 2.0;
  const double kmin = std::ceil((t - offset - radius) / period);
  const double kmax = std::floor((t - offset + radius) / period);
  double sum = 0.0;
  for (double k = kmin; k <= kmax; k += 1.0) {
    sum += eval_bspline({degree, knot_distance, k * period + offset}, t);
  }
  return sum;
}

}  // namespace spotcast

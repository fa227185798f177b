#include <doctest.h>

#include <cmath>

#include "spotcast/bspline.hpp"

using namespace spotcast;

namespace {

// Closed-form cardinal cubic B-spline centred at 0 with unit knot distance:
// piecewise (4 - 6u^2 + 3u^3)/6 for u = |t| in [0,1], (2-u)^3/6 in [1,2].
double cubic_closed_form(double t) {
  const double u = std::abs(t);
  if (u < 1.0) return (4.0 - 6.0 * u * u + 3.0 * u * u * u) / 6.0;
  if (u < 2.0) return (2.0 - u) * (2.0 - u) * (2.0 - u) / 6.0;
  return 0.0;
}

}  // namespace

TEST_CASE("cubic spline matches the closed form") {
  BSplineSpec s;  // degree 3, knot distance 1, centre 0
  for (double t = -3.0; t <= 3.0; t += 0.01)
    CHECK(eval_bspline(s, t) == doctest::Approx(cubic_closed_form(t)).epsilon(1e-12));
  CHECK(eval_bspline(s, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("scaling and shifting") {
  BSplineSpec s{3, 4.0, 10.0};
  CHECK(s.support_radius() == doctest::Approx(8.0));
  for (double t = -2.0; t <= 22.0; t += 0.1)
    CHECK(eval_bspline(s, t) == doctest::Approx(cubic_closed_form((t - 10.0) / 4.0)).epsilon(1e-12));
}

TEST_CASE("compact support") {
  BSplineSpec s{3, 2.5, 5.0};
  const double r = s.support_radius();
  CHECK(eval_bspline(s, 5.0 - r) == 0.0);
  CHECK(eval_bspline(s, 5.0 + r) == 0.0);
  CHECK(eval_bspline(s, 5.0 - r - 3.0) == 0.0);
  CHECK(eval_bspline(s, 5.0 - r + 0.01) > 0.0);
  CHECK(eval_bspline(s, 5.0 + r - 0.01) > 0.0);
}

TEST_CASE("Cox-de Boor shift recursion between degrees") {
  // On uniform knots, B_d centred at c is a convex-weighted combination of
  // two degree d-1 splines centred at c -/+ h/2:
  //   B_d(t) = w_l(t) B_{d-1,c-h/2}(t) + w_r(t) B_{d-1,c+h/2}(t)
  // with w_l = (t - t_first)/(d h), w_r = (t_last - t)/(d h) over the
  // respective lower-degree supports.
  for (int d = 1; d <= 3; ++d) {
    const double h = 1.7, c = 0.3;
    BSplineSpec hi{d, h, c};
    BSplineSpec lo_l{d - 1, h, c - h / 2.0};
    BSplineSpec lo_r{d - 1, h, c + h / 2.0};
    const double t_first = c - h * (d + 1) / 2.0;
    const double t_last = c + h * (d + 1) / 2.0;
    for (double t = t_first - 1.0; t <= t_last + 1.0; t += 0.0137) {
      const double lhs = eval_bspline(hi, t);
      const double rhs = (t - t_first) / (d * h) * eval_bspline(lo_l, t) +
                         (t_last - t) / (d * h) * eval_bspline(lo_r, t);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("unit partition: integer-spaced cubic splines sum to one") {
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    double sum = 0.0;
    for (int k = -3; k <= 4; ++k) sum += eval_bspline(BSplineSpec{3, 1.0, double(k)}, t);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("periodic sum is periodic and matches direct summation") {
  const double period = 168.0, offset = 11.0, h = 24.0;
  for (double t = 0.0; t < period; t += 3.1) {
    const double v = eval_periodic_bspline(t, period, offset, h);
    CHECK(eval_periodic_bspline(t + period, period, offset, h) == doctest::Approx(v).epsilon(1e-12));
    CHECK(eval_periodic_bspline(t - 5 * period, period, offset, h) ==
          doctest::Approx(v).epsilon(1e-12));
    double direct = 0.0;
    for (int k = -6; k <= 6; ++k)
      direct += eval_bspline(BSplineSpec{3, h, k * period + offset}, t);
    CHECK(v == doctest::Approx(direct).epsilon(1e-12));
  }
}

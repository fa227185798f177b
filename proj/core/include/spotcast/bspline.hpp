#ifndef SPOTCAST_BSPLINE_HPP_
#define SPOTCAST_BSPLINE_HPP_

namespace spotcast {

// A single B-spline bump on D + 2 equidistant knots spaced knot_distance
// apart and centered on center. Support is (center - knot_distance*(D+1)/2,
// center + knot_distance*(D+1)/2). For the default cubic case the value at
// the center is 2/3 (cardinal normalization from the Cox-de Boor recursion).
struct BSplineSpec {
  int degree = 3;
  double knot_distance = 1.0;
  double center = 0.0;

  double support_radius() const { return knot_distance * (degree + 1) / 2.0; }
};

double eval_bspline(const BSplineSpec& spec, double t);

// Periodic sum over all integer shifts: sum_k of the spline centered at
// k*period + offset, evaluated at t. Only the few overlapping shifts
// contribute.
double eval_periodic_bspline(double t, double period, double offset, double knot_distance,
                             int degree = 3);

}  // namespace spotcast

#endif  // SPOTCAST_BSPLINE_HPP_

#pragma once

#include <cmath>
#include <stdexcept>

namespace gridqos {

/// Composite Simpson rule over [a, b] with `panels` subintervals. `panels` is
/// rounded up to the next even number.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  if (b == a) return 0.0;
  const double h = (b - a) / panels;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < panels; ++i) {
    const double x = a + h * i;
    if (i % 2 == 1) {
      odd += f(x);
    } else {
      even += f(x);
    }
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

/// Mass of the standard normal distribution on [lo, hi], evaluated on the
/// tail that keeps the subtraction well conditioned.
inline double standard_normal_mass(double lo, double hi) {
  if (hi <= lo) return 0.0;
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  if (lo >= 0.0) {
    return 0.5 * (std::erfc(lo * kInvSqrt2) - std::erfc(hi * kInvSqrt2));
  }
  if (hi <= 0.0) {
    return 0.5 * (std::erfc(-hi * kInvSqrt2) - std::erfc(-lo * kInvSqrt2));
  }
  return 1.0 - 0.5 * std::erfc(-lo * kInvSqrt2) - 0.5 * std::erfc(hi * kInvSqrt2);
}

}  // namespace gridqos

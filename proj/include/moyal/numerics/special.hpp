#pragma once

namespace moyal::numerics {

inline constexpr double pi = 3.14159265358979323846;

double gamma_fn(double x);
double beta_fn(double a, double b);
// Area of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

}  // namespace moyal::numerics

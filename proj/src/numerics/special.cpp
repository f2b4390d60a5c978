#include "moyal/numerics/special.hpp"

#include <cmath>
#include <stdexcept>

namespace moyal::numerics {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: arguments must be positive");
    if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double sphere_area(int d) {
    if (d < 1) throw std::domain_error("sphere_area: dimension must be positive");
    return 2.0 * std::pow(pi, d / 2.0) / gamma_fn(d / 2.0);
}

}  // namespace moyal::numerics

#include "moyal/algebra/seminorms.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "moyal/numerics/special.hpp"

namespace moyal::algebra {

double sobolev_seminorm(const MatrixElement& x, const BasisTable& table) {
    double s = 0.0;
    for (int j = 1; j <= x.theta.d; ++j) s += lp_norm(partial_derivative(x, j, table), x.theta.d);
    return s;
}

double spin_sum_norm(const std::vector<Eigen::MatrixXcd>& T, const numerics::SpinStructure& spin, double p) {
    if (static_cast<int>(T.size()) != spin.d) throw std::invalid_argument("spin_sum_norm: need d matrices");
    const Eigen::Index m = T[0].rows();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(spin.dim * m, spin.dim * m);
    for (int j = 0; j < spin.d; ++j) S += Eigen::kroneckerProduct(spin.gammas[j], T[j]).eval();
    return schatten_norm(S, p);
}

double triple_seminorm(const std::vector<Eigen::MatrixXcd>& derivs, const ThetaMatrix& theta,
                       const numerics::SphereGrid& sphere, const numerics::SpinStructure& spin) {
    const int d = theta.d;
    if (sphere.d != d || spin.d != d || static_cast<int>(derivs.size()) != d)
        throw std::invalid_argument("triple_seminorm: dimension mismatch");
    double acc = 0.0;
    std::vector<Eigen::MatrixXcd> A(d);
    for (Eigen::Index q = 0; q < sphere.size(); ++q) {
        Eigen::MatrixXcd radial = Eigen::MatrixXcd::Zero(derivs[0].rows(), derivs[0].cols());
        for (int k = 0; k < d; ++k) radial += sphere.points(q, k) * derivs[k];
        for (int j = 0; j < d; ++j) A[j] = derivs[j] - sphere.points(q, j) * radial;
        acc += sphere.weights(q) * std::pow(spin_sum_norm(A, spin, d), d);
    }
    return std::pow(theta.tau_scale() * acc, 1.0 / d);
}

double triple_seminorm(const MatrixElement& x, const BasisTable& table, const numerics::SphereGrid& sphere,
                       const numerics::SpinStructure& spin) {
    std::vector<Eigen::MatrixXcd> D;
    for (int j = 1; j <= x.theta.d; ++j) D.push_back(partial_derivative(x, j, table).a);
    return triple_seminorm(D, x.theta, sphere, spin);
}

double seminorm_lower_constant(int d) {
    return std::sqrt(2.0) * (d - 1.0) / (d * d) * std::pow(numerics::sphere_area(d), 1.0 / d);
}

double seminorm_upper_constant(int d) {
    return std::sqrt(2.0) * std::pow(numerics::sphere_area(d), 1.0 / d) * (1.0 + d);
}

}  // namespace moyal::algebra

#include "moyal/algebra/theta.hpp"

#include <cmath>
#include <stdexcept>

#include "moyal/numerics/special.hpp"

namespace moyal::algebra {

using numerics::pi;

double ThetaMatrix::det() const {
    if (block_form) return std::pow(theta0, d);
    return theta.determinant();
}

double ThetaMatrix::pairing(const double* t, const double* s) const {
    double acc = 0.0;
    if (block_form) {
        for (int b = 0; b < d; b += 2) acc += t[b] * s[b + 1] - t[b + 1] * s[b];
        return theta0 * acc;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) acc += t[i] * theta(i, j) * s[j];
    return acc;
}

double ThetaMatrix::tau_scale() const { return std::sqrt(std::pow(2.0 * pi, d) * det()); }

double ThetaMatrix::basis_norm2() const { return std::sqrt(det()) / std::pow(2.0 * pi, d / 2.0); }

ThetaMatrix make_theta(int d, double theta0) {
    if (d <= 0 || d % 2 != 0) throw std::invalid_argument("make_theta: d must be positive and even");
    if (!(theta0 > 0.0)) throw std::invalid_argument("make_theta: theta0 must be positive");
    ThetaMatrix t;
    t.d = d;
    t.theta0 = theta0;
    t.theta = Eigen::MatrixXd::Zero(d, d);
    for (int b = 0; b < d; b += 2) {
        t.theta(b, b + 1) = theta0;
        t.theta(b + 1, b) = -theta0;
    }
    return t;
}

ThetaMatrix theta_from_matrix(const Eigen::MatrixXd& theta) {
    const int d = static_cast<int>(theta.rows());
    if (theta.cols() != d || d == 0 || d % 2 != 0)
        throw std::invalid_argument("theta_from_matrix: need a square matrix of even size");
    if ((theta + theta.transpose()).cwiseAbs().maxCoeff() > 1e-14 * theta.cwiseAbs().maxCoeff())
        throw std::invalid_argument("theta_from_matrix: matrix is not antisymmetric");
    const double det = theta.determinant();
    if (!(det > 0.0)) throw std::invalid_argument("theta_from_matrix: degenerate theta");
    ThetaMatrix t;
    t.d = d;
    t.theta = theta;
    t.theta0 = std::pow(det, 1.0 / d);
    t.block_form = false;
    return t;
}

}  // namespace moyal::algebra

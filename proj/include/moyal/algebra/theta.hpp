#pragma once

#include <Eigen/Dense>

namespace moyal::algebra {

// Antisymmetric nondegenerate deformation matrix. The canonical form is
// theta0 * J with J = [[0,1],[-1,0]] repeated along the diagonal.
struct ThetaMatrix {
    int d = 2;
    double theta0 = 2.0;
    Eigen::MatrixXd theta;
    bool block_form = true;

    double det() const;
    // <t, theta s>
    double pairing(const double* t, const double* s) const;
    // ((2 pi)^d det theta)^{1/2}, the factor relating tau_theta to the matrix trace.
    double tau_scale() const;
    // det(theta)^{1/2} / (2 pi)^{d/2}: common squared L2 norm of the matrix basis.
    double basis_norm2() const;
};

ThetaMatrix make_theta(int d, double theta0);
ThetaMatrix theta_from_matrix(const Eigen::MatrixXd& theta);

}  // namespace moyal::algebra

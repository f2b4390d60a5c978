#pragma once

#include <Eigen/Dense>
#include <utility>

namespace moyal::spectral {

// LAPACK-backed dense kernels. Inputs are taken by value and overwritten.

// Ascending eigenvalues of a Hermitian matrix (upper triangle is read).
Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd A);
// Ascending eigenvalues and orthonormal eigenvectors.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigensystem(Eigen::MatrixXcd A);
// Descending singular values.
Eigen::VectorXd singular_values_dense(Eigen::MatrixXcd A);
// Thin SVD: A = U diag(s) V^*, s descending.
struct ThinSvd {
    Eigen::MatrixXcd U;
    Eigen::VectorXd s;
    Eigen::MatrixXcd V;
};
ThinSvd thin_svd(Eigen::MatrixXcd A);

}  // namespace moyal::spectral

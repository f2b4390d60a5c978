#include "moyal/spectral/dense.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace moyal::spectral {

namespace {

lapack_complex_double* as_lapack(std::complex<double>* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void check(lapack_int info, const char* what) {
    if (info != 0) throw std::runtime_error(std::string(what) + " failed with info = " + std::to_string(info));
}

}  // namespace

Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd A) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    if (A.cols() != n) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, as_lapack(A.data()), n, w.data()), "zheevd");
    return w;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> hermitian_eigensystem(Eigen::MatrixXcd A) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    if (A.cols() != n) throw std::invalid_argument("hermitian_eigensystem: matrix must be square");
    Eigen::VectorXd w(n);
    if (n > 0) check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, as_lapack(A.data()), n, w.data()), "zheevd");
    return {std::move(w), std::move(A)};
}

Eigen::VectorXd singular_values_dense(Eigen::MatrixXcd A) {
    const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
    Eigen::VectorXd s(std::min(m, n));
    if (s.size() == 0) return s;
    check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, as_lapack(A.data()), m, s.data(), nullptr, 1, nullptr, 1),
          "zgesdd");
    return s;
}

ThinSvd thin_svd(Eigen::MatrixXcd A) {
    const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
    const lapack_int k = std::min(m, n);
    ThinSvd r;
    r.s.resize(k);
    r.U.resize(m, k);
    Eigen::MatrixXcd VT(k, n);
    if (k > 0)
        check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, as_lapack(A.data()), m, r.s.data(), as_lapack(r.U.data()), m,
                             as_lapack(VT.data()), k),
              "zgesdd");
    r.V = VT.adjoint();
    return r;
}

}  // namespace moyal::spectral

#include "moyal/algebra/basis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "moyal/numerics/special.hpp"

namespace moyal::algebra {

using numerics::MomentumGrid;
using numerics::pi;

namespace {

double laguerre(int m, double a, double x) {
    if (m == 0) return 1.0;
    double p0 = 1.0, p1 = 1.0 + a - x;
    for (int k = 1; k < m; ++k) {
        double p2 = ((2.0 * k + 1.0 + a - x) * p1 - (k + a) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

cd basis_value(int k, int l, double theta0, double t1, double t2) {
    const double alpha = theta0 / (2.0 * pi);
    const double xi = 0.5 * theta0 * (t1 * t1 + t2 * t2);
    const int m = std::min(k, l), s = std::abs(k - l);
    const cd z(t1, t2);
    const cd w = k >= l ? std::conj(z) : -z;
    // sqrt(m!/(m+s)!)
    double ratio = 1.0;
    for (int q = m + 1; q <= m + s; ++q) ratio /= q;
    const cd mono = std::pow(std::sqrt(0.5 * theta0) * w, s);
    return alpha * std::sqrt(ratio) * mono * laguerre(m, s, xi) * std::exp(-0.5 * xi);
}

WeylSymbol basis_function(int k, int l, const ThetaMatrix& theta) {
    if (theta.d != 2 || !theta.block_form) throw std::invalid_argument("basis_function: only d = 2 block theta");
    if (k < 0 || l < 0) throw std::out_of_range("basis_function: negative index");
    const double th = theta.theta0;
    return WeylSymbol(2, [k, l, th](const double* t) { return basis_value(k, l, th, t[0], t[1]); },
                      "f" + std::to_string(k) + "," + std::to_string(l));
}

double orthonormality_defect(const BasisTable& table) {
    const Eigen::MatrixXcd WV = table.grid.weights.asDiagonal() * table.samples;
    Eigen::MatrixXcd G = table.samples.adjoint() * WV / table.norm2;
    G -= Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    return G.cwiseAbs().maxCoeff();
}

double product_rule_defect(const BasisTable& table, std::string* worst) {
    const int M = table.M;
    const Eigen::VectorXd& w = table.grid.weights;
    const Eigen::MatrixXcd WV = w.asDiagonal() * table.samples;
    double worst_val = 0.0;
    for (int k1 = 0; k1 < M; ++k1)
        for (int l1 = 0; l1 < M; ++l1) {
            Eigen::MatrixXcd K = twisted_kernel(basis_function(k1, l1, table.theta), table.grid, table.theta);
            Eigen::MatrixXcd P = K * WV;  // column (k2,l2): samples of f_{k1l1} * f_{k2l2}
            for (int k2 = 0; k2 < M; ++k2)
                for (int l2 = 0; l2 < M; ++l2) {
                    Eigen::VectorXcd r = P.col(table.index(k2, l2));
                    if (l1 == k2) r -= table.samples.col(table.index(k1, l2));
                    const double err = std::sqrt((w.array() * r.array().abs2()).sum() / table.norm2);
                    if (err > worst_val) {
                        worst_val = err;
                        if (worst) {
                            std::ostringstream os;
                            os << "f" << k1 << l1 << " * f" << k2 << l2;
                            *worst = os.str();
                        }
                    }
                }
        }
    return worst_val;
}

BasisTable build_basis(int M, const ThetaMatrix& theta, const MomentumGrid& grid, BasisOptions options) {
    if (theta.d != 2 || grid.d != 2) throw std::invalid_argument("build_basis: only d = 2 is supported");
    if (!theta.block_form) throw std::invalid_argument("build_basis: theta must be in block form");
    if (M < 1) throw std::invalid_argument("build_basis: M must be at least 1");

    BasisTable t;
    t.M = M;
    t.theta = theta;
    t.grid = grid;
    t.norm2 = theta.basis_norm2();
    t.tolerance = options.tolerance > 0.0 ? options.tolerance
                                          : std::max(1e-6, 10.0 * numerics::gaussian_sanity_error(grid));

    const Eigen::Index N = grid.size();
    t.samples.resize(N, M * M);
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l)
            for (Eigen::Index i = 0; i < N; ++i)
                t.samples(i, t.index(k, l)) = basis_value(k, l, theta.theta0, grid.points(i, 0), grid.points(i, 1));

    const Eigen::MatrixXcd WV = grid.weights.asDiagonal() * t.samples;
    for (int j = 0; j < 2; ++j) {
        Eigen::MatrixXcd TV = grid.points.col(j).cast<cd>().asDiagonal() * t.samples;
        t.derivative[j] = WV.adjoint() * TV / t.norm2;
    }

    Eigen::MatrixXcd G = t.samples.adjoint() * WV / t.norm2;
    G -= Eigen::MatrixXcd::Identity(M * M, M * M);
    Eigen::Index r = 0, c = 0;
    t.orthonormality_defect = G.cwiseAbs().maxCoeff(&r, &c);
    if (t.orthonormality_defect > t.tolerance) {
        std::ostringstream os;
        os << "build_basis: orthonormality defect " << t.orthonormality_defect << " exceeds " << t.tolerance
           << " at pair (f" << r / M << r % M << ", f" << c / M << c % M << ")";
        throw std::runtime_error(os.str());
    }
    if (options.check_products) {
        t.product_defect = product_rule_defect(t, &t.worst_pair);
        if (t.product_defect > t.tolerance)
            throw std::runtime_error("build_basis: product-rule defect " + std::to_string(t.product_defect) +
                                     " at " + t.worst_pair);
    }
    return t;
}

}  // namespace moyal::algebra

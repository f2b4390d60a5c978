#include "moyal/assembly/operators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "moyal/numerics/io.hpp"

namespace moyal::assembly {

using algebra::ThetaMatrix;
using algebra::WeylSymbol;

namespace {

void require_origin_free(const MomentumGrid& grid) {
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (grid.points.row(i).squaredNorm() == 0.0) throw std::domain_error("grid contains the origin");
}

Eigen::VectorXd sqrt_weights(const MomentumGrid& grid) { return grid.weights.cwiseSqrt(); }

// sqrt(w_i) K_ij sqrt(w_j)
Eigen::MatrixXcd weighted_kernel(const WeylSymbol& f, const MomentumGrid& grid, const ThetaMatrix& theta) {
    Eigen::MatrixXcd K = algebra::twisted_kernel(f, grid, theta);
    const Eigen::VectorXd sw = sqrt_weights(grid);
    for (Eigen::Index j = 0; j < K.cols(); ++j) K.col(j) *= sw(j);
    for (Eigen::Index i = 0; i < K.rows(); ++i) K.row(i) *= sw(i);
    return K;
}

void require_compatible(const KernelOperator& A, const KernelOperator& B) {
    if (!A.grid.same_as(B.grid) || A.spin_dim != B.spin_dim || A.dim() != B.dim())
        throw std::invalid_argument("operators live on different grids or spin spaces");
}

std::vector<Eigen::MatrixXcd> node_signs(const MomentumGrid& grid, const numerics::SpinStructure& spin) {
    std::vector<Eigen::MatrixXcd> s(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        s[i] = numerics::sign_matrix(spin, grid.points.row(i).transpose());
    return s;
}

}  // namespace

double FullSymbol::operator()(const double* t) const {
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) r2 += t[k] * t[k];
    const double r = std::sqrt(r2);
    if (!angular) return radial_at(r);
    if (r == 0.0) throw std::domain_error("FullSymbol: angular part undefined at the origin");
    double s[8];
    for (int k = 0; k < d; ++k) s[k] = t[k] / r;
    return angular(s) * radial_at(r);
}

FullSymbol FullSymbol::power(double z) const {
    FullSymbol p = *this;
    if (angular) {
        AngularFn g = angular;
        p.angular = [g, z](const double* s) { return std::pow(g(s), z); };
    }
    if (radial) {
        RadialFn w = radial;
        p.radial = [w, z](double r) { return std::pow(w(r), z); };
    }
    p.label = "(" + label + ")^" + std::to_string(z);
    return p;
}

FullSymbol constant_symbol(int d, double c) {
    FullSymbol h;
    h.d = d;
    if (c != 1.0) h.radial = [c](double) { return c; };
    h.label = std::to_string(c);
    return h;
}

FullSymbol angular_symbol(int d, AngularFn g, std::string label) {
    FullSymbol h;
    h.d = d;
    h.angular = std::move(g);
    h.label = std::move(label);
    return h;
}

FullSymbol bessel_symbol(int d, double beta) {
    FullSymbol h;
    h.d = d;
    h.radial = [beta](double r) { return std::pow(1.0 + r * r, -0.5 * beta); };
    h.label = "(1-Delta)^{-" + std::to_string(beta) + "/2}";
    return h;
}

FullSymbol weighted_angular_symbol(int d, AngularFn g, double beta, std::string label) {
    FullSymbol h = bessel_symbol(d, beta);
    h.angular = std::move(g);
    h.label = label + h.label;
    return h;
}

KernelOperator identity_operator(const MomentumGrid& grid, int spin_dim) {
    const Eigen::Index n = grid.size() * spin_dim;
    return KernelOperator{grid, spin_dim, Eigen::MatrixXcd::Identity(n, n), "identity"};
}

KernelOperator assemble_multiplier(const FullSymbol& h, const MomentumGrid& grid) {
    if (h.d != grid.d) throw std::invalid_argument("assemble_multiplier: dimension mismatch");
    Eigen::VectorXcd diag(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        Eigen::VectorXd t = grid.points.row(i).transpose();
        const double v = h(t.data());
        if (!std::isfinite(v)) throw std::domain_error("assemble_multiplier: non-finite sample");
        diag(i) = v;
    }
    return KernelOperator{grid, 1, diag.asDiagonal().toDenseMatrix(), "multiplier " + h.label};
}

KernelOperator assemble_conv_product(const WeylSymbol& f, const FullSymbol& h, const MomentumGrid& grid,
                                     const ThetaMatrix& theta) {
    Eigen::MatrixXcd K = weighted_kernel(f, grid, theta);
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
        Eigen::VectorXd t = grid.points.row(j).transpose();
        K.col(j) *= h(t.data());
    }
    return KernelOperator{grid, 1, std::move(K), "pi1(" + f.label() + ") h(" + h.label + ")"};
}

KernelOperator assemble_quantized_derivative(const WeylSymbol& f, const MomentumGrid& grid,
                                             const numerics::SpinStructure& spin, const ThetaMatrix& theta) {
    if (spin.d != grid.d) throw std::invalid_argument("assemble_quantized_derivative: spin dimension mismatch");
    require_origin_free(grid);
    const Eigen::MatrixXcd K = weighted_kernel(f, grid, theta);
    const auto sig = node_signs(grid, spin);
    const int D = spin.dim;
    const Eigen::Index N = grid.size();
    Eigen::MatrixXcd B(N * D, N * D);
    for (Eigen::Index j = 0; j < N; ++j)
        for (int b = 0; b < D; ++b)
            for (Eigen::Index i = 0; i < N; ++i)
                for (int a = 0; a < D; ++a) B(i * D + a, j * D + b) = (sig[i](a, b) - sig[j](a, b)) * K(i, j);
    return KernelOperator{grid, D, std::move(B), "qd(" + f.label() + ")"};
}

KernelOperator assemble_approximant(const WeylSymbol& f, const MomentumGrid& grid,
                                    const numerics::SpinStructure& spin, const ThetaMatrix& theta) {
    if (spin.d != grid.d) throw std::invalid_argument("assemble_approximant: spin dimension mismatch");
    require_origin_free(grid);
    const int d = grid.d, D = spin.dim;
    const Eigen::Index N = grid.size();
    const Eigen::MatrixXcd K = weighted_kernel(f, grid, theta);
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(N * D, N * D);
    std::vector<double> F(d), s(d), A(d);
    for (Eigen::Index j = 0; j < N; ++j) {
        const double hj = 1.0 / std::sqrt(1.0 + grid.points.row(j).squaredNorm());
        for (Eigen::Index i = 0; i < N; ++i) {
            const double ri = grid.norm(i);
            double radial = 0.0;
            for (int k = 0; k < d; ++k) {
                F[k] = grid.points(i, k) - grid.points(j, k);
                s[k] = grid.points(i, k) / ri;
                radial += s[k] * F[k];
            }
            for (int k = 0; k < d; ++k) A[k] = F[k] - s[k] * radial;
            const cd kij = K(i, j) * hj;
            for (int k = 0; k < d; ++k) {
                if (A[k] == 0.0) continue;
                const cd c = A[k] * kij;
                for (int b = 0; b < D; ++b)
                    for (int a = 0; a < D; ++a) B(i * D + a, j * D + b) += spin.gammas[k](a, b) * c;
            }
        }
    }
    return KernelOperator{grid, D, std::move(B), "approximant(" + f.label() + ")"};
}

KernelOperator assemble_approximant(const algebra::MatrixElement& x, const algebra::BasisTable& table,
                                    const MomentumGrid& grid, const numerics::SpinStructure& spin) {
    return assemble_approximant(algebra::to_symbol(x, table), grid, spin, x.theta);
}

KernelOperator assemble_commutator(const WeylSymbol& f, const FullSymbol& G, const FullSymbol& Bw,
                                   const MomentumGrid& grid, const ThetaMatrix& theta) {
    require_origin_free(grid);
    Eigen::MatrixXcd K = weighted_kernel(f, grid, theta);
    const Eigen::Index N = grid.size();
    Eigen::VectorXd g(N), b(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::VectorXd t = grid.points.row(i).transpose();
        g(i) = G(t.data());
        b(i) = Bw(t.data());
    }
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i) K(i, j) *= (g(j) - g(i)) * b(j);
    return KernelOperator{grid, 1, std::move(K), "[pi1(" + f.label() + "), " + G.label + "] " + Bw.label};
}

KernelOperator compose(const KernelOperator& A, const KernelOperator& B) {
    require_compatible(A, B);
    return KernelOperator{A.grid, A.spin_dim, A.matrix * B.matrix, A.label + " . " + B.label};
}

KernelOperator add(const KernelOperator& A, const KernelOperator& B) {
    require_compatible(A, B);
    return KernelOperator{A.grid, A.spin_dim, A.matrix + B.matrix, A.label + " + " + B.label};
}

KernelOperator scale(cd c, const KernelOperator& A) {
    return KernelOperator{A.grid, A.spin_dim, c * A.matrix, A.label};
}

KernelOperator adjoint(const KernelOperator& A) {
    return KernelOperator{A.grid, A.spin_dim, A.matrix.adjoint(), "(" + A.label + ")*"};
}

KernelOperator spin_lift(const KernelOperator& A, int spin_dim) {
    if (A.spin_dim != 1) throw std::invalid_argument("spin_lift: operator already carries spin");
    const Eigen::Index N = A.dim();
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(N * spin_dim, N * spin_dim);
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < N; ++i)
            for (int a = 0; a < spin_dim; ++a) B(i * spin_dim + a, j * spin_dim + a) = A.matrix(i, j);
    return KernelOperator{A.grid, spin_dim, std::move(B), A.label + " (x) 1"};
}

void export_operator(const KernelOperator& A, const std::string& prefix) {
    const Eigen::Index R = A.matrix.rows(), C = A.matrix.cols();
    std::string bytes(static_cast<std::size_t>(R * C) * 2 * sizeof(double), '\0');
    double* out = reinterpret_cast<double*>(bytes.data());
    for (Eigen::Index i = 0; i < R; ++i)
        for (Eigen::Index j = 0; j < C; ++j) {
            *out++ = A.matrix(i, j).real();
            *out++ = A.matrix(i, j).imag();
        }
    numerics::write_file_atomic(prefix + ".bin", bytes);
    nlohmann::json side;
    side["label"] = A.label;
    side["spin_dim"] = A.spin_dim;
    side["rows"] = R;
    side["cols"] = C;
    side["dtype"] = "complex128";
    side["order"] = "row-major";
    side["grid"] = {{"d", A.grid.d},
                    {"L", A.grid.L},
                    {"n", A.grid.n},
                    {"scheme", A.grid.uniform() ? "midpoint" : "gauss-legendre"}};
    numerics::write_file_atomic(prefix + ".json", side.dump(2) + "\n");
}

}  // namespace moyal::assembly

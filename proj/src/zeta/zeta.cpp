#include "moyal/zeta/zeta.hpp"

#include <cmath>
#include <stdexcept>

#include "moyal/numerics/special.hpp"
#include "moyal/spectral/dense.hpp"

namespace moyal::zeta {

using numerics::pi;

Eigen::MatrixXcd PositiveDecomposition::power(double z) const {
    Eigen::VectorXd lz = lambda.unaryExpr([z](double l) { return l > 0.0 ? std::pow(l, z) : 0.0; });
    if (diagonal) return lz.cast<std::complex<double>>().asDiagonal().toDenseMatrix();
    return vectors * lz.cast<std::complex<double>>().asDiagonal() * vectors.adjoint();
}

Eigen::VectorXd PositiveDecomposition::power_diagonal(double z) const {
    Eigen::VectorXd lz = lambda.unaryExpr([z](double l) { return l > 0.0 ? std::pow(l, z) : 0.0; });
    if (diagonal) return lz;
    return vectors.cwiseAbs2() * lz;
}

double PositiveDecomposition::power_trace(double z) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (lambda(i) > 0.0) s += std::pow(lambda(i), z);
    return s;
}

PositiveDecomposition decompose_positive(const assembly::KernelOperator& A, double clip_threshold) {
    const Eigen::MatrixXcd& M = A.matrix;
    if (M.rows() != M.cols()) throw std::invalid_argument("decompose_positive: operator must be square");
    PositiveDecomposition out;
    const bool diag = M.isDiagonal(0.0);
    Eigen::VectorXd lam;
    if (diag) {
        lam = M.diagonal().real();
        out.diagonal = true;
    } else {
        auto [w, V] = spectral::hermitian_eigensystem(0.5 * (M + M.adjoint()));
        lam = std::move(w);
        out.vectors = std::move(V);
    }
    double neg = 0.0, total = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        total += std::abs(lam(i));
        if (lam(i) < 0.0) {
            neg += -lam(i);
            lam(i) = 0.0;
        }
    }
    out.clip_mass = total > 0.0 ? neg / total : 0.0;
    if (out.clip_mass > clip_threshold)
        throw std::domain_error("decompose_positive: clip mass " + std::to_string(out.clip_mass) +
                                " exceeds threshold");
    out.lambda = std::move(lam);
    return out;
}

double zeta_trace(const PositiveDecomposition& A, const PositiveDecomposition& B, double z) {
    if (A.dim() != B.dim()) throw std::invalid_argument("zeta_trace: dimension mismatch");
    if (A.diagonal) return A.power_diagonal(z).dot(B.power_diagonal(z));
    if (B.diagonal) return B.power_diagonal(z).dot(A.power_diagonal(z));
    const Eigen::MatrixXcd Az = A.power(z), Bz = B.power(z);
    // Tr(Az Bz) = sum_ij Az_ij Bz_ji
    return (Az.transpose().cwiseProduct(Bz)).sum().real();
}

double zeta_trace(const assembly::KernelOperator& A, const assembly::KernelOperator& B, double z) {
    return zeta_trace(decompose_positive(A), decompose_positive(B), z);
}

double hz_radial_closed_form(double z, int d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("hz_radial_closed_form: d must be even");
    if (!(z > d)) throw std::domain_error("hz_radial_closed_form: need z > d");
    double den = 1.0;
    for (int k = 2; k <= d; k += 2) den *= (z - k);
    return std::pow(2.0, d / 2.0 - 1.0) * numerics::gamma_fn(d / 2.0) / den;
}

namespace {

// int_R^inf (1+r^2)^{-z/2} r^{d-1} dr via v = 1/(1+r^2):
// (1/2) int_0^{v1} v^{(z-d)/2 - 1} (1-v)^{d/2-1} dv, expanded binomially.
double radial_tail(double R, double z, int d) {
    const double v1 = 1.0 / (1.0 + R * R);
    const double a = 0.5 * (z - d);
    const int m = d / 2 - 1;
    double s = 0.0, binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        s += binom * ((k % 2) ? -1.0 : 1.0) * std::pow(v1, a + k) / (a + k);
        binom = binom * (m - k) / (k + 1.0);
    }
    return 0.5 * s;
}

}  // namespace

HzIntegral hz_integral(const assembly::AngularFn& g, double z, int d, const numerics::MomentumGrid& grid,
                       const numerics::SphereGrid& sphere) {
    if (!(z > d)) throw std::domain_error("hz_integral: need z > d");
    if (grid.d != d || sphere.d != d) throw std::invalid_argument("hz_integral: dimension mismatch");
    auto gz = [&](const double* s) { return g ? std::pow(g(s), z) : 1.0; };

    double ang = 0.0;
    for (Eigen::Index q = 0; q < sphere.size(); ++q) {
        Eigen::VectorXd s = sphere.points.row(q).transpose();
        ang += sphere.weights(q) * gz(s.data());
    }

    HzIntegral out;
    out.closed_form = ang * hz_radial_closed_form(z, d);

    // chi(r) = exp(-r^2/rho^2) is below 1e-15 on the box boundary.
    const double rho = grid.L / 6.0;
    double inner = 0.0;
    std::vector<double> s(d);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double r2 = grid.points.row(i).squaredNorm();
        const double r = std::sqrt(r2);
        for (int k = 0; k < d; ++k) s[k] = grid.points(i, k) / r;
        inner += grid.weights(i) * gz(s.data()) * std::pow(1.0 + r2, -0.5 * z) * std::exp(-r2 / (rho * rho));
    }

    // (1 - chi) part: panels of unit width on [0, R1], exact tail beyond.
    const double R1 = 8.0 * rho;
    const int panels = static_cast<int>(std::ceil(R1));
    const double width = R1 / panels;
    double radial = 0.0;
    for (int p = 0; p < panels; ++p) {
        const auto gl = numerics::gauss_legendre(24, p * width, (p + 1) * width);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double r = gl.nodes[k];
            radial += gl.weights[k] * std::pow(1.0 + r * r, -0.5 * z) * std::pow(r, d - 1) *
                      -std::expm1(-r * r / (rho * rho));
        }
    }
    radial += radial_tail(R1, z, d);
    out.quadrature = inner + ang * radial;
    return out;
}

double residue_at_d(const ZetaSamples& samples, double d, double* condition) {
    const std::size_t m = samples.z.size();
    if (m < 4 || samples.trace.size() != m) throw std::invalid_argument("residue_at_d: need at least 4 samples");
    Eigen::MatrixXd A(m, 3);
    Eigen::VectorXd b(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double e = samples.z[k] - d;
        if (!(e > 0.0)) throw std::domain_error("residue_at_d: samples must lie right of d");
        if (k > 0 && !(samples.z[k] < samples.z[k - 1]))
            throw std::invalid_argument("residue_at_d: z values must decrease toward d");
        if (!std::isfinite(samples.trace[k])) throw std::domain_error("residue_at_d: non-finite trace value");
        A(k, 0) = 1.0 / e;
        A(k, 1) = 1.0;
        A(k, 2) = e;
        b(k) = samples.trace[k];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (condition) *condition = cond;
    if (!(cond < 1e10)) throw std::runtime_error("residue_at_d: ill-conditioned fit");
    return svd.solve(b)(0);
}

double kappa(int d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("kappa: d must be even and positive");
    return std::pow(numerics::gamma_fn(d / 2.0) / (std::pow(2.0, d / 2.0 + 1.0) * d * std::pow(pi, d)), 1.0 / d);
}

double riemann_zeta(double s, long N) {
    if (!(s > 1.0)) throw std::domain_error("riemann_zeta: need s > 1");
    double sum = 0.0;
    for (long k = N; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double n = static_cast<double>(N);
    return sum + std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1.0) / 12.0;
}

WienerIkehara wiener_ikehara_synthetic(double p, long N, int spike_rank, double spike_factor,
                                       const std::vector<double>& stencil) {
    if (!(p > 0.0)) throw std::domain_error("wiener_ikehara_synthetic: p must be positive");
    if (N < 10000) throw std::invalid_argument("wiener_ikehara_synthetic: need N >= 1e4");
    WienerIkehara out;
    out.p = p;
    out.N = N;
    out.samples.label = "synthetic mu_n = (n+1)^{-1/p}";
    for (double e : stencil) {
        const double z = p + e;
        const double s = z / p;
        double t = 0.0;
        for (long k = N; k >= 1; --k) {
            double mu = std::pow(static_cast<double>(k), -1.0 / p);
            if (k <= spike_rank) mu *= spike_factor;
            t += std::pow(mu, z);
        }
        const double n = static_cast<double>(N);
        t += std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s) + s * std::pow(n, -s - 1.0) / 12.0;
        out.samples.z.push_back(z);
        out.samples.trace.push_back(t);
    }
    out.residue = residue_at_d(out.samples, p);
    out.coefficient = std::pow(out.residue / p, 1.0 / p);
    return out;
}

double completed_zeta_trace(const PositiveDecomposition& B, const assembly::AngularFn& g,
                            const numerics::MomentumGrid& grid, double z) {
    const int d = 2;
    if (grid.d != d) throw std::invalid_argument("completed_zeta_trace: implemented for d = 2");
    if (B.dim() != grid.size()) throw std::invalid_argument("completed_zeta_trace: operator/grid size mismatch");
    const Eigen::VectorXd diag = B.power_diagonal(z);
    double box = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double r = grid.norm(i);
        double s[2] = {grid.points(i, 0) / r, grid.points(i, 1) / r};
        box += std::pow(g(s), z) * std::pow(1.0 + r * r, -0.5 * z) * diag(i);
    }
    // exterior of the box per direction: R(phi) = L / max(|cos|, |sin|), smooth on octants
    double outside = 0.0;
    for (int sec = 0; sec < 8; ++sec) {
        auto gl = numerics::gauss_legendre(32, sec * pi / 4, (sec + 1) * pi / 4);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            double s[2] = {std::cos(gl.nodes[k]), std::sin(gl.nodes[k])};
            const double R = grid.L / std::max(std::abs(s[0]), std::abs(s[1]));
            outside += gl.weights[k] * std::pow(g(s), z) * std::pow(1.0 + R * R, 1.0 - 0.5 * z) / (z - 2.0);
        }
    }
    const double density = B.power_trace(z) / std::pow(2.0 * grid.L, d);
    return box + density * outside;
}

ResidueExperiment residue_experiment(const algebra::MatrixElement& x, const algebra::BasisTable& table,
                                     const assembly::AngularFn& g, const numerics::MomentumGrid& grid,
                                     const numerics::SphereGrid& sphere, const std::vector<double>& stencil) {
    const int d = 2;
    if (grid.d != d || x.theta.d != d) throw std::invalid_argument("residue_experiment: implemented for d = 2");
    ResidueExperiment out;
    out.L = grid.L;

    const assembly::KernelOperator B =
        assembly::assemble_conv_product(algebra::to_symbol(x, table), assembly::constant_symbol(d), grid, x.theta);
    const PositiveDecomposition Bd = decompose_positive(B);
    out.clip_mass = Bd.clip_mass;

    for (double e : stencil) {
        out.samples.z.push_back(d + e);
        out.samples.trace.push_back(completed_zeta_trace(Bd, g, grid, d + e));
    }
    out.samples.label = "Tr(A^z B^z) with exterior completion";
    out.residue = residue_at_d(out.samples, d);

    double gd = 0.0;
    for (Eigen::Index q = 0; q < sphere.size(); ++q) {
        Eigen::VectorXd s = sphere.points.row(q).transpose();
        gd += sphere.weights(q) * std::pow(std::abs(g(s.data())), d);
    }
    const double lam = kappa(d) * algebra::lp_norm(x, d) * std::pow(gd, 1.0 / d);
    out.target = d * std::pow(lam, d);
    out.relative_error = std::abs(out.residue / out.target - 1.0);
    return out;
}

}  // namespace moyal::zeta

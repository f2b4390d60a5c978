#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "moyal/algebra/element.hpp"
#include "moyal/assembly/operators.hpp"
#include "moyal/numerics/grid.hpp"

namespace moyal::zeta {

struct ZetaSamples {
    std::vector<double> z;      // strictly decreasing toward d
    std::vector<double> trace;
    std::string label;
};

// Spectral decomposition of a positive operator after symmetrize-and-clip.
struct PositiveDecomposition {
    Eigen::VectorXd lambda;
    Eigen::MatrixXcd vectors;  // empty for diagonal operators
    double clip_mass = 0.0;    // sum of clipped negative eigenvalues / trace norm
    bool diagonal = false;

    Eigen::Index dim() const { return lambda.size(); }
    Eigen::MatrixXcd power(double z) const;
    Eigen::VectorXd power_diagonal(double z) const;
    double power_trace(double z) const;
};

// Rejects operators whose clip mass exceeds the threshold.
PositiveDecomposition decompose_positive(const assembly::KernelOperator& A, double clip_threshold = 1e-8);

// Tr(A^z B^z)
double zeta_trace(const PositiveDecomposition& A, const PositiveDecomposition& B, double z);
double zeta_trace(const assembly::KernelOperator& A, const assembly::KernelOperator& B, double z);

// 2^{d/2-1} Gamma(d/2) / ((z-2)(z-4)...(z-d)) = int_0^inf (1+r^2)^{-z/2} r^{d-1} dr
double hz_radial_closed_form(double z, int d);

struct HzIntegral {
    double quadrature = 0.0;
    double closed_form = 0.0;
    double relative_error() const { return std::abs(quadrature / closed_form - 1.0); }
};

// int g(t/|t|)^z (1+|t|^2)^{-z/2} dt. Quadrature: Gaussian radial partition with
// the inner part on the grid and the outer part as sphere x radial quadrature.
// For g = 1 the grid part is accurate to about exp(-2 pi / h); a non-constant g
// is discontinuous at the origin and adds an O(h^d) lattice error there.
HzIntegral hz_integral(const assembly::AngularFn& g, double z, int d, const numerics::MomentumGrid& grid,
                       const numerics::SphereGrid& sphere);

// Least-squares fit trace = c/(z-d) + a0 + a1 (z-d); returns c.
double residue_at_d(const ZetaSamples& samples, double d, double* condition = nullptr);

// (Gamma(d/2) / (2^{d/2+1} d pi^d))^{1/d}
double kappa(int d);

// Partial sum to N plus Euler-Maclaurin tail.
double riemann_zeta(double s, long N = 1000000);

struct WienerIkehara {
    double p = 0.0;
    long N = 0;
    ZetaSamples samples;
    double residue = 0.0;
    double coefficient = 0.0;  // (residue / p)^{1/p}
};

// mu_n = (n+1)^{-1/p}; optional spike multiplies the first spike_rank values.
WienerIkehara wiener_ikehara_synthetic(double p, long N, int spike_rank = 0, double spike_factor = 1.0,
                                       const std::vector<double>& stencil = {0.4, 0.2, 0.1, 0.05});

// Tr(A^z B^z) for A = g(t/|t|)(1+|t|^2)^{-1/2} on the box grid, completed by
// the exterior of the box using the trace density Tr(B^z)/|box|. d = 2.
double completed_zeta_trace(const PositiveDecomposition& B, const assembly::AngularFn& g,
                            const numerics::MomentumGrid& grid, double z);

struct ResidueExperiment {
    ZetaSamples samples;
    double residue = 0.0;
    double target = 0.0;  // d (kappa_d ||B||_d ||g||_d)^d
    double relative_error = 0.0;
    double clip_mass = 0.0;
    double L = 0.0;
};

// A = g(t/|t|)(1+|t|^2)^{-1/2}, B = pi1(x) for positive x, d = 2.
ResidueExperiment residue_experiment(const algebra::MatrixElement& x, const algebra::BasisTable& table,
                                     const assembly::AngularFn& g, const numerics::MomentumGrid& grid,
                                     const numerics::SphereGrid& sphere,
                                     const std::vector<double>& stencil = {0.4, 0.2, 0.1, 0.05});

}  // namespace moyal::zeta

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "moyal/algebra/element.hpp"
#include "moyal/algebra/symbol.hpp"
#include "moyal/numerics/grid.hpp"
#include "moyal/numerics/spin.hpp"

namespace moyal::assembly {

using cd = std::complex<double>;
using numerics::MomentumGrid;

// Dense Nystrom matrix on C^{spin_dim} (x) L2(grid). Row index is
// i * spin_dim + a for grid node i and spin component a.
struct KernelOperator {
    MomentumGrid grid;
    int spin_dim = 1;
    Eigen::MatrixXcd matrix;
    std::string label;

    Eigen::Index dim() const { return matrix.rows(); }
};

using AngularFn = std::function<double(const double*)>;  // on unit vectors
using RadialFn = std::function<double(double)>;

// h(t) = g(t/|t|) w(|t|)
struct FullSymbol {
    int d = 2;
    AngularFn angular;
    RadialFn radial;
    std::string label;

    double operator()(const double* t) const;
    double angular_at(const double* s) const { return angular ? angular(s) : 1.0; }
    double radial_at(double r) const { return radial ? radial(r) : 1.0; }
    // h^z, valid for nonnegative h
    FullSymbol power(double z) const;
};

FullSymbol constant_symbol(int d, double c = 1.0);
FullSymbol angular_symbol(int d, AngularFn g, std::string label = "g");
// (1 + |t|^2)^{-beta/2}
FullSymbol bessel_symbol(int d, double beta);
// g(t/|t|) (1 + |t|^2)^{-beta/2}
FullSymbol weighted_angular_symbol(int d, AngularFn g, double beta, std::string label = "g");

KernelOperator identity_operator(const MomentumGrid& grid, int spin_dim = 1);
KernelOperator assemble_multiplier(const FullSymbol& h, const MomentumGrid& grid);
// sqrt(w_i) exp(-(i/2)<t_i,theta t_j>) f(t_i - t_j) h(t_j) sqrt(w_j)
KernelOperator assemble_conv_product(const algebra::WeylSymbol& f, const FullSymbol& h, const MomentumGrid& grid,
                                     const algebra::ThetaMatrix& theta);
// blocks (sigma(t_i) - sigma(t_j)) K_ij
KernelOperator assemble_quantized_derivative(const algebra::WeylSymbol& f, const MomentumGrid& grid,
                                             const numerics::SpinStructure& spin, const algebra::ThetaMatrix& theta);
// blocks sum_j gamma_j [F_j - s_j sum_k s_k F_k](t_i, t_j') (1 + |t_j'|^2)^{-1/2},
// F_j(t, s) = (t - s)_j K(t, s), s_j = t_{i,j}/|t_i|
KernelOperator assemble_approximant(const algebra::WeylSymbol& f, const MomentumGrid& grid,
                                    const numerics::SpinStructure& spin, const algebra::ThetaMatrix& theta);
KernelOperator assemble_approximant(const algebra::MatrixElement& x, const algebra::BasisTable& table,
                                    const MomentumGrid& grid, const numerics::SpinStructure& spin);
// Direct kernel of [pi1(U(f)), G] B for multipliers G, B:
// exp(...) f(t_i - t_j) (G(t_j) - G(t_i)) B(t_j)
KernelOperator assemble_commutator(const algebra::WeylSymbol& f, const FullSymbol& G, const FullSymbol& B,
                                   const MomentumGrid& grid, const algebra::ThetaMatrix& theta);

KernelOperator compose(const KernelOperator& A, const KernelOperator& B);
KernelOperator add(const KernelOperator& A, const KernelOperator& B);
KernelOperator scale(cd c, const KernelOperator& A);
KernelOperator adjoint(const KernelOperator& A);
// A (x) 1 on C^{spin_dim}
KernelOperator spin_lift(const KernelOperator& A, int spin_dim);

// Writes prefix.bin (row-major complex128, interleaved re/im) and prefix.json.
void export_operator(const KernelOperator& A, const std::string& prefix);

}  // namespace moyal::assembly

#pragma once

#include <Eigen/Dense>
#include "json.hpp"

#include "moyal/algebra/basis.hpp"
#include "moyal/algebra/symbol.hpp"

namespace moyal::algebra {

// x = sum a_kl U_theta(f_kl), truncated to 0 <= k,l < M (d = 2).
struct MatrixElement {
    ThetaMatrix theta;
    int M = 0;
    Eigen::MatrixXcd a;

    // sum_{max(k,l) >= M/2} |a_kl|^2 / sum |a_kl|^2 (0 for a = 0)
    double tail_mass() const;
    bool is_self_adjoint(double tol = 1e-12) const;
};

MatrixElement make_element(const ThetaMatrix& theta, const Eigen::MatrixXcd& a);
MatrixElement matrix_unit(const ThetaMatrix& theta, int M, int k, int l);

// Coefficient matrix <-> row-major vector with index k*M + l.
Eigen::VectorXcd vec(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int M);

WeylSymbol to_symbol(const MatrixElement& x, const BasisTable& table);
MatrixElement from_symbol(const WeylSymbol& f, const BasisTable& table);

cd trace_tau(const MatrixElement& x);
// (2 pi)^d f(0)
cd trace_tau(const WeylSymbol& f);

// Schatten p-norm of a matrix; p = infinity gives the operator norm.
double schatten_norm(const Eigen::MatrixXcd& a, double p);
// tau_theta(|x|^p)^{1/p} = ((2 pi)^d det theta)^{1/(2p)} ||a||_{S_p}
double lp_norm(const MatrixElement& x, double p);

// j in 1..d
MatrixElement partial_derivative(const MatrixElement& x, int j, const BasisTable& table);
WeylSymbol partial_derivative(const WeylSymbol& f, int j);

// x^p by functional calculus on the coefficient matrix.
MatrixElement positive_root(const MatrixElement& x, double p);

// r_m(a) = (sum (k+1)^{2m} (l+1)^{2m} |a_kl|^2)^{1/2}
double rapid_decay_seminorm(const MatrixElement& x, double m);

nlohmann::json to_json(const MatrixElement& x);
MatrixElement element_from_json(const nlohmann::json& j);

}  // namespace moyal::algebra

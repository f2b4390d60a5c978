#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "moyal/algebra/symbol.hpp"

namespace moyal::algebra {

// Matrix basis f_{kl}, 0 <= k,l < M, at d = 2:
//   f_{kl} = alpha sqrt(m!/M!) (sqrt(theta0/2) w)^{|k-l|} L_m^{(|k-l|)}(xi) exp(-xi/2)
// with alpha = theta0/(2 pi), xi = theta0 |t|^2 / 2, m = min(k,l),
// w = conj(z) for k >= l and w = -z for k < l, z = t1 + i t2.
// These are matrix units under the twisted convolution, f_{kl}* = f_{lk},
// and mutually orthogonal with common squared norm theta.basis_norm2().
cd basis_value(int k, int l, double theta0, double t1, double t2);
WeylSymbol basis_function(int k, int l, const ThetaMatrix& theta);

struct BasisOptions {
    bool check_products = true;
    // 0 selects max(1e-6, 10 * Gaussian quadrature sanity error)
    double tolerance = 0.0;
};

struct BasisTable {
    int M = 0;
    ThetaMatrix theta;
    numerics::MomentumGrid grid;
    double norm2 = 1.0;                   // common squared L2 norm of the f_{kl}
    Eigen::MatrixXcd samples;             // grid.size() x M^2, column k*M + l
    std::array<Eigen::MatrixXcd, 2> derivative;  // P^{(j)}(k'M+l', kM+l) = <t_j f_kl, f_k'l'> / norm2
    double tolerance = 0.0;
    double orthonormality_defect = 0.0;
    double product_defect = -1.0;         // -1 when not checked
    std::string worst_pair;

    int index(int k, int l) const { return k * M + l; }
    int size() const { return M * M; }
};

BasisTable build_basis(int M, const ThetaMatrix& theta, const numerics::MomentumGrid& grid,
                       BasisOptions options = {});

// max over all pairs of ||f_a * f_b - delta f_c||_2 / sqrt(norm2); also
// records the worst pair in `worst`.
double product_rule_defect(const BasisTable& table, std::string* worst = nullptr);

// max |G/norm2 - I| for the quadrature Gram matrix
double orthonormality_defect(const BasisTable& table);

}  // namespace moyal::algebra

#include "moyal/numerics/spin.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace moyal::numerics {

using cd = std::complex<double>;

SpinStructure make_pauli(int d) {
    if (d <= 0 || d % 2 != 0) throw std::invalid_argument("make_pauli: d must be positive and even");
    if (d > 8) throw std::invalid_argument("make_pauli: d > 8 is outside the supported range");
    Eigen::Matrix2cd X, Y, Z, I;
    X << 0, 1, 1, 0;
    Y << 0, cd(0, -1), cd(0, 1), 0;
    Z << 1, 0, 0, -1;
    I.setIdentity();

    const int m = d / 2;
    SpinStructure s;
    s.d = d;
    s.dim = 1 << m;
    for (int k = 0; k < m; ++k) {
        for (const auto* P : {&X, &Y}) {
            Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(1, 1);
            for (int f = 0; f < m; ++f) {
                const Eigen::Matrix2cd& F = f < k ? Z : (f == k ? *P : I);
                Eigen::MatrixXcd next = Eigen::kroneckerProduct(g, F);
                g = next;
            }
            s.gammas.push_back(g);
        }
    }
    return s;
}

Eigen::MatrixXcd sign_matrix(const SpinStructure& spin, const Eigen::Ref<const Eigen::VectorXd>& t) {
    const double r = t.norm();
    if (r == 0.0) throw std::domain_error("sign_matrix: undefined at the origin");
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(spin.dim, spin.dim);
    for (int j = 0; j < spin.d; ++j) s += (t(j) / r) * spin.gammas[j];
    return s;
}

double anticommutator_defect(const SpinStructure& spin) {
    double worst = 0.0;
    for (int j = 0; j < spin.d; ++j)
        for (int k = 0; k < spin.d; ++k) {
            Eigen::MatrixXcd a = spin.gammas[j] * spin.gammas[k] + spin.gammas[k] * spin.gammas[j];
            if (j == k) a -= 2.0 * Eigen::MatrixXcd::Identity(spin.dim, spin.dim);
            worst = std::max(worst, a.cwiseAbs().maxCoeff());
        }
    return worst;
}

}  // namespace moyal::numerics

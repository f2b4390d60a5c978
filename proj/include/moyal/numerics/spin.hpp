#pragma once

#include <Eigen/Dense>
#include <vector>

namespace moyal::numerics {

struct SpinStructure {
    int d = 2;
    int dim = 2;  // 2^{d/2}
    std::vector<Eigen::MatrixXcd> gammas;
};

// Jordan-Wigner choice: gamma_{2k+1} = Z x..x Z x X x I x..x I and
// gamma_{2k+2} = Z x..x Z x Y x I x..x I with k leading Z factors.
SpinStructure make_pauli(int d);

// sigma(t) = sum_j gamma_j t_j / |t|
Eigen::MatrixXcd sign_matrix(const SpinStructure& spin, const Eigen::Ref<const Eigen::VectorXd>& t);

double anticommutator_defect(const SpinStructure& spin);

}  // namespace moyal::numerics

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "moyal/algebra/element.hpp"
#include "moyal/numerics/grid.hpp"
#include "moyal/numerics/spin.hpp"

namespace moyal::algebra {

// sum_j ||d_j x||_{L_d}
double sobolev_seminorm(const MatrixElement& x, const BasisTable& table);

// |||x|||: L_d norm over spin x algebra x sphere of
// sum_j gamma_j (x) (d_j x - s_j sum_k s_k d_k x).
double triple_seminorm(const MatrixElement& x, const BasisTable& table, const numerics::SphereGrid& sphere,
                       const numerics::SpinStructure& spin);

// Same integrand for given derivative coefficient matrices.
double triple_seminorm(const std::vector<Eigen::MatrixXcd>& derivs, const ThetaMatrix& theta,
                       const numerics::SphereGrid& sphere, const numerics::SpinStructure& spin);

// Constants of the seminorm equivalence c_d ||x|| <= |||x||| <= C_d ||x||.
double seminorm_lower_constant(int d);  // sqrt2 (d-1)/d^2 omega_d^{1/d}
double seminorm_upper_constant(int d);  // sqrt2 omega_d^{1/d} (1+d)

// ||sum_j gamma_j (x) T_j||_{S_p}
double spin_sum_norm(const std::vector<Eigen::MatrixXcd>& T, const numerics::SpinStructure& spin, double p);

}  // namespace moyal::algebra

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "moyal/numerics/random.hpp"
#include "moyal/spectral/spectrum.hpp"

namespace moyal::spectral {

struct RankStability {
    TailFit base;
    TailFit perturbed;
    double difference = 0.0;  // |coefficient change|
    bool agree = false;       // difference <= base.residual + perturbed.residual
};

// Compares tail fits of A and A + V where V has rank r and operator norm
// norm_factor * ||A||. With leading = true V is built from the leading
// singular vectors of A, otherwise from random Gaussian factors.
RankStability finite_rank_stability(const Eigen::MatrixXcd& A, int r, double norm_factor, bool leading, double p,
                                    FitWindow window, numerics::Rng& rng);

struct DirectSum {
    std::vector<double> block_coefficients;
    TailFit merged;
    double predicted = 0.0;  // (sum a_k^p)^{1/p}
    double relative_error = 0.0;
};

// Fits each block over the window fractions of its own length and the
// merged spectrum over the same fractions of the merged length.
DirectSum direct_sum_coefficient(const std::vector<SingularSpectrum>& blocks, double p, double lo, double hi);

struct ConvergenceTransfer {
    std::vector<double> coefficients;  // a_n
    std::vector<double> distances;     // delta_n
    bool distances_decreasing = false;
    double limit = 0.0;                // a at delta -> 0 (least-squares line in delta)
};

// delta_n = max over the window of (n+1)^{1/p} mu_n(T_n - T).
ConvergenceTransfer convergence_transfer(const std::vector<SingularSpectrum>& approximants,
                                         const std::vector<SingularSpectrum>& differences, double p,
                                         FitWindow window);

}  // namespace moyal::spectral

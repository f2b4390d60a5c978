#pragma once

#include <Eigen/Dense>
#include <string>

#include "moyal/assembly/operators.hpp"

namespace moyal::spectral {

struct SingularSpectrum {
    Eigen::VectorXd mu;  // nonincreasing
    std::string label;
    int d = 2;
    double L = 0.0;
    int n = 0;

    Eigen::Index size() const { return mu.size(); }
};

// Hermitian and anti-Hermitian matrices (within 1e-12 of the largest entry)
// are symmetrized and diagonalized; everything else goes through a full SVD.
SingularSpectrum singular_values(const assembly::KernelOperator& A);
SingularSpectrum singular_values(assembly::KernelOperator&& A);
SingularSpectrum spectrum_from_values(Eigen::VectorXd values, std::string label = {}, int d = 2);

// sup_n (n+1)^{1/p} mu_n
double weak_quasinorm(const SingularSpectrum& s, double p);

struct FitWindow {
    Eigen::Index n1 = 0;
    Eigen::Index n2 = 0;  // inclusive
};
// Window [lo * count, hi * count] in 0-based indices.
FitWindow window_from_fractions(Eigen::Index count, double lo, double hi);

struct TailFit {
    double coefficient = 0.0;  // median of (n+1)^{1/p} mu_n over the window
    double exponent = 0.0;     // least-squares slope of log mu_n against log(n+1)
    FitWindow window;
    double residual = 0.0;     // max |(n+1)^{1/p} mu_n - coefficient| over the window
};

// p = d for the quantized derivative and key operators.
TailFit tail_coefficient(const SingularSpectrum& s, double p, FitWindow window);

// CSV "n,mu,scaled" with scaled = (n+1)^{1/p} mu_n, shortest round-trip formatting.
std::string spectrum_csv(const SingularSpectrum& s, double p);

}  // namespace moyal::spectral

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace moyal::numerics {

// All randomness in the library flows through this generator so that a
// fixed seed reproduces every sampled quantity.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double a = 0.0, double b = 1.0) {
        return std::uniform_real_distribution<double>(a, b)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::complex<double> complex_normal() { return {normal(), normal()}; }

    Eigen::MatrixXcd complex_matrix(Eigen::Index r, Eigen::Index c) {
        Eigen::MatrixXcd m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) m(i, j) = complex_normal();
        return m;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace moyal::numerics

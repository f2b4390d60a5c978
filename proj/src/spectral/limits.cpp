#include "moyal/spectral/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "moyal/spectral/dense.hpp"

namespace moyal::spectral {

RankStability finite_rank_stability(const Eigen::MatrixXcd& A, int r, double norm_factor, bool leading, double p,
                                    FitWindow window, numerics::Rng& rng) {
    if (r < 0) throw std::invalid_argument("finite_rank_stability: negative rank");
    RankStability out;
    out.base = tail_coefficient(spectrum_from_values(singular_values_dense(A)), p, window);
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(A.rows(), A.cols());
    if (r > 0) {
        const double normA = singular_values_dense(A)(0);
        if (leading) {
            ThinSvd svd = thin_svd(A);
            V = svd.U.leftCols(r) * svd.V.leftCols(r).adjoint();
        } else {
            V = rng.complex_matrix(A.rows(), r) * rng.complex_matrix(A.cols(), r).adjoint();
        }
        V *= norm_factor * normA / singular_values_dense(V)(0);
    }
    out.perturbed = tail_coefficient(spectrum_from_values(singular_values_dense(A + V)), p, window);
    out.difference = std::abs(out.perturbed.coefficient - out.base.coefficient);
    out.agree = out.difference <= out.base.residual + out.perturbed.residual;
    return out;
}

DirectSum direct_sum_coefficient(const std::vector<SingularSpectrum>& blocks, double p, double lo, double hi) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum_coefficient: no blocks");
    DirectSum out;
    Eigen::Index total = 0;
    double acc = 0.0;
    for (const auto& b : blocks) {
        const TailFit f = tail_coefficient(b, p, window_from_fractions(b.size(), lo, hi));
        out.block_coefficients.push_back(f.coefficient);
        acc += std::pow(f.coefficient, p);
        total += b.size();
    }
    Eigen::VectorXd merged(total);
    Eigen::Index pos = 0;
    for (const auto& b : blocks) {
        merged.segment(pos, b.size()) = b.mu;
        pos += b.size();
    }
    out.merged = tail_coefficient(spectrum_from_values(merged), p, window_from_fractions(total, lo, hi));
    out.predicted = std::pow(acc, 1.0 / p);
    out.relative_error = out.predicted > 0.0 ? std::abs(out.merged.coefficient / out.predicted - 1.0)
                                             : std::abs(out.merged.coefficient);
    return out;
}

ConvergenceTransfer convergence_transfer(const std::vector<SingularSpectrum>& approximants,
                                         const std::vector<SingularSpectrum>& differences, double p,
                                         FitWindow window) {
    if (approximants.empty() || approximants.size() != differences.size())
        throw std::invalid_argument("convergence_transfer: need matching non-empty sequences");
    ConvergenceTransfer out;
    for (std::size_t k = 0; k < approximants.size(); ++k) {
        out.coefficients.push_back(tail_coefficient(approximants[k], p, window).coefficient);
        double delta = 0.0;
        const auto& s = differences[k];
        for (Eigen::Index n = window.n1; n <= window.n2 && n < s.size(); ++n)
            delta = std::max(delta, std::pow(n + 1.0, 1.0 / p) * s.mu(n));
        out.distances.push_back(delta);
    }
    out.distances_decreasing = true;
    for (std::size_t k = 1; k < out.distances.size(); ++k)
        if (!(out.distances[k] < out.distances[k - 1])) out.distances_decreasing = false;

    const std::size_t m = out.coefficients.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sx += out.distances[k];
        sy += out.coefficients[k];
        sxx += out.distances[k] * out.distances[k];
        sxy += out.distances[k] * out.coefficients[k];
    }
    const double den = m * sxx - sx * sx;
    if (m < 2 || std::abs(den) < 1e-300) {
        out.limit = out.coefficients.back();
    } else {
        const double slope = (m * sxy - sx * sy) / den;
        out.limit = (sy - slope * sx) / m;
    }
    return out;
}

}  // namespace moyal::spectral

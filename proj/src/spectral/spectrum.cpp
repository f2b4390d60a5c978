#include "moyal/spectral/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "moyal/spectral/dense.hpp"

namespace moyal::spectral {

namespace {

enum class Structure { General, Hermitian, AntiHermitian };

Structure detect(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) return Structure::General;
    const double scale = A.cwiseAbs().maxCoeff();
    if (scale == 0.0) return Structure::Hermitian;
    const double tol = 1e-12 * scale;
    bool herm = true, anti = true;
    for (Eigen::Index j = 0; j < A.cols() && (herm || anti); ++j)
        for (Eigen::Index i = 0; i <= j; ++i) {
            const auto a = A(i, j), b = std::conj(A(j, i));
            if (herm && std::abs(a - b) > tol) herm = false;
            if (anti && std::abs(a + b) > tol) anti = false;
            if (!herm && !anti) break;
        }
    if (herm) return Structure::Hermitian;
    if (anti) return Structure::AntiHermitian;
    return Structure::General;
}

Eigen::VectorXd sorted_abs_descending(const Eigen::VectorXd& v) {
    std::vector<double> a(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) a[i] = std::abs(v(i));
    std::sort(a.begin(), a.end(), std::greater<>());
    return Eigen::Map<Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

}  // namespace

SingularSpectrum singular_values(const assembly::KernelOperator& A) {
    assembly::KernelOperator copy = A;
    return singular_values(std::move(copy));
}

SingularSpectrum singular_values(assembly::KernelOperator&& A) {
    SingularSpectrum s;
    s.label = A.label;
    s.d = A.grid.d;
    s.L = A.grid.L;
    s.n = A.grid.n;
    if (!A.matrix.allFinite()) throw std::runtime_error("singular_values: matrix has non-finite entries");
    switch (detect(A.matrix)) {
        case Structure::Hermitian: {
            Eigen::MatrixXcd H = 0.5 * (A.matrix + A.matrix.adjoint());
            A.matrix.resize(0, 0);
            s.mu = sorted_abs_descending(hermitian_eigenvalues(std::move(H)));
            break;
        }
        case Structure::AntiHermitian: {
            Eigen::MatrixXcd H = std::complex<double>(0.0, 0.5) * (A.matrix - A.matrix.adjoint());
            A.matrix.resize(0, 0);
            s.mu = sorted_abs_descending(hermitian_eigenvalues(std::move(H)));
            break;
        }
        case Structure::General:
            s.mu = singular_values_dense(std::move(A.matrix));
            break;
    }
    return s;
}

SingularSpectrum spectrum_from_values(Eigen::VectorXd values, std::string label, int d) {
    SingularSpectrum s;
    s.mu = sorted_abs_descending(values);
    s.label = std::move(label);
    s.d = d;
    return s;
}

double weak_quasinorm(const SingularSpectrum& s, double p) {
    if (!(p > 0.0)) throw std::domain_error("weak_quasinorm: p must be positive");
    double best = 0.0;
    for (Eigen::Index n = 0; n < s.size(); ++n) best = std::max(best, std::pow(n + 1.0, 1.0 / p) * s.mu(n));
    return best;
}

FitWindow window_from_fractions(Eigen::Index count, double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("window_from_fractions: need 0 <= lo < hi");
    FitWindow w;
    w.n1 = static_cast<Eigen::Index>(std::llround(lo * static_cast<double>(count)));
    w.n2 = static_cast<Eigen::Index>(std::llround(hi * static_cast<double>(count)));
    return w;
}

TailFit tail_coefficient(const SingularSpectrum& s, double p, FitWindow window) {
    if (!(p > 0.0)) throw std::domain_error("tail_coefficient: p must be positive");
    if (window.n1 < 10) throw std::invalid_argument("tail_coefficient: window must start past index 10");
    if (window.n2 >= s.size()) throw std::invalid_argument("tail_coefficient: window exceeds spectrum length");
    const Eigen::Index count = window.n2 - window.n1 + 1;
    if (count < 20) throw std::invalid_argument("tail_coefficient: window shorter than 20 points");

    std::vector<double> scaled(count);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    Eigen::Index used = 0;
    for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index n = window.n1 + k;
        scaled[k] = std::pow(n + 1.0, 1.0 / p) * s.mu(n);
        if (s.mu(n) > 0.0) {
            const double x = std::log(n + 1.0), y = std::log(s.mu(n));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++used;
        }
    }
    TailFit fit;
    fit.window = window;
    std::vector<double> sorted = scaled;
    std::sort(sorted.begin(), sorted.end());
    fit.coefficient = count % 2 ? sorted[count / 2] : 0.5 * (sorted[count / 2 - 1] + sorted[count / 2]);
    fit.exponent = used >= 2 ? (used * sxy - sx * sy) / (used * sxx - sx * sx) : 0.0;
    for (double v : scaled) fit.residual = std::max(fit.residual, std::abs(v - fit.coefficient));
    return fit;
}

std::string spectrum_csv(const SingularSpectrum& s, double p) {
    std::string out = "n,mu,scaled\n";
    char buf[64];
    for (Eigen::Index n = 0; n < s.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        auto r = std::to_chars(buf, buf + sizeof buf, s.mu(n));
        out.append(buf, r.ptr);
        out += ',';
        r = std::to_chars(buf, buf + sizeof buf, std::pow(n + 1.0, 1.0 / p) * s.mu(n));
        out.append(buf, r.ptr);
        out += '\n';
    }
    return out;
}

}  // namespace moyal::spectral

#include "moyal/algebra/element.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "moyal/numerics/special.hpp"

namespace moyal::algebra {

using numerics::pi;

double MatrixElement::tail_mass() const {
    const double total = a.squaredNorm();
    if (total == 0.0) return 0.0;
    double tail = 0.0;
    const int half = M / 2;
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l)
            if (std::max(k, l) >= half) tail += std::norm(a(k, l));
    return tail / total;
}

bool MatrixElement::is_self_adjoint(double tol) const {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

MatrixElement make_element(const ThetaMatrix& theta, const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("make_element: coefficient matrix must be square");
    return MatrixElement{theta, static_cast<int>(a.rows()), a};
}

MatrixElement matrix_unit(const ThetaMatrix& theta, int M, int k, int l) {
    if (k < 0 || l < 0 || k >= M || l >= M) throw std::out_of_range("matrix_unit: index out of range");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(M, M);
    a(k, l) = 1.0;
    return make_element(theta, a);
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& a) {
    const Eigen::Index M = a.rows();
    Eigen::VectorXcd v(M * M);
    for (Eigen::Index k = 0; k < M; ++k)
        for (Eigen::Index l = 0; l < M; ++l) v(k * M + l) = a(k, l);
    return v;
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int M) {
    if (v.size() != static_cast<Eigen::Index>(M) * M) throw std::invalid_argument("unvec: size mismatch");
    Eigen::MatrixXcd a(M, M);
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l) a(k, l) = v(k * M + l);
    return a;
}

WeylSymbol to_symbol(const MatrixElement& x, const BasisTable& table) {
    if (x.M != table.M) throw std::invalid_argument("to_symbol: truncation does not match basis table");
    const Eigen::MatrixXcd a = x.a;
    const int M = x.M;
    const double th = table.theta.theta0;
    WeylSymbol f(
        2,
        [a, M, th](const double* t) {
            cd acc = 0.0;
            for (int k = 0; k < M; ++k)
                for (int l = 0; l < M; ++l)
                    if (a(k, l) != cd(0.0)) acc += a(k, l) * basis_value(k, l, th, t[0], t[1]);
            return acc;
        },
        "rho(a)");
    return f.with_samples(table.grid, table.samples * vec(x.a));
}

MatrixElement from_symbol(const WeylSymbol& f, const BasisTable& table) {
    const Eigen::VectorXcd s = f.sample(table.grid);
    const Eigen::VectorXcd ws = table.grid.weights.cast<cd>().cwiseProduct(s);
    const Eigen::VectorXcd c = table.samples.adjoint() * ws / table.norm2;
    return make_element(table.theta, unvec(c, table.M));
}

cd trace_tau(const MatrixElement& x) { return x.theta.tau_scale() * x.a.trace(); }

cd trace_tau(const WeylSymbol& f) {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(f.dim());
    return std::pow(2.0 * pi, f.dim()) * f(zero);
}

double schatten_norm(const Eigen::MatrixXcd& a, double p) {
    if (!(p > 0.0)) throw std::domain_error("schatten_norm: p must be positive");
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const Eigen::VectorXd s = svd.singularValues();
    if (std::isinf(p)) return s.size() ? s(0) : 0.0;
    if (s.size() == 0 || s(0) == 0.0) return 0.0;
    // scale by the largest value to avoid overflow in s^p
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s(0), p);
    return s(0) * std::pow(acc, 1.0 / p);
}

double lp_norm(const MatrixElement& x, double p) {
    if (!(p > 0.0)) throw std::domain_error("lp_norm: p must be positive");
    const double sn = schatten_norm(x.a, p);
    if (std::isinf(p)) return sn;
    return std::pow(x.theta.tau_scale(), 1.0 / p) * sn;
}

MatrixElement partial_derivative(const MatrixElement& x, int j, const BasisTable& table) {
    if (j < 1 || j > x.theta.d) throw std::out_of_range("partial_derivative: j out of range");
    if (x.M != table.M) throw std::invalid_argument("partial_derivative: truncation does not match basis table");
    return make_element(x.theta, unvec(table.derivative[j - 1] * vec(x.a), x.M));
}

WeylSymbol partial_derivative(const WeylSymbol& f, int j) { return coordinate_multiple(f, j); }

MatrixElement positive_root(const MatrixElement& x, double p) {
    if (!(p > 0.0)) throw std::domain_error("positive_root: p must be positive");
    const Eigen::MatrixXcd h = 0.5 * (x.a + x.a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("positive_root: eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    if (lam.size() && lam.minCoeff() < -1e-10)
        throw std::domain_error("positive_root: coefficient matrix has negative spectrum " +
                                std::to_string(lam.minCoeff()));
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = lam(i) > 0.0 ? std::pow(lam(i), p) : 0.0;
    const Eigen::MatrixXcd& V = es.eigenvectors();
    return make_element(x.theta, V * lam.cast<cd>().asDiagonal() * V.adjoint());
}

double rapid_decay_seminorm(const MatrixElement& x, double m) {
    double acc = 0.0;
    for (int k = 0; k < x.M; ++k)
        for (int l = 0; l < x.M; ++l)
            acc += std::pow((k + 1.0) * (l + 1.0), 2.0 * m) * std::norm(x.a(k, l));
    return std::sqrt(acc);
}

nlohmann::json to_json(const MatrixElement& x) {
    nlohmann::json j;
    j["d"] = x.theta.d;
    j["theta0"] = x.theta.theta0;
    j["M"] = x.M;
    std::vector<double> re, im;
    for (int k = 0; k < x.M; ++k)
        for (int l = 0; l < x.M; ++l) {
            re.push_back(x.a(k, l).real());
            im.push_back(x.a(k, l).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

MatrixElement element_from_json(const nlohmann::json& j) {
    const int d = j.at("d").get<int>();
    const double th = j.at("theta0").get<double>();
    const int M = j.at("M").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (M < 1 || re.size() != static_cast<std::size_t>(M) * M || im.size() != re.size())
        throw std::invalid_argument("element_from_json: coefficient arrays do not match M");
    Eigen::MatrixXcd a(M, M);
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l) a(k, l) = cd(re[k * M + l], im[k * M + l]);
    return make_element(make_theta(d, th), a);
}

}  // namespace moyal::algebra

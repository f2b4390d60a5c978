#include <cmath>

#include "doctest.h"
#include "moyal/algebra/seminorms.hpp"
#include "moyal/assembly/operators.hpp"
#include "moyal/numerics/random.hpp"
#include "moyal/spectral/dense.hpp"
#include "moyal/spectral/limits.hpp"
#include "moyal/spectral/spectrum.hpp"

using namespace moyal::spectral;
using moyal::assembly::KernelOperator;
using moyal::numerics::make_grid;
using moyal::numerics::Rng;

namespace {

Eigen::VectorXd power_law(Eigen::Index N, double p, double c = 1.0) {
    Eigen::VectorXd v(N);
    for (Eigen::Index n = 0; n < N; ++n) v(n) = c * std::pow(n + 1.0, -1.0 / p);
    return v;
}

KernelOperator wrap(Eigen::MatrixXcd m) {
    const int n = 2;
    KernelOperator A{make_grid(2, 1.0, n), 1, std::move(m), "test"};
    return A;
}

Eigen::MatrixXcd random_unitary(Rng& rng, int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(rng.complex_matrix(n, n));
    return qr.householderQ();
}

}  // namespace

TEST_CASE("singular values of structured matrices") {
    auto grid = make_grid(2, 3.0, 6);
    auto h = moyal::assembly::bessel_symbol(2, 1.0);
    auto M = moyal::assembly::assemble_multiplier(h, grid);
    auto s = singular_values(M);
    std::vector<double> ref;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        Eigen::VectorXd t = grid.points.row(i).transpose();
        ref.push_back(std::abs(h(t.data())));
    }
    std::sort(ref.rbegin(), ref.rend());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(s.mu(i) - ref[i]) < 1e-14);

    Rng rng(1);
    Eigen::VectorXcd u = rng.complex_matrix(30, 1), v = rng.complex_matrix(30, 1);
    auto r1 = singular_values(wrap(u * v.adjoint()));
    CHECK(std::abs(r1.mu(0) - u.norm() * v.norm()) < 1e-12);
    CHECK(r1.mu.tail(29).maxCoeff() < 1e-12 * r1.mu(0));

    // Hermitian, anti-Hermitian and general paths agree with a plain SVD
    Eigen::MatrixXcd G = rng.complex_matrix(25, 25);
    for (Eigen::MatrixXcd m : {Eigen::MatrixXcd(G + G.adjoint()), Eigen::MatrixXcd(G - G.adjoint()), G}) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        CHECK((singular_values(wrap(m)).mu - svd.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
    }
    Eigen::MatrixXcd bad = G;
    bad(0, 0) = NAN;
    CHECK_THROWS(singular_values(wrap(bad)));
}

TEST_CASE("singular value inequalities") {
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        Eigen::MatrixXcd A = rng.complex_matrix(20, 20), U = rng.complex_matrix(20, 20), V = rng.complex_matrix(20, 20);
        auto mA = singular_values_dense(A);
        auto mUAV = singular_values_dense(U * A * V);
        const double nu = singular_values_dense(U)(0), nv = singular_values_dense(V)(0);
        for (int n = 0; n < 20; ++n) CHECK(mUAV(n) <= nu * mA(n) * nv * (1 + 1e-12));

        Eigen::MatrixXcd W = random_unitary(rng, 20), X = random_unitary(rng, 20);
        CHECK((singular_values_dense(W * A * X) - mA).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("weak quasinorm") {
    for (double p : {1.0, 2.0, 4.0}) CHECK(std::abs(weak_quasinorm(spectrum_from_values(power_law(100, p)), p) - 1.0) < 1e-14);
    CHECK(weak_quasinorm(spectrum_from_values(Eigen::VectorXd::Zero(10)), 2.0) == 0.0);
    CHECK_THROWS(weak_quasinorm(spectrum_from_values(power_law(10, 2)), 0.0));

    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        Eigen::MatrixXcd S = rng.complex_matrix(30, 30), T = rng.complex_matrix(30, 30);
        for (double p : {1.0, 2.0}) {
            auto w = [p](const Eigen::MatrixXcd& m) { return weak_quasinorm(spectrum_from_values(singular_values_dense(m)), p); };
            CHECK(w(S + T) <= std::pow(2.0, 1.0 / p) * (w(S) + w(T)));
            const double q = 2.0 * p, r = 1.0 / (1.0 / p + 1.0 / q);
            auto wr = weak_quasinorm(spectrum_from_values(singular_values_dense(S * T)), r);
            CHECK(wr <= std::pow(2.0, 1.0 / r) * w(S) * weak_quasinorm(spectrum_from_values(singular_values_dense(T)), q));
        }
    }
}

TEST_CASE("spin sums dominate their components") {
    auto spin = moyal::numerics::make_pauli(2);
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        std::vector<Eigen::MatrixXcd> T{rng.complex_matrix(6, 6), rng.complex_matrix(6, 6)};
        const double lhs = moyal::algebra::spin_sum_norm(T, spin, 2.0);
        double mx = 0.0;
        for (auto& t : T) mx = std::max(mx, moyal::algebra::schatten_norm(t, 2.0));
        CHECK(lhs >= std::sqrt(2.0) * mx * (1 - 1e-12));
    }
}

TEST_CASE("tail coefficient on synthetic spectra") {
    const Eigen::Index N = 4000;
    auto w = window_from_fractions(N, 0.02, 0.2);
    CHECK(w.n1 == 80);
    CHECK(w.n2 == 800);
    for (double p : {2.0, 4.0}) {
        auto fit = tail_coefficient(spectrum_from_values(power_law(N, p)), p, w);
        CHECK(std::abs(fit.coefficient - 1.0) < 1e-12);
        CHECK(std::abs(fit.exponent + 1.0 / p) < 1e-12);
        CHECK(fit.residual < 1e-12);
    }
    // oscillating perturbation; sorting is part of the definition of mu
    Eigen::VectorXd osc(N);
    for (Eigen::Index n = 0; n < N; ++n)
        osc(n) = std::pow(n + 1.0, -0.5) * (1.0 + ((n % 2) ? -1.0 : 1.0) / std::sqrt(n + 1.0));
    CHECK(std::abs(tail_coefficient(spectrum_from_values(osc), 2.0, w).coefficient - 1.0) < 0.05);

    auto s = spectrum_from_values(power_law(100, 2));
    CHECK_THROWS(tail_coefficient(s, 2.0, FitWindow{5, 50}));
    CHECK_THROWS(tail_coefficient(s, 2.0, FitWindow{20, 100}));
    CHECK_THROWS(tail_coefficient(s, 2.0, FitWindow{20, 30}));
}

TEST_CASE("tail coefficient ignores prepended large values") {
    const Eigen::Index N = 4000;
    auto base = power_law(N, 2.0, 1.3);
    auto w = window_from_fractions(N, 0.05, 0.2);
    const auto f0 = tail_coefficient(spectrum_from_values(base), 2.0, w);
    Eigen::VectorXd longer(N + 7);
    longer.head(7).setConstant(50.0);
    longer.tail(N) = base;
    FitWindow shifted{w.n1 + 7, w.n2 + 7};
    const auto f1 = tail_coefficient(spectrum_from_values(longer), 2.0, shifted);
    // scaled values shift by ((n+8)/(n+1))^{1/2}; bounded by the residual plus that drift
    CHECK(std::abs(f1.coefficient - f0.coefficient) <= f0.residual + f1.residual + 1.3 * (std::sqrt(1.0 + 7.0 / w.n1) - 1.0));
}

TEST_CASE("direct sums") {
    const Eigen::Index N = 4000;
    for (double p : {1.0, 2.0}) {
        auto two = direct_sum_coefficient({spectrum_from_values(power_law(N, p)), spectrum_from_values(power_law(N, p))}, p, 0.02, 0.2);
        CHECK(std::abs(two.merged.coefficient / std::pow(2.0, 1.0 / p) - 1.0) < 0.02);
        CHECK(two.relative_error < 0.02);
    }
    auto one = direct_sum_coefficient({spectrum_from_values(power_law(N, 2.0, 0.7))}, 2.0, 0.02, 0.2);
    CHECK(std::abs(one.merged.coefficient - 0.7) < 1e-12);

    Eigen::VectorXd fast(N);
    for (Eigen::Index n = 0; n < N; ++n) fast(n) = std::pow(n + 1.0, -2.0);
    auto mixed = direct_sum_coefficient({spectrum_from_values(power_law(N, 2.0)), spectrum_from_values(fast)}, 2.0, 0.02, 0.2);
    CHECK(std::abs(mixed.merged.coefficient - 1.0) < 0.02);
    CHECK(std::abs(mixed.predicted - 1.0) < 0.02);
    CHECK_THROWS(direct_sum_coefficient({}, 2.0, 0.02, 0.2));
}

TEST_CASE("finite rank stability") {
    const int N = 600;
    Rng rng(5);
    Eigen::MatrixXcd U = random_unitary(rng, N), V = random_unitary(rng, N);
    Eigen::MatrixXcd A = U * power_law(N, 2.0).cast<std::complex<double>>().asDiagonal() * V.adjoint();
    FitWindow w{60, 300};
    auto zero = finite_rank_stability(A, 0, 10.0, true, 2.0, w, rng);
    CHECK(zero.difference == 0.0);
    auto lead = finite_rank_stability(A, 5, 10.0, true, 2.0, w, rng);
    CHECK(lead.difference <= 2.0 * (lead.base.residual + lead.perturbed.residual));
    auto rnd = finite_rank_stability(A, 5, 10.0, false, 2.0, w, rng);
    CHECK(rnd.agree);

    // fast-decaying perturbation leaves the coefficient unchanged
    Eigen::VectorXd fast(N);
    for (int n = 0; n < N; ++n) fast(n) = std::pow(n + 1.0, -2.0);
    Eigen::MatrixXcd B = A + random_unitary(rng, N) * fast.cast<std::complex<double>>().asDiagonal() * random_unitary(rng, N);
    auto fa = tail_coefficient(spectrum_from_values(singular_values_dense(A)), 2.0, w);
    auto fb = tail_coefficient(spectrum_from_values(singular_values_dense(B)), 2.0, w);
    CHECK(std::abs(fa.coefficient - fb.coefficient) < 0.01);
}

TEST_CASE("convergence transfer") {
    const Eigen::Index N = 4000;
    auto w = window_from_fractions(N, 0.02, 0.2);
    auto T = spectrum_from_values(power_law(N, 2.0));

    auto same = convergence_transfer({T, T, T}, {spectrum_from_values(Eigen::VectorXd::Zero(N)),
                                                 spectrum_from_values(Eigen::VectorXd::Zero(N)),
                                                 spectrum_from_values(Eigen::VectorXd::Zero(N))},
                                     2.0, w);
    for (double dlt : same.distances) CHECK(dlt == 0.0);
    CHECK(std::abs(same.limit - 1.0) < 1e-12);
    CHECK_FALSE(same.distances_decreasing);

    // T_k = T + c_k T with c_k = 0.4/k + 0.2/k^2
    std::vector<SingularSpectrum> approx, diff;
    for (int k = 1; k <= 5; ++k) {
        const double c = 0.4 / k + 0.2 / (k * k);
        approx.push_back(spectrum_from_values((1.0 + c) * power_law(N, 2.0)));
        diff.push_back(spectrum_from_values(c * power_law(N, 2.0)));
    }
    auto tr = convergence_transfer(approx, diff, 2.0, w);
    CHECK(tr.distances_decreasing);
    CHECK(std::abs(tr.limit - 1.0) < 0.05);
    CHECK_THROWS(convergence_transfer({T}, {}, 2.0, w));
}

TEST_CASE("spectrum CSV") {
    Eigen::VectorXd v(3);
    v << 0.25, 1.0, 0.5;
    const auto csv = spectrum_csv(spectrum_from_values(v), 2.0);
    CHECK(csv.rfind("n,mu,scaled\n", 0) == 0);
    CHECK(csv.find("0,1,1\n") != std::string::npos);
    CHECK(csv.find("1,0.5,") != std::string::npos);
    CHECK(csv.find("2,0.25,") != std::string::npos);
}

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "moyal/algebra/basis.hpp"
#include "moyal/assembly/operators.hpp"
#include "moyal/assembly/symbol_list.hpp"
#include "moyal/numerics/random.hpp"
#include "moyal/numerics/special.hpp"

using namespace moyal::assembly;
using moyal::algebra::make_theta;
using moyal::numerics::make_grid;
using moyal::numerics::pi;
using moyal::numerics::Rng;

namespace {

const auto theta2 = make_theta(2, 2.0);

moyal::algebra::WeylSymbol random_gaussian(Rng& rng) {
    Eigen::VectorXd v(2), c(2);
    v << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    c << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    return moyal::algebra::modulated_gaussian(v, c, rng.uniform(0.6, 1.5));
}

FullSymbol gaussian_weight(double a) {
    FullSymbol h;
    h.d = 2;
    h.radial = [a](double r) { return std::exp(-a * r * r); };
    h.label = "gauss";
    return h;
}

}  // namespace

TEST_CASE("multipliers") {
    auto grid = make_grid(2, 4.0, 8);
    auto I = assemble_multiplier(constant_symbol(2), grid);
    CHECK((I.matrix - Eigen::MatrixXcd::Identity(64, 64)).norm() == 0.0);
    auto b = bessel_symbol(2, 1.0);
    double t[2] = {1.0, 0.0};
    CHECK(std::abs(b(t) - 1.0 / std::sqrt(2.0)) < 1e-15);

    AngularFn g = [](const double* s) { return 1.0 + 0.5 * s[0]; };
    auto G = assemble_multiplier(angular_symbol(2, g), grid);
    auto B = assemble_multiplier(b, grid);
    auto GB = assemble_multiplier(weighted_angular_symbol(2, g, 1.0), grid);
    CHECK((compose(G, B).matrix - GB.matrix).cwiseAbs().maxCoeff() < 1e-15);

    FullSymbol bad;
    bad.d = 2;
    bad.radial = [](double) { return NAN; };
    CHECK_THROWS(assemble_multiplier(bad, grid));
    CHECK_THROWS(assemble_multiplier(constant_symbol(4), grid));
}

TEST_CASE("Hilbert-Schmidt identity and trace formula") {
    auto grid = make_grid(2, 12.0, 48);
    auto f = moyal::algebra::gaussian_symbol(2, 1.0);
    auto h = gaussian_weight(1.0);
    auto M = assemble_conv_product(f, h, grid, theta2);
    CHECK(std::abs(M.matrix.trace() - pi) / pi < 1e-4);

    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        auto fk = random_gaussian(rng);
        auto hk = gaussian_weight(rng.uniform(0.5, 1.5));
        auto Mk = assemble_conv_product(fk, hk, grid, theta2);
        double h2 = 0.0, hint = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            Eigen::VectorXd t = grid.points.row(i).transpose();
            h2 += grid.weights(i) * std::pow(hk(t.data()), 2);
            hint += grid.weights(i) * hk(t.data());
        }
        const double hs = moyal::algebra::l2_norm(fk, grid) * std::sqrt(h2);
        CHECK(std::abs(Mk.matrix.norm() / hs - 1.0) < 1e-4);
        double zero[2] = {0, 0};
        const cd tr = std::pow(2 * pi, -2) * moyal::algebra::trace_tau(fk) * hint;
        CHECK(std::abs(Mk.matrix.trace() - tr) / std::abs(tr) < 1e-4);
        CHECK(std::abs(tr - fk(zero) * hint) < 1e-12);
    }
    auto Z = assemble_conv_product(moyal::algebra::zero_symbol(2), h, grid, theta2);
    CHECK(Z.matrix.norm() == 0.0);
}

TEST_CASE("Nystrom refinement consistency") {
    auto f = moyal::algebra::gaussian_symbol(2, 1.0);
    auto h = gaussian_weight(0.7);
    // spacing 0.5 against 0.25; aliasing of the phase is about exp(-(pi/h)^2/2) at h = 0.5
    auto coarse = assemble_conv_product(f, h, make_grid(2, 8.0, 32), theta2);
    auto fine = assemble_conv_product(f, h, make_grid(2, 8.0, 64), theta2);
    CHECK(std::abs(coarse.matrix.trace() - fine.matrix.trace()) / std::abs(fine.matrix.trace()) < 1e-6);
    CHECK(std::abs(coarse.matrix.norm() - fine.matrix.norm()) / fine.matrix.norm() < 1e-6);
}

TEST_CASE("quantized derivative structure") {
    auto grid = make_grid(2, 4.0, 10);
    auto spin = moyal::numerics::make_pauli(2);
    auto f00 = moyal::algebra::basis_function(0, 0, theta2);
    auto qd = assemble_quantized_derivative(f00, grid, spin, theta2);
    CHECK(qd.dim() == 200);
    for (Eigen::Index i = 0; i < grid.size(); ++i) CHECK(qd.matrix.block(2 * i, 2 * i, 2, 2).norm() == 0.0);
    // f00 self-adjoint: (dx)* = -d(x*) = -dx
    CHECK((qd.matrix.adjoint() + qd.matrix).cwiseAbs().maxCoeff() < 1e-14);

    Rng rng(6);
    auto f = random_gaussian(rng);
    auto lhs = adjoint(assemble_quantized_derivative(f, grid, spin, theta2));
    auto rhs = assemble_quantized_derivative(moyal::algebra::involution(f), grid, spin, theta2);
    CHECK((lhs.matrix + rhs.matrix).cwiseAbs().maxCoeff() < 1e-14);

    // sign matrix squares to one at every node
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        auto s = moyal::numerics::sign_matrix(spin, grid.points.row(i).transpose());
        CHECK((s * s - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
    }
    CHECK_THROWS(assemble_quantized_derivative(f00, make_grid(2, 4.0, 10), moyal::numerics::make_pauli(4), theta2));
}

TEST_CASE("quantized derivative equals the commutator with the sign matrix") {
    auto grid = make_grid(2, 4.0, 8);
    auto spin = moyal::numerics::make_pauli(2);
    Rng rng(12);
    auto f = random_gaussian(rng);
    auto X = spin_lift(assemble_conv_product(f, constant_symbol(2), grid, theta2), 2);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(X.dim(), X.dim());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        S.block(2 * i, 2 * i, 2, 2) = moyal::numerics::sign_matrix(spin, grid.points.row(i).transpose());
    Eigen::MatrixXcd comm = S * X.matrix - X.matrix * S;
    CHECK((comm - assemble_quantized_derivative(f, grid, spin, theta2).matrix).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("approximant blocks are tangential") {
    // A_j(s) = F_j - s_j sum_k s_k F_k has no radial part, so at a node on the
    // first axis the gamma_1 component vanishes.
    auto grid = make_grid(2, 4.0, 10);
    auto spin = moyal::numerics::make_pauli(2);
    auto f = moyal::algebra::gaussian_symbol(2, 1.0);
    auto A = assemble_approximant(f, grid, spin, theta2);
    double worst = 0.0, scale = A.matrix.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double r = grid.norm(i), s1 = grid.points(i, 0) / r, s2 = grid.points(i, 1) / r;
        for (Eigen::Index j = 0; j < grid.size(); ++j) {
            Eigen::MatrixXcd blk = A.matrix.block(2 * i, 2 * j, 2, 2);
            const cd a1 = (spin.gammas[0] * blk).trace() / 2.0, a2 = (spin.gammas[1] * blk).trace() / 2.0;
            worst = std::max(worst, std::abs(s1 * a1 + s2 * a2));
        }
    }
    CHECK(worst < 1e-14 * scale);
    auto Z = assemble_approximant(moyal::algebra::zero_symbol(2), grid, spin, theta2);
    CHECK(Z.matrix.norm() == 0.0);
}

TEST_CASE("approximant from the matrix picture agrees with the symbol picture") {
    moyal::algebra::BasisOptions o;
    o.check_products = false;
    auto table = moyal::algebra::build_basis(3, theta2, make_grid(2, 8.0, 48), o);
    auto grid = make_grid(2, 4.0, 8);
    auto spin = moyal::numerics::make_pauli(2);
    auto x = moyal::algebra::matrix_unit(theta2, 3, 0, 0);
    auto a = assemble_approximant(x, table, grid, spin);
    auto b = assemble_approximant(moyal::algebra::basis_function(0, 0, theta2), grid, spin, theta2);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("operator algebra") {
    auto grid = make_grid(2, 4.0, 8);
    Rng rng(3);
    auto A = assemble_conv_product(random_gaussian(rng), bessel_symbol(2, 1.0), grid, theta2);
    auto B = assemble_conv_product(random_gaussian(rng), constant_symbol(2), grid, theta2);
    CHECK((compose(identity_operator(grid), A).matrix - A.matrix).norm() == 0.0);
    CHECK((adjoint(compose(A, B)).matrix - compose(adjoint(B), adjoint(A)).matrix).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((add(A, scale(-1.0, A)).matrix).norm() == 0.0);
    CHECK_THROWS(compose(A, identity_operator(make_grid(2, 4.0, 10))));
    CHECK_THROWS(add(A, spin_lift(B, 2)));
    CHECK_THROWS(spin_lift(spin_lift(B, 2), 2));
}

TEST_CASE("commutator assembled two ways") {
    auto grid = make_grid(2, 6.0, 16);
    auto f00 = moyal::algebra::basis_function(0, 0, theta2);
    AngularFn g = [](const double* s) { return 1.0 + 0.5 * s[0] + 0.25 * s[0] * s[1]; };
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {-1.0, 0.0}, {-1.0, 1.0}}) {
        auto G = weighted_angular_symbol(2, g, -alpha);
        auto Bw = bessel_symbol(2, beta);
        auto X = assemble_conv_product(f00, constant_symbol(2), grid, theta2);
        auto Gm = assemble_multiplier(G, grid), Bm = assemble_multiplier(Bw, grid);
        auto viaFactors = compose(add(compose(X, Gm), scale(-1.0, compose(Gm, X))), Bm);
        auto direct = assemble_commutator(f00, G, Bw, grid, theta2);
        CHECK((viaFactors.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("symbol of a product list") {
    auto sphere = moyal::numerics::make_sphere_grid(2, 128);
    const double omega = 2 * pi;
    Rng rng(4);
    auto x = moyal::algebra::make_element(theta2, rng.complex_matrix(3, 3));
    auto one = symbol_of_product_list({{x, [](const double*) { return 1.0; }}}, sphere);
    CHECK(std::abs(one.ld_norm - moyal::algebra::lp_norm(x, 2) * std::sqrt(omega)) < 1e-12);
    CHECK(symbol_of_product_list({}, sphere).ld_norm == 0.0);

    // disjoint angular supports: upper and lower half circle (nodes avoid the axis)
    auto y = moyal::algebra::make_element(theta2, rng.complex_matrix(3, 3));
    AngularFn up = [](const double* s) { return s[1] > 0 ? 2.0 : 0.0; };
    AngularFn down = [](const double* s) { return s[1] < 0 ? 0.5 : 0.0; };
    auto sphereOff = moyal::numerics::make_sphere_grid(2, 130);
    auto two = symbol_of_product_list({{x, up}, {y, down}}, sphereOff);
    double gu = 0.0, gdn = 0.0;
    for (Eigen::Index q = 0; q < sphereOff.size(); ++q) {
        Eigen::Vector2d p = sphereOff.points.row(q).transpose();
        gu += sphereOff.weights(q) * std::pow(up(p.data()), 2);
        gdn += sphereOff.weights(q) * std::pow(down(p.data()), 2);
    }
    const double expect = std::sqrt(std::pow(moyal::algebra::lp_norm(x, 2), 2) * gu +
                                    std::pow(moyal::algebra::lp_norm(y, 2), 2) * gdn);
    CHECK(std::abs(two.ld_norm - expect) < 1e-12 * expect);
}

TEST_CASE("operator export") {
    auto grid = make_grid(2, 2.0, 4);
    auto A = assemble_conv_product(moyal::algebra::gaussian_symbol(2, 1.0), constant_symbol(2), grid, theta2);
    auto dir = std::filesystem::temp_directory_path() / "moyal_export_test";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "op").string();
    export_operator(A, prefix);
    std::ifstream bin(prefix + ".bin", std::ios::binary);
    std::vector<double> buf(16 * 16 * 2);
    bin.read(reinterpret_cast<char*>(buf.data()), buf.size() * sizeof(double));
    CHECK(bin.gcount() == static_cast<std::streamsize>(buf.size() * sizeof(double)));
    CHECK(buf[2 * (1 * 16 + 2)] == A.matrix(1, 2).real());
    CHECK(buf[2 * (1 * 16 + 2) + 1] == A.matrix(1, 2).imag());
    auto side = nlohmann::json::parse(std::ifstream(prefix + ".json"));
    CHECK(side["spin_dim"] == 1);
    CHECK(side["grid"]["n"] == 4);
    std::filesystem::remove_all(dir);
}

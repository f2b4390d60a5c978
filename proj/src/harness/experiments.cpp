#include "moyal/harness/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "moyal/algebra/basis.hpp"
#include "moyal/algebra/element.hpp"
#include "moyal/algebra/seminorms.hpp"
#include "moyal/assembly/operators.hpp"
#include "moyal/numerics/io.hpp"
#include "moyal/numerics/random.hpp"
#include "moyal/numerics/special.hpp"
#include "moyal/spectral/dense.hpp"
#include "moyal/spectral/limits.hpp"
#include "moyal/spectral/spectrum.hpp"
#include "moyal/zeta/zeta.hpp"

namespace moyal::harness {

namespace fs = std::filesystem;
using algebra::ThetaMatrix;
using assembly::AngularFn;
using assembly::FullSymbol;
using numerics::MomentumGrid;
using numerics::pi;
using numerics::Rng;
using cd = std::complex<double>;

namespace {

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ThetaMatrix theta_of(const ExperimentConfig& cfg) { return algebra::make_theta(cfg.d, cfg.theta0); }

// Same spacing as the default grid on a box of half-width L.
MomentumGrid grid_at(const ExperimentConfig& cfg, double L) {
    int n = 2 * static_cast<int>(std::lround(0.5 * cfg.grid_n * L / cfg.grid_L));
    n = std::max(n, 4);
    return numerics::make_grid(cfg.d, L, n, cfg.grid_scheme);
}

// Refinement boxes plus the default box, ascending and without duplicates.
std::vector<double> boxes(const ExperimentConfig& cfg) {
    std::vector<double> L = cfg.refine_L;
    if (std::find(L.begin(), L.end(), cfg.grid_L) == L.end()) L.push_back(cfg.grid_L);
    std::sort(L.begin(), L.end());
    return L;
}

algebra::BasisTable basis_table(const ExperimentConfig& cfg, int M, bool products, double tolerance = 0.0) {
    algebra::BasisOptions o;
    o.check_products = products;
    o.tolerance = tolerance;
    return algebra::build_basis(M, theta_of(cfg), numerics::make_grid(2, cfg.basis_L, cfg.basis_n), o);
}

spectral::FitWindow window_of(const ExperimentConfig& cfg, const MomentumGrid& grid) {
    auto w = spectral::window_from_fractions(grid.size(), cfg.window_lo, cfg.window_hi);
    // small boxes put lo*N below the first index the fit accepts
    w.n1 = std::max<Eigen::Index>(w.n1, 10);
    return w;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

std::string box_tag(double L) {
    std::ostringstream os;
    os << L;
    std::string s = os.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return "L" + s;
}

void write_output(const ExperimentConfig& cfg, const std::string& name, const std::string& contents, Report& r) {
    fs::create_directories(cfg.out);
    const std::string path = (fs::path(cfg.out) / name).string();
    numerics::write_file_atomic(path, contents);
    r.file(path);
}

AngularFn residue_angular() {
    return [](const double* s) { return 1.0 + 0.5 * s[0]; };
}

// Seeded test pair: modulated Gaussian f and h(t) = (1 + b.s) exp(-beta |t|^2).
struct Pair {
    algebra::WeylSymbol f;
    FullSymbol h;
    double f_norm;   // exact L2 norm of f
    double f_zero;   // f(0)
    double h_norm;   // exact L2 norm of h
    double h_integral;
};

std::vector<Pair> seeded_pairs(const ExperimentConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<Pair> out;
    for (int k = 0; k < cfg.pairs; ++k) {
        Eigen::VectorXd v(2), c(2);
        v << rng.uniform(-1, 1), rng.uniform(-1, 1);
        c << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
        const double a = rng.uniform(0.5, 1.5), beta = rng.uniform(0.3, 1.2);
        const double b1 = rng.uniform(-0.4, 0.4), b2 = rng.uniform(-0.4, 0.4);
        FullSymbol h = assembly::angular_symbol(2, [b1, b2](const double* s) { return 1.0 + b1 * s[0] + b2 * s[1]; });
        h.radial = [beta](double r) { return std::exp(-beta * r * r); };
        h.label = "pair-h";
        // |f|^2 = exp(-2a|t-c|^2); int g^2 over the circle = 2 pi (1 + |b|^2/2)
        out.push_back(Pair{algebra::modulated_gaussian(v, c, a), h, std::sqrt(pi / (2 * a)), std::exp(-a * c.squaredNorm()),
                           std::sqrt(2 * pi * (1 + 0.5 * (b1 * b1 + b2 * b2)) / (4 * beta)), pi / beta});
    }
    return out;
}

std::string zeta_csv(const zeta::ZetaSamples& s) {
    std::string out = "z,trace\n";
    char buf[64];
    for (std::size_t k = 0; k < s.z.size(); ++k) {
        auto p = std::to_chars(buf, buf + sizeof buf, s.z[k]).ptr;
        out.append(buf, p);
        out += ',';
        p = std::to_chars(buf, buf + sizeof buf, s.trace[k]).ptr;
        out.append(buf, p);
        out += '\n';
    }
    return out;
}

Eigen::MatrixXcd random_schwartz(Rng& rng, int M, double rate) {
    Eigen::MatrixXcd a = rng.complex_matrix(M, M);
    for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l) a(k, l) *= std::exp(-rate * (k + l));
    return a;
}

Eigen::VectorXd power_law(Eigen::Index N, double p, double c = 1.0) {
    Eigen::VectorXd v(N);
    for (Eigen::Index n = 0; n < N; ++n) v(n) = c * std::pow(n + 1.0, -1.0 / p);
    return v;
}

Eigen::MatrixXcd random_unitary(Rng& rng, int n) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(rng.complex_matrix(n, n));
    return qr.householderQ();
}

nlohmann::json fit_json(const spectral::TailFit& f) {
    return {{"coefficient", f.coefficient}, {"exponent", f.exponent}, {"residual", f.residual},
            {"window", {f.window.n1, f.window.n2}}};
}

}  // namespace

void criterion_1(const ExperimentConfig& cfg, Report& r) {
    Timer t;
    const auto table = basis_table(cfg, cfg.basis_M, true, 1.0);
    const double secs = t.seconds();
    r.value("basis.orthonormality_defect", table.orthonormality_defect, "quadrature Gram matrix / norm2 - I");
    r.value("basis.product_defect", table.product_defect, "twisted convolution of basis pairs vs product rule");
    r.value("basis.norm2", table.norm2, "common squared L2 norm of the basis functions");
    r.value("basis.worst_pair", table.worst_pair, "basis pair with the largest product defect");
    r.timing("criterion_1", secs);
    const double worst = std::max(table.orthonormality_defect, table.product_defect);
    r.criterion({1, "basis contract", worst < 1e-5 && secs < 60.0, worst, 1e-5,
                 "M=" + std::to_string(table.M) + " ortho=" + fmt(table.orthonormality_defect) +
                     " product=" + fmt(table.product_defect) + " runtime=" + fmt(secs) + "s"});
}

void criterion_2(const ExperimentConfig& cfg, Report& r) {
    const auto grid = numerics::make_grid(cfg.d, cfg.grid_L, cfg.grid_n, cfg.grid_scheme);
    const auto th = theta_of(cfg);
    double worst = 0.0;
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& p : seeded_pairs(cfg)) {
        const auto M = assembly::assemble_conv_product(p.f, p.h, grid, th);
        const double err = std::abs(M.matrix.norm() / (p.f_norm * p.h_norm) - 1.0);
        errs.push_back(err);
        worst = std::max(worst, err);
    }
    r.value("hs.relative_errors", errs, "|HS norm / (||f||_2 ||h||_2) - 1| per seeded pair");
    r.criterion({2, "Hilbert-Schmidt identity", worst < 1e-4, worst, 1e-4, std::to_string(cfg.pairs) + " seeded pairs"});
}

void criterion_3(const ExperimentConfig& cfg, Report& r) {
    const auto grid = numerics::make_grid(cfg.d, cfg.grid_L, cfg.grid_n, cfg.grid_scheme);
    const auto th = theta_of(cfg);
    FullSymbol gauss;
    gauss.d = 2;
    gauss.radial = [](double rr) { return std::exp(-rr * rr); };
    gauss.label = "exp(-|t|^2)";
    const cd trG = assembly::assemble_conv_product(algebra::gaussian_symbol(2, 1.0), gauss, grid, th).matrix.trace();
    const double errG = std::abs(trG - pi) / pi;
    r.value("trace.gaussian_pair", {trG.real(), trG.imag()}, "Tr of pi1(exp(-|t|^2)) exp(-|t|^2) on the grid");
    double worst = errG;
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& p : seeded_pairs(cfg)) {
        const cd tr = assembly::assemble_conv_product(p.f, p.h, grid, th).matrix.trace();
        // (2 pi)^{-d} tau(x) int h with tau(x) = (2 pi)^d f(0)
        const double predicted = std::pow(2 * pi, -2) * (std::pow(2 * pi, 2) * p.f_zero) * p.h_integral;
        const double err = std::abs(tr - predicted) / std::abs(predicted);
        errs.push_back(err);
        worst = std::max(worst, err);
    }
    r.value("trace.relative_errors", errs, "|Tr - (2pi)^-d tau(x) int h| / |.| per seeded pair");
    r.criterion({3, "trace formula", worst < 1e-4, worst, 1e-4, "gaussian pair error " + fmt(errG)});
}

void criterion_4(const ExperimentConfig& cfg, Report& r) {
    (void)cfg;
    double worst = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    struct Case {
        int d;
        double L;
        int n, sphere;
        std::vector<double> z;
    };
    for (const Case& c : {Case{2, 8.0, 64, 64, {3, 4, 6}}, Case{4, 6.0, 48, 12, {5, 6, 8}}}) {
        const auto grid = numerics::make_grid(c.d, c.L, c.n);
        const auto sphere = numerics::make_sphere_grid(c.d, c.sphere);
        for (double z : c.z) {
            const auto h = zeta::hz_integral(nullptr, z, c.d, grid, sphere);
            rows.push_back({{"d", c.d}, {"z", z}, {"quadrature", h.quadrature}, {"closed_form", h.closed_form},
                            {"relative_error", h.relative_error()}});
            worst = std::max(worst, h.relative_error());
        }
    }
    r.value("hz.cases", rows, "grid + radial quadrature vs closed form, g = 1");
    r.criterion({4, "h_z identity", worst < 1e-6, worst, 1e-6, "d=2 z=3,4,6; d=4 z=5,6,8"});
}

void criterion_5(const ExperimentConfig& cfg, Report& r) {
    Timer t;
    const auto th = theta_of(cfg);
    const auto table = basis_table(cfg, 2, false);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 0.5;
    const auto x = algebra::make_element(th, a);
    const auto sphere = numerics::make_sphere_grid(2, cfg.sphere_nodes);
    std::map<double, zeta::ResidueExperiment> runs;
    for (double L : boxes(cfg)) {
        auto e = zeta::residue_experiment(x, table, residue_angular(), grid_at(cfg, L), sphere, cfg.stencil);
        write_output(cfg, "zeta_" + box_tag(L) + ".csv", zeta_csv(e.samples), r);
        r.value("residue." + box_tag(L), {{"residue", e.residue}, {"target", e.target}, {"relative_error", e.relative_error},
                                          {"clip_mass", e.clip_mass}},
                "stencil fit c/(z-d) + a0 + a1 (z-d) of the completed zeta trace");
        runs.emplace(L, std::move(e));
    }
    const auto& def = runs.at(cfg.grid_L);
    const double coarse = std::abs(runs.at(cfg.refine_L.front()).residue - def.target);
    const double fine = std::abs(runs.at(cfg.refine_L.back()).residue - def.target);
    r.timing("criterion_5", t.seconds());
    r.criterion({5, "zeta residue", def.relative_error < 0.1 && fine < coarse, def.relative_error, 0.1,
                 "c=" + fmt(def.residue) + " target=" + fmt(def.target) + " |c-target| coarse=" + fmt(coarse) +
                     " fine=" + fmt(fine)});
}

void criterion_6(const ExperimentConfig& cfg, Report& r) {
    double worst = 0.0;
    for (double p : {1.0, 2.0}) {
        const auto w = zeta::wiener_ikehara_synthetic(p, cfg.wi_N, 0, 1.0, cfg.stencil);
        r.value("wiener_ikehara.p" + fmt(p), {{"residue", w.residue}, {"coefficient", w.coefficient}},
                "residue of sum mu_n^z, coefficient (c/p)^{1/p}");
        worst = std::max(worst, std::abs(w.coefficient - 1.0));
    }
    const auto spike = zeta::wiener_ikehara_synthetic(2.0, cfg.wi_N, 10, 2.0, cfg.stencil);
    r.value("wiener_ikehara.spike", {{"residue", spike.residue}, {"coefficient", spike.coefficient}},
            "p = 2 with the first 10 values doubled");
    r.criterion({6, "Wiener-Ikehara synthetic", worst < 1e-2, worst, 1e-2,
                 "p=1,2; spiked coefficient " + fmt(spike.coefficient)});
}

void criterion_7(const ExperimentConfig& cfg, Report& r) {
    Timer t;
    const auto th = theta_of(cfg);
    const auto f00 = algebra::basis_function(0, 0, th);
    const auto sphere = numerics::make_sphere_grid(2, cfg.sphere_nodes);
    double g2 = 0.0;
    for (Eigen::Index q = 0; q < sphere.size(); ++q) g2 += sphere.weights(q);
    const double target = zeta::kappa(2) * algebra::lp_norm(algebra::matrix_unit(th, 1, 0, 0), 2) * std::sqrt(g2);
    r.value("headline.target", target, "kappa_2 ||x||_2 ||1||_{L2(S^1)}");

    std::map<double, spectral::TailFit> fits;
    for (double L : boxes(cfg)) {
        const auto grid = grid_at(cfg, L);
        auto s = spectral::singular_values(assembly::assemble_conv_product(f00, assembly::bessel_symbol(2, 1.0), grid, th));
        const auto fit = spectral::tail_coefficient(s, 2.0, window_of(cfg, grid));
        if (L == cfg.grid_L) write_output(cfg, "spectrum_headline.csv", spectral::spectrum_csv(s, 2.0), r);
        r.value("headline." + box_tag(L), fit_json(fit), "windowed median of (n+1)^{1/2} mu_n");
        fits.emplace(L, fit);
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < cfg.refine_L.size(); ++k)
        decreasing = decreasing && std::abs(fits.at(cfg.refine_L[k]).coefficient - target) <
                                       std::abs(fits.at(cfg.refine_L[k - 1]).coefficient - target);
    const double err = std::abs(fits.at(cfg.grid_L).coefficient / target - 1.0);
    r.timing("criterion_7", t.seconds());
    std::string trend;
    for (double L : cfg.refine_L) trend += " " + fmt(fits.at(L).coefficient);
    r.criterion({7, "headline tail coefficient", err <= 0.15 && decreasing, err, 0.15,
                 "coefficients over refinements:" + trend + (decreasing ? " (error decreasing)" : " (error not decreasing)")});
}

void criterion_8(const ExperimentConfig& cfg, Report& r) {
    Timer t;
    const auto th = theta_of(cfg);
    const auto table = basis_table(cfg, std::max(2, cfg.basis_M), false);
    const auto x = algebra::matrix_unit(th, table.M, 0, 0);
    const auto f = algebra::to_symbol(x, table);
    const auto spin = numerics::make_pauli(2);
    const auto sphere = numerics::make_sphere_grid(2, cfg.sphere_nodes);
    const double triple = algebra::triple_seminorm(x, table, sphere, spin);
    const double target = zeta::kappa(2) * triple;
    r.value("qd.triple_seminorm", triple, "|||x||| from the derivative tables");
    r.value("qd.target", target, "kappa_2 |||x|||");

    std::map<double, spectral::TailFit> fits;
    for (double L : boxes(cfg)) {
        const auto grid = grid_at(cfg, L);
        auto s = spectral::singular_values(assembly::assemble_quantized_derivative(f, grid, spin, th));
        const auto fit = spectral::tail_coefficient(s, 2.0, window_of(cfg, grid));
        if (L == cfg.grid_L) write_output(cfg, "spectrum_qd.csv", spectral::spectrum_csv(s, 2.0), r);
        r.value("qd." + box_tag(L), fit_json(fit), "windowed median of (n+1)^{1/2} mu_n(dx)");
        fits.emplace(L, fit);
    }
    const auto grid = grid_at(cfg, cfg.grid_L);
    auto sa = spectral::singular_values(assembly::assemble_approximant(x, table, grid, spin));
    const auto apx = spectral::tail_coefficient(sa, 2.0, window_of(cfg, grid));
    write_output(cfg, "spectrum_approximant.csv", spectral::spectrum_csv(sa, 2.0), r);
    r.value("qd.approximant", fit_json(apx), "windowed median for A(1+D^2)^{-1/2}");

    const auto& q = fits.at(cfg.grid_L);
    const double err = std::abs(q.coefficient / target - 1.0);
    const double gap = std::abs(q.coefficient - apx.coefficient), allowed = q.residual + apx.residual;
    r.timing("criterion_8", t.seconds());
    r.criterion({8, "quantized derivative", err < 0.15 && gap <= allowed, err, 0.15,
                 "c_qd=" + fmt(q.coefficient) + " target=" + fmt(target) + " c_apx=" + fmt(apx.coefficient) +
                     " |c_qd-c_apx|=" + fmt(gap) + " vs residuals " + fmt(allowed)});
}

void criterion_9(const ExperimentConfig& cfg, Report& r) {
    const auto th = theta_of(cfg);
    const auto table = basis_table(cfg, cfg.basis_M, false);
    const auto spin = numerics::make_pauli(2);
    const auto sphere = numerics::make_sphere_grid(2, cfg.sphere_nodes);
    const double c = algebra::seminorm_lower_constant(2), C = algebra::seminorm_upper_constant(2);
    Rng rng(cfg.seed + 9);
    int violations = 0;
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < cfg.sandwich_count; ++k) {
        const auto x = algebra::make_element(th, random_schwartz(rng, table.M, 0.5));
        const double w = algebra::sobolev_seminorm(x, table), tr = algebra::triple_seminorm(x, table, sphere, spin);
        if (!(c * w <= tr && tr <= C * w)) ++violations;
        lo = std::min(lo, tr / w);
        hi = std::max(hi, tr / w);
    }
    const auto zero = algebra::make_element(th, Eigen::MatrixXcd::Zero(table.M, table.M));
    const double z1 = algebra::sobolev_seminorm(zero, table), z2 = algebra::triple_seminorm(zero, table, sphere, spin);
    const auto e00 = algebra::matrix_unit(th, table.M, 0, 0);
    const double ratio00 = algebra::triple_seminorm(e00, table, sphere, spin) / algebra::sobolev_seminorm(e00, table);
    if (!(ratio00 >= c && ratio00 <= C)) ++violations;
    if (z1 != 0.0 || z2 != 0.0) ++violations;
    r.value("seminorms.ratio_range", {lo, hi}, "min and max of |||x||| / ||x|| over the random sweep");
    r.value("seminorms.constants", {c, C}, "c_2 and C_2");
    r.value("seminorms.e00_ratio", ratio00, "single-derivative element");
    r.criterion({9, "seminorm sandwich", violations == 0, static_cast<double>(violations), 0.0,
                 std::to_string(cfg.sandwich_count) + " random elements, ratios in [" + fmt(lo) + ", " + fmt(hi) + "]"});
}

void criterion_10(const ExperimentConfig& cfg, Report& r) {
    Timer t;
    const auto th = theta_of(cfg);
    const auto f00 = algebra::basis_function(0, 0, th);
    const auto grid = grid_at(cfg, cfg.grid_L);
    const auto win = window_of(cfg, grid);
    double worst = -INFINITY;
    std::string detail;
    auto record = [&](const std::string& name, spectral::SingularSpectrum s, double predicted) {
        const auto fit = spectral::tail_coefficient(s, -1.0 / predicted, win);
        write_output(cfg, "spectrum_" + name + ".csv", spectral::spectrum_csv(s, -1.0 / predicted), r);
        r.value("decay." + name, {{"slope", fit.exponent}, {"predicted", predicted}}, "log-log slope of mu_n over the window");
        worst = std::max(worst, fit.exponent - predicted);
        detail += name + " " + fmt(fit.exponent) + "/" + fmt(predicted) + "; ";
    };
    const AngularFn g = residue_angular();
    for (auto [alpha, beta] : {std::pair{0.0, 1.0}, {-1.0, 0.0}, {-1.0, 1.0}}) {
        const auto G = assembly::weighted_angular_symbol(2, g, -alpha, "g");
        const auto B = assembly::bessel_symbol(2, beta);
        record("commutator_a" + fmt(alpha) + "_b" + fmt(beta),
               spectral::singular_values(assembly::assemble_commutator(f00, G, B, grid, th)), -(beta - alpha + 1) / 2);
    }
    for (double beta : {1.0, 2.0})
        record("bessel_b" + fmt(beta),
               spectral::singular_values(assembly::assemble_conv_product(f00, assembly::bessel_symbol(2, beta), grid, th)),
               -beta / 2);
    r.timing("criterion_10", t.seconds());
    r.criterion({10, "commutator decay exponents", worst <= 0.1, worst, 0.1, detail});
}

void criterion_11(const ExperimentConfig& cfg, Report& r) {
    Rng rng(cfg.seed + 11);
    // direct sum of three blocks with coefficients 1, 0.6, 0.8 at p = 2
    std::vector<spectral::SingularSpectrum> blocks;
    for (double a : {1.0, 0.6, 0.8}) blocks.push_back(spectral::spectrum_from_values(power_law(4000, 2.0, a)));
    const auto ds = spectral::direct_sum_coefficient(blocks, 2.0, 0.02, 0.2);
    r.value("limits.direct_sum", {{"merged", ds.merged.coefficient}, {"predicted", ds.predicted}, {"relative_error", ds.relative_error}},
            "merged block-diagonal spectrum vs (sum a_k^p)^{1/p}");

    // rank-5 perturbation of ten times the norm along the leading singular vectors
    const int N = 600;
    Eigen::MatrixXcd A = random_unitary(rng, N) * power_law(N, 2.0).cast<cd>().asDiagonal() * random_unitary(rng, N);
    const auto rs = spectral::finite_rank_stability(A, 5, 10.0, true, 2.0, spectral::FitWindow{60, 300}, rng);
    r.value("limits.finite_rank", {{"base", rs.base.coefficient}, {"perturbed", rs.perturbed.coefficient},
                                    {"difference", rs.difference}, {"residuals", rs.base.residual + rs.perturbed.residual}},
            "tail coefficient of A and A + V, rank V = 5");

    // T_k = T + c_k E, E with a bounded oscillating profile, c_k = 0.4/k + 0.2/k^2
    const Eigen::Index M = 4000;
    const auto T = power_law(M, 2.0);
    Eigen::VectorXd E(M);
    for (Eigen::Index j = 0; j < M; ++j) E(j) = T(j) * (1.0 + 0.5 * std::sin(static_cast<double>(j)));
    std::vector<spectral::SingularSpectrum> approx, diff;
    for (int k = 1; k <= 6; ++k) {
        const double ck = 0.4 / k + 0.2 / (k * k);
        approx.push_back(spectral::spectrum_from_values(T + ck * E));
        diff.push_back(spectral::spectrum_from_values(ck * E));
    }
    const auto ct = spectral::convergence_transfer(approx, diff, 2.0, spectral::window_from_fractions(M, 0.02, 0.2));
    const double ct_err = std::abs(ct.limit - 1.0);
    r.value("limits.convergence_transfer", {{"coefficients", ct.coefficients}, {"distances", ct.distances}, {"limit", ct.limit}},
            "a_n against delta_n extrapolated to delta = 0");

    const bool pass = ds.relative_error < 0.02 && rs.agree && ct.distances_decreasing && ct_err < 0.05;
    r.criterion({11, "limit-lemma suite", pass, std::max({ds.relative_error / 0.02, ct_err / 0.05, rs.agree ? 0.0 : 2.0}), 1.0,
                 "direct sum " + fmt(ds.relative_error) + " (<0.02), rank difference " + fmt(rs.difference) +
                     " vs residual " + fmt(rs.base.residual + rs.perturbed.residual) + ", transfer " + fmt(ct_err) + " (<0.05)"});
}

void run_criterion(int id, const ExperimentConfig& cfg, Report& r) {
    switch (id) {
        case 1: return criterion_1(cfg, r);
        case 2: return criterion_2(cfg, r);
        case 3: return criterion_3(cfg, r);
        case 4: return criterion_4(cfg, r);
        case 5: return criterion_5(cfg, r);
        case 6: return criterion_6(cfg, r);
        case 7: return criterion_7(cfg, r);
        case 8: return criterion_8(cfg, r);
        case 9: return criterion_9(cfg, r);
        case 10: return criterion_10(cfg, r);
        case 11: return criterion_11(cfg, r);
        case 12: return criterion_12(cfg, r);
        default: throw std::invalid_argument("no criterion " + std::to_string(id));
    }
}

void criterion_12(const ExperimentConfig& cfg, Report& r, const std::vector<int>& ids) {
    auto run = [&](const std::string& sub) {
        ExperimentConfig c = cfg;
        c.out = (fs::path(cfg.out) / "determinism" / sub).string();
        Report rep("determinism", c);
        for (int id : ids) run_criterion(id, c, rep);
        std::map<std::string, std::string> files;
        for (const auto& e : fs::directory_iterator(c.out)) {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            files[e.path().filename().string()] = ss.str();
        }
        return std::pair{rep.fingerprint(), files};
    };
    const auto a = run("first"), b = run("second");
    const bool same_report = a.first == b.first;
    const bool same_files = a.second == b.second && !a.second.empty();
    std::string list;
    for (int id : ids) list += (list.empty() ? "" : ",") + std::to_string(id);
    r.value("determinism.repeated", ids, "criteria repeated with the same config and seed");
    r.value("determinism.csv_files", static_cast<int>(a.second.size()), "CSV files compared byte for byte");
    r.criterion({12, "determinism", same_report && same_files, (same_report && same_files) ? 0.0 : 1.0, 0.0,
                 "criteria " + list + ": report " + (same_report ? "identical" : "differs") + ", " +
                     std::to_string(a.second.size()) + " CSV files " + (same_files ? "identical" : "differ")});
}

Report cmd_verify_algebra(const ExperimentConfig& cfg) {
    Report r("verify-algebra", cfg);
    criterion_1(cfg, r);
    const auto th = theta_of(cfg);
    const auto table = basis_table(cfg, cfg.basis_M, false);
    const int M = table.M;
    Rng rng(cfg.seed + 1);
    const auto e00 = algebra::matrix_unit(th, M, 0, 0);
    r.value("algebra.trace_e00", {{"matrix", std::abs(algebra::trace_tau(e00))},
                                  {"symbol", std::abs(algebra::trace_tau(algebra::basis_function(0, 0, th)))}},
            "tau in both pictures");
    r.value("algebra.l2_e00", algebra::lp_norm(e00, 2), "||e00||_2");

    const auto a = algebra::make_element(th, random_schwartz(rng, M, 0.8));
    const auto b = algebra::make_element(th, random_schwartz(rng, M, 0.8));
    const auto fa = algebra::to_symbol(a, table), fb = algebra::to_symbol(b, table);
    const auto prod = algebra::to_symbol(algebra::make_element(th, a.a * b.a), table);
    const double hom = algebra::l2_distance(prod, algebra::twisted_convolution(fa, fb, th, table.grid), table.grid) /
                       std::max(algebra::l2_norm(prod, table.grid), 1e-300);
    r.value("algebra.star_homomorphism", hom, "relative L2 gap of to_symbol(ab) and to_symbol(a) * to_symbol(b)");
    r.value("algebra.traciality",
            std::abs(algebra::trace_tau(algebra::make_element(th, a.a * b.a)) - algebra::trace_tau(algebra::make_element(th, b.a * a.a))),
            "|tau(ab) - tau(ba)|");
    r.value("algebra.isometry",
            std::abs(algebra::lp_norm(a, 2) / (2 * pi * algebra::l2_norm(fa, table.grid)) - 1.0),
            "| ||x||_2 / ((2pi) ||f||_2) - 1 |");
    int holder = 0;
    for (int k = 0; k < 10; ++k) {
        Eigen::MatrixXcd x = rng.complex_matrix(M, M), y = rng.complex_matrix(M, M);
        if (algebra::schatten_norm(x * y, 1.0) > algebra::schatten_norm(x, 2.0) * algebra::schatten_norm(y, 2.0) * (1 + 1e-12))
            ++holder;
    }
    r.value("algebra.holder_violations", holder, "Schatten Hoelder on 10 random pairs");
    Eigen::MatrixXcd bb = random_schwartz(rng, M, 0.6);
    const auto pos = algebra::make_element(th, bb * bb.adjoint());
    const auto root = algebra::positive_root(pos, 0.5);
    r.value("algebra.root_defect", (root.a * root.a - pos.a).cwiseAbs().maxCoeff(), "max |(x^{1/2})^2 - x|");
    r.value("algebra.root_ratio",
            std::pow(algebra::rapid_decay_seminorm(root, 1.0), 2) / algebra::rapid_decay_seminorm(pos, 3.0),
            "r_1(x^{1/2})^2 / r_3(x)");
    return r;
}

Report cmd_trace_formula(const ExperimentConfig& cfg) {
    Report r("trace-formula", cfg);
    criterion_2(cfg, r);
    criterion_3(cfg, r);
    const auto grid = numerics::make_grid(cfg.d, cfg.grid_L, cfg.grid_n, cfg.grid_scheme);
    const auto th = theta_of(cfg);
    const double f0 = std::abs(assembly::assemble_conv_product(algebra::zero_symbol(2), assembly::bessel_symbol(2, 4.0), grid, th).matrix.trace());
    const double g0 = std::abs(assembly::assemble_conv_product(algebra::gaussian_symbol(2, 1.0), assembly::constant_symbol(2, 0.0), grid, th).matrix.trace());
    r.value("trace.zero_f", f0, "f = 0");
    r.value("trace.zero_g", g0, "g = 0");
    return r;
}

Report cmd_residue(const ExperimentConfig& cfg) {
    Report r("residue", cfg);
    criterion_4(cfg, r);
    criterion_5(cfg, r);
    criterion_6(cfg, r);
    return r;
}

Report cmd_spectrum(const ExperimentConfig& cfg) {
    Report r("spectrum", cfg);
    criterion_7(cfg, r);
    criterion_10(cfg, r);
    criterion_11(cfg, r);
    // diagonal multiplier: singular values are the sorted symbol values
    const auto grid = grid_at(cfg, cfg.grid_L);
    const auto h = assembly::bessel_symbol(2, 1.0);
    const auto s = spectral::singular_values(assembly::assemble_multiplier(h, grid));
    std::vector<double> ref;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        Eigen::VectorXd t = grid.points.row(i).transpose();
        ref.push_back(h(t.data()));
    }
    std::sort(ref.rbegin(), ref.rend());
    double gap = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) gap = std::max(gap, std::abs(s.mu(static_cast<Eigen::Index>(i)) - ref[i]));
    r.value("spectrum.multiplier_gap", gap, "max |mu_n - sorted h(t_i)|");
    // rank-perturbed headline operator
    Rng rng(cfg.seed + 7);
    const auto th = theta_of(cfg);
    const auto A = assembly::assemble_conv_product(algebra::basis_function(0, 0, th), h, grid, th);
    const auto rs = spectral::finite_rank_stability(A.matrix, 5, 10.0, false, 2.0, window_of(cfg, grid), rng);
    r.value("spectrum.rank_perturbed", {{"base", rs.base.coefficient}, {"perturbed", rs.perturbed.coefficient}, {"agree", rs.agree}},
            "headline operator plus a random rank-5 operator of ten times its norm");
    return r;
}

Report cmd_qd(const ExperimentConfig& cfg) {
    Report r("qd", cfg);
    criterion_8(cfg, r);
    const auto th = theta_of(cfg);
    const auto grid = numerics::make_grid(2, 4.0, 16);
    const auto spin = numerics::make_pauli(2);
    r.value("qd.zero_element", assembly::assemble_quantized_derivative(algebra::zero_symbol(2), grid, spin, th).matrix.norm(),
            "||d0||");
    const auto q = assembly::assemble_quantized_derivative(algebra::basis_function(0, 0, th), grid, spin, th);
    r.value("qd.self_adjoint_structure", (q.matrix + q.matrix.adjoint()).cwiseAbs().maxCoeff(),
            "max |dx + (dx)*| for self-adjoint x");
    return r;
}

Report cmd_seminorms(const ExperimentConfig& cfg) {
    Report r("seminorms", cfg);
    criterion_9(cfg, r);
    Rng rng(cfg.seed + 5);
    const auto spin = numerics::make_pauli(2);
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
        std::vector<Eigen::MatrixXcd> T{rng.complex_matrix(6, 6), rng.complex_matrix(6, 6)};
        const double mx = std::max(algebra::schatten_norm(T[0], 2.0), algebra::schatten_norm(T[1], 2.0));
        if (algebra::spin_sum_norm(T, spin, 2.0) < std::sqrt(2.0) * mx * (1 - 1e-12)) ++bad;
    }
    r.value("seminorms.spin_sum_violations", bad, "||sum gamma_j T_j||_2 >= sqrt2 max ||T_j||_2 on 50 tuples");
    return r;
}

Report cmd_all(const ExperimentConfig& cfg) {
    Report r("all", cfg);
    for (int id = 1; id <= 12; ++id) {
        Timer t;
        run_criterion(id, cfg, r);
        r.timing("criterion_" + std::to_string(id) + "_total", t.seconds());
    }
    return r;
}

Report run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    Timer t;
    static const std::map<std::string, Report (*)(const ExperimentConfig&)> table = {
        {"verify-algebra", cmd_verify_algebra}, {"trace-formula", cmd_trace_formula}, {"residue", cmd_residue},
        {"spectrum", cmd_spectrum},             {"qd", cmd_qd},                       {"seminorms", cmd_seminorms},
        {"all", cmd_all}};
    Report r = table.at(cfg.experiment)(cfg);
    r.timing("total", t.seconds());
    fs::create_directories(cfg.out);
    numerics::write_file_atomic((fs::path(cfg.out) / (cfg.experiment + ".json")).string(), r.to_json().dump(2) + "\n");
    return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moyal-plane spectral experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int grid_n = 0, truncation = 0;
    double grid_L = 0.0;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--grid-n", grid_n, "grid points per axis");
    app.add_option("--grid-L", grid_L, "box half-width");
    app.add_option("--truncation", truncation, "matrix basis truncation M");
    for (const auto& name : experiment_names()) app.add_subcommand(name, "run " + name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "moyal-lab: " << e.what() << "\n";
        return 2;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        cfg.experiment = app.get_subcommands().front()->get_name();
        if (!out_dir.empty()) cfg.out = out_dir;
        if (app.count("--seed")) cfg.seed = seed;
        if (app.count("--grid-n")) cfg.grid_n = grid_n;
        if (app.count("--grid-L")) cfg.grid_L = grid_L;
        if (app.count("--truncation")) cfg.basis_M = truncation;
        validate(cfg);
    } catch (const ConfigError& e) {
        err << "moyal-lab: " << e.what() << "\n";
        return 2;
    }

    try {
        const Report r = run_experiment(cfg);
        for (const auto& c : r.criteria()) out << criterion_line(c) << "\n";
        out << "report: " << (fs::path(cfg.out) / (cfg.experiment + ".json")).string() << "\n";
        return r.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        err << "moyal-lab: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace moyal::harness

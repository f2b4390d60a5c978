#include "moyal/algebra/symbol.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace moyal::algebra {

using numerics::MomentumGrid;

WeylSymbol::WeylSymbol(int d, SymbolFn fn, std::string label)
    : d_(d), fn_(std::move(fn)), label_(std::move(label)) {}

bool WeylSymbol::has_samples_on(const MomentumGrid& grid) const {
    return cache_ && cache_->grid.same_as(grid);
}

Eigen::VectorXcd WeylSymbol::sample(const MomentumGrid& grid) const {
    if (grid.d != d_) throw std::invalid_argument("WeylSymbol: grid dimension mismatch");
    if (has_samples_on(grid)) return cache_->values;
    Eigen::VectorXcd v(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        Eigen::VectorXd t = grid.points.row(i).transpose();
        v(i) = fn_(t.data());
    }
    return v;
}

WeylSymbol WeylSymbol::cached_on(const MomentumGrid& grid) const {
    if (has_samples_on(grid)) return *this;
    return with_samples(grid, sample(grid));
}

WeylSymbol WeylSymbol::with_samples(const MomentumGrid& grid, Eigen::VectorXcd values) const {
    if (values.size() != grid.size()) throw std::invalid_argument("WeylSymbol: sample count mismatch");
    WeylSymbol s = *this;
    s.cache_ = std::make_shared<const Cache>(Cache{grid, std::move(values)});
    return s;
}

WeylSymbol zero_symbol(int d) {
    return WeylSymbol(d, [](const double*) { return cd(0.0); }, "0");
}

WeylSymbol gaussian_symbol(int d, double a, cd c) {
    return WeylSymbol(
        d,
        [d, a, c](const double* t) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) r2 += t[k] * t[k];
            return c * std::exp(-a * r2);
        },
        "gaussian");
}

WeylSymbol modulated_gaussian(const Eigen::VectorXd& v, const Eigen::VectorXd& center, double a) {
    const int d = static_cast<int>(v.size());
    return WeylSymbol(
        d,
        [d, v, center, a](const double* t) {
            double ph = 0.0, r2 = 0.0;
            for (int k = 0; k < d; ++k) {
                ph += v(k) * t[k];
                r2 += (t[k] - center(k)) * (t[k] - center(k));
            }
            return std::polar(std::exp(-a * r2), ph);
        },
        "modulated gaussian");
}

WeylSymbol involution(const WeylSymbol& f) {
    const int d = f.dim();
    return WeylSymbol(
        d,
        [d, f](const double* t) {
            std::vector<double> m(t, t + d);
            for (auto& x : m) x = -x;
            return std::conj(f(m.data()));
        },
        f.label() + "*");
}

WeylSymbol operator+(const WeylSymbol& f, const WeylSymbol& g) {
    if (f.dim() != g.dim()) throw std::invalid_argument("WeylSymbol: dimension mismatch");
    return WeylSymbol(f.dim(), [f, g](const double* t) { return f(t) + g(t); }, f.label() + "+" + g.label());
}

WeylSymbol operator*(cd c, const WeylSymbol& f) {
    return WeylSymbol(f.dim(), [c, f](const double* t) { return c * f(t); }, f.label());
}

WeylSymbol coordinate_multiple(const WeylSymbol& f, int j) {
    if (j < 1 || j > f.dim()) throw std::out_of_range("coordinate_multiple: j out of range");
    return WeylSymbol(f.dim(), [f, j](const double* t) { return t[j - 1] * f(t); },
                      "t" + std::to_string(j) + "*" + f.label());
}

cd inner_product(const WeylSymbol& f, const WeylSymbol& g, const MomentumGrid& grid) {
    Eigen::VectorXcd a = f.sample(grid), b = g.sample(grid);
    cd acc = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) acc += grid.weights(i) * a(i) * std::conj(b(i));
    return acc;
}

double l2_norm(const WeylSymbol& f, const MomentumGrid& grid) {
    Eigen::VectorXcd a = f.sample(grid);
    return std::sqrt((grid.weights.array() * a.array().abs2()).sum());
}

double l2_distance(const WeylSymbol& f, const WeylSymbol& g, const MomentumGrid& grid) {
    Eigen::VectorXcd a = f.sample(grid) - g.sample(grid);
    return std::sqrt((grid.weights.array() * a.array().abs2()).sum());
}

namespace {

// Axis digits of every grid point, first axis slowest.
std::vector<int> grid_digits(const MomentumGrid& grid) {
    const Eigen::Index N = grid.size();
    std::vector<int> dig(static_cast<std::size_t>(N) * grid.d);
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::Index rem = i;
        for (int k = grid.d - 1; k >= 0; --k) {
            dig[i * grid.d + k] = static_cast<int>(rem % grid.n);
            rem /= grid.n;
        }
    }
    return dig;
}

}  // namespace

Eigen::MatrixXcd twisted_kernel(const WeylSymbol& f, const MomentumGrid& grid, const ThetaMatrix& theta) {
    if (f.dim() != grid.d || theta.d != grid.d) throw std::invalid_argument("twisted_kernel: dimension mismatch");
    const int d = grid.d, n = grid.n;
    const Eigen::Index N = grid.size();
    Eigen::MatrixXcd K(N, N);

    if (!theta.block_form) {
        std::vector<double> diff(d);
        for (Eigen::Index j = 0; j < N; ++j)
            for (Eigen::Index i = 0; i < N; ++i) {
                for (int k = 0; k < d; ++k) diff[k] = grid.points(i, k) - grid.points(j, k);
                Eigen::VectorXd ti = grid.points.row(i).transpose(), tj = grid.points.row(j).transpose();
                K(i, j) = std::polar(1.0, -0.5 * theta.pairing(ti.data(), tj.data())) * f(diff.data());
            }
        return K;
    }

    // exp(-(i/2) theta0 x_p x_q) on axis nodes
    Eigen::MatrixXcd E(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            E(p, q) = std::polar(1.0, -0.5 * theta.theta0 * grid.axis_nodes[p] * grid.axis_nodes[q]);
    const std::vector<int> dig = grid_digits(grid);

    // Symbol values on differences: a lattice table for uniform grids.
    const int span = 2 * n - 1;
    std::vector<cd> table;
    if (grid.uniform()) {
        Eigen::Index T = 1;
        for (int k = 0; k < d; ++k) T *= span;
        table.resize(T);
        const double h = grid.spacing();
        std::vector<double> u(d);
        for (Eigen::Index m = 0; m < T; ++m) {
            Eigen::Index rem = m;
            for (int k = d - 1; k >= 0; --k) {
                u[k] = h * static_cast<double>(rem % span - (n - 1));
                rem /= span;
            }
            table[m] = f(u.data());
        }
    }

    std::vector<double> diff(d);
    for (Eigen::Index j = 0; j < N; ++j) {
        const int* cj = &dig[j * d];
        for (Eigen::Index i = 0; i < N; ++i) {
            const int* ai = &dig[i * d];
            cd ph = 1.0;
            for (int b = 0; b < d; b += 2) ph *= E(ai[b], cj[b + 1]) * std::conj(E(ai[b + 1], cj[b]));
            cd fv;
            if (grid.uniform()) {
                Eigen::Index m = 0;
                for (int k = 0; k < d; ++k) m = m * span + (ai[k] - cj[k] + n - 1);
                fv = table[m];
            } else {
                for (int k = 0; k < d; ++k) diff[k] = grid.points(i, k) - grid.points(j, k);
                fv = f(diff.data());
            }
            K(i, j) = ph * fv;
        }
    }
    return K;
}

WeylSymbol twisted_convolution(const WeylSymbol& f, const WeylSymbol& g, const ThetaMatrix& theta,
                               const MomentumGrid& grid) {
    if (f.dim() != grid.d || g.dim() != grid.d) throw std::invalid_argument("twisted_convolution: incompatible grids");
    const int d = grid.d;
    auto pts = std::make_shared<const Eigen::MatrixXd>(grid.points);
    auto wg = std::make_shared<const Eigen::VectorXcd>(grid.weights.cast<cd>().cwiseProduct(g.sample(grid)));
    WeylSymbol out(
        d,
        [d, f, theta, pts, wg](const double* t) {
            cd acc = 0.0;
            std::vector<double> s(d), diff(d);
            for (Eigen::Index j = 0; j < pts->rows(); ++j) {
                if ((*wg)(j) == cd(0.0)) continue;
                for (int k = 0; k < d; ++k) {
                    s[k] = (*pts)(j, k);
                    diff[k] = t[k] - s[k];
                }
                acc += std::polar(1.0, -0.5 * theta.pairing(t, s.data())) * f(diff.data()) * (*wg)(j);
            }
            return acc;
        },
        f.label() + "*" + g.label());
    Eigen::VectorXcd samples = twisted_kernel(f, grid, theta) * (*wg);
    return out.with_samples(grid, std::move(samples));
}

}  // namespace moyal::algebra

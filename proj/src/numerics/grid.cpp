#include "moyal/numerics/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "moyal/numerics/special.hpp"

namespace moyal::numerics {

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // ascending order
        r.nodes[n - 1 - i] = 0.5 * (b - a) * x + 0.5 * (a + b);
        r.weights[n - 1 - i] = 0.5 * (b - a) * w;
    }
    return r;
}

MomentumGrid make_grid(int d, double L, int n, GridScheme scheme) {
    if (d <= 0 || d % 2 != 0) throw std::invalid_argument("make_grid: d must be positive and even");
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (n < 2) throw std::invalid_argument("make_grid: n must be at least 2");
    if (n % 2 != 0) throw std::invalid_argument("make_grid: odd n places a node at the origin");

    MomentumGrid g;
    g.d = d;
    g.L = L;
    g.n = n;
    g.scheme = scheme;
    if (scheme == GridScheme::MidpointUniform) {
        const double h = 2.0 * L / n;
        for (int k = 0; k < n; ++k) {
            g.axis_nodes.push_back(-L + h * (k + 0.5));
            g.axis_weights.push_back(h);
        }
    } else {
        auto r = gauss_legendre(n, -L, L);
        g.axis_nodes = r.nodes;
        g.axis_weights = r.weights;
    }

    Eigen::Index N = 1;
    for (int k = 0; k < d; ++k) N *= n;
    g.points.resize(N, d);
    g.weights.resize(N);
    std::vector<int> idx(d, 0);
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::Index rem = i;
        double w = 1.0;
        for (int k = d - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % n);
            rem /= n;
        }
        for (int k = 0; k < d; ++k) {
            g.points(i, k) = g.axis_nodes[idx[k]];
            w *= g.axis_weights[idx[k]];
        }
        g.weights(i) = w;
    }
    return g;
}

double gaussian_sanity_error(const MomentumGrid& grid) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        s += grid.weights(i) * std::exp(-grid.points.row(i).squaredNorm());
    const double exact = std::pow(pi, grid.d / 2.0);
    return std::abs(s - exact) / exact;
}

SphereGrid make_sphere_grid(int d, int m) {
    if (m < 1) throw std::invalid_argument("make_sphere_grid: need at least one node");
    SphereGrid s;
    s.d = d;
    if (d == 2) {
        s.points.resize(m, 2);
        s.weights = Eigen::VectorXd::Constant(m, 2.0 * pi / m);
        for (int k = 0; k < m; ++k) {
            const double phi = 2.0 * pi * k / m;
            s.points(k, 0) = std::cos(phi);
            s.points(k, 1) = std::sin(phi);
        }
        return s;
    }
    if (d == 4) {
        // psi1 via x1 = cos(psi1) with weight sqrt(1 - x1^2): Gauss-Chebyshev
        // of the second kind. psi2 via x2 = cos(psi2): Gauss-Legendre.
        // phi: trapezoid on 2m angles.
        auto gl = gauss_legendre(m);
        const int mp = 2 * m;
        s.points.resize(static_cast<Eigen::Index>(m) * m * mp, 4);
        s.weights.resize(static_cast<Eigen::Index>(m) * m * mp);
        Eigen::Index r = 0;
        for (int a = 1; a <= m; ++a) {
            const double ang = a * pi / (m + 1);
            const double x1 = std::cos(ang), y1 = std::sin(ang);
            const double w1 = pi / (m + 1) * y1 * y1;
            for (int b = 0; b < m; ++b) {
                const double x2 = gl.nodes[b], y2 = std::sqrt(1.0 - x2 * x2);
                for (int c = 0; c < mp; ++c) {
                    const double phi = 2.0 * pi * c / mp;
                    s.points(r, 0) = x1;
                    s.points(r, 1) = y1 * x2;
                    s.points(r, 2) = y1 * y2 * std::cos(phi);
                    s.points(r, 3) = y1 * y2 * std::sin(phi);
                    s.weights(r) = w1 * gl.weights[b] * (2.0 * pi / mp);
                    ++r;
                }
            }
        }
        return s;
    }
    throw std::invalid_argument("make_sphere_grid: only d = 2 and d = 4 are supported");
}

}  // namespace moyal::numerics

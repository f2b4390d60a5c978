#pragma once

#include <Eigen/Dense>
#include <vector>

namespace moyal::numerics {

enum class GridScheme { MidpointUniform, GaussLegendre };

// Tensor quadrature grid on [-L, L]^d. Points are stored row-wise, with the
// first axis varying slowest.
struct MomentumGrid {
    int d = 2;
    double L = 0.0;
    int n = 0;
    GridScheme scheme = GridScheme::MidpointUniform;
    std::vector<double> axis_nodes;
    std::vector<double> axis_weights;
    Eigen::MatrixXd points;   // size() x d
    Eigen::VectorXd weights;  // size()

    Eigen::Index size() const { return points.rows(); }
    bool uniform() const { return scheme == GridScheme::MidpointUniform; }
    double spacing() const { return 2.0 * L / n; }
    double norm(Eigen::Index i) const { return points.row(i).norm(); }
    bool same_as(const MomentumGrid& o) const {
        return d == o.d && L == o.L && n == o.n && scheme == o.scheme;
    }
};

// n must be even for both schemes: an odd n puts a node at the origin.
MomentumGrid make_grid(int d, double L, int n, GridScheme scheme = GridScheme::MidpointUniform);

// |sum w exp(-|t|^2) - pi^{d/2}| / pi^{d/2}
double gaussian_sanity_error(const MomentumGrid& grid);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Quadrature on the unit sphere S^{d-1} with weights summing to its area.
struct SphereGrid {
    int d = 2;
    Eigen::MatrixXd points;  // nodes x d
    Eigen::VectorXd weights;
    Eigen::Index size() const { return points.rows(); }
};

// d=2: m equispaced angles (trapezoid). d=4: hyperspherical product rule
// with m Chebyshev-U nodes, m Legendre nodes and 2m angles.
SphereGrid make_sphere_grid(int d, int m);

}  // namespace moyal::numerics

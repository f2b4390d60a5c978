#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <string>

#include "moyal/algebra/theta.hpp"
#include "moyal/numerics/grid.hpp"

namespace moyal::algebra {

using cd = std::complex<double>;
using SymbolFn = std::function<cd(const double*)>;

// Weyl symbol f of x = U_theta(f): a callable on R^d, optionally carrying
// precomputed samples on one grid.
class WeylSymbol {
public:
    WeylSymbol() = default;
    WeylSymbol(int d, SymbolFn fn, std::string label = {});

    int dim() const { return d_; }
    const std::string& label() const { return label_; }
    cd operator()(const double* t) const { return fn_(t); }
    cd operator()(const Eigen::VectorXd& t) const { return fn_(t.data()); }

    // Values at the grid nodes. Uses the cache when it was built on this grid.
    Eigen::VectorXcd sample(const numerics::MomentumGrid& grid) const;
    WeylSymbol cached_on(const numerics::MomentumGrid& grid) const;
    WeylSymbol with_samples(const numerics::MomentumGrid& grid, Eigen::VectorXcd values) const;
    bool has_samples_on(const numerics::MomentumGrid& grid) const;

private:
    struct Cache {
        numerics::MomentumGrid grid;
        Eigen::VectorXcd values;
    };
    int d_ = 0;
    SymbolFn fn_;
    std::string label_;
    std::shared_ptr<const Cache> cache_;
};

WeylSymbol zero_symbol(int d);
// c * exp(-a |t|^2)
WeylSymbol gaussian_symbol(int d, double a, cd c = 1.0);
// exp(i<v,t>) exp(-a |t - center|^2)
WeylSymbol modulated_gaussian(const Eigen::VectorXd& v, const Eigen::VectorXd& center, double a);

WeylSymbol involution(const WeylSymbol& f);
WeylSymbol operator+(const WeylSymbol& f, const WeylSymbol& g);
WeylSymbol operator*(cd c, const WeylSymbol& f);
// t_j f(t), j in 1..d
WeylSymbol coordinate_multiple(const WeylSymbol& f, int j);

// <f, g> = sum_i w_i f(t_i) conj(g(t_i))
cd inner_product(const WeylSymbol& f, const WeylSymbol& g, const numerics::MomentumGrid& grid);
double l2_norm(const WeylSymbol& f, const numerics::MomentumGrid& grid);
double l2_distance(const WeylSymbol& f, const WeylSymbol& g, const numerics::MomentumGrid& grid);

// K_ij = exp(-(i/2)<t_i, theta t_j>) f(t_i - t_j), without quadrature weights.
// Uniform grids tabulate f once on the difference lattice.
Eigen::MatrixXcd twisted_kernel(const WeylSymbol& f, const numerics::MomentumGrid& grid, const ThetaMatrix& theta);

// (f * g)(t) = int exp(-(i/2)<t, theta s>) f(t - s) g(s) ds by quadrature over
// the grid. The result is callable anywhere and carries its grid samples.
WeylSymbol twisted_convolution(const WeylSymbol& f, const WeylSymbol& g, const ThetaMatrix& theta,
                               const numerics::MomentumGrid& grid);

}  // namespace moyal::algebra

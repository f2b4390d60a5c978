#include "moyal/assembly/symbol_list.hpp"

#include <cmath>
#include <stdexcept>

namespace moyal::assembly {

ProductListSymbol symbol_of_product_list(const std::vector<ProductTerm>& terms, const numerics::SphereGrid& sphere) {
    ProductListSymbol out;
    if (terms.empty()) return out;
    const auto& theta = terms.front().first.theta;
    const int d = theta.d, M = terms.front().first.M;
    for (const auto& t : terms)
        if (t.first.M != M) throw std::invalid_argument("symbol_of_product_list: truncation mismatch");
    double acc = 0.0;
    for (Eigen::Index q = 0; q < sphere.size(); ++q) {
        Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(M, M);
        Eigen::VectorXd sv = sphere.points.row(q).transpose();
        for (const auto& t : terms) v += t.second(sv.data()) * t.first.a;
        acc += sphere.weights(q) * std::pow(algebra::schatten_norm(v, d), d);
        out.node_values.push_back(std::move(v));
    }
    out.ld_norm = std::pow(theta.tau_scale() * acc, 1.0 / d);
    return out;
}

}  // namespace moyal::assembly

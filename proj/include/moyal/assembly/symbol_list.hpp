#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "moyal/algebra/element.hpp"
#include "moyal/assembly/operators.hpp"
#include "moyal/numerics/grid.hpp"

namespace moyal::assembly {

// sum_j x_j (x) g_j as a coefficient-matrix valued function on sphere nodes.
struct ProductListSymbol {
    std::vector<Eigen::MatrixXcd> node_values;
    double ld_norm = 0.0;
};

using ProductTerm = std::pair<algebra::MatrixElement, AngularFn>;

ProductListSymbol symbol_of_product_list(const std::vector<ProductTerm>& terms, const numerics::SphereGrid& sphere);

}  // namespace moyal::assembly

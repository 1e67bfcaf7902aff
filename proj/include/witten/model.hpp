#pragma once

#include <vector>

#include "witten/exact.hpp"

namespace witten {

// Weighted quadratic normal form near one fixed component.
struct LocalModel {
    std::vector<int> weights;  // positive weights first
    double J_F = 0.0;

    static LocalModel make(std::vector<int> weights, double J_F = 0.0);

    int n_plus() const;
    int n_minus() const;
    int codim() const { return 2 * static_cast<int>(weights.size()); }
    long Lambda() const;
    bool definite() const { return n_plus() == 0 || n_minus() == 0; }
    int s_F() const;  // +1 or -1; definite models only
    // 1/|lambda| of the complex coordinate that holds real variable k
    Rational inverse_abs_weight_of_var(int k) const;
    void validate() const;
};

}  // namespace witten

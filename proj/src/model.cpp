#include "witten/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace witten {

LocalModel LocalModel::make(std::vector<int> weights, double J_F) {
    std::stable_partition(weights.begin(), weights.end(), [](int w) { return w > 0; });
    LocalModel m{std::move(weights), J_F};
    m.validate();
    return m;
}

int LocalModel::n_plus() const {
    return 2 * static_cast<int>(std::count_if(weights.begin(), weights.end(), [](int w) { return w > 0; }));
}

int LocalModel::n_minus() const {
    return 2 * static_cast<int>(std::count_if(weights.begin(), weights.end(), [](int w) { return w < 0; }));
}

long LocalModel::Lambda() const {
    long p = 1;
    for (int w : weights) p *= std::labs(w);
    return p;
}

int LocalModel::s_F() const {
    if (!definite()) throw std::domain_error("s_F is defined for definite models only");
    return n_plus() > 0 ? 1 : -1;
}

Rational LocalModel::inverse_abs_weight_of_var(int k) const {
    return Rational(1, std::abs(weights.at(static_cast<size_t>(k / 2))));
}

void LocalModel::validate() const {
    if (weights.empty()) throw std::invalid_argument("model needs at least one weight");
    bool seen_negative = false;
    for (int w : weights) {
        if (w == 0) throw std::invalid_argument("weights must be nonzero");
        if (w < 0) seen_negative = true;
        if (w > 0 && seen_negative) throw std::invalid_argument("weights must be ordered positive-first");
    }
}

}  // namespace witten

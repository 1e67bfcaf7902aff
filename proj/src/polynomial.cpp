#include "witten/polynomial.hpp"

#include <numeric>
#include <stdexcept>

namespace witten {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add(Exponents(static_cast<size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Rational& c, Exponents e) {
    Polynomial p(static_cast<int>(e.size()));
    p.add(e, c);
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Polynomial::add(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("monomial has wrong number of exponents");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("negative exponent");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        Rational q = c;
        q.canonicalize();
        terms_.emplace(e, q);
        return;
    }
    Rational q = c;
    q.canonicalize();
    it->second += q;
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial d(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        d.add(f, c * e[var]);
    }
    return d;
}

Rational Polynomial::value_at_zero() const {
    auto it = terms_.find(Exponents(static_cast<size_t>(nvars_), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial variable count mismatch");
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= q;
    return *this;
}

}  // namespace witten

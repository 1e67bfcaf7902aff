#pragma once

#include <map>
#include <string>
#include <vector>

#include "witten/exact.hpp"

namespace witten {

// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial monomial(const Rational& c, Exponents e);

    int nvars() const { return nvars_; }
    int degree() const;
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    void add(const Exponents& e, const Rational& c);

    Polynomial derivative(int var) const;
    Rational value_at_zero() const;

    template <class T>
    T eval(const T* w) const {
        T sum = T(0);
        for (const auto& [e, c] : terms_) {
            T m = T(c.get_d());
            for (int k = 0; k < nvars_; ++k)
                for (int p = 0; p < e[k]; ++p) m = m * w[k];
            sum = sum + m;
        }
        return sum;
    }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(const Rational& q);
    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

private:
    int nvars_ = 0;
    std::map<Exponents, Rational> terms_;
};

}  // namespace witten

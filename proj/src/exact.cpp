#include "witten/exact.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace witten {

ExactScalar::ExactScalar(const Rational& q, int pi_power, int i_power) {
    add_term(pi_power, i_power, q);
}

void ExactScalar::add_term(int pi_power, int i_power, const Rational& q) {
    int b = ((i_power % 4) + 4) % 4;
    Rational c = q;
    c.canonicalize();
    if (b >= 2) {
        c = -c;
        b -= 2;
    }
    if (c == 0) return;
    Key key{pi_power, b};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Rational ExactScalar::as_rational() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}) return terms_.begin()->second;
    throw std::domain_error("ExactScalar is not a pure rational: " + str());
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r;
    for (const auto& [k, q] : terms_) r.terms_.emplace(k, -q);
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    for (const auto& [k, q] : o.terms_) add_term(k.first, k.second, q);
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    for (const auto& [k, q] : o.terms_) add_term(k.first, k.second, -q);
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    ExactScalar r;
    for (const auto& [ka, qa] : terms_)
        for (const auto& [kb, qb] : o.terms_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, qa * qb);
    terms_ = std::move(r.terms_);
    return *this;
}

ExactScalar& ExactScalar::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= q;
    return *this;
}

ExactScalar& ExactScalar::operator/=(const Rational& q) {
    if (q == 0) throw std::domain_error("ExactScalar division by zero");
    for (auto& [k, c] : terms_) c /= q;
    return *this;
}

ExactScalar ExactScalar::pow(unsigned n) const {
    ExactScalar r(1);
    for (unsigned k = 0; k < n; ++k) r *= *this;
    return r;
}

std::complex<double> ExactScalar::to_complex() const {
    std::complex<double> z = 0.0;
    for (const auto& [k, q] : terms_) {
        double v = q.get_d() * std::pow(std::numbers::pi, k.first);
        z += k.second == 0 ? std::complex<double>(v, 0.0) : std::complex<double>(0.0, v);
    }
    return z;
}

std::string ExactScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, q] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << q.get_str();
        if (k.first != 0) os << "*pi^" << k.first;
        if (k.second != 0) os << "*i";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

Rational factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational pow2(int e) {
    mpz_class p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(p);
    return Rational(mpz_class(1), p);
}

int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace witten

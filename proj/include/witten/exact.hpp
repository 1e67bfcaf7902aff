#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace witten {

using Rational = mpq_class;

// Finite sum of q * pi^a * i^b with b folded into {0,1}.
class ExactScalar {
public:
    using Key = std::pair<int, int>;  // (pi power, i power)

    ExactScalar() = default;
    ExactScalar(const Rational& q, int pi_power = 0, int i_power = 0);
    ExactScalar(long q) : ExactScalar(Rational(q)) {}

    static ExactScalar pi(int power = 1) { return ExactScalar(Rational(1), power, 0); }
    static ExactScalar imag_unit(int power = 1) { return ExactScalar(Rational(1), 0, power); }

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Pure rational (no pi or i); throws otherwise.
    Rational as_rational() const;

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator*=(const Rational& q);
    ExactScalar& operator/=(const Rational& q);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator*(ExactScalar a, const Rational& q) { return a *= q; }
    friend ExactScalar operator*(const Rational& q, ExactScalar a) { return a *= q; }
    friend ExactScalar operator/(ExactScalar a, const Rational& q) { return a /= q; }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar pow(unsigned n) const;

    std::complex<double> to_complex() const;
    std::string str() const;

private:
    void add_term(int pi_power, int i_power, const Rational& q);
    std::map<Key, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

Rational factorial(int n);
Rational binomial(int n, int k);  // 0 outside 0 <= k <= n
Rational pow2(int e);              // 2^e for any integer e
int sign_pow(int e);               // (-1)^e

}  // namespace witten

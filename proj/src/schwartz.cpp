#include "witten/schwartz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "witten/quadrature.hpp"

namespace witten {

namespace {

// Gamma((n+1)/2) through the ladder from Gamma(1/2) or Gamma(1).
double gamma_half_ladder(int n) {
    double z = (n % 2 == 0) ? 0.5 : 1.0;
    double g = (n % 2 == 0) ? std::sqrt(std::numbers::pi) : 1.0;
    for (; z < 0.5 * (n + 1) - 0.25; z += 1.0) g *= z;
    return g;
}

std::complex<double> ipow(int j, int sign) {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int e = ((sign * j) % 4 + 4) % 4;
    return table[e];
}

}  // namespace

double SchwartzSpec::hat(double x) const {
    double p = 0.0;
    for (size_t k = poly.size(); k-- > 0;) p = p * x + poly[k].get_d();
    return p * std::exp(-x * x / (2.0 * tau * tau));
}

double half_gaussian_moment(int n, double tau) {
    if (n < 0) throw std::domain_error("negative moment order");
    // 2^{(n-1)/2} tau^{n+1} Gamma((n+1)/2)
    return std::pow(2.0, 0.5 * (n - 1)) * std::pow(tau, n + 1) * gamma_half_ladder(n);
}

std::complex<double> sigma_deriv_at_zero(const SchwartzSpec& s, int j) {
    double m = 0.0;
    for (size_t k = 0; k < s.poly.size(); ++k) {
        int n = static_cast<int>(k) + j;
        if (n % 2 == 0) m += s.poly[k].get_d() * 2.0 * half_gaussian_moment(n, s.tau);
    }
    return ipow(j, 1) * (m / (2.0 * std::numbers::pi));
}

std::complex<double> sigma_bracket(const SchwartzSpec& s, int j, int sign) {
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    double m = 0.0;
    for (size_t k = 0; k < s.poly.size(); ++k) {
        double c = s.poly[k].get_d() * ((sign == -1 && k % 2 == 1) ? -1.0 : 1.0);
        m += c * half_gaussian_moment(static_cast<int>(k) + j, s.tau);
    }
    return ipow(j, sign) * (m / (2.0 * std::numbers::pi));
}

std::complex<double> sigma_functional(const SchwartzSpec& s, SigmaFunctional f, int j) {
    switch (f) {
        case SigmaFunctional::Full: return sigma_deriv_at_zero(s, j);
        case SigmaFunctional::BracketPlus: return sigma_bracket(s, j, 1);
        case SigmaFunctional::BracketMinus: return sigma_bracket(s, j, -1);
    }
    return 0.0;
}

std::complex<double> sigma_eval(const SchwartzSpec& s, double x) {
    double R = s.tau * 40.0;
    auto re = integrate([&](double u) { return s.hat(u) * std::cos(u * x); }, -R, R, {0.0}, 1e-14);
    auto im = integrate([&](double u) { return s.hat(u) * std::sin(u * x); }, -R, R, {0.0}, 1e-14);
    return std::complex<double>(re.value, im.value) / (2.0 * std::numbers::pi);
}

}  // namespace witten

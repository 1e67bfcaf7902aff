#pragma once

#include <complex>
#include <vector>

#include "witten/exact.hpp"

namespace witten {

enum class SigmaFunctional { Full, BracketPlus, BracketMinus };

// Test function given through its Fourier transform p(x) exp(-x^2/(2 tau^2)).
struct SchwartzSpec {
    std::vector<Rational> poly;  // p_0 + p_1 x + ...
    double tau = 1.0;

    double hat(double x) const;
};

// int_0^inf xi^n exp(-xi^2/(2 tau^2)) d xi
double half_gaussian_moment(int n, double tau);

std::complex<double> sigma_deriv_at_zero(const SchwartzSpec& s, int j);
std::complex<double> sigma_bracket(const SchwartzSpec& s, int j, int sign);
std::complex<double> sigma_functional(const SchwartzSpec& s, SigmaFunctional f, int j);

// sigma(x) = (1/2pi) int hat(u) e^{iux} du, by quadrature.
std::complex<double> sigma_eval(const SchwartzSpec& s, double x);

}  // namespace witten

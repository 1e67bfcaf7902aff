#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "witten/amplitude.hpp"

namespace testsupport {

// Fornberg weights for the k-th derivative at 0 on nodes x.
template <class Real = double>
inline std::vector<Real> fd_weights(const std::vector<Real>& x, int k) {
    int n = static_cast<int>(x.size());
    std::vector<std::vector<Real>> c(n, std::vector<Real>(k + 1, Real(0)));
    Real c1 = 1, c4 = x[0];
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, k);
        Real c2 = 1, c5 = c4;
        c4 = x[i];
        for (int j = 0; j < i; ++j) {
            Real c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s) c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int s = mn; s >= 1; --s) c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<Real> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][k];
    return w;
}

// k-th derivative of g at x0 on a symmetric stencil of 2*half+1 points.
inline double fd_derivative(const std::function<double(double)>& g, double x0, int k, double h, int half = 4) {
    std::vector<double> x;
    for (int i = -half; i <= half; ++i) x.push_back(i * h);
    auto w = fd_weights(x, k);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * g(x0 + x[i]);
    return s;
}

// Every other term has even exponents so that spherical means see it.
inline witten::Polynomial random_poly(std::mt19937& g, int nvars, int max_degree, int nterms) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), deg(0, max_degree), half(0, max_degree / 2),
        var(0, nvars - 1);
    witten::Polynomial p(nvars);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> e(static_cast<size_t>(nvars), 0);
        bool even = t % 2 == 1;
        int d = even ? half(g) : deg(g);
        for (int k = 0; k < d; ++k) e[static_cast<size_t>(var(g))] += even ? 2 : 1;
        p.add(e, witten::Rational(num(g), den(g)));
    }
    return p;
}

inline witten::AmplitudeSpec make_amplitude(int np, int nm, witten::Polynomial p, double r0 = 1.5, double r1 = 2.5) {
    witten::AmplitudeSpec f;
    f.dim_plus = np;
    f.dim_minus = nm;
    f.poly = std::move(p);
    f.bump = {r0, r1};
    return f;
}

inline witten::AmplitudeSpec unit_amplitude(int np, int nm, double r0 = 1.5, double r1 = 2.5) {
    return make_amplitude(np, nm, witten::Polynomial::constant(np + nm, 1), r0, r1);
}

}  // namespace testsupport

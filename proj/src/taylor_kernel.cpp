#include "witten/taylor_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "witten/quadrature.hpp"

namespace witten {

FKernel::FKernel(int s, int n, double z, const SphericalMean& m, int order)
    : sign(s), N(n), zeta(z), mean(&m), max_order(order) {
    if (s != 1 && s != -1) throw std::domain_error("FKernel: sign must be +1 or -1");
    if (n < 0 || order < 0) throw std::domain_error("FKernel: N and order must be nonnegative");
    table_ = std::make_shared<const CTable>(N, max_order);
}

std::pair<double, double> FKernel::boundary_point(double v) const {
    if (sign == 1) return {0.0, v - zeta};
    return {zeta - v, 0.0};
}

namespace {

double t_integral(const FKernel& k, double v, const std::function<double(double, double)>& g) {
    double a = k.lower_limit(v);
    // the squared radii add up to t, so the cutoff ends the integral at r1^2
    double b = k.mean->support_sq();
    if (!(b > a)) return 0.0;
    double r0 = k.mean->bump().r0 * k.mean->bump().r0;
    std::vector<double> breaks;
    if (r0 > a && r0 < b) breaks.push_back(r0);
    if (a < 0.0) breaks.push_back(0.0);
    auto f = [&](double t) { return std::pow(t, k.N) * g(0.5 * (t - v + k.zeta), 0.5 * (t + v - k.zeta)); };
    return integrate(f, a, b, breaks, 1e-14, 1e-15).value;
}

}  // namespace

double F_eval(const FKernel& k, double v) {
    return t_integral(k, v, [&](double t, double u) { return k.mean->value(t, u); });
}

double F_interior(const FKernel& k, int m, double v) {
    double I = t_integral(k, v, [&](double t, double u) { return k.mean->diff_power(t, u, m); });
    return std::ldexp(I, -m);
}

double F_boundary(const FKernel& k, int m, double v) {
    if (m > k.max_order) throw std::domain_error("F_boundary: derivative order beyond table");
    const CTable& C = k.table();
    auto [t0, u0] = k.boundary_point(v);
    double x = k.lower_limit(v);
    // (+- d_-+)^p: + kernel differentiates along u, - kernel along -t
    double c_plus = k.sign == 1 ? 0.0 : -1.0;
    double c_minus = k.sign == 1 ? 1.0 : 0.0;
    double s = 0.0;
    for (int i = 0; i <= m - 1; ++i) {
        double inner = 0.0;
        for (int p = 0; p <= i; ++p) {
            int q = i - p;
            double c = C(m, p, q).get_d();
            if (c == 0.0) continue;
            inner += c * k.mean->mixed(t0, u0, p, c_plus, c_minus, q);
        }
        if (inner == 0.0) continue;
        int e = std::max(0, k.N + 1 - m + i);
        double sgn = ((m + i) % 2 == 0) ? 1.0 : -static_cast<double>(k.sign);  // (-+1)^{m+i}
        s += sgn * std::pow(x, e) * inner;
    }
    return s;
}

double F_derivative(const FKernel& k, int m, double v) {
    if (m == 0) return F_eval(k, v);
    return F_interior(k, m, v) + F_boundary(k, m, v);
}

}  // namespace witten

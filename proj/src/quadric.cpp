#include "witten/quadric.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "witten/dual.hpp"
#include "witten/quadrature.hpp"

namespace witten {

QuadricSlice::QuadricSlice(LocalModel m, double z) : model(std::move(m)), zeta(z) {
    if (model.definite()) throw std::domain_error("quadric slice needs an indefinite model");
}

std::pair<double, double> QuadricSlice::point(double param) const {
    if (zeta >= 0.0) return {std::sqrt(param * param + 2.0 * zeta), param};
    return {param, std::sqrt(param * param - 2.0 * zeta)};
}

double QuadricSlice::param_max(double radius_sq) const {
    // 2 p^2 + 2|zeta| = radius_sq
    double v = 0.5 * (radius_sq - 2.0 * std::abs(zeta));
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

namespace {

std::vector<double> rescaled_to_original(const LocalModel& model, const std::vector<double>& wp) {
    std::vector<double> w(wp.size());
    for (size_t k = 0; k < wp.size(); ++k) w[k] = wp[k] / std::sqrt(std::abs(model.weights[k / 2]));
    return w;
}

template <class T>
T apply_difference(const LocalModel& model, const AmplitudeSpec& f, const T* w, int l) {
    ModelAmplitude amp{&model, &f};
    if (l == 0) return amp.eval(w);
    int np = f.dim_plus, d = f.dim();
    T a_plus = T(0.0), a_minus = T(0.0);
    for (int k = 0; k < d; ++k) {
        T q = double(std::abs(model.weights[static_cast<size_t>(k / 2)])) * (w[k] * w[k]);
        if (k < np) a_plus = a_plus + q;
        else a_minus = a_minus + q;
    }
    // one more derivative along V = (w^-/a_- - w^+/a_+)/2
    std::vector<Dual<T>> wd(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        T v = k < np ? T(0.0) - w[k] / a_plus : w[k] / a_minus;
        wd[static_cast<size_t>(k)] = Dual<T>(w[k], 0.5 * v);
    }
    if constexpr (sizeof(T) > 64 * sizeof(double)) {
        throw std::domain_error("derivative order too high");
    } else {
        return apply_difference<Dual<T>>(model, f, wd.data(), l - 1).d;
    }
}

}  // namespace

double W_weight(const LocalModel& model, const std::vector<double>& w, int k) {
    int np = model.n_plus(), nm = model.n_minus();
    double ap = 0.0, am = 0.0;
    for (int i = 0; i < np + nm; ++i) {
        double q = std::abs(model.weights[static_cast<size_t>(i / 2)]) * w[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
        (i < np ? ap : am) += q;
    }
    return 4.0 * model.Lambda() * std::pow(ap + am, k) * std::pow(ap, 0.5 * (2 - np)) * std::pow(am, 0.5 * (2 - nm));
}

double D_difference_power(const LocalModel& model, const AmplitudeSpec& f, const std::vector<double>& w, int l) {
    if (l < 0 || l > 5) throw std::domain_error("D_difference_power: order out of range");
    return apply_difference<double>(model, f, w.data(), l);
}

double hypersurface_integral(const QuadricSlice& slice, const PointFunction& g, const HypersurfaceOptions& opt) {
    const auto& model = slice.model;
    int np = model.n_plus(), nm = model.n_minus();
    auto plus = SphereRule::make(np, opt.sphere_degree);
    auto minus = SphereRule::make(nm, opt.sphere_degree);
    auto mean = [&](double r, double s) {
        return sphere_product_integral([&](const std::vector<double>& wp) { return g(rescaled_to_original(model, wp)); },
                                       plus, minus, r, s);
    };
    auto integrand = [&](double p) {
        auto [r, s] = slice.point(p);
        // r dr = s ds on the slice; parameterize by the smaller radius
        if (slice.zeta >= 0.0) return std::pow(r, np - 2) * std::pow(s, nm - 1) * mean(r, s);
        return std::pow(r, np - 1) * std::pow(s, nm - 2) * mean(r, s);
    };
    double pmax = slice.param_max(opt.support_sq);
    std::vector<double> breaks;
    for (double b : opt.radius_sq_breaks) {
        double p = slice.param_max(b);
        if (p > 0.0 && p < pmax) breaks.push_back(p);
    }
    if (pmax <= 0.0) return 0.0;
    double lo = 0.0, tip = 0.0;
    if (opt.tip_points > 0) {
        lo = std::min(opt.tip_width, 0.25 * pmax);
        for (double b : breaks)
            if (b > 0.0) lo = std::min(lo, 0.5 * b);
        std::vector<double> x, w;
        gauss_jacobi(opt.tip_points, 0.0, 0.0, x, w);
        for (size_t i = 0; i < x.size(); ++i) tip += 0.5 * lo * w[i] * integrand(0.5 * lo * (x[i] + 1.0));
    }
    double rest = integrate(integrand, lo, pmax, breaks, opt.tol, opt.abs_tol).value;
    return (tip + rest) / static_cast<double>(model.Lambda());
}

double W_Dpm_integral(const QuadricSlice& slice, const AmplitudeSpec& f, int k, int l) {
    const auto& model = slice.model;
    HypersurfaceOptions opt;
    opt.support_sq = f.bump.r1 * f.bump.r1;
    opt.radius_sq_breaks = {f.bump.r0 * f.bump.r0};
    opt.sphere_degree = std::max(2, f.poly.degree() + 2);
    opt.tip_points = 8;
    auto g = [&](const std::vector<double>& w) { return W_weight(model, w, k) * D_difference_power(model, f, w, l); };
    return hypersurface_integral(slice, g, opt);
}

double W_Dpm_t_integral(const QuadricSlice& slice, const AmplitudeSpec& f, int k, int l) {
    auto mean = SphericalMean::of_model(f, slice.model);
    double z2 = 2.0 * slice.zeta;
    double a = std::abs(z2), b = mean.support_sq();
    if (b <= a) return 0.0;
    std::vector<double> breaks;
    double r0 = f.bump.r0 * f.bump.r0;
    if (r0 > a && r0 < b) breaks.push_back(r0);
    auto integrand = [&](double t) { return std::pow(t, k) * mean.diff_power(0.5 * (t + z2), 0.5 * (t - z2), l); };
    return integrate(integrand, a, b, breaks, 1e-13, 1e-13).value;
}

bool sphere_trace_identity_check(const std::vector<std::vector<double>>& B, int n, double tol) {
    if (n < 2) throw std::domain_error("sphere_trace_identity_check: n >= 2 required");
    auto rule = SphereRule::make(n, 4);
    double lhs = 0.0, tr = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const auto& th = rule.nodes[q];
        double v = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v += B[static_cast<size_t>(i)][static_cast<size_t>(j)] * th[static_cast<size_t>(i)] * th[static_cast<size_t>(j)];
        lhs += rule.weights[q] * v;
    }
    for (int i = 0; i < n; ++i) tr += B[static_cast<size_t>(i)][static_cast<size_t>(i)];
    double rhs = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n) * tr / n;
    return std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs));
}

}  // namespace witten

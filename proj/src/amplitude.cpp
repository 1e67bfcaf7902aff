#include "witten/amplitude.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <boost/math/differentiation/autodiff.hpp>

#include "witten/coefficients.hpp"
#include "witten/quadrature.hpp"

namespace witten {

namespace {

constexpr int kMaxBumpOrder = 16;

template <class X>
X smooth_step(X y) {
    using std::exp;
    X g0 = exp(-1.0 / y);
    X g1 = exp(-1.0 / (1.0 - y));
    return g0 / (g0 + g1);
}

double falling(int n, int k) {
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= (n - i);
    return f;
}

template <size_t N>
double step_derivative(double y) {
    auto yv = boost::math::differentiation::make_fvar<double, N>(y);
    return smooth_step(yv).derivative(N);
}

template <size_t... Ns>
double step_derivative_dispatch(double y, int k, std::index_sequence<Ns...>) {
    double out = 0.0;
    ((static_cast<int>(Ns) == k ? (out = step_derivative<Ns>(y), true) : false) || ...);
    return out;
}

}  // namespace

double Bump::operator()(double x2, int k) const {
    double a = r0 * r0, b = r1 * r1;
    double y = (b - x2) / (b - a);
    if (y >= 1.0) return k == 0 ? 1.0 : 0.0;
    if (y <= 0.0) return 0.0;
    if (k == 0) return smooth_step(y);
    if (k > kMaxBumpOrder) throw std::domain_error("bump derivative order too high");
    // flat to double precision; autodiff would form inf * 0 here
    if (y < 2e-3 || y > 1.0 - 2e-3) return 0.0;
    double dy = step_derivative_dispatch(y, k, std::make_index_sequence<kMaxBumpOrder + 1>{});
    return dy * std::pow(-1.0 / (b - a), k);
}

void AmplitudeSpec::validate() const {
    if (dim_plus < 0 || dim_minus < 0 || dim_plus % 2 || dim_minus % 2 || dim() == 0)
        throw std::invalid_argument("amplitude block dimensions must be even and nonnegative");
    if (poly.nvars() != dim()) throw std::invalid_argument("amplitude polynomial has wrong number of variables");
    if (!(bump.r0 > 0.0) || !(bump.r1 > bump.r0)) throw std::invalid_argument("bump needs 0 < r0 < r1");
}

std::vector<double> ModelAmplitude::T_apply(const std::vector<double>& wp) const {
    std::vector<double> w(wp.size());
    for (size_t k = 0; k < wp.size(); ++k) w[k] = wp[k] / std::sqrt(std::abs(model->weights[k / 2]));
    return w;
}

Rational sphere_monomial_moment(const std::vector<int>& alpha) {
    int n = static_cast<int>(alpha.size());
    if (n == 0) return 1;
    if (n % 2) throw std::domain_error("sphere moments implemented for even dimension");
    Rational q = 2;
    int A = 0;
    for (int a2 : alpha) {
        if (a2 % 2) return 0;
        int a = a2 / 2;
        A += a;
        q *= factorial(2 * a) / (pow2(2 * a) * factorial(a));
    }
    return q / factorial(A + n / 2 - 1);
}

SphericalMean SphericalMean::of(const AmplitudeSpec& f) { return build(f, nullptr); }

SphericalMean SphericalMean::of_model(const AmplitudeSpec& f, const LocalModel& model) {
    if (model.n_plus() != f.dim_plus || model.n_minus() != f.dim_minus)
        throw std::invalid_argument("amplitude blocks do not match the model inertia split");
    return build(f, &model);
}

SphericalMean SphericalMean::build(const AmplitudeSpec& f, const LocalModel* model) {
    f.validate();
    SphericalMean m;
    m.n_plus_ = f.dim_plus;
    m.n_minus_ = f.dim_minus;
    m.pi_power_ = f.dim() / 2;
    m.bump_ = f.bump;
    for (const auto& [e, c] : f.poly.terms()) {
        std::vector<int> ap(e.begin(), e.begin() + f.dim_plus), am(e.begin() + f.dim_plus, e.end());
        Rational q = c * sphere_monomial_moment(ap) * sphere_monomial_moment(am);
        if (q == 0) continue;
        int A = 0, B = 0;
        for (int k = 0; k < f.dim(); ++k) {
            if (model) {
                Rational s = model->inverse_abs_weight_of_var(k);
                for (int p = 0; p < e[k] / 2; ++p) q *= s;
            }
            (k < f.dim_plus ? A : B) += e[k] / 2;
        }
        auto& slot = m.coeff_[{A, B}];
        slot += q;
    }
    for (auto it = m.coeff_.begin(); it != m.coeff_.end();) it = (it->second == 0) ? m.coeff_.erase(it) : std::next(it);
    return m;
}

double SphericalMean::poly_derivative(double t, double u, int a, int b) const {
    double s = 0.0;
    for (const auto& [ab, c] : coeff_) {
        auto [A, B] = ab;
        if (A < a || B < b) continue;
        s += c.get_d() * falling(A, a) * std::pow(t, A - a) * falling(B, b) * std::pow(u, B - b);
    }
    return s * std::pow(std::numbers::pi, pi_power_);
}

double SphericalMean::derivative(double t, double u, int a, int b) const {
    // Leibniz over bump(t+u) P(t,u); both partials hit the bump identically.
    double s = 0.0;
    for (int i = 0; i <= a; ++i)
        for (int k = 0; k <= b; ++k) {
            double bd = bump_(t + u, i + k);
            if (bd == 0.0) continue;
            s += binomial(a, i).get_d() * binomial(b, k).get_d() * bd * poly_derivative(t, u, a - i, b - k);
        }
    return s;
}

double SphericalMean::diff_power(double t, double u, int q) const {
    double s = 0.0;
    for (int r = 0; r <= q; ++r)
        s += binomial(q, r).get_d() * sign_pow(q - r) * poly_derivative(t, u, q - r, r);
    return s * bump_(t + u, 0);
}

double SphericalMean::mixed(double t, double u, int p, double c_plus, double c_minus, int q) const {
    double s = 0.0;
    for (int i = 0; i <= p; ++i) {
        double ci = binomial(p, i).get_d() * std::pow(c_plus, i) * std::pow(c_minus, p - i);
        if (ci == 0.0) continue;
        for (int r = 0; r <= q; ++r)
            s += ci * binomial(q, r).get_d() * sign_pow(q - r) * derivative(t, u, i + q - r, p - i + r);
    }
    return s;
}

ExactScalar SphericalMean::origin_derivative(int a, int b) const {
    auto it = coeff_.find({a, b});
    if (it == coeff_.end()) return ExactScalar();
    return ExactScalar(it->second * factorial(a) * factorial(b), pi_power_, 0);
}

double spherical_mean(const AmplitudeSpec& f, double r, double s) {
    if (r < 0.0 || s < 0.0) throw std::domain_error("spherical_mean: negative radius");
    return SphericalMean::of(f).S(r, s);
}

double script_S_eval(const SphericalMean& mean, double t, double u, int d_minus_pow, int d_plus_pow) {
    if (t < 0.0 || u < 0.0) throw std::domain_error("script_S_eval: negative argument");
    return mean.derivative(t, u, d_plus_pow, d_minus_pow);
}

namespace {

Polynomial block_laplacian(const Polynomial& p, const LocalModel& model, int first, int last) {
    Polynomial out(p.nvars());
    for (int k = first; k < last; ++k) {
        Polynomial d2 = p.derivative(k).derivative(k);
        d2 *= model.inverse_abs_weight_of_var(k);
        out += d2;
    }
    return out;
}

ExactScalar block_volume(int n) { return n == 0 ? ExactScalar(1) : vol_sphere(n); }

}  // namespace

namespace {

Rational power_normalization(int n, int k) {
    Rational scale = 1;
    for (int i = 0; i < k; ++i) scale /= 2 * n;
    return scale;
}

Rational pizzetti_normalization(int n, int k) {
    Rational scale = 1;
    for (int i = 0; i < k; ++i) scale /= 2 * (n + 2 * i);
    return scale;
}

ExactScalar block_origin_value(const AmplitudeSpec& f, const LocalModel& model, int k, int sign, bool pizzetti) {
    f.validate();
    int first = sign == 1 ? 0 : f.dim_plus;
    int last = sign == 1 ? f.dim_plus : f.dim();
    int n = last - first;
    Polynomial p = f.poly;
    for (int i = 0; i < k; ++i) p = block_laplacian(p, model, first, last);
    Rational scale = pizzetti ? pizzetti_normalization(n, k) : power_normalization(n, k);
    return block_volume(f.dim_plus) * block_volume(f.dim_minus) * (scale * p.value_at_zero());
}

ExactScalar definite_origin_value(const AmplitudeSpec& f, const LocalModel& model, int k, bool pizzetti) {
    f.validate();
    if (f.dim_plus != 0 && f.dim_minus != 0) throw std::domain_error("definite amplitude expected");
    int d = f.dim();
    Polynomial p = f.poly;
    for (int i = 0; i < k; ++i) p = block_laplacian(p, model, 0, d);
    Rational scale = pizzetti ? pizzetti_normalization(d, k) : power_normalization(d, k);
    return vol_sphere(d) * (scale * p.value_at_zero());
}

}  // namespace

ExactScalar script_S_derivatives_at_origin(const AmplitudeSpec& f, const LocalModel& model, int k, int sign) {
    return block_origin_value(f, model, k, sign, false);
}

ExactScalar script_S_definite_derivatives(const AmplitudeSpec& f, const LocalModel& model, int k) {
    return definite_origin_value(f, model, k, false);
}

ExactScalar script_S_derivatives_at_origin_pizzetti(const AmplitudeSpec& f, const LocalModel& model, int k, int sign) {
    return block_origin_value(f, model, k, sign, true);
}

ExactScalar script_S_definite_derivatives_pizzetti(const AmplitudeSpec& f, const LocalModel& model, int k) {
    return definite_origin_value(f, model, k, true);
}

SphereRule SphereRule::make(int n, int degree) {
    SphereRule r;
    r.n = n;
    if (n == 0) {
        r.nodes.push_back({});
        r.weights.push_back(1.0);
    } else if (n == 1) {
        r.nodes = {{1.0}, {-1.0}};
        r.weights = {1.0, 1.0};
    } else if (n == 2) {
        int K = degree + 1;
        for (int k = 0; k < K; ++k) {
            double a = 2.0 * std::numbers::pi * k / K;
            r.nodes.push_back({std::cos(a), std::sin(a)});
            r.weights.push_back(2.0 * std::numbers::pi / K);
        }
    } else {
        std::vector<double> t, w;
        gauss_jacobi(degree / 2 + 1, 0.5 * (n - 3), 0.5 * (n - 3), t, w);
        SphereRule sub = make(n - 1, degree);
        for (size_t i = 0; i < t.size(); ++i) {
            double c = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
            for (size_t j = 0; j < sub.nodes.size(); ++j) {
                std::vector<double> x{t[i]};
                for (double y : sub.nodes[j]) x.push_back(c * y);
                r.nodes.push_back(std::move(x));
                r.weights.push_back(w[i] * sub.weights[j]);
            }
        }
    }
    return r;
}

double sphere_product_integral(const std::function<double(const std::vector<double>&)>& g, const SphereRule& plus,
                               const SphereRule& minus, double r, double s) {
    double sum = 0.0;
    std::vector<double> w(static_cast<size_t>(plus.n + minus.n));
    for (size_t i = 0; i < plus.nodes.size(); ++i) {
        for (int k = 0; k < plus.n; ++k) w[k] = r * plus.nodes[i][k];
        for (size_t j = 0; j < minus.nodes.size(); ++j) {
            for (int k = 0; k < minus.n; ++k) w[plus.n + k] = s * minus.nodes[j][k];
            sum += plus.weights[i] * minus.weights[j] * g(w);
        }
    }
    return sum;
}

}  // namespace witten

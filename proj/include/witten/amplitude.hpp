#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "witten/dual.hpp"
#include "witten/exact.hpp"
#include "witten/model.hpp"
#include "witten/polynomial.hpp"

namespace witten {

// Plateau cutoff as a function of the squared radius x = |w|^2:
// 1 for x <= r0^2, 0 for x >= r1^2.
struct Bump {
    double r0 = 1.5;
    double r1 = 2.5;

    double operator()(double x2, int k) const;  // k-th derivative in x2
    double value(double x2) const { return (*this)(x2, 0); }
};

struct AmplitudeSpec {
    int dim_plus = 2;
    int dim_minus = 2;
    Polynomial poly;
    Bump bump;

    int dim() const { return dim_plus + dim_minus; }
    void validate() const;
    bool operator==(const AmplitudeSpec& o) const {
        return dim_plus == o.dim_plus && dim_minus == o.dim_minus && poly == o.poly && bump.r0 == o.bump.r0 &&
               bump.r1 == o.bump.r1;
    }

    // poly(w) * bump(|w|^2)
    template <class T>
    T eval(const T* w) const {
        T x2 = T(0.0);
        for (int k = 0; k < dim(); ++k) x2 = x2 + w[k] * w[k];
        return poly.eval(w) * apply_smooth(bump, x2);
    }
};

// Amplitude in the original coordinates of a model: the cutoff is radial
// in the rescaled coordinates, f(w) = poly(w) * bump(|T^{-1} w|^2).
struct ModelAmplitude {
    const LocalModel* model;
    const AmplitudeSpec* spec;

    template <class T>
    T eval(const T* w) const {
        T x2 = T(0.0);
        for (int k = 0; k < spec->dim(); ++k)
            x2 = x2 + std::abs(model->weights[static_cast<size_t>(k / 2)]) * w[k] * w[k];
        return spec->poly.eval(w) * apply_smooth(spec->bump, x2);
    }
    // original coordinates of the rescaled point w'
    std::vector<double> T_apply(const std::vector<double>& wp) const;
};

// Exact monomial moment of S^{n-1}: rational part q with moment = q * pi^{n/2}, n even.
Rational sphere_monomial_moment(const std::vector<int>& alpha);

// Squared-argument form of the spherical mean: script_S(t,u) = bump(t+u) P(t,u),
// P with coefficients q * pi^{pi_power}. Definite kind has no u dependence.
class SphericalMean {
public:
    // spherical mean of f itself
    static SphericalMean of(const AmplitudeSpec& f);
    // spherical mean of f composed with the weight rescaling of the model
    static SphericalMean of_model(const AmplitudeSpec& f, const LocalModel& model);

    bool definite() const { return n_minus_ == 0 || n_plus_ == 0; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int pi_power() const { return pi_power_; }
    const Bump& bump() const { return bump_; }
    // coefficient of t^a u^b (rational part)
    const std::map<std::pair<int, int>, Rational>& coefficients() const { return coeff_; }
    double support_sq() const { return bump_.r1 * bump_.r1; }

    // d_plus^a d_minus^b of script_S at (t,u); any real t,u (smooth extension)
    double derivative(double t, double u, int a, int b) const;
    double value(double t, double u) const { return derivative(t, u, 0, 0); }
    // (d_- - d_+)^q script_S, which does not see the cutoff
    double diff_power(double t, double u, int q) const;
    // (op)^p (d_- - d_+)^q script_S with op = c_plus d_+ + c_minus d_-
    double mixed(double t, double u, int p, double c_plus, double c_minus, int q) const;
    // definite kind: k-th derivative at t
    double derivative1(double t, int k) const { return derivative(t, 0.0, k, 0); }

    // exact d_plus^a d_minus^b at the origin (cutoff is 1 there)
    ExactScalar origin_derivative(int a, int b) const;

    // S(r,s) = script_S(r^2, s^2)
    double S(double r, double s) const { return value(r * r, s * s); }

private:
    static SphericalMean build(const AmplitudeSpec& f, const LocalModel* model);
    double poly_derivative(double t, double u, int a, int b) const;
    int n_plus_ = 0, n_minus_ = 0, pi_power_ = 0;
    Bump bump_;
    std::map<std::pair<int, int>, Rational> coeff_;
};

double spherical_mean(const AmplitudeSpec& f, double r, double s);
// (d_-)^dm (d_+)^dp script_S(t,u)
double script_S_eval(const SphericalMean& mean, double t, double u, int d_minus_pow, int d_plus_pow);

// (2 n^{+-})^{-k} vol vol (Laplacian_{Q,+-})^k f(0) from the Hessian block, exact.
ExactScalar script_S_derivatives_at_origin(const AmplitudeSpec& f, const LocalModel& model, int k, int sign);
// vol(S^{d-1}) (2d)^{-k} (Laplacian_Q)^k f(0), exact.
ExactScalar script_S_definite_derivatives(const AmplitudeSpec& f, const LocalModel& model, int k);
// Same quantities with the sphere-mean (Pizzetti) normalization prod_{i<k} 2(n+2i),
// which agrees with the two functions above for k <= 1.
ExactScalar script_S_derivatives_at_origin_pizzetti(const AmplitudeSpec& f, const LocalModel& model, int k, int sign);
ExactScalar script_S_definite_derivatives_pizzetti(const AmplitudeSpec& f, const LocalModel& model, int k);

// Product quadrature on S^{n-1} exact for polynomials of total degree <= degree.
struct SphereRule {
    int n = 0;
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;
    static SphereRule make(int n, int degree);
};

// int int g(r theta+, s theta-) by product sphere quadrature
double sphere_product_integral(const std::function<double(const std::vector<double>&)>& g, const SphereRule& plus,
                               const SphereRule& minus, double r, double s);

}  // namespace witten

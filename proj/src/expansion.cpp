#include "witten/expansion.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "witten/coefficients.hpp"
#include "witten/quadrature.hpp"

namespace witten {

namespace {

constexpr double kQuadTol = 1e-13;
constexpr double kQuadAbsTol = 1e-13;

// eps -> 2 eps and the Jacobian of the weight rescaling
Rational rescale_factor(const LocalModel& model, int j) { return pow2(j + 1) / Rational(model.Lambda()); }

// d_-^p (d_- - d_+)^q S at the origin (dir = +1), or (-d_+)^p (d_- - d_+)^q S (dir = -1)
ExactScalar origin_mixed(const SphericalMean& mean, int dir, int p, int q) {
    ExactScalar s;
    for (int r = 0; r <= q; ++r) {
        Rational c = binomial(q, r) * sign_pow(q - r);
        if (dir == 1)
            s += mean.origin_derivative(q - r, p + r) * c;
        else
            s += mean.origin_derivative(p + q - r, r) * (c * sign_pow(p));
    }
    return s;
}

class CTables {
public:
    explicit CTables(int m_max) : m_max_(m_max) {}
    const CTable& operator()(int N) {
        auto it = cache_.find(N);
        if (it == cache_.end()) it = cache_.emplace(N, CTable(N, m_max_)).first;
        return it->second;
    }

private:
    int m_max_;
    std::map<int, CTable> cache_;
};

// int_lo^support t^N g(t) dt
QuadResult t_integral(const SphericalMean& mean, double lo, const std::function<double(double)>& g) {
    double hi = mean.support_sq();
    if (lo >= hi) return {};
    std::vector<double> breaks;
    double r0sq = mean.bump().r0 * mean.bump().r0;
    if (r0sq > lo && r0sq < hi) breaks.push_back(r0sq);
    return integrate(g, lo, hi, breaks, kQuadTol, kQuadAbsTol);
}

void attach_values(Coefficient& c, const SchwartzSpec& sigma) {
    c.regular_part = c.regular_weight * sigma_deriv_at_zero(sigma, c.j);
    for (auto& s : c.singular_part) s.value = s.weight * sigma_functional(sigma, s.functional, c.j);
}

SingularTerm singular(SigmaFunctional fn, const ExactScalar& w) {
    SingularTerm s;
    s.functional = fn;
    s.exact_weight = w;
    s.weight = w.to_complex();
    return s;
}

void require_indefinite(const LocalModel& model) {
    model.validate();
    if (model.definite()) throw std::domain_error("expand_indefinite: model is definite");
}

}  // namespace

std::complex<double> Coefficient::total() const {
    std::complex<double> s = regular_part;
    for (const auto& t : singular_part) s += t.value;
    return s;
}

std::complex<double> ExpansionResult::partial_sum(double eps, int M) const {
    std::complex<double> s = 0.0;
    for (const auto& c : coefficients)
        if (M < 0 || c.j <= M) s += std::pow(eps, c.j + epsilon_prefactor_order) * c.total();
    return s;
}

const char* functional_tag(SigmaFunctional f) {
    switch (f) {
        case SigmaFunctional::Full: return "sigma";
        case SigmaFunctional::BracketPlus: return "sigma_plus";
        case SigmaFunctional::BracketMinus: return "sigma_minus";
    }
    return "?";
}

void ExpansionResult::write_csv(std::ostream& os) const {
    auto row = [&](int j, const char* tag, std::complex<double> z) {
        os << j << ',' << tag << ',' << z.real() << ',' << z.imag() << '\n';
    };
    auto old = os.precision(17);
    os << "j,functional,re,im\n";
    for (const auto& c : coefficients) {
        row(c.j, functional_tag(SigmaFunctional::Full), c.regular_weight);
        for (const auto& s : c.singular_part) row(c.j, functional_tag(s.functional), s.weight);
        row(c.j, "total", c.total());
    }
    os.precision(old);
}

int leading_order(const LocalModel& model, double zeta_F) {
    model.validate();
    if (!model.definite()) return 1;
    if (zeta_F == 0.0) return model.codim() / 2;
    return model.s_F() * zeta_F > 0 ? 1 : ExpansionResult::kEmpty;
}

ExpansionResult expand_indefinite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                  double zeta_F, int M, const ExpansionOptions& opt) {
    require_indefinite(model);
    if (M < 0) throw std::domain_error("expand_indefinite: negative order");
    const int Lp = model.n_plus() / 2, Lm = model.n_minus() / 2, L = Lp + Lm - 2;
    const double zeta = 2.0 * zeta_F;
    auto mean = SphericalMean::of_model(f, model);
    CTables tables(M + L + 2);

    ExpansionResult res;
    res.leading_order = leading_order(model, zeta_F);
    for (int j = 0; j <= M; ++j) {
        Coefficient c;
        c.j = j;
        std::complex<double> acc = 0.0;
        double err = 0.0;
        if (zeta == 0.0) {
            for (int l = 0; l <= std::min(j, L); ++l) {
                auto q = t_integral(mean, 0.0, [&](double t) {
                    return std::pow(t, L - l) * mean.diff_power(t / 2, t / 2, j - l);
                });
                std::complex<double> w = c_jkl(Lp, Lm, j, 0, l).to_complex();
                acc += w * q.value;
                err += std::abs(w) * q.error;
            }
            if (j >= L + 1) {
                ExactScalar wp, wm;
                for (int p = 0; p <= j - L - 1; ++p) {
                    int q = j - L - 1 - p;
                    wp += c_pm_j0pq(Lp, Lm, 1, j, p, q) * origin_mixed(mean, 1, p, q);
                    wm += c_pm_j0pq(Lp, Lm, -1, j, p, q) * origin_mixed(mean, -1, p, q);
                }
                Rational P = rescale_factor(model, j);
                c.singular_part.push_back(singular(SigmaFunctional::BracketPlus, wp * P));
                c.singular_part.push_back(singular(SigmaFunctional::BracketMinus, wm * P));
            }
        } else {
            const int s = zeta > 0 ? 1 : -1;
            const double az = std::abs(zeta);
            // boundary point and the derivative along the axis it sits on
            const double bt = s > 0 ? az : 0.0, bu = s > 0 ? 0.0 : az;
            const double cp = s > 0 ? -1.0 : 0.0, cm = s > 0 ? 0.0 : 1.0;
            for (int k = 0; k <= L; ++k)
                for (int l = k; l <= std::min(k + j, L); ++l) {
                    const int r = j - l + k;
                    std::complex<double> w = c_jkl(Lp, Lm, j, k, l).to_complex();
                    auto q = t_integral(mean, az, [&](double t) {
                        return std::pow(t, L - l) * mean.diff_power((t + zeta) / 2, (t - zeta) / 2, r);
                    });
                    double inner = std::pow(zeta, k) * q.value;
                    err += std::abs(w) * std::pow(az, k) * q.error;
                    const CTable& C = tables(L - l);
                    double bsum = 0.0;
                    for (int m = L - j + 1; m <= L - l + k; ++m) {
                        int sgn = s > 0 ? 1 : sign_pow(L - l - m + k + 1);
                        if (s < 0 && !opt.literal_negative_zeta_sign) sgn *= sign_pow(k);
                        double part = 0.0;
                        for (int p = 0; p <= m + j - L - 1; ++p) {
                            int qq = m + j - L - 1 - p;
                            const Rational& cc = C(r, p, qq);
                            if (cc == 0) continue;
                            part += cc.get_d() * mean.mixed(bt, bu, p, cp, cm, qq);
                        }
                        bsum += sgn * std::pow(az, std::max(k, m)) * part;
                    }
                    // c_jkl carries 2^{-r}, which only the interior term has
                    inner += std::ldexp(bsum, r);
                    acc += w * inner;
                }
        }
        double P = rescale_factor(model, j).get_d();
        c.regular_weight = P * acc;
        c.quad_error = P * err;
        attach_values(c, sigma);
        res.coefficients.push_back(std::move(c));
    }
    return res;
}

ExpansionResult expand_definite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                double zeta_F, int M) {
    model.validate();
    if (!model.definite()) throw std::domain_error("expand_definite: model is indefinite");
    if (M < 0) throw std::domain_error("expand_definite: negative order");
    const int L = model.codim() / 2;
    const int s = model.s_F();
    const double zeta = 2.0 * zeta_F;
    auto mean = SphericalMean::of_model(f, model);

    ExpansionResult res;
    res.leading_order = leading_order(model, zeta_F);
    for (int j = 0; j <= M; ++j) {
        Coefficient c;
        c.j = j;
        Rational P = rescale_factor(model, j);
        if (zeta == 0.0) {
            if (j >= L - 1) {
                ExactScalar w = c_def_jk(L, j, 0) * mean.origin_derivative(j + 1 - L, 0) * (P * sign_pow(s < 0 ? j : 0));
                c.singular_part.push_back(
                    singular(s > 0 ? SigmaFunctional::BracketMinus : SigmaFunctional::BracketPlus, w));
            }
        } else if (s * zeta > 0) {
            std::complex<double> acc = 0.0;
            for (int k = std::max(0, L - 1 - j); k <= L - 1; ++k) {
                int sg = s > 0 ? 1 : sign_pow(j + k);
                acc += c_def_jk(L, j, k).to_complex() * (sg * std::pow(zeta, k) * mean.derivative1(s * zeta, j + k + 1 - L));
            }
            c.regular_weight = P.get_d() * acc;
        }
        attach_values(c, sigma);
        res.coefficients.push_back(std::move(c));
    }
    return res;
}

ExpansionResult expand(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                       int M, const ExpansionOptions& opt) {
    model.validate();
    return model.definite() ? expand_definite(model, f, sigma, zeta_F, M)
                            : expand_indefinite(model, f, sigma, zeta_F, M, opt);
}

std::complex<double> one_sided_limits(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, int j,
                                      int side, double zeta_F) {
    if (side != 1 && side != -1) throw std::domain_error("one_sided_limits: side must be +1 or -1");
    if (j < 0) throw std::domain_error("one_sided_limits: negative order");
    auto r = expand(model, f, sigma, zeta_F, j);
    const Coefficient& c = r.coefficients.back();
    if (zeta_F != 0.0) return c.total();
    // approaching from above picks the boundary terms of sigma_-, from below those of sigma_+,
    // now paired with the full derivative
    SigmaFunctional kept = side > 0 ? SigmaFunctional::BracketMinus : SigmaFunctional::BracketPlus;
    std::complex<double> v = c.regular_part;
    for (const auto& s : c.singular_part)
        if (s.functional == kept) v += s.weight * sigma_deriv_at_zero(sigma, j);
    return v;
}

std::pair<ExactScalar, ExactScalar> leading_singular_weights(const LocalModel& model, const AmplitudeSpec& f) {
    model.validate();
    int jF = model.codim() / 2 - 1;
    SchwartzSpec unit{{Rational(1)}, 1.0};
    auto r = expand(model, f, unit, 0.0, jF);
    ExactScalar wp, wm;
    for (const auto& s : r.coefficients.back().singular_part) {
        if (s.functional == SigmaFunctional::BracketPlus) wp = *s.exact_weight;
        if (s.functional == SigmaFunctional::BracketMinus) wm = *s.exact_weight;
    }
    return {wp, wm};
}

}  // namespace witten

#include "witten/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "witten/coefficients.hpp"
#include "witten/expansion.hpp"
#include "witten/quadrature.hpp"
#include "witten/taylor_kernel.hpp"

namespace witten {

namespace {

// sigma-hat is below e^{-700} relative beyond this many widths
constexpr double kGaussCut = 38.0;
// longest fixed panel of the inner rule
constexpr double kPanel = 0.25;
using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;

double support_sq(const AmplitudeSpec& f, const OracleConfig& cfg) {
    double r = cfg.truncation_radius > 0.0 ? cfg.truncation_radius : f.bump.r1;
    return r * r;
}

void check_eps(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("oracle: epsilon must be positive");
}

// points c + k w for the listed k that fall strictly inside (lo, hi)
void add_band(std::vector<double>& out, double c, double w, double lo, double hi) {
    for (double k : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0})
        for (double s : {1.0, -1.0}) {
            double x = c + s * k * w;
            if (x > lo && x < hi) out.push_back(x);
        }
}

}  // namespace

const char* method_name(OracleMethod m) { return m == OracleMethod::Reduced2d ? "reduced-2d" : "split-1d"; }

OracleMethod parse_method(const std::string& s) {
    if (s == "reduced-2d") return OracleMethod::Reduced2d;
    if (s == "split-1d") return OracleMethod::Split1d;
    throw std::invalid_argument("unknown oracle method '" + s + "'");
}

std::vector<double> OracleConfig::default_grid() { return geometric_grid(0.125, 0.5, 10); }

std::vector<double> OracleConfig::geometric_grid(double first, double ratio, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(first * std::pow(ratio, i));
    return g;
}

void OracleConfig::validate() const {
    if (epsilon_grid.size() < 2) throw std::invalid_argument("oracle: epsilon grid needs at least two points");
    for (double e : epsilon_grid)
        if (!(e > 0.0)) throw std::invalid_argument("oracle: epsilon grid must be positive");
    double q = epsilon_grid[1] / epsilon_grid[0];
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("oracle: epsilon grid must decrease");
    for (size_t i = 1; i < epsilon_grid.size(); ++i)
        if (std::abs(epsilon_grid[i] / epsilon_grid[i - 1] - q) > 1e-9 * q)
            throw std::invalid_argument("oracle: epsilon grid must be geometric");
    if (!(quadrature_tol > 0.0)) throw std::invalid_argument("oracle: quadrature_tol must be positive");
    if (truncation_radius < 0.0) throw std::invalid_argument("oracle: truncation_radius must be nonnegative");
}

namespace {

// (1/(4 Lambda)) int int T^{L+-1} U^{L--1} S(T,U) sigma-hat(-(T-U-2 zeta_F)/(2 eps)) dT dU,
// i.e. the (r,s) integral after T = r^2, U = s^2.
OracleValue reduced_2d(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                       double eps, const OracleConfig& cfg) {
    const int Lp = model.n_plus() / 2, Lm = model.n_minus() / 2;
    const double R = support_sq(f, cfg);
    const double r0sq = f.bump.r0 * f.bump.r0;
    const double w = 2.0 * eps * sigma.tau;  // band width in T
    auto mean = SphericalMean::of_model(f, model);
    double inner_err = 0.0;

    // Fixed panels tied to the band keep the inner value smooth in U, which the outer
    // adaptive rule needs; an adaptive inner rule would feed it jitter.
    auto inner = [&](double U) {
        double c = U + 2.0 * zeta_F;
        double lo = std::max(0.0, c - kGaussCut * w), hi = std::min(R - U, c + kGaussCut * w);
        if (!(hi > lo)) return 0.0;
        std::vector<double> pts{lo, hi};
        add_band(pts, c, w, lo, hi);
        if (r0sq - U > lo && r0sq - U < hi) pts.push_back(r0sq - U);
        std::sort(pts.begin(), pts.end());
        double uw = std::pow(U, Lm - 1);
        auto g = [&](double T) {
            return std::pow(T, Lp - 1) * uw * mean.value(T, U) * sigma.hat(-(T - U - 2.0 * zeta_F) / (2.0 * eps));
        };
        double sum = 0.0, err = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            int pieces = std::max(1, static_cast<int>(std::ceil((pts[i + 1] - pts[i]) / kPanel)));
            double h = (pts[i + 1] - pts[i]) / pieces;
            for (int k = 0; k < pieces; ++k) {
                double e = 0.0;
                sum += GK31::integrate(g, pts[i] + k * h, pts[i] + (k + 1) * h, 0, 0.0, &e);
                err += e;
            }
        }
        inner_err = std::max(inner_err, err);
        return sum;
    };
    std::vector<double> br;
    double ustar = std::max(0.0, -2.0 * zeta_F);
    add_band(br, ustar, w, 0.0, R);
    auto q = integrate(inner, 0.0, R, br, cfg.quadrature_tol, 1e-300);
    double scale = 1.0 / (4.0 * static_cast<double>(model.Lambda()));
    return {q.value * scale, (q.error + R * inner_err) * scale};
}

// 2^{-3-L} e sum_l c_l [int_{zeta/e}^inf sigma-hat(u)(e u - zeta)^l F^+(e u) du
//                       + int_{-inf}^{zeta/e} sigma-hat(u)(e u - zeta)^l F^-(e u) du] / Lambda
// with zeta = 2 zeta_F and e = 2 eps.
OracleValue split_1d(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                     double eps, const OracleConfig& cfg) {
    const int Lp = model.n_plus() / 2, Lm = model.n_minus() / 2, L = Lp + Lm - 2;
    const double zeta = 2.0 * zeta_F, e = 2.0 * eps;
    const double R = support_sq(f, cfg);
    const double r0sq = f.bump.r0 * f.bump.r0;
    const double U = kGaussCut * sigma.tau;
    auto mean = SphericalMean::of_model(f, model);
    std::vector<FKernel> plus, minus;
    std::vector<double> cl;
    for (int l = 0; l <= L; ++l) {
        plus.emplace_back(1, L - l, zeta, mean, 1);
        minus.emplace_back(-1, L - l, zeta, mean, 1);
        cl.push_back(c_l(Lp, Lm, l).get_d());
    }
    auto part = [&](const std::vector<FKernel>& ks, double a, double b, std::vector<double> br) -> QuadResult {
        if (!(b > a)) return {};
        br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return !(x > a && x < b); }), br.end());
        return integrate(
            [&](double u) {
                double s = 0.0, base = e * u - zeta;
                for (int l = 0; l <= L; ++l) s += cl[static_cast<size_t>(l)] * std::pow(base, l) * F_eval(ks[static_cast<size_t>(l)], e * u);
                return sigma.hat(u) * s;
            },
            a, b, br, cfg.quadrature_tol, 1e-300);
    };
    double split = zeta / e;
    std::vector<double> br{0.0, (zeta + r0sq) / e, (zeta + R) / e, (zeta - r0sq) / e, (zeta - R) / e};
    auto qp = part(plus, std::max(split, -U), U, br);
    auto qm = part(minus, -U, std::min(split, U), br);
    double scale = std::pow(2.0, -3 - L) * e / static_cast<double>(model.Lambda());
    return {(qp.value + qm.value) * scale, (qp.error + qm.error) * scale};
}

}  // namespace

OracleValue eval_integral_indefinite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                     double zeta_F, double eps, const OracleConfig& cfg) {
    model.validate();
    if (model.definite()) throw std::domain_error("eval_integral_indefinite: model is definite");
    check_eps(eps);
    return cfg.method == OracleMethod::Reduced2d ? reduced_2d(model, f, sigma, zeta_F, eps, cfg)
                                                 : split_1d(model, f, sigma, zeta_F, eps, cfg);
}

OracleValue eval_integral_definite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                   double zeta_F, double eps, const OracleConfig& cfg) {
    model.validate();
    if (!model.definite()) throw std::domain_error("eval_integral_definite: model is indefinite");
    check_eps(eps);
    // (1/(2 Lambda)) int T^{L-1} S(T) sigma-hat(-(s T - 2 zeta_F)/(2 eps)) dT
    const int L = model.codim() / 2, s = model.s_F();
    const double R = support_sq(f, cfg);
    const double r0sq = f.bump.r0 * f.bump.r0;
    const double scale = 1.0 / (2.0 * static_cast<double>(model.Lambda()));
    auto mean = SphericalMean::of_model(f, model);
    auto radial = [&](double T) { return std::pow(T, L - 1) * mean.value(T, 0.0); };

    if (cfg.method == OracleMethod::Split1d) {
        // in the sigma-hat variable u, T = s (2 zeta_F - 2 eps u)
        const double zeta = 2.0 * zeta_F, e = 2.0 * eps, U = kGaussCut * sigma.tau;
        double lo = s > 0 ? (zeta - R) / e : zeta / e;
        double hi = s > 0 ? zeta / e : (zeta + R) / e;
        lo = std::max(lo, -U);
        hi = std::min(hi, U);
        if (!(hi > lo)) return {};
        std::vector<double> br;
        add_band(br, 0.0, sigma.tau, lo, hi);
        double u0 = (zeta - s * r0sq) / e;
        if (u0 > lo && u0 < hi) br.push_back(u0);
        auto q = integrate([&](double u) { return radial(s * (zeta - e * u)) * sigma.hat(u); }, lo, hi, br,
                           cfg.quadrature_tol, 1e-300);
        return {q.value * scale * e, q.error * scale * e};
    }

    const double w = 2.0 * eps * sigma.tau;
    double c = s * 2.0 * zeta_F;
    double lo = std::max(0.0, c - kGaussCut * w), hi = std::min(R, c + kGaussCut * w);
    if (!(hi > lo)) return {};
    std::vector<double> br;
    add_band(br, c, w, lo, hi);
    if (r0sq > lo && r0sq < hi) br.push_back(r0sq);
    auto q = integrate([&](double T) { return radial(T) * sigma.hat(-(s * T - 2.0 * zeta_F) / (2.0 * eps)); }, lo, hi,
                       br, cfg.quadrature_tol, 1e-300);
    return {q.value * scale, q.error * scale};
}

OracleValue eval_integral(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                          double eps, const OracleConfig& cfg) {
    model.validate();
    return model.definite() ? eval_integral_definite(model, f, sigma, zeta_F, eps, cfg)
                            : eval_integral_indefinite(model, f, sigma, zeta_F, eps, cfg);
}

std::vector<Sample> sample_grid(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                double zeta_F, const OracleConfig& cfg, int jobs) {
    cfg.validate();
    std::vector<Sample> out(cfg.epsilon_grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < out.size(); i = next++) {
            out[i].epsilon = cfg.epsilon_grid[i];
            out[i].value = eval_integral(model, f, sigma, zeta_F, cfg.epsilon_grid[i], cfg);
        }
    };
    int n = std::clamp(jobs, 1, static_cast<int>(out.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

void write_samples_csv(std::ostream& os, const std::vector<Sample>& samples, OracleMethod method) {
    auto old = os.precision(17);
    os << "epsilon,re,im,method\n";
    for (const auto& s : samples)
        os << s.epsilon << ',' << s.value.value.real() << ',' << s.value.value.imag() << ',' << method_name(method) << '\n';
    os.precision(old);
}

FitResult extract_coefficients(const std::vector<std::pair<double, std::complex<double>>>& values, int j_max,
                               double max_condition) {
    if (j_max < 0) throw std::domain_error("extract_coefficients: negative order");
    const int n = static_cast<int>(values.size()), k = j_max + 1;
    if (n < j_max + 3) throw FitError("extract_coefficients: need at least j_max + 3 points", 0.0);
    Eigen::MatrixXd V(n, k);
    Eigen::MatrixXd rhs(n, 2);
    for (int i = 0; i < n; ++i) {
        double e = values[static_cast<size_t>(i)].first;
        if (!(e > 0.0)) throw std::domain_error("extract_coefficients: epsilon must be positive");
        for (int j = 0; j < k; ++j) V(i, j) = std::pow(e, j + 1);
        rhs(i, 0) = values[static_cast<size_t>(i)].second.real();
        rhs(i, 1) = values[static_cast<size_t>(i)].second.imag();
    }
    Eigen::VectorXd colscale = V.colwise().norm().transpose();
    for (int j = 0; j < k; ++j) V.col(j) /= colscale(j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(cond <= max_condition))
        throw FitError("extract_coefficients: ill-conditioned system, condition " + std::to_string(cond), cond);
    Eigen::MatrixXd x = svd.solve(rhs);
    FitResult r;
    r.condition = cond;
    for (int j = 0; j < k; ++j) r.coefficients.emplace_back(x(j, 0) / colscale(j), x(j, 1) / colscale(j));
    Eigen::MatrixXd res = V * x - rhs;
    r.residual = res.cwiseAbs().maxCoeff();
    return r;
}

FitResult fit_samples(const std::vector<Sample>& samples, int j_max, int max_points) {
    std::vector<std::pair<double, std::complex<double>>> v;
    for (const auto& s : samples)
        if (std::abs(s.value.value) > 10.0 * s.value.error) v.emplace_back(s.epsilon, s.value.value);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (static_cast<int>(v.size()) > max_points) v.resize(static_cast<size_t>(max_points));
    return extract_coefficients(v, j_max);
}

SlopeResult remainder_slope(const std::vector<Sample>& samples, const std::vector<std::complex<double>>& partial_sums) {
    if (samples.size() != partial_sums.size()) throw std::invalid_argument("remainder_slope: size mismatch");
    SlopeResult r;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        double rem = std::abs(s.value.value - partial_sums[i]);
        // quadrature estimate plus the rounding left in the integral itself
        double floor = 10.0 * s.value.error + 1e-13 * std::abs(s.value.value) + 1e-300;
        r.remainders.emplace_back(s.epsilon, rem);
        r.above_floor.push_back(rem > floor);
    }
    // smallest six eps above the floor
    std::vector<size_t> idx;
    for (size_t i = 0; i < samples.size(); ++i)
        if (r.above_floor[i]) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return samples[a].epsilon < samples[b].epsilon; });
    if (idx.size() > 6) idx.resize(6);
    r.points_used = static_cast<int>(idx.size());
    if (idx.size() < 3) {
        r.floor_limited = true;
        return r;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = static_cast<double>(idx.size());
    for (size_t i : idx) {
        double x = std::log(r.remainders[i].first), y = std::log(r.remainders[i].second);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return r;
}

SlopeResult remainder_slope(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                            int M, const OracleConfig& cfg, int jobs) {
    auto samples = sample_grid(model, f, sigma, zeta_F, cfg, jobs);
    auto ex = expand(model, f, sigma, zeta_F, M);
    std::vector<std::complex<double>> ps;
    for (const auto& s : samples) ps.push_back(ex.partial_sum(s.epsilon));
    return remainder_slope(samples, ps);
}

}  // namespace witten

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "test_support.hpp"
#include "witten/expansion.hpp"
#include "witten/oracle.hpp"

using namespace witten;
using testsupport::make_amplitude;

namespace {

SchwartzSpec skewed() { return SchwartzSpec{{Rational(1), Rational(1)}, 1.0}; }

// high enough degree that the expansion does not terminate before j = 4
AmplitudeSpec rich_amplitude(const LocalModel& model, unsigned seed) {
    std::mt19937 g(seed);
    return make_amplitude(model.n_plus(), model.n_minus(), testsupport::random_poly(g, model.codim(), 10, 12));
}

OracleConfig with(OracleMethod m) {
    OracleConfig c;
    c.method = m;
    return c;
}

}  // namespace

TEST_CASE("argument checks") {
    auto ind = LocalModel::make({1, -1});
    auto def = LocalModel::make({1, 2});
    auto f = testsupport::unit_amplitude(2, 2);
    CHECK_THROWS_AS(eval_integral_indefinite(ind, f, skewed(), 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(eval_integral_indefinite(def, testsupport::unit_amplitude(4, 0), skewed(), 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(eval_integral_definite(ind, f, skewed(), 0.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(eval_integral_definite(def, testsupport::unit_amplitude(4, 0), skewed(), 0.0, -1.0), std::domain_error);
    OracleConfig bad;
    bad.epsilon_grid = {0.1, 0.05, 0.01};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.epsilon_grid = {0.1, 0.2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_NOTHROW(OracleConfig{}.validate());
    CHECK(parse_method("split-1d") == OracleMethod::Split1d);
    CHECK_THROWS_AS(parse_method("monte-carlo"), std::invalid_argument);
}

TEST_CASE("support away from the quadric band") {
    auto model = LocalModel::make({1, -1});
    auto f = testsupport::unit_amplitude(2, 2);
    // 2 zeta_F = 10 exceeds every T - U on the support
    for (auto m : {OracleMethod::Reduced2d, OracleMethod::Split1d})
        CHECK(std::abs(eval_integral(model, f, skewed(), 5.0, 0.01, with(m)).value) < 1e-30);
}

TEST_CASE("two evaluation paths agree") {
    for (auto w : {std::vector<int>{1, -1}, std::vector<int>{2, -3}, std::vector<int>{1, 2, -1}, std::vector<int>{1, -1, -1}}) {
        auto model = LocalModel::make(w);
        auto f = rich_amplitude(model, 2);
        for (double z : {-0.5, 0.0, 0.5})
            for (double eps : {0.125, 1.0 / 256, 1.0 / 4096}) {
                auto a = eval_integral(model, f, skewed(), z, eps, with(OracleMethod::Reduced2d)).value;
                auto b = eval_integral(model, f, skewed(), z, eps, with(OracleMethod::Split1d)).value;
                CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
            }
    }
}

TEST_CASE("small eps approaches the leading coefficient") {
    auto model = LocalModel::make({1, -1});
    auto f = rich_amplitude(model, 3);
    double eps = 1.0 / 4096;
    auto I = eval_integral(model, f, skewed(), 0.0, eps).value;
    auto A0 = expand(model, f, skewed(), 0.0, 0).coefficients[0].total();
    CHECK(std::abs(I / eps - A0) <= 1e-2 * std::abs(A0));
}

TEST_CASE("definite model") {
    SUBCASE("wrong sign decays faster than any power") {
        auto model = LocalModel::make({1, 2});
        auto f = testsupport::unit_amplitude(4, 0);
        CHECK(std::abs(eval_integral(model, f, skewed(), -0.5, 1.0 / 32).value) < 1e-40);
        auto neg = LocalModel::make({-1});
        CHECK(std::abs(eval_integral(neg, testsupport::unit_amplitude(0, 2), skewed(), 0.5, 1.0 / 32).value) < 1e-40);
    }
    SUBCASE("log-log slope at zeta = 0 is codim / 2") {
        for (auto w : {std::vector<int>{1}, std::vector<int>{1, 2}, std::vector<int>{-3}, std::vector<int>{-1, -1}}) {
            auto model = LocalModel::make(w);
            auto f = testsupport::unit_amplitude(model.s_F() > 0 ? model.codim() : 0, model.s_F() > 0 ? 0 : model.codim());
            double e1 = 1.0 / 2048, e2 = 1.0 / 4096;
            double i1 = std::abs(eval_integral(model, f, skewed(), 0.0, e1).value);
            double i2 = std::abs(eval_integral(model, f, skewed(), 0.0, e2).value);
            double slope = std::log(i1 / i2) / std::log(e1 / e2);
            CHECK(std::abs(slope - model.codim() / 2.0) <= 0.15);
        }
    }
}

TEST_CASE("coefficient extraction") {
    std::vector<std::complex<double>> a{{1.5, 0.0}, {-2.0, 0.5}, {0.25, -1.0}, {3.0, 0.0}};
    auto grid = OracleConfig::geometric_grid(0.125, 0.5, 8);
    auto synth = [&](double extra) {
        std::vector<std::pair<double, std::complex<double>>> v;
        for (double e : grid) {
            std::complex<double> s = extra * std::pow(e, 5);
            for (size_t j = 0; j < a.size(); ++j) s += std::pow(e, j + 1) * a[j];
            v.emplace_back(e, s);
        }
        return v;
    };
    SUBCASE("exact data is recovered") {
        auto r = extract_coefficients(synth(0.0), 3);
        for (size_t j = 0; j < a.size(); ++j) CHECK(std::abs(r.coefficients[j] - a[j]) <= 1e-8 * std::max(1.0, std::abs(a[j])));
        CHECK(r.residual < 1e-12);
    }
    SUBCASE("an eps^{j_max+2} term shifts the fit linearly") {
        auto base = extract_coefficients(synth(0.0), 3);
        auto pert = extract_coefficients(synth(1.0), 3);
        // the shift is the fit of eps^5 alone, and it is bounded by the largest eps
        std::vector<std::pair<double, std::complex<double>>> only;
        for (double e : grid) only.emplace_back(e, std::pow(e, 5));
        auto s = extract_coefficients(only, 3);
        for (size_t j = 0; j < a.size(); ++j) {
            CHECK(std::abs(pert.coefficients[j] - base.coefficients[j] - s.coefficients[j]) <= 1e-8);
        }
        CHECK(std::abs(s.coefficients[3]) <= 4 * grid[0]);
    }
    SUBCASE("diagnostics") {
        auto v = synth(0.0);
        v.resize(4);
        CHECK_THROWS_AS(extract_coefficients(v, 3), FitError);
        std::vector<std::pair<double, std::complex<double>>> near;
        for (int i = 0; i < 8; ++i) near.emplace_back(0.1 * (1 + 1e-9 * i), 1.0);
        try {
            extract_coefficients(near, 3);
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.condition > 1e12);
        }
    }
    SUBCASE("oracle data for d = 4 at zeta = 0") {
        auto model = LocalModel::make({1, -1});
        auto f = rich_amplitude(model, 4);
        OracleConfig cfg;
        cfg.epsilon_grid = OracleConfig::geometric_grid(1.0 / 64, 0.5, 7);
        auto samples = sample_grid(model, f, skewed(), 0.0, cfg, 2);
        std::vector<std::pair<double, std::complex<double>>> v;
        for (const auto& s : samples) v.emplace_back(s.epsilon, s.value.value);
        auto r = extract_coefficients(v, 3);
        auto A0 = expand(model, f, skewed(), 0.0, 0).coefficients[0].total();
        CHECK(std::abs(r.coefficients[0] - A0) <= 1e-2 * std::abs(A0));
    }
}

TEST_CASE("remainder slopes") {
    auto model = LocalModel::make({1, -1});
    auto f = rich_amplitude(model, 5);
    auto sig = skewed();
    auto samples = sample_grid(model, f, sig, 0.0, OracleConfig{}, 4);
    auto slope = [&](int M) {
        auto ex = expand(model, f, sig, 0.0, M);
        std::vector<std::complex<double>> ps;
        for (const auto& s : samples) ps.push_back(ex.partial_sum(s.epsilon));
        return remainder_slope(samples, ps);
    };
    auto r0 = slope(0), r1 = slope(1);
    CHECK_FALSE(r0.floor_limited);
    CHECK(r0.slope >= 1.8);
    CHECK_FALSE(r1.floor_limited);
    CHECK(r1.slope >= 2.8);
    // far past the last nonzero coefficient nothing is left above the floor
    auto r9 = slope(9);
    CHECK(r9.floor_limited);
}

TEST_CASE("grid evaluation is deterministic across threads") {
    auto model = LocalModel::make({1, 2, -1});
    auto f = rich_amplitude(model, 6);
    OracleConfig cfg;
    cfg.epsilon_grid = OracleConfig::geometric_grid(0.1, 0.5, 5);
    auto a = sample_grid(model, f, skewed(), 0.25, cfg, 1);
    auto b = sample_grid(model, f, skewed(), 0.25, cfg, 4);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].epsilon == b[i].epsilon);
        CHECK(a[i].value.value == b[i].value.value);
    }
    std::ostringstream os;
    write_samples_csv(os, a, cfg.method);
    CHECK(os.str().rfind("epsilon,re,im,method\n", 0) == 0);
    CHECK(os.str().find(",reduced-2d\n") != std::string::npos);
}

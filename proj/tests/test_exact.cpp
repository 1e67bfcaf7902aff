#include <random>
#include <sstream>

#include "doctest.h"
#include "witten/coefficients.hpp"

using namespace witten;

namespace {

// coefficients of (t - w)^{a} (t + w)^{b} in powers of w, by repeated multiplication
std::vector<Rational> expand_product(int a, int b) {
    std::vector<Rational> p{1};
    auto mul = [&](int s) {
        std::vector<Rational> r(p.size() + 1, Rational(0));
        for (size_t k = 0; k < p.size(); ++k) {
            r[k] += p[k];
            r[k + 1] += s * p[k];
        }
        p = r;
    };
    for (int k = 0; k < a; ++k) mul(-1);
    for (int k = 0; k < b; ++k) mul(1);
    return p;
}

ExactScalar random_scalar(std::mt19937& g) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7), pw(-2, 3), ip(0, 3);
    ExactScalar x;
    for (int k = 0; k < 3; ++k) x += ExactScalar(Rational(num(g), den(g)), pw(g), ip(g));
    return x;
}

}  // namespace

TEST_CASE("exact scalar canonical form and ring laws") {
    ExactScalar i = ExactScalar::imag_unit();
    CHECK(i * i == ExactScalar(-1));
    CHECK(i.pow(4) == ExactScalar(1));
    CHECK(ExactScalar(Rational(3), 0, 2) == ExactScalar(-3));
    CHECK((i - i).is_zero());
    std::mt19937 g(7);
    for (int trial = 0; trial < 200; ++trial) {
        ExactScalar a = random_scalar(g), b = random_scalar(g), c = random_scalar(g);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("c_l matches polynomial expansion") {
    CHECK(c_l(1, 1, 0) == 1);
    CHECK(c_l(2, 1, 1) == -1);
    CHECK(c_l(3, 2, 5) == 0);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) {
            auto p = expand_product(a - 1, b - 1);
            for (int l = 0; l < static_cast<int>(p.size()); ++l) CHECK(c_l(a, b, l) == p[l]);
        }
}

TEST_CASE("C recursion closed forms") {
    for (int N = 0; N <= 8; ++N) {
        CTable C(N, 12);
        for (int m = 2; m <= 10; ++m) CHECK(C(m, m - 1, 0) == 1);
        CHECK(C(N + 1, 0, 0) == sign_pow(N) * factorial(N));
        for (int m = 1; m <= 10; ++m) CHECK(C(m, 0, m - 1) == pow2(1 - m));
        for (int m = 1; m <= N + 2; ++m)
            for (int p = 0; p < m; ++p)
                for (int q = 0; p + q < std::max(0, m - 1 - N); ++q) CHECK(C(m, p, q) == 0);
    }
}

TEST_CASE("c_jkl values") {
    CHECK(c_jkl(1, 1, 0, 0, 0) == ExactScalar(Rational(1, 4), 1, 0));
    CHECK(c_jkl(2, 1, 1, 0, 1) == ExactScalar(Rational(1, 8), 1, 1));
    for (int L = 0; L <= 4; ++L) CHECK(c_jkl(L + 1, 1, 0, 0, 0) == ExactScalar(pow2(-2 - L), 1, 0));
    CHECK_THROWS(c_jkl(1, 1, 0, 1, 0));
}

TEST_CASE("c_pm leading value equals closed form") {
    CHECK(c_pm_j0pq(1, 1, 1, 1, 0, 0) == ExactScalar(Rational(1, 4), 1, 1));
    CHECK(c_pm_j0pq(1, 1, -1, 1, 0, 0) == ExactScalar(Rational(-1, 4), 1, 1));
    for (int Lp = 1; Lp <= 7; ++Lp)
        for (int Lm = 1; Lp + Lm - 2 <= 6; ++Lm)
            for (int s : {1, -1}) {
                int L = Lp + Lm - 2;
                CHECK(c_pm_j0pq(Lp, Lm, s, L + 1, 0, 0) == c_pm_leading_closed_form(Lp, Lm, s));
            }
    CHECK_THROWS(c_pm_j0pq(2, 2, 1, 2, 0, 0));
}

TEST_CASE("c_pm symmetry under block swap") {
    for (int Lp = 1; Lp <= 4; ++Lp)
        for (int Lm = 1; Lm <= 4; ++Lm) {
            int L = Lp + Lm - 2;
            for (int j = L + 1; j <= L + 4; ++j)
                for (int p = 0; p <= j - L - 1; ++p)
                    for (int s : {1, -1}) {
                        int q = j - L - 1 - p;
                        CHECK(c_pm_j0pq(Lm, Lp, -s, j, p, q) == c_pm_j0pq(Lp, Lm, s, j, p, q) * Rational(sign_pow(L + 1)));
                    }
        }
}

TEST_CASE("N_pm raw and simplified forms") {
    CHECK(N_pm(2, 2, 1) == 1);
    CHECK(N_pm(2, 2, -1) == -1);
    CHECK(N_pm(4, 2, 1) == 1);
    CHECK(N_pm(4, 2, -1) == -3);
    for (int np = 2; np <= 12; np += 2)
        for (int nm = 2; nm <= 12; nm += 2) {
            for (int s : {1, -1}) {
                CHECK(N_pm_raw(np, nm, s) == Rational(N_pm(np, nm, s)));
                CHECK(N_pm(np, nm, s) != 0);
            }
            CHECK(N_pm(np, nm, 1) != N_pm(np, nm, -1));
        }
    CHECK_THROWS(N_pm(3, 2, 1));
    CHECK_THROWS(N_pm(0, 2, 1));
}

TEST_CASE("leading constants") {
    auto d2 = LocalModel::make({3});
    CHECK(leading_constants(d2).C_F == ExactScalar(Rational(4, 3), 2, 0));
    auto d4 = LocalModel::make({1, -1});
    auto lc = leading_constants(d4);
    CHECK(lc.D_plus == ExactScalar(Rational(4), 3, 1));
    CHECK(lc.D_minus == ExactScalar(Rational(-4), 3, 1));
    CHECK(LocalModel::make({2, -3}).Lambda() == 6);
    // definite: 2^{d/2-1} C_F equals (2pi)^2 (2 pi i)^{d/2-1} / (Lambda (d/2-1)!)
    auto d6 = LocalModel::make({1, 2, 1});
    ExactScalar expect = ExactScalar(Rational(4, 2 * 2), 2, 0) * ExactScalar(Rational(2), 1, 1).pow(2);
    CHECK(leading_constants(d6).D_plus == expect);
}

TEST_CASE("Pinelis identity") {
    CHECK(pinelis_identity_check(0, 0));
    CHECK(pinelis_identity_check(1, 0));
    for (int p = 0; p <= 10; ++p)
        for (int q = 0; q <= 10; ++q) CHECK(pinelis_identity_check(p, q));
}

TEST_CASE("coefficient table round trip") {
    CoeffTable t = CoeffTable::build(2, 1, 4);
    std::stringstream ss;
    t.write(ss);
    CoeffTable u = CoeffTable::read(ss);
    CHECK(u == t);
    bool found = false;
    for (const auto& e : t.entries)
        if (e.name == "c_jkl" && e.indices == std::vector<int>{1, 0, 1}) {
            found = true;
            CHECK(e.q == Rational(1, 8));
            CHECK(e.pi_power == 1);
            CHECK(e.i_power == 1);
        }
    CHECK(found);
}

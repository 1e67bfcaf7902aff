#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "witten/exact.hpp"
#include "witten/model.hpp"

namespace witten {

// Signed binomial convolution coefficient of (t-w)^{L+-1}(t+w)^{L--1}.
Rational c_l(int L_plus, int L_minus, int l);

// Boundary coefficients of the m-th derivative of F^{+-}_N.
class CTable {
public:
    CTable(int N, int m_max);
    int N() const { return N_; }
    int m_max() const { return m_max_; }
    // Zero outside the stored range.
    const Rational& operator()(int m, int p, int q) const;

private:
    int N_, m_max_;
    std::map<std::tuple<int, int, int>, Rational> entries_;
};

ExactScalar c_jkl(int L_plus, int L_minus, int j, int k, int l);
ExactScalar c_pm_j0pq(int L_plus, int L_minus, int sign, int j, int p, int q);
// Closed form of c^{+-}_{L+1,0,0,0}.
ExactScalar c_pm_leading_closed_form(int L_plus, int L_minus, int sign);
// Definite family, L = codim/2.
ExactScalar c_def_jk(int L, int j, int k);

long N_pm(int n_plus, int n_minus, int sign);
Rational N_pm_raw(int n_plus, int n_minus, int sign);

struct LeadingConstants {
    ExactScalar C_F;
    ExactScalar D_plus;   // indefinite: N^+ C_F; definite: 2^{d/2-1} C_F
    ExactScalar D_minus;  // indefinite: N^- C_F; definite: same as D_plus
};
ExactScalar vol_sphere(int n);  // vol(S^{n-1}), n even
ExactScalar C_F(const LocalModel& model);
LeadingConstants leading_constants(const LocalModel& model);

bool pinelis_identity_check(int p, int q);

struct CoeffTable {
    int L_plus = 1, L_minus = 1, M = 0;
    int L() const { return L_plus + L_minus - 2; }

    struct Entry {
        std::string name;
        std::vector<int> indices;
        Rational q;
        int pi_power = 0;
        int i_power = 0;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;

    static CoeffTable build(int L_plus, int L_minus, int M);
    // indefinite models: build() plus C_F and the leading weights; definite: the c_{j,k} family instead
    static CoeffTable for_model(const LocalModel& model, int M);
    void add(const std::string& name, std::vector<int> indices, const ExactScalar& x);
    void write(std::ostream& os) const;
    static CoeffTable read(std::istream& is);
    bool operator==(const CoeffTable&) const = default;
};

}  // namespace witten

#include "witten/coefficients.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace witten {

Rational c_l(int L_plus, int L_minus, int l) {
    if (L_plus < 1 || L_minus < 1) throw std::domain_error("c_l needs L_plus, L_minus >= 1");
    Rational s = 0;
    for (int lp = 0; lp <= std::min(l, L_plus - 1); ++lp) {
        int lm = l - lp;
        if (lm > L_minus - 1) continue;
        s += sign_pow(lp) * binomial(L_plus - 1, lp) * binomial(L_minus - 1, lm);
    }
    return s;
}

CTable::CTable(int N, int m_max) : N_(N), m_max_(m_max) {
    if (N < 0 || m_max < 0) throw std::domain_error("CTable needs N, m_max >= 0");
    if (m_max >= 1) entries_[{1, 0, 0}] = 1;
    for (int m = 1; m < m_max; ++m) {
        for (int p = 0; p <= m; ++p) {
            for (int q = 0; p + q <= m; ++q) {
                Rational v = 0;
                if (p >= 1) v += (*this)(m, p - 1, q);
                int e = N + 1 - m + p + q;
                if (p + q <= m - 1 && e >= 1) v -= e * (*this)(m, p, q);
                if (p == 0 && q == m) v += pow2(-m);
                if (v != 0) entries_[{m + 1, p, q}] = v;
            }
        }
    }
}

const Rational& CTable::operator()(int m, int p, int q) const {
    static const Rational zero = 0;
    if (m > m_max_) throw std::out_of_range("CTable: order beyond table");
    auto it = entries_.find({m, p, q});
    return it == entries_.end() ? zero : it->second;
}

ExactScalar c_jkl(int L_plus, int L_minus, int j, int k, int l) {
    int L = L_plus + L_minus - 2;
    if (j < 0 || k < 0 || k > l || l > std::min(k + j, L))
        throw std::domain_error("c_jkl: need k <= l <= min(k+j, L)");
    int r = j - l + k;
    Rational q = pow2(-2 - L - r) * sign_pow(k) * binomial(l, k) * c_l(L_plus, L_minus, l) / factorial(r);
    return ExactScalar(q, 1, 0) * ExactScalar(Rational(sign_pow(j)), 0, j);
}

ExactScalar c_pm_j0pq(int L_plus, int L_minus, int sign, int j, int p, int q) {
    int L = L_plus + L_minus - 2;
    if (j <= L) throw std::domain_error("c_pm_j0pq: need j >= L+1");
    if (sign != 1 && sign != -1) throw std::domain_error("sign must be +1 or -1");
    Rational s = 0;
    for (int l = 0; l <= L; ++l) {
        CTable C(L - l, j - l);
        int e = L - l + 1;
        int sgn = (sign == 1) ? sign_pow(e) : 1;  // (-+1)^e
        s += sgn * c_l(L_plus, L_minus, l) * C(j - l, p, q) / factorial(j - l);
    }
    // (-i)^j = (-1)^j i^j
    return ExactScalar(pow2(-2 - L) * sign_pow(j) * s, 1, j);
}

ExactScalar c_pm_leading_closed_form(int L_plus, int L_minus, int sign) {
    int L = L_plus + L_minus - 2;
    Rational s = 0;
    for (int l = 0; l <= L; ++l) {
        int e = L - l + 1;
        int sgn = (sign == 1) ? 1 : sign_pow(e);
        s += Rational(sgn) / e * c_l(L_plus, L_minus, l);
    }
    // (-i)^{L-1} = (-1)^{L-1} i^{L-1}; i^{-1} handled by the mod-4 fold
    return ExactScalar(pow2(-2 - L) * sign_pow(L - 1) * s, 1, L - 1);
}

ExactScalar c_def_jk(int L, int j, int k) {
    int r = j + k + 1 - L;
    if (L < 1 || k < 0 || k > L - 1 || r < 0) throw std::domain_error("c_def_jk: index out of range");
    return ExactScalar(binomial(L - 1, k) / factorial(r), 1, j);
}

static void check_block_dims(int n_plus, int n_minus) {
    if (n_plus < 2 || n_minus < 2 || n_plus % 2 || n_minus % 2)
        throw std::domain_error("N_pm: block dimensions must be even and >= 2");
}

long N_pm(int n_plus, int n_minus, int sign) {
    check_block_dims(n_plus, n_minus);
    int h = (n_plus + n_minus) / 2;
    int top = (sign == 1 ? n_minus : n_plus) / 2 - 1;
    Rational s = 0;
    for (int j = 0; j <= top; ++j) s += binomial(h - 1, j);
    s *= sign * sign_pow(n_minus / 2 - 1);
    return s.get_num().get_si();
}

Rational N_pm_raw(int n_plus, int n_minus, int sign) {
    check_block_dims(n_plus, n_minus);
    int h = (n_plus + n_minus) / 2;
    Rational s = 0;
    for (int l = 0; l <= h - 2; ++l) {
        int e = h - l - 1;
        int sgn = sign == 1 ? 1 : sign_pow(e);
        s += Rational(sgn) / e * c_l(n_plus / 2, n_minus / 2, l);
    }
    return sign_pow(h) * factorial(h - 1) / (factorial(n_plus / 2 - 1) * factorial(n_minus / 2 - 1)) * s;
}

ExactScalar vol_sphere(int n) {
    if (n < 2 || n % 2) throw std::domain_error("vol_sphere: even dimension >= 2 expected");
    return ExactScalar(Rational(2) / factorial(n / 2 - 1), n / 2, 0);
}

ExactScalar C_F(const LocalModel& model) {
    int h = model.codim() / 2;
    ExactScalar pi_i = ExactScalar(Rational(1), 1, 1);
    return ExactScalar(Rational(4) / (Rational(model.Lambda()) * factorial(h - 1)), 2, 0) * pi_i.pow(h - 1);
}

LeadingConstants leading_constants(const LocalModel& model) {
    ExactScalar c = C_F(model);
    if (model.definite()) {
        ExactScalar D = c * pow2(model.codim() / 2 - 1);
        return {c, D, D};
    }
    return {c, c * Rational(N_pm(model.n_plus(), model.n_minus(), 1)),
            c * Rational(N_pm(model.n_plus(), model.n_minus(), -1))};
}

bool pinelis_identity_check(int p, int q) {
    Rational lhs = 0;
    for (int l = 0; l <= p + q; ++l) {
        Rational inner = 0;
        for (int j = 0; j <= l; ++j) inner += sign_pow(j) * binomial(p, j) * binomial(q, l - j);
        lhs += inner / (p + q - l + 1);
    }
    Rational sum = 0;
    for (int j = 0; j <= q; ++j) sum += binomial(p + q + 1, j);
    Rational rhs = sign_pow(p) * factorial(p) * factorial(q) / factorial(p + q + 1) * sum;
    return lhs == rhs;
}

static void push(CoeffTable& t, std::string name, std::vector<int> idx, const ExactScalar& x) {
    if (x.is_zero()) {
        t.entries.push_back({std::move(name), std::move(idx), Rational(0), 0, 0});
        return;
    }
    for (const auto& [k, q] : x.terms()) t.entries.push_back({name, idx, q, k.first, k.second});
}

CoeffTable CoeffTable::build(int L_plus, int L_minus, int M) {
    CoeffTable t;
    t.L_plus = L_plus;
    t.L_minus = L_minus;
    t.M = M;
    int L = t.L();
    for (int l = 0; l <= L; ++l) push(t, "c_l", {l}, ExactScalar(c_l(L_plus, L_minus, l)));
    int m_top = std::max(M, L + 1);
    for (int N = 0; N <= L; ++N) {
        CTable C(N, m_top);
        for (int m = 1; m <= m_top; ++m)
            for (int p = 0; p < m; ++p)
                for (int q = 0; p + q < m; ++q)
                    if (C(m, p, q) != 0) push(t, "C", {N, m, p, q}, ExactScalar(C(m, p, q)));
    }
    for (int j = 0; j <= M; ++j)
        for (int k = 0; k <= L; ++k)
            for (int l = k; l <= std::min(k + j, L); ++l) push(t, "c_jkl", {j, k, l}, c_jkl(L_plus, L_minus, j, k, l));
    for (int j = L + 1; j <= std::max(M, L + 1); ++j)
        for (int sign : {1, -1})
            for (int p = 0; p <= j - L - 1; ++p)
                push(t, sign == 1 ? "c_plus" : "c_minus", {j, 0, p, j - L - 1 - p},
                     c_pm_j0pq(L_plus, L_minus, sign, j, p, j - L - 1 - p));
    int Ld = L_plus + L_minus;
    for (int j = 0; j <= M; ++j)
        for (int k = 0; k <= Ld - 1; ++k)
            if (j + k + 1 - Ld >= 0) push(t, "c_def", {j, k}, c_def_jk(Ld, j, k));
    push(t, "N_plus", {}, ExactScalar(Rational(N_pm(2 * L_plus, 2 * L_minus, 1))));
    push(t, "N_minus", {}, ExactScalar(Rational(N_pm(2 * L_plus, 2 * L_minus, -1))));
    return t;
}

void CoeffTable::add(const std::string& name, std::vector<int> indices, const ExactScalar& x) {
    push(*this, name, std::move(indices), x);
}

CoeffTable CoeffTable::for_model(const LocalModel& model, int M) {
    model.validate();
    CoeffTable t;
    if (model.definite()) {
        t.L_plus = model.n_plus() / 2;
        t.L_minus = model.n_minus() / 2;
        t.M = M;
        int L = model.codim() / 2;
        for (int j = 0; j <= M; ++j)
            for (int k = 0; k <= L - 1; ++k)
                if (j + k + 1 - L >= 0) t.add("c_def", {j, k}, c_def_jk(L, j, k));
    } else {
        t = build(model.n_plus() / 2, model.n_minus() / 2, M);
    }
    auto k = leading_constants(model);
    t.add("C_F", {}, k.C_F);
    t.add("D_plus", {}, k.D_plus);
    t.add("D_minus", {}, k.D_minus);
    return t;
}

void CoeffTable::write(std::ostream& os) const {
    os << "# L_plus " << L_plus << " L_minus " << L_minus << " M " << M << "\n";
    for (const auto& e : entries) {
        os << e.name << ' ';
        if (e.indices.empty()) os << '-';
        for (size_t k = 0; k < e.indices.size(); ++k) os << (k ? "," : "") << e.indices[k];
        os << ' ' << e.q.get_num().get_str() << '/' << e.q.get_den().get_str() << ' ' << e.pi_power << ' '
           << e.i_power << '\n';
    }
}

CoeffTable CoeffTable::read(std::istream& is) {
    CoeffTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, a, b, c;
            ls >> hash >> a >> t.L_plus >> b >> t.L_minus >> c >> t.M;
            continue;
        }
        Entry e;
        std::string idx, q;
        if (!(ls >> e.name >> idx >> q >> e.pi_power >> e.i_power))
            throw std::runtime_error("coefficient table: malformed line " + std::to_string(lineno));
        if (idx != "-") {
            std::istringstream is2(idx);
            std::string part;
            while (std::getline(is2, part, ',')) e.indices.push_back(std::stoi(part));
        }
        e.q = Rational(q);
        e.q.canonicalize();
        t.entries.push_back(std::move(e));
    }
    return t;
}

}  // namespace witten

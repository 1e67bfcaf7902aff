#include "witten/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace witten {

namespace {

[[noreturn]] void fail(const std::string& msg, const toml::node* at, const std::string& key) {
    int line = at ? static_cast<int>(at->source().begin.line) : 0;
    throw ScenarioError(msg, line, key);
}

const toml::table& section(const toml::table& root, const char* name) {
    const toml::node* n = root.get(name);
    if (!n) fail(std::string("missing section [") + name + "]", &root, name);
    if (!n->is_table()) fail("expected a section", n, name);
    return *n->as_table();
}

void reject_unknown(const toml::table& t, const std::string& prefix, std::set<std::string> allowed) {
    for (const auto& [k, v] : t)
        if (!allowed.count(std::string(k.str()))) fail("unknown key", &v, prefix + std::string(k.str()));
}

double real(const toml::node& n, const std::string& key) {
    if (auto f = n.as_floating_point()) return f->get();
    if (auto i = n.as_integer()) return static_cast<double>(i->get());
    fail("expected a number", &n, key);
}

long integer(const toml::node& n, const std::string& key) {
    if (auto i = n.as_integer()) return i->get();
    fail("expected an integer", &n, key);
}

// integers, decimals, or "p/q" strings
Rational rational(const toml::node& n, const std::string& key) {
    if (auto i = n.as_integer()) return Rational(static_cast<long>(i->get()));
    if (auto f = n.as_floating_point()) {
        if (!std::isfinite(f->get())) fail("coefficient must be finite", &n, key);
        return rational_from_double(f->get());
    }
    if (auto s = n.as_string()) {
        try {
            Rational q(s->get(), 10);
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            fail("not a rational \"p/q\"", &n, key);
        }
    }
    fail("expected a number or \"p/q\"", &n, key);
}

const toml::node& required(const toml::table& t, const char* k, const std::string& prefix) {
    const toml::node* n = t.get(k);
    if (!n) fail("missing key", &t, prefix + k);
    return *n;
}

const toml::array& array(const toml::node& n, const std::string& key) {
    if (!n.is_array()) fail("expected an array", &n, key);
    return *n.as_array();
}

const toml::table& table(const toml::node& n, const std::string& key) {
    if (!n.is_table()) fail("expected a table", &n, key);
    return *n.as_table();
}

// shortest round-trip form, always recognisable as a TOML float
std::string real_text(double d) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, d);
    std::string s(buf, r.ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string rational_text(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    mpz_class d = q.get_den();
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) return '"' + q.get_num().get_str() + '/' + q.get_den().get_str() + '"';
    int digits = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class n = q.get_num() * scale / q.get_den();
    std::string s = mpz_class(abs(n)).get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
    return (n < 0 ? "-" : "") + s;
}

template <class T, class F>
std::string list(const std::vector<T>& v, F fmt) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s + "]";
}

}  // namespace

ScenarioError::ScenarioError(const std::string& msg, int line, std::string key)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + msg),
      line(line),
      key(std::move(key)) {}

Rational parse_decimal(std::string_view text) {
    std::string s(text);
    size_t epos = s.find_first_of("eE");
    long exp10 = 0;
    if (epos != std::string::npos) {
        std::string e = s.substr(epos + 1);
        auto r = std::from_chars(e.data() + (e[0] == '+'), e.data() + e.size(), exp10);
        if (r.ec != std::errc() || r.ptr != e.data() + e.size()) throw std::invalid_argument("bad exponent: " + s);
        s.resize(epos);
    }
    bool neg = !s.empty() && s[0] == '-';
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.erase(0, 1);
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(s.size() - dot - 1);
        s.erase(dot, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal: " + std::string(text));
    Rational q{mpz_class(s, 10)};
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        q *= p;
    else
        q /= p;
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Rational rational_from_double(double d) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, d);
    return parse_decimal(std::string_view(buf, static_cast<size_t>(r.ptr - buf)));
}

void Scenario::validate() const {
    model.validate();
    amplitude.validate();
    if (amplitude.dim_plus != model.n_plus() || amplitude.dim_minus != model.n_minus())
        throw std::invalid_argument("amplitude dimensions do not match the model");
    if (!(sigma.tau > 0.0)) throw std::invalid_argument("sigma: tau must be positive");
    if (sigma.poly.empty()) throw std::invalid_argument("sigma: poly must be nonempty");
    if (zeta_values.empty()) throw std::invalid_argument("zeta_values must be nonempty");
    for (double z : zeta_values)
        if (!std::isfinite(z)) throw std::invalid_argument("zeta_values must be finite");
    if (M < 0) throw std::invalid_argument("M must be nonnegative");
    oracle.validate();
}

bool Scenario::operator==(const Scenario& o) const {
    return model.weights == o.model.weights && model.J_F == o.model.J_F && amplitude == o.amplitude &&
           sigma.poly == o.sigma.poly && sigma.tau == o.sigma.tau && zeta_values == o.zeta_values && M == o.M &&
           oracle.epsilon_grid == o.oracle.epsilon_grid && oracle.quadrature_tol == o.oracle.quadrature_tol &&
           oracle.truncation_radius == o.oracle.truncation_radius && oracle.method == o.oracle.method;
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        throw ScenarioError(std::string(e.description()), static_cast<int>(e.source().begin.line), "");
    }
    reject_unknown(root, "", {"model", "amplitude", "sigma", "oracle"});
    Scenario sc;

    const auto& m = section(root, "model");
    reject_unknown(m, "model.", {"weights", "J_F", "zeta_values", "M"});
    {
        std::vector<int> w;
        for (const auto& x : array(required(m, "weights", "model."), "model.weights")) {
            long v = integer(x, "model.weights");
            if (v == 0) fail("weights must be nonzero", &x, "model.weights");
            w.push_back(static_cast<int>(v));
        }
        if (w.empty()) fail("weights must be nonempty", m.get("weights"), "model.weights");
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i - 1] < 0 && w[i] > 0) fail("weights must be ordered positive-first", m.get("weights"), "model.weights");
        sc.model.weights = std::move(w);
        if (auto n = m.get("J_F")) sc.model.J_F = real(*n, "model.J_F");
        if (auto n = m.get("zeta_values")) {
            sc.zeta_values.clear();
            for (const auto& x : array(*n, "model.zeta_values")) sc.zeta_values.push_back(real(x, "model.zeta_values"));
            if (sc.zeta_values.empty()) fail("zeta_values must be nonempty", n, "model.zeta_values");
        }
        if (auto n = m.get("M")) {
            long v = integer(*n, "model.M");
            if (v < 0) fail("M must be nonnegative", n, "model.M");
            sc.M = static_cast<int>(v);
        }
    }

    const auto& a = section(root, "amplitude");
    reject_unknown(a, "amplitude.", {"monomials", "bump"});
    {
        const int d = sc.model.codim();
        sc.amplitude.dim_plus = sc.model.n_plus();
        sc.amplitude.dim_minus = sc.model.n_minus();
        sc.amplitude.poly = Polynomial(d);
        for (const auto& x : array(required(a, "monomials", "amplitude."), "amplitude.monomials")) {
            const auto& t = table(x, "amplitude.monomials");
            reject_unknown(t, "amplitude.monomials.", {"coeff", "exponents"});
            Rational c = rational(required(t, "coeff", "amplitude.monomials."), "amplitude.monomials.coeff");
            const auto& ex = array(required(t, "exponents", "amplitude.monomials."), "amplitude.monomials.exponents");
            if (static_cast<int>(ex.size()) != d)
                fail("exponents need one entry per real variable (" + std::to_string(d) + ")", &ex,
                     "amplitude.monomials.exponents");
            Polynomial::Exponents e;
            for (const auto& k : ex) {
                long v = integer(k, "amplitude.monomials.exponents");
                if (v < 0) fail("exponents must be nonnegative", &k, "amplitude.monomials.exponents");
                e.push_back(static_cast<int>(v));
            }
            sc.amplitude.poly.add(e, c);
        }
        if (auto n = a.get("bump")) {
            const auto& b = table(*n, "amplitude.bump");
            reject_unknown(b, "amplitude.bump.", {"r0", "r1"});
            sc.amplitude.bump.r0 = real(required(b, "r0", "amplitude.bump."), "amplitude.bump.r0");
            sc.amplitude.bump.r1 = real(required(b, "r1", "amplitude.bump."), "amplitude.bump.r1");
            if (!(sc.amplitude.bump.r0 > 0.0 && sc.amplitude.bump.r1 > sc.amplitude.bump.r0))
                fail("bump needs 0 < r0 < r1", n, "amplitude.bump");
        }
    }

    const auto& s = section(root, "sigma");
    reject_unknown(s, "sigma.", {"poly", "tau"});
    {
        sc.sigma.poly.clear();
        for (const auto& x : array(required(s, "poly", "sigma."), "sigma.poly"))
            sc.sigma.poly.push_back(rational(x, "sigma.poly"));
        if (sc.sigma.poly.empty()) fail("poly must be nonempty", s.get("poly"), "sigma.poly");
        if (auto n = s.get("tau")) {
            sc.sigma.tau = real(*n, "sigma.tau");
            if (!(sc.sigma.tau > 0.0)) fail("tau must be positive", n, "sigma.tau");
        }
    }

    if (const toml::node* on = root.get("oracle")) {
        const auto& o = table(*on, "oracle");
        reject_unknown(o, "oracle.", {"epsilon_grid", "quadrature_tol", "truncation_radius", "method"});
        if (auto n = o.get("epsilon_grid")) {
            sc.oracle.epsilon_grid.clear();
            for (const auto& x : array(*n, "oracle.epsilon_grid"))
                sc.oracle.epsilon_grid.push_back(real(x, "oracle.epsilon_grid"));
        }
        if (auto n = o.get("quadrature_tol")) sc.oracle.quadrature_tol = real(*n, "oracle.quadrature_tol");
        if (auto n = o.get("truncation_radius")) sc.oracle.truncation_radius = real(*n, "oracle.truncation_radius");
        if (auto n = o.get("method")) {
            auto str = n->value<std::string>();
            if (!str) fail("expected a string", n, "oracle.method");
            try {
                sc.oracle.method = parse_method(*str);
            } catch (const std::invalid_argument& e) {
                fail(e.what(), n, "oracle.method");
            }
        }
        try {
            sc.oracle.validate();
        } catch (const std::invalid_argument& e) {
            fail(e.what(), on, "oracle");
        }
    }

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what(), 0, "");
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open " + path.string(), 0, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "[model]\n";
    os << "weights = " << list(s.model.weights, [](int w) { return std::to_string(w); }) << '\n';
    os << "J_F = " << real_text(s.model.J_F) << '\n';
    os << "zeta_values = " << list(s.zeta_values, real_text) << '\n';
    os << "M = " << s.M << "\n\n";

    os << "[amplitude]\n";
    os << "monomials = [\n";
    for (const auto& [e, c] : s.amplitude.poly.terms())
        os << "  { coeff = " << rational_text(c)
           << ", exponents = " << list(e, [](int k) { return std::to_string(k); }) << " },\n";
    os << "]\n";
    os << "bump = { r0 = " << real_text(s.amplitude.bump.r0) << ", r1 = " << real_text(s.amplitude.bump.r1)
       << " }\n\n";

    os << "[sigma]\n";
    os << "poly = " << list(s.sigma.poly, rational_text) << '\n';
    os << "tau = " << real_text(s.sigma.tau) << "\n\n";

    os << "[oracle]\n";
    os << "epsilon_grid = " << list(s.oracle.epsilon_grid, real_text) << '\n';
    os << "quadrature_tol = " << real_text(s.oracle.quadrature_tol) << '\n';
    os << "truncation_radius = " << real_text(s.oracle.truncation_radius) << '\n';
    os << "method = \"" << method_name(s.oracle.method) << "\"\n";
    return os.str();
}

}  // namespace witten

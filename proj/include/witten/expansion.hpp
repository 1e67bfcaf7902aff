#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <vector>

#include "witten/amplitude.hpp"
#include "witten/exact.hpp"
#include "witten/model.hpp"
#include "witten/schwartz.hpp"

namespace witten {

// One singular contribution weight * sigma^{[j]}_{+-}(0).
struct SingularTerm {
    SigmaFunctional functional = SigmaFunctional::BracketPlus;
    std::complex<double> weight;
    std::optional<ExactScalar> exact_weight;  // set when no quadrature enters
    std::complex<double> value;               // weight times the functional of sigma
};

// Coefficient of eps^{j+1} in the local integral.
struct Coefficient {
    int j = 0;
    std::complex<double> regular_weight;  // multiplies sigma^{(j)}(0)
    std::complex<double> regular_part;
    std::vector<SingularTerm> singular_part;
    double quad_error = 0.0;  // estimated absolute quadrature error of regular_weight

    std::complex<double> total() const;
};

struct ExpansionResult {
    static constexpr int kEmpty = -1;  // leading order of an identically vanishing expansion

    int epsilon_prefactor_order = 1;
    std::vector<Coefficient> coefficients;
    int leading_order = 1;  // power of eps of the first structurally present term

    // sum_{j<=M} eps^{j+1} A_j; M < 0 takes every stored coefficient
    std::complex<double> partial_sum(double eps, int M = -1) const;
    // rows: j, functional tag, re, im
    void write_csv(std::ostream& os) const;
};

struct ExpansionOptions {
    // The collected zeta != 0 display carries a factor (-1)^k on the boundary sum for zeta < 0
    // that the kernel derivatives do not produce; the default drops it.
    bool literal_negative_zeta_sign = false;
};

const char* functional_tag(SigmaFunctional f);

// Coefficients A_j, j <= M, of eps^{j+1} in Lambda^{-1} I^{2 zeta_F}(2 eps), indefinite model.
ExpansionResult expand_indefinite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                  double zeta_F, int M, const ExpansionOptions& opt = {});
// Same for a definite model.
ExpansionResult expand_definite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                double zeta_F, int M);
// Dispatches on the model.
ExpansionResult expand(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                       int M, const ExpansionOptions& opt = {});

// Leading order l(zeta_F): 1 when the regular level set is nonempty, else d/2 at zeta_F = 0.
int leading_order(const LocalModel& model, double zeta_F);

// lim of A_j as zeta_F -> 0 from side (+1 or -1). With a nonzero zeta_F the coefficient is
// continuous there and its value is returned.
std::complex<double> one_sided_limits(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, int j,
                                      int side, double zeta_F = 0.0);

// Exact j = j_F singular weights (on sigma^{[j]}_+ and sigma^{[j]}_-) at zeta_F = 0; the definite
// case has a single nonzero entry.
std::pair<ExactScalar, ExactScalar> leading_singular_weights(const LocalModel& model, const AmplitudeSpec& f);

}  // namespace witten

#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "witten/amplitude.hpp"
#include "witten/model.hpp"
#include "witten/schwartz.hpp"

namespace witten {

enum class OracleMethod { Reduced2d, Split1d };

const char* method_name(OracleMethod m);
OracleMethod parse_method(const std::string& s);

struct OracleConfig {
    std::vector<double> epsilon_grid = default_grid();
    double quadrature_tol = 1e-12;
    double truncation_radius = 0.0;  // 0: take the outer cutoff radius of the amplitude
    OracleMethod method = OracleMethod::Reduced2d;

    // 2^-3, ..., 2^-12
    static std::vector<double> default_grid();
    // geometric grid a, a q, a q^2, ... with n points
    static std::vector<double> geometric_grid(double first, double ratio, int n);
    void validate() const;
};

struct OracleValue {
    std::complex<double> value;
    double error = 0.0;  // estimated absolute quadrature error
};

// Lambda^{-1} I^{2 zeta_F}(2 eps) with the x integral done through sigma-hat.
OracleValue eval_integral_indefinite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                     double zeta_F, double eps, const OracleConfig& cfg = {});
// Definite analogue: a radial integral (reduced-2d) or one in the sigma-hat variable (split-1d).
OracleValue eval_integral_definite(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                   double zeta_F, double eps, const OracleConfig& cfg = {});
OracleValue eval_integral(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                          double eps, const OracleConfig& cfg = {});

struct Sample {
    double epsilon = 0.0;
    OracleValue value;
};

// All grid points, evaluated on up to `jobs` threads and returned in grid order.
std::vector<Sample> sample_grid(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma,
                                double zeta_F, const OracleConfig& cfg, int jobs = 1);
void write_samples_csv(std::ostream& os, const std::vector<Sample>& samples, OracleMethod method);

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double condition) : std::runtime_error(what), condition(condition) {}
    double condition;
};

struct FitResult {
    std::vector<std::complex<double>> coefficients;  // A_0 .. A_jmax
    double residual = 0.0;                           // max abs residual of the fit
    double condition = 0.0;                          // of the column-scaled Vandermonde
};

// Least-squares fit of values ~ sum_{j<=j_max} eps^{j+1} A_j.
FitResult extract_coefficients(const std::vector<std::pair<double, std::complex<double>>>& values, int j_max,
                               double max_condition = 1e12);

// Fit on the smallest `max_points` grid points whose value clears ten times its quadrature error.
FitResult fit_samples(const std::vector<Sample>& samples, int j_max, int max_points = 6);

struct SlopeResult {
    double slope = 0.0;
    bool floor_limited = false;  // fewer than three remainders above the quadrature floor
    int points_used = 0;
    std::vector<std::pair<double, double>> remainders;  // (eps, |I - partial sum|)
    std::vector<bool> above_floor;
};

// Log-log slope of |I(eps) - sum_{j<=M} eps^{j+1} A_j| over the smallest six grid points above the floor.
SlopeResult remainder_slope(const LocalModel& model, const AmplitudeSpec& f, const SchwartzSpec& sigma, double zeta_F,
                            int M, const OracleConfig& cfg = {}, int jobs = 1);
// Same from precomputed samples and partial sums.
SlopeResult remainder_slope(const std::vector<Sample>& samples, const std::vector<std::complex<double>>& partial_sums);

}  // namespace witten

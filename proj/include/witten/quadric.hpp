#pragma once

#include <functional>
#include <vector>

#include "witten/amplitude.hpp"
#include "witten/model.hpp"

namespace witten {

// Level set <Q w, w> = 2 zeta of an indefinite model, seen through the
// rescaled polar radii (r, s) with r^2 - s^2 = 2 zeta.
struct QuadricSlice {
    LocalModel model;
    double zeta = 0.0;

    QuadricSlice(LocalModel m, double z);
    // radius pair on the slice; parameter is s for zeta >= 0 and r for zeta < 0
    std::pair<double, double> point(double param) const;
    // largest parameter with r^2 + s^2 <= radius_sq
    double param_max(double radius_sq) const;
};

using PointFunction = std::function<double(const std::vector<double>&)>;

// Integral over the pointed quadric against its natural measure. g lives in the
// original coordinates and must vanish once |T^{-1} w|^2 >= support_sq.
// sphere_degree: polynomial degree the angular rule integrates exactly.
struct HypersurfaceOptions {
    double support_sq = 6.25;
    std::vector<double> radius_sq_breaks;  // values of |T^{-1}w|^2 where g has kinks
    int sphere_degree = 12;
    double tol = 1e-12;
    double abs_tol = 1e-12;
    // fixed Gauss-Legendre panel [0, tip_width] keeps nodes off the tip, where
    // integrands that are only regular after angular averaging lose precision
    int tip_points = 0;
    double tip_width = 0.25;
};
double hypersurface_integral(const QuadricSlice& slice, const PointFunction& g, const HypersurfaceOptions& opt = {});

// Weight function 4 Lambda |T^{-1}w|^{2k} |T^{-1}w^+|^{2-n+} |T^{-1}w^-|^{2-n-}.
double W_weight(const LocalModel& model, const std::vector<double>& w, int k);

// (D^- - D^+)^l applied to the amplitude in original coordinates, at w.
double D_difference_power(const LocalModel& model, const AmplitudeSpec& f, const std::vector<double>& w, int l);

// Left side: integral of W_k (D^- - D^+)^l f over the slit quadric.
double W_Dpm_integral(const QuadricSlice& slice, const AmplitudeSpec& f, int k, int l);
// Right side: int_{|2 zeta|}^inf t^k (d_- - d_+)^l script_S((t+2zeta)/2, (t-2zeta)/2) dt.
double W_Dpm_t_integral(const QuadricSlice& slice, const AmplitudeSpec& f, int k, int l);

// int_{S^{n-1}} <B theta, theta> d theta against vol(S^{n-1}) tr(B) / n.
bool sphere_trace_identity_check(const std::vector<std::vector<double>>& B, int n, double tol = 1e-9);

}  // namespace witten

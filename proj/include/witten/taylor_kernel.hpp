#pragma once

#include <memory>

#include "witten/amplitude.hpp"
#include "witten/coefficients.hpp"

namespace witten {

// F^{sign}_{N,zeta}(v) = int_{sign (v - zeta)}^inf t^N S((t-v+zeta)/2, (t+v-zeta)/2) dt
// for the squared-argument spherical mean S.
struct FKernel {
    int sign = 1;
    int N = 0;
    double zeta = 0.0;
    const SphericalMean* mean = nullptr;
    int max_order = 8;

    FKernel(int sign, int N, double zeta, const SphericalMean& mean, int max_order = 8);

    double lower_limit(double v) const { return sign * (v - zeta); }
    // point where the lower limit meets the axes: (0, v-zeta) for +, (zeta-v, 0) for -
    std::pair<double, double> boundary_point(double v) const;
    const CTable& table() const { return *table_; }

private:
    std::shared_ptr<const CTable> table_;
};

double F_eval(const FKernel& k, double v);
// m-th derivative by the closed formula: interior integral plus boundary sum.
double F_derivative(const FKernel& k, int m, double v);

// Interior part alone, 2^{-m} int t^N (d_- - d_+)^m S dt.
double F_interior(const FKernel& k, int m, double v);
// Boundary part alone.
double F_boundary(const FKernel& k, int m, double v);

}  // namespace witten

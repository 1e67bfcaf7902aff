#pragma once

#include <functional>
#include <vector>

namespace witten {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    double l1 = 0.0;     // integral of |f|
};

// Globally adaptive Gauss-Kronrod on [a,b], split at interior breakpoints.
// Stops once the error estimate is below max(abs_tol, tol * L1) or the panel budget is spent.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::vector<double> breakpoints = {}, double tol = 1e-13, double abs_tol = 1e-15,
                     int max_panels = 4000);

// Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on [-1,1], Golub-Welsch.
void gauss_jacobi(int n, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace witten

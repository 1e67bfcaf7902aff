#include "witten/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace witten {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                     double tol, double abs_tol, int max_panels) {
    QuadResult r;
    if (!(b > a)) return r;
    std::vector<double> pts{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints)
        if (x > pts.back() && x < b) pts.push_back(x);
    pts.push_back(b);

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b, value, error, l1;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto panel = [&](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0, 0.0};
        p.value = GK::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
        return p;
    };
    std::priority_queue<Panel> queue;
    double value = 0.0, error = 0.0, l1 = 0.0;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        auto p = panel(pts[k], pts[k + 1]);
        value += p.value;
        error += p.error;
        l1 += p.l1;
        queue.push(p);
    }
    int panels = static_cast<int>(queue.size());
    while (error > std::max(abs_tol, tol * l1) && panels < max_panels) {
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        auto left = panel(worst.a, mid), right = panel(mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    // re-sum to shed the drift of the running updates
    r.value = r.error = r.l1 = 0.0;
    while (!queue.empty()) {
        r.value += queue.top().value;
        r.error += queue.top().error;
        r.l1 += queue.top().l1;
        queue.pop();
    }
    return r;
}

void gauss_jacobi(int n, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + alpha + beta;
        diag(k) = (k == 0) ? (beta - alpha) / (alpha + beta + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + alpha + beta;
        double num = 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta);
        double den = s * s * (s + 1.0) * (s - 1.0);
        sub(k - 1) = std::sqrt(num / den);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    double mu0 = std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                          std::lgamma(alpha + beta + 2.0));
    nodes.resize(n);
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()(k);
        double v = es.eigenvectors()(0, k);
        weights[k] = mu0 * v * v;
    }
}

}  // namespace witten

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bandlab {

// Compensated (Kahan) accumulator. Used wherever long sums feed
// tolerance-critical comparisons.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights by Newton iteration on P_n; cached per order.
const GaussLegendreRule& gauss_legendre(int order);

// Integrate f over [a,b] with an order-point Gauss-Legendre rule.
double gl_integrate(const std::function<double(double)>& f, double a, double b, int order);

// Adaptive Gauss-Kronrod (G7,K15) to an absolute tolerance.
// Throws std::runtime_error if the subdivision depth cap is hit before the
// error estimate falls under tol.
double gk_integrate(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth = 48);

// Midpoint cosine transform: F_m = int_0^pi g(x) cos(m x) dx for m = 1..mmax,
// sampled at n_samples midpoints. Exact for trigonometric polynomials of
// degree < 2*n_samples - mmax.
std::vector<double> cosine_coefficients(const std::function<double(double)>& g,
                                        int mmax, int n_samples);

}  // namespace bandlab

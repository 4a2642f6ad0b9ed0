#pragma once

#include <complex>

#include "bandlab/profile.hpp"
#include "bandlab/test_function.hpp"

namespace bandlab {

// rho_sc(lambda) = (2 pi)^{-1} sqrt(4 - lambda^2) on [-2, 2]
double semicircle_density(double lambda);

// Root of g^2 + z g + 1 = 0 with |g| < 1 (the branch with g ~ -1/z at
// infinity). Rejects z on the spectral cut [-2, 2].
std::complex<double> stieltjes_g(std::complex<double> z);

// g'(z) = g^2 / (1 - g^2), obtained by differentiating the defining
// quadratic; validated against difference quotients in the test suite.
std::complex<double> stieltjes_g_prime(std::complex<double> z);

// The limiting variance of sqrt(b/n) N_n°[phi], split as in the closed
// formula: the Fourier-kernel double integral, the fourth-cumulant term and
// the u(0) term. total = kernel_term + kappa4_term + u0_term.
struct VarianceBreakdown {
    double kernel_term;
    double kappa4_term;
    double u0_term;
    double total;
};

// Mixed-partial kernel integral int [f''(x+y; u^(k)) + f''(x-y; u^(k))] dk
// over the whole line, where f(t; a) = log|1 - a e^{it}| and
// f''(t; a) = [a cos t (1 - 2a cos t + a^2) - 2 a^2 sin^2 t] / (1 - 2a cos t + a^2)^2.
// The reduction of the mixed partial of the log-modulus to f''(x+y)+f''(x-y)
// is checked against finite differences of log_modulus_integral.
// Signals a domain error when 1 - 2 a cos t + a^2 underflows at a node
// (only approachable for |x-y| below ~1e-6).
double variance_kernel(double x, double y, const BandProfile& profile);

// int log| (1 - u^ e^{i(x+y)}) / (1 - u^ e^{i(x-y)}) | dk on the same
// deterministic node set as variance_kernel (so difference quotients of this
// function are directly comparable with the closed form).
double log_modulus_integral(double x, double y, const BandProfile& profile);

// Chebyshev-side coefficients F_m = int_0^pi phi(2 cos x) cos(m x) dx.
std::vector<double> chebyshev_side_coefficients(const TestFunction& phi, int mmax);

// kernel_term  = pi^{-2} (2 pi)^{-1} iint phi phi K dx dy
//              = (2/pi^2) sum_{m>=1} m u^{*m}(0) F_m^2
// kappa4_term  = (u,u) kappa4 pi^{-2} F_2^2
// u0_term      = u(0) (2 pi^2)^{-1} F_1^2
// The kernel quadratic form is evaluated through its Chebyshev-moment
// series: the pointwise kernel carries a non-integrable |x-y|^{-3/2}
// finite-part singularity on the diagonal, so a literal tensor quadrature
// of phi phi K does not converge. The series is validated in the tests
// against an integration-by-parts double quadrature and against Monte
// Carlo.
VarianceBreakdown clt_variance(const TestFunction& phi, const BandProfile& profile,
                               double kappa4);

// C(z1,z2) = d^2/dz1 dz2 [ -(1/pi) int log(1 - g1 g2 u^(k)) dk
//                          - g1 g2 u(0) + kappa4 g1^2 g2^2 ]
//          = g1' g2' [ 2 sum_{m>=1} m u^{*m}(0) (g1 g2)^{m-1} - u(0)
//                      + 2 kappa4 g1 g2 ].
// Requires |g(z1) g(z2)| < 1.
std::complex<double> covariance_resolvents(std::complex<double> z1, std::complex<double> z2,
                                           const BandProfile& profile, double kappa4);

// (4 pi^2)^{-1} [C(l1+ie, l2-ie) + C(l1-ie, l2+ie) - C(l1+ie, l2+ie)
//                - C(l1-ie, l2-ie)]; real by conjugation symmetry.
double covariance_eta(double lambda1, double lambda2, double eta,
                      const BandProfile& profile, double kappa4);

// U_ik = b^{-1} u(|i-k|/b) (n x n, symmetric banded Toeplitz);
// U^(p) its restriction to indices > p, u^(p)_i = 1_{i>p} u_{pi}.
struct FiniteNOperator {
    int n;
    double b;
    BandProfile profile;

    int half_bandwidth() const;
    double infinity_norm() const;  // max_k sum_i |U_ki|
};

struct FiniteNSigma {
    std::complex<double> lhs;    // (zeta n)^{-1} sum_p b^{-1} ((zeta - U^(p))^{-1} u^(p), u^(p))
    std::complex<double> rhs;    // -(b/n) (Tr log(1 - U/zeta) + Tr U / zeta)
    std::complex<double> limit;  // sum_{m>=2} zeta^{-m} u^{*m}(0) / m
};

// lhs by per-p Neumann series with banded matvecs (terms truncated below
// 1e-12); rhs by tracing the same series through the spectral decomposition
// of U; limit from the profile's convolution moments. Requires |zeta| > 1.
FiniteNSigma finite_n_sigma(const FiniteNOperator& op, std::complex<double> zeta);

}  // namespace bandlab

#pragma once

#include <cstdint>
#include <vector>

#include "bandlab/bandeig.hpp"
#include "bandlab/test_function.hpp"

namespace bandlab {

// One realization of sqrt(b/n) * (N_n[phi] - mean).
struct FluctuationSample {
    double value;
    int replica_id;
    std::uint64_t seed;
};

// N_n[phi] = sum_j phi(lambda_j)
double evaluate_les(const Spectrum& s, const TestFunction& phi);

// Subtract the cross-replica mean and scale by sqrt(b/n). Needs >= 2 values.
std::vector<FluctuationSample> center_scale(const std::vector<double>& values,
                                            double b, int n);

// P_eta(x) = pi^{-1} eta / (x^2 + eta^2)
double poisson_kernel(double lambda, double eta);

// phi_eta = phi * P_eta (rejects non-integrable phi)
TestFunction poisson_smooth(const TestFunction& phi, double eta);

// pi^{-1} int phi(x) Im gamma_n(x + i eta) dx; equals
// evaluate_les(s, poisson_smooth(phi, eta)) by exchange of the convolution.
double resolvent_les(const Spectrum& s, const TestFunction& phi, double eta);

// ( int (1+2|k|)^{2s} |phi^(k)|^2 dk )^{1/2} with phi^(k) = int e^{ikx} phi.
// DFT of sampled phi; window and grid refined until two refinements agree to
// 1e-6 relative. Rejects non-decaying phi (polynomials).
double sobolev_norm(const TestFunction& phi, double s);

}  // namespace bandlab

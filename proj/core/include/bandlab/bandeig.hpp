#pragma once

#include <complex>
#include <vector>

#include "bandlab/band_matrix.hpp"

namespace bandlab {

struct Tridiagonal {
    std::vector<double> diag;     // length n
    std::vector<double> offdiag;  // length n-1
};

// All eigenvalues, sorted ascending. Trace and Frobenius conservation are
// checked at construction time by the factory operations below.
struct Spectrum {
    std::vector<double> eigenvalues;
    int n() const { return static_cast<int>(eigenvalues.size()); }
    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

// Orthogonally similar tridiagonal via plane-rotation band reduction with
// bulge chasing confined to the band (Schwarz/Rutishauser). O(n^2 w) flops,
// O(n w) memory. Half-bandwidth <= 1 input passes through unchanged.
Tridiagonal reduce_to_tridiagonal(const BandMatrix& m);

// Implicit-shift QL with deflation, eigenvalues only. Each eigenvalue is
// accurate to tol * ||t||; deflation threshold |e_i| <= tol (|d_i|+|d_{i+1}|).
// Throws std::runtime_error if any eigenvalue needs more than 50 sweeps.
Spectrum tridiag_eigenvalues(const Tridiagonal& t,
                             double tol = 2.220446049250313e-16);

Spectrum eigenvalues(const BandMatrix& m);

// Dense path (corners break bandedness); n <= 4096 only.
Spectrum eigenvalues(const PeriodicBandMatrix& m);

// Dense symmetric eigenvalues via Householder tridiagonalization + QL.
// Exposed for the periodized path; the test-suite oracle uses Jacobi
// rotations instead and lives with the tests.
Spectrum dense_symmetric_eigenvalues(std::vector<std::vector<double>> a);

// gamma_n(z) = sum_i (lambda_i - z)^{-1}. Rejects real z.
std::complex<double> stieltjes_trace(const Spectrum& s, std::complex<double> z);

}  // namespace bandlab

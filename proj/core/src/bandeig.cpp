#include "bandlab/bandeig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {

// All quantities here are bounded by a few times the matrix norm, so the
// overflow-safe std::hypot is unnecessary; the raw form is several times
// faster.
inline double fast_hypot(double x, double y) { return std::sqrt(x * x + y * y); }

// Band working storage, row-major: ab[i*pitch + d] = A_{i,i+d}, d = 0..w.
struct BandWork {
    std::vector<double> ab;
    int n;
    int w;
    int pitch;

    explicit BandWork(const BandMatrix& m)
        : ab(static_cast<size_t>(m.size()) * (m.half_bandwidth() + 1), 0.0),
          n(m.size()),
          w(m.half_bandwidth()),
          pitch(m.half_bandwidth() + 1) {
        for (int d = 0; d <= w; ++d) {
            const auto& diag = m.diagonal(d);
            for (int i = 0; i + d < n; ++i) ab[static_cast<size_t>(i) * pitch + d] = diag[i];
        }
    }

    double& at(int i, int d) { return ab[static_cast<size_t>(i) * pitch + d]; }
};

// One plane rotation on coordinates (p, p+1) of the symmetric band matrix
// with current bandwidth k. (c,s) must already zero the caller's target
// pair; `row0` is the topmost row with a nonzero in column p (rows above it
// hold only already-annihilated entries). Returns the bulge spilled to
// (p, p+k+1), or 0 when the rotation dies out at the matrix edge.
double apply_rotation(BandWork& a, int k, int p, double c, double s, int row0,
                      double bulge_in) {
    const int q = p + 1;
    const int pitch = a.pitch;
    double* ab = a.ab.data();

    // rows r < p holding both (r,p) and (r,q) inside the band
    for (int r = std::max(row0, q - k); r <= p - 1; ++r) {
        double* base = ab + static_cast<size_t>(r) * pitch;
        const double x = base[p - r];
        const double y = base[q - r];
        base[p - r] = c * x + s * y;
        base[q - r] = -s * x + c * y;
    }
    // incoming bulge pairs with (row0, p) when it sits at distance k+1
    if (bulge_in != 0.0) {
        double* base = ab + static_cast<size_t>(row0) * pitch;
        const double x = base[k];  // (row0, p), p - row0 == k
        base[k] = c * x + s * bulge_in;
        // rotated bulge entry is exactly zero by the choice of (c,s)
    }

    // 2x2 diagonal block
    {
        double* bp = ab + static_cast<size_t>(p) * pitch;
        double* bq = ab + static_cast<size_t>(q) * pitch;
        const double app = bp[0], apq = bp[1], aqq = bq[0];
        bp[0] = c * c * app + 2.0 * c * s * apq + s * s * aqq;
        bq[0] = s * s * app - 2.0 * c * s * apq + c * c * aqq;
        bp[1] = c * s * (aqq - app) + (c * c - s * s) * apq;
    }

    // columns c0 > q with both (p,c0) and (q,c0) inside the band
    {
        double* bp = ab + static_cast<size_t>(p) * pitch;
        double* bq = ab + static_cast<size_t>(q) * pitch;
        const int cmax = std::min(p + k, a.n - 1);
        for (int dc = 2; dc <= cmax - p; ++dc) {
            const double x = bp[dc];
            const double y = bq[dc - 1];
            bp[dc] = c * x + s * y;
            bq[dc - 1] = -s * x + c * y;
        }
    }

    // spill: column p+k+1 pairs in-band (q, p+k+1) with out-of-band (p, p+k+1)
    const int spill_col = p + k + 1;
    if (spill_col <= a.n - 1) {
        double& aqc = ab[static_cast<size_t>(q) * pitch + k];
        const double bulge_out = s * aqc;
        aqc = c * aqc;
        return bulge_out;
    }
    return 0.0;
}

}  // namespace

Tridiagonal reduce_to_tridiagonal(const BandMatrix& m) {
    const int n = m.size();
    Tridiagonal t;
    t.diag.resize(n);
    t.offdiag.assign(std::max(0, n - 1), 0.0);

    if (m.half_bandwidth() <= 1) {
        for (int i = 0; i < n; ++i) t.diag[i] = m.diagonal(0)[i];
        if (m.half_bandwidth() == 1)
            for (int i = 0; i + 1 < n; ++i) t.offdiag[i] = m.diagonal(1)[i];
        return t;
    }

    BandWork a(m);
    for (int k = a.w; k >= 2; --k) {
        for (int i = 0; i + k <= a.n - 1; ++i) {
            // zero A_{i,i+k} against A_{i,i+k-1}, then chase the bulge down
            const double x0 = a.at(i, k - 1);
            const double y0 = a.at(i, k);
            if (y0 == 0.0) continue;
            const double r0 = fast_hypot(x0, y0);
            double bulge = apply_rotation(a, k, i + k - 1, x0 / r0, y0 / r0, i, 0.0);
            a.at(i, k) = 0.0;  // clear the rounding residue of the annihilated entry
            int row = i + k - 1;  // bulge sits at (row, row+k+1)
            while (bulge != 0.0) {
                const double x = a.at(row, k);
                const double r = fast_hypot(x, bulge);
                bulge = apply_rotation(a, k, row + k, x / r, bulge / r, row, bulge);
                row += k;
            }
        }
    }
    for (int i = 0; i < n; ++i) t.diag[i] = a.at(i, 0);
    for (int i = 0; i + 1 < n; ++i) t.offdiag[i] = a.at(i, 1);
    return t;
}

Spectrum tridiag_eigenvalues(const Tridiagonal& t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tridiag_eigenvalues: tol > 0 required");
    const int n = static_cast<int>(t.diag.size());
    if (static_cast<int>(t.offdiag.size()) != std::max(0, n - 1))
        throw std::invalid_argument("tridiag_eigenvalues: offdiag length mismatch");
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= tol * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("tridiag_eigenvalues: sweep cap exceeded");
                // Wilkinson-style shift from the leading 2x2, implicit QL sweep
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = fast_hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = fast_hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    Spectrum s;
    s.eigenvalues = std::move(d);
    return s;
}

namespace {

void check_conservation(const Spectrum& s, double trace, double frob_sq, int n) {
    KahanSum sum1, sum2;
    for (double lam : s.eigenvalues) {
        sum1.add(lam);
        sum2.add(lam * lam);
        if (!std::isfinite(lam)) throw std::runtime_error("eigenvalues: non-finite output");
    }
    const double scale = std::max(1.0, std::max(std::abs(trace), frob_sq));
    if (std::abs(sum1.value() - trace) > 1e-8 * n * scale)
        throw std::runtime_error("eigenvalues: trace not conserved");
    if (std::abs(sum2.value() - frob_sq) > 1e-8 * n * scale)
        throw std::runtime_error("eigenvalues: Frobenius norm not conserved");
}

}  // namespace

Spectrum eigenvalues(const BandMatrix& m) {
    Spectrum s = tridiag_eigenvalues(reduce_to_tridiagonal(m));
    check_conservation(s, m.trace(), m.frobenius_sq(), m.size());
    return s;
}

Spectrum dense_symmetric_eigenvalues(std::vector<std::vector<double>> a) {
    // Householder reduction to tridiagonal (no eigenvectors), then QL.
    const int n = static_cast<int>(a.size());
    std::vector<double> d(n, 0.0), e(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::abs(a[i][k]);
            if (scale == 0.0) {
                e[i] = a[i][l];
            } else {
                for (int k = 0; k <= l; ++k) {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                double f = a[i][l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a[j][k] * a[i][k];
                    for (int k = j + 1; k <= l; ++k) g += a[k][j] * a[i][k];
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a[i][j];
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k)
                        a[j][k] -= f * e[k] + g * a[i][k];
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = a[i][i];

    Tridiagonal t;
    t.diag = std::move(d);
    t.offdiag.assign(e.begin() + 1, e.end());
    return tridiag_eigenvalues(t);
}

Spectrum eigenvalues(const PeriodicBandMatrix& m) {
    if (m.size() > 4096)
        throw std::invalid_argument("eigenvalues(PeriodicBandMatrix): dense path capped at n <= 4096");
    double trace = 0.0, frob = 0.0;
    auto dense = m.densify();
    for (int i = 0; i < m.size(); ++i) {
        trace += dense[i][i];
        for (int j = 0; j < m.size(); ++j) frob += dense[i][j] * dense[i][j];
    }
    Spectrum s = dense_symmetric_eigenvalues(std::move(dense));
    check_conservation(s, trace, frob, m.size());
    return s;
}

std::complex<double> stieltjes_trace(const Spectrum& s, std::complex<double> z) {
    if (z.imag() == 0.0) throw std::invalid_argument("stieltjes_trace: Im z must be nonzero");
    KahanSum re, im;
    for (double lam : s.eigenvalues) {
        const std::complex<double> term = 1.0 / (lam - z);
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.value(), im.value()};
}

}  // namespace bandlab

#include "bandlab/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandlab/bandeig.hpp"
#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// f''(t; a) and the residual after removing its m <= 3 Fourier modes
// (f'' = sum_m m a^m cos mt). The subtraction makes the k-integrals
// absolutely convergent with O(u^^4) tails.
double fpp(double t, double a) {
    const double d = 1.0 - 2.0 * a * std::cos(t) + a * a;
    const double sn = std::sin(t);
    return (a * std::cos(t) * d - 2.0 * a * a * sn * sn) / (d * d);
}

double fpp_resid(double t, double a) {
    if (std::abs(a) < 0.05) {
        // series tail, avoids cancellation between f'' and its leading modes
        double sum = 0.0, an = a * a * a * a;
        for (int m = 4; m <= 12; ++m) {
            sum += m * an * std::cos(m * t);
            an *= a;
        }
        return sum;
    }
    const double d = 1.0 - 2.0 * a * std::cos(t) + a * a;
    if (d < 1e-12) throw std::domain_error("variance_kernel: near-singular log argument");
    return fpp(t, a) - a * std::cos(t) - 2.0 * a * a * std::cos(2.0 * t) -
           3.0 * a * a * a * std::cos(3.0 * t);
}

// f(t; a) = log|1 - a e^{it}| = 0.5 log(1 - 2a cos t + a^2), same
// m <= 3 subtraction (f = -sum_m (a^m/m) cos mt).
double f_resid(double t, double a) {
    if (std::abs(a) < 0.05) {
        double sum = 0.0, an = a * a * a * a;
        for (int m = 4; m <= 12; ++m) {
            sum -= an / m * std::cos(m * t);
            an *= a;
        }
        return sum;
    }
    const double d = 1.0 - 2.0 * a * std::cos(t) + a * a;
    if (d < 1e-12) throw std::domain_error("log_modulus_integral: near-singular log argument");
    return 0.5 * std::log(d) + a * std::cos(t) + 0.5 * a * a * std::cos(2.0 * t) +
           (a * a * a / 3.0) * std::cos(3.0 * t);
}

// Deterministic composite node set on [0, K(profile)]: pi-length panels,
// 15-point Gauss-Legendre each. K chosen so that the residual tail
// (bounded by 10 |u^|^4) is below 1e-10.
struct KernelGrid {
    std::vector<double> nodes;
    std::vector<double> weights;  // include the factor 2 for the k<0 half
};

KernelGrid kernel_grid(const BandProfile& profile) {
    const double amp = profile.tail_amplitude();
    const int q = profile.tail_power();
    const double tol = 1e-10;
    double kmax = std::pow(20.0 * std::pow(amp, 4) / ((4.0 * q - 1.0) * tol),
                           1.0 / (4.0 * q - 1.0));
    kmax = std::max(kmax, 16.0 * kPi);
    const int panels = static_cast<int>(std::ceil(kmax / kPi));
    const auto& rule = gauss_legendre(15);
    KernelGrid grid;
    grid.nodes.reserve(static_cast<size_t>(panels) * 15);
    grid.weights.reserve(static_cast<size_t>(panels) * 15);
    for (int p = 0; p < panels; ++p) {
        const double a = p * kPi;
        for (int i = 0; i < 15; ++i) {
            grid.nodes.push_back(a + 0.5 * kPi * (rule.nodes[i] + 1.0));
            grid.weights.push_back(2.0 * 0.5 * kPi * rule.weights[i]);
        }
    }
    return grid;
}

const KernelGrid& cached_kernel_grid(const BandProfile& profile) {
    static const KernelGrid box = kernel_grid(BandProfile(ProfileFamily::box));
    static const KernelGrid tri = kernel_grid(BandProfile(ProfileFamily::triangle));
    static const KernelGrid epa = kernel_grid(BandProfile(ProfileFamily::epanechnikov));
    switch (profile.family()) {
        case ProfileFamily::box: return box;
        case ProfileFamily::triangle: return tri;
        case ProfileFamily::epanechnikov: return epa;
    }
    throw std::logic_error("bad ProfileFamily");
}

}  // namespace

double semicircle_density(double lambda) {
    const double d = 4.0 - lambda * lambda;
    return d > 0.0 ? std::sqrt(d) / (2.0 * kPi) : 0.0;
}

cd stieltjes_g(cd z) {
    if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0)
        throw std::domain_error("stieltjes_g: z on the spectral cut");
    const cd s = std::sqrt(z * z - 4.0);
    const cd r1 = 0.5 * (-z + s);
    const cd r2 = 0.5 * (-z - s);
    return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

cd stieltjes_g_prime(cd z) {
    const cd g = stieltjes_g(z);
    return g * g / (1.0 - g * g);
}

double variance_kernel(double x, double y, const BandProfile& profile) {
    const auto& grid = cached_kernel_grid(profile);
    const double tp = x + y;
    const double tm = x - y;
    KahanSum acc;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        const double a = profile.fourier(grid.nodes[i]);
        acc.add(grid.weights[i] * (fpp_resid(tp, a) + fpp_resid(tm, a)));
    }
    const double c1 = 2.0 * kPi * profile.convolution_moment(1);
    const double c2 = 2.0 * kPi * profile.convolution_moment(2);
    const double c3 = 2.0 * kPi * profile.convolution_moment(3);
    return acc.value() + c1 * (std::cos(tp) + std::cos(tm)) +
           2.0 * c2 * (std::cos(2.0 * tp) + std::cos(2.0 * tm)) +
           3.0 * c3 * (std::cos(3.0 * tp) + std::cos(3.0 * tm));
}

double log_modulus_integral(double x, double y, const BandProfile& profile) {
    const auto& grid = cached_kernel_grid(profile);
    const double tp = x + y;
    const double tm = x - y;
    KahanSum acc;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        const double a = profile.fourier(grid.nodes[i]);
        acc.add(grid.weights[i] * (f_resid(tp, a) - f_resid(tm, a)));
    }
    const double c1 = 2.0 * kPi * profile.convolution_moment(1);
    const double c2 = 2.0 * kPi * profile.convolution_moment(2);
    const double c3 = 2.0 * kPi * profile.convolution_moment(3);
    return acc.value() - c1 * (std::cos(tp) - std::cos(tm)) -
           0.5 * c2 * (std::cos(2.0 * tp) - std::cos(2.0 * tm)) -
           (c3 / 3.0) * (std::cos(3.0 * tp) - std::cos(3.0 * tm));
}

std::vector<double> chebyshev_side_coefficients(const TestFunction& phi, int mmax) {
    const int samples = std::max(8192, 4 * mmax);
    return cosine_coefficients([&](double x) { return phi(2.0 * std::cos(x)); }, mmax,
                               samples);
}

VarianceBreakdown clt_variance(const TestFunction& phi, const BandProfile& profile,
                               double kappa4) {
    int mmax = 64;
    double kernel = 0.0;
    double f1 = 0.0, f2 = 0.0;
    bool converged = false;
    for (; mmax <= 2048; mmax *= 2) {
        const auto f = chebyshev_side_coefficients(phi, mmax);
        f1 = f[0];
        f2 = f[1];
        KahanSum acc;
        for (int m = 1; m <= mmax; ++m)
            acc.add(m * profile.convolution_moment(m) * f[m - 1] * f[m - 1]);
        const double cur = 2.0 / (kPi * kPi) * acc.value();
        // tail estimate from the top quarter of the series
        KahanSum tail;
        for (int m = mmax - mmax / 4 + 1; m <= mmax; ++m)
            tail.add(m * profile.convolution_moment(m) * f[m - 1] * f[m - 1]);
        kernel = cur;
        if (2.0 / (kPi * kPi) * std::abs(tail.value()) <=
            std::max(1e-13, 1e-11 * std::abs(cur))) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("clt_variance: series refinement cap reached");
    VarianceBreakdown out;
    out.kernel_term = kernel;
    out.kappa4_term = profile.uu() * kappa4 * f2 * f2 / (kPi * kPi);
    out.u0_term = profile.u0() * f1 * f1 / (2.0 * kPi * kPi);
    out.total = out.kernel_term + out.kappa4_term + out.u0_term;
    return out;
}

cd covariance_resolvents(cd z1, cd z2, const BandProfile& profile, double kappa4) {
    if (z1.imag() == 0.0 || z2.imag() == 0.0)
        throw std::domain_error("covariance_resolvents: need Im z nonzero");
    const cd g1 = stieltjes_g(z1);
    const cd g2 = stieltjes_g(z2);
    const cd p = g1 * g2;
    const double pmag = std::abs(p);
    if (pmag >= 1.0)
        throw std::domain_error("covariance_resolvents: |g(z1) g(z2)| >= 1");

    cd series = 0.0;
    cd pw = 1.0;  // P^{m-1}
    const int cap = 16384;
    int m = 1;
    for (; m <= cap; ++m) {
        const double cm = profile.convolution_moment(m);
        series += 2.0 * static_cast<double>(m) * cm * pw;
        // remaining tail bounded by 2 c1 sum_{j>m} j |P|^{j-1}
        const double tail = 2.0 * profile.convolution_moment(1) *
                            std::pow(pmag, m) * (m + 1 - m * pmag) /
                            ((1.0 - pmag) * (1.0 - pmag));
        if (tail < 1e-13 * (1.0 + std::abs(series))) break;
        pw *= p;
    }
    if (m > cap) throw std::runtime_error("covariance_resolvents: series cap reached");
    const cd bracket = series - profile.u0() + 2.0 * kappa4 * p;
    return stieltjes_g_prime(z1) * stieltjes_g_prime(z2) * bracket;
}

double covariance_eta(double lambda1, double lambda2, double eta,
                      const BandProfile& profile, double kappa4) {
    if (!(eta > 0.0)) throw std::invalid_argument("covariance_eta: eta > 0 required");
    const cd ie(0.0, eta);
    const cd sum = covariance_resolvents(lambda1 + ie, lambda2 - ie, profile, kappa4) +
                   covariance_resolvents(lambda1 - ie, lambda2 + ie, profile, kappa4) -
                   covariance_resolvents(lambda1 + ie, lambda2 + ie, profile, kappa4) -
                   covariance_resolvents(lambda1 - ie, lambda2 - ie, profile, kappa4);
    const double val = sum.real() / (4.0 * kPi * kPi);
    if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, std::abs(sum.real())))
        throw std::runtime_error("covariance_eta: conjugation symmetry violated");
    return val;
}

int FiniteNOperator::half_bandwidth() const {
    return static_cast<int>(std::floor(profile.support_radius() * b));
}

double FiniteNOperator::infinity_norm() const {
    const int w = half_bandwidth();
    double best = 0.0;
    // row sums depend only on the distance to the nearest edge
    for (int i = 0; i < std::min(n, w + 1); ++i) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const int d = std::abs(i - k);
            if (d <= w) sum += profile.value(d / b) / b;
        }
        best = std::max(best, sum);
    }
    return best;
}

FiniteNSigma finite_n_sigma(const FiniteNOperator& op, cd zeta) {
    if (std::abs(zeta) <= 1.0)
        throw std::invalid_argument("finite_n_sigma: |zeta| > 1 required");
    if (op.n < 2 || op.n > 8192)
        throw std::invalid_argument("finite_n_sigma: n must be in [2, 8192]");
    const int n = op.n;
    const int w = op.half_bandwidth();
    std::vector<double> t(w + 1);
    for (int d = 0; d <= w; ++d) t[d] = op.profile.value(d / op.b) / op.b;

    // lhs: per-p Neumann series, banded Toeplitz matvecs on the trailing block
    const cd inv_zeta = 1.0 / zeta;
    cd lhs = 0.0;
    std::vector<double> v, next, up;
    for (int p = 1; p <= n - 1; ++p) {
        const int m = n - p;
        up.assign(m, 0.0);
        for (int i = 1; i <= std::min(m, w); ++i) up[i - 1] = op.profile.value(i / op.b);
        v = up;
        cd coeff = inv_zeta;  // zeta^{-j-1} at j = 0
        cd solve_dot = 0.0;
        for (int j = 0; j < 4096; ++j) {
            double dot = 0.0, vmax = 0.0;
            for (int i = 0; i < std::min(m, w); ++i) dot += v[i] * up[i];
            for (int i = 0; i < m; ++i) vmax = std::max(vmax, std::abs(v[i]));
            solve_dot += coeff * dot;
            if (std::abs(coeff) * vmax < 1e-12) break;
            // v <- U^(p) v
            next.assign(m, 0.0);
            for (int i = 0; i < m; ++i) {
                double s = t[0] * v[i];
                const int dmax = std::min(w, m - 1 - i);
                for (int d = 1; d <= std::min(w, i); ++d) s += t[d] * v[i - d];
                for (int d = 1; d <= dmax; ++d) s += t[d] * v[i + d];
                next[i] = s;
            }
            v.swap(next);
            coeff *= inv_zeta;
        }
        lhs += solve_dot / op.b;
    }
    lhs /= zeta * static_cast<double>(n);

    // rhs: spectral trace of the same series
    BandMatrix u_mat(n, w);
    for (int d = 0; d <= w; ++d)
        for (int i = 0; i + d < n; ++i) u_mat.diagonal(d)[i] = t[d];
    const Spectrum mu = eigenvalues(u_mat);
    cd rhs = 0.0;
    for (double m : mu.eigenvalues) rhs += std::log(1.0 - m * inv_zeta) + m * inv_zeta;
    rhs *= -op.b / static_cast<double>(n);

    // limit: sum over convolution moments
    cd limit = 0.0;
    cd zm = inv_zeta * inv_zeta;
    for (int m = 2; m <= 4096; ++m) {
        const cd term = zm * op.profile.convolution_moment(m) / static_cast<double>(m);
        limit += term;
        if (std::abs(term) < 1e-15) break;
        zm *= inv_zeta;
    }
    return {lhs, rhs, limit};
}

}  // namespace bandlab

#include "bandlab/statistics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "bandlab/quadrature.hpp"

namespace bandlab {

namespace {
constexpr double kPi = std::numbers::pi;

// Iterative radix-2 FFT, conjugate-exponent convention e^{+2 pi i jk / N}.
void fft_plus(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    if ((n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

double evaluate_les(const Spectrum& s, const TestFunction& phi) {
    KahanSum acc;
    for (double lam : s.eigenvalues) acc.add(phi(lam));
    return acc.value();
}

std::vector<FluctuationSample> center_scale(const std::vector<double>& values,
                                            double b, int n) {
    if (values.size() < 2)
        throw std::invalid_argument("center_scale: need at least 2 replicas");
    KahanSum acc;
    for (double v : values) acc.add(v);
    const double mean = acc.value() / static_cast<double>(values.size());
    const double scale = std::sqrt(b / n);
    std::vector<FluctuationSample> out(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        out[i] = {scale * (values[i] - mean), static_cast<int>(i), 0};
    return out;
}

double poisson_kernel(double lambda, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("poisson_kernel: eta > 0 required");
    return eta / (kPi * (lambda * lambda + eta * eta));
}

TestFunction poisson_smooth(const TestFunction& phi, double eta) {
    if (!phi.integrable())
        throw std::invalid_argument("poisson_smooth: phi must be integrable");
    return TestFunction::poisson_smoothed(phi, eta);
}

double resolvent_les(const Spectrum& s, const TestFunction& phi, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("resolvent_les: eta > 0 required");
    if (!phi.integrable())
        throw std::invalid_argument("resolvent_les: phi must be integrable");
    // Integrate over phi's effective support; the Poisson spikes under the
    // integrand live at the eigenvalues, each of width eta.
    auto [lo, hi] = phi.effective_support(1e-13);
    if (lo >= hi) return 0.0;
    auto f = [&](double x) {
        KahanSum acc;
        for (double lam : s.eigenvalues) acc.add(poisson_kernel(x - lam, eta));
        return phi(x) * acc.value();
    };
    // split so that no single panel straddles many spikes
    const int chunks = std::max(1, static_cast<int>((hi - lo) / std::max(eta, 1e-3)));
    const int used = std::min(chunks, 256);
    KahanSum total;
    for (int i = 0; i < used; ++i) {
        const double a = lo + (hi - lo) * i / used;
        const double b = lo + (hi - lo) * (i + 1) / used;
        total.add(gk_integrate(f, a, b, 1e-9 / used));
    }
    return total.value();
}

double sobolev_norm(const TestFunction& phi, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("sobolev_norm: s > 0 required");
    if (!phi.integrable() || !phi.square_integrable())
        throw std::invalid_argument("sobolev_norm: phi must be in L1 and L2");

    auto [lo, hi] = phi.effective_support(1e-14);
    if (lo >= hi) return 0.0;
    double L = std::max(std::abs(lo), std::abs(hi)) + 1.0;

    auto norm_at = [&](double window, size_t n) {
        const double h = 2.0 * window / static_cast<double>(n);
        std::vector<std::complex<double>> a(n);
        for (size_t m = 0; m < n; ++m) a[m] = phi(-window + static_cast<double>(m) * h);
        fft_plus(a);
        // phi^(k_j) = h (-1)^j [FFT+ a]_j at k_j = pi j / window, j = -n/2..n/2
        const double dk = kPi / window;
        KahanSum acc;
        for (size_t idx = 0; idx < n; ++idx) {
            const long j = idx <= n / 2 ? static_cast<long>(idx)
                                        : static_cast<long>(idx) - static_cast<long>(n);
            const double k = dk * static_cast<double>(j);
            const double mag = h * std::abs(a[idx]);
            acc.add(std::pow(1.0 + 2.0 * std::abs(k), 2.0 * s) * mag * mag);
        }
        return std::sqrt(acc.value() * dk);
    };

    size_t n = 2048;
    double prev = norm_at(L, n);
    for (int round = 0; round < 24; ++round) {
        // alternate refining the spatial grid and widening the window
        const bool widen = round % 2 == 1;
        const double l2 = widen ? 2.0 * L : L;
        const size_t n2 = n * 2;
        const double cur = norm_at(l2, n2);
        const double change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        L = l2;
        n = n2;
        prev = cur;
        if (change < 1e-6 && round >= 2) return cur;
        if (n > (1u << 21))
            throw std::runtime_error("sobolev_norm: grid refinement cap reached");
    }
    return prev;
}

}  // namespace bandlab

#include "bandlab/band_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "bandlab/quadrature.hpp"
#include "bandlab/rng.hpp"

namespace bandlab {

int BandMatrixSpec::half_bandwidth() const {
    return static_cast<int>(std::floor(profile.support_radius() * b));
}

void BandMatrixSpec::validate() const {
    if (n < 1) throw std::invalid_argument("BandMatrixSpec: n must be positive");
    if (!(b >= 2.0))
        throw std::invalid_argument("BandMatrixSpec: b < 2 rejected (truncation at sqrt(b) "
                                    "would destroy unit variance)");
    if (half_bandwidth() >= n)
        throw std::invalid_argument("BandMatrixSpec: band must lie strictly inside the matrix");
}

BandMatrix::BandMatrix(int n, int half_bandwidth) : n_(n), w_(half_bandwidth) {
    if (n < 1 || half_bandwidth < 0 || half_bandwidth >= n)
        throw std::invalid_argument("BandMatrix: bad dimensions");
    diagonals_.resize(w_ + 1);
    for (int d = 0; d <= w_; ++d) diagonals_[d].assign(n_ - d, 0.0);
}

double BandMatrix::at(int i, int j) const {
    const int d = std::abs(i - j);
    if (d > w_) return 0.0;
    return diagonals_[d][std::min(i, j)];
}

double BandMatrix::trace() const {
    KahanSum s;
    for (double x : diagonals_[0]) s.add(x);
    return s.value();
}

double BandMatrix::frobenius_sq() const {
    KahanSum s;
    for (double x : diagonals_[0]) s.add(x * x);
    for (int d = 1; d <= w_; ++d)
        for (double x : diagonals_[d]) s.add(2.0 * x * x);
    return s.value();
}

std::vector<std::vector<double>> BandMatrix::densify() const {
    std::vector<std::vector<double>> a(n_, std::vector<double>(n_, 0.0));
    for (int d = 0; d <= w_; ++d)
        for (int i = 0; i + d < n_; ++i) a[i][i + d] = a[i + d][i] = diagonals_[d][i];
    return a;
}

PeriodicBandMatrix::PeriodicBandMatrix(BandMatrix core, std::vector<std::vector<double>> corners)
    : core_(std::move(core)), corners_(std::move(corners)) {
    if (static_cast<int>(corners_.size()) != core_.half_bandwidth())
        throw std::invalid_argument("PeriodicBandMatrix: corner block count mismatch");
}

double PeriodicBandMatrix::at(int i, int j) const {
    const int n = core_.size();
    const int d = std::abs(i - j);
    if (d <= core_.half_bandwidth()) return core_.at(i, j);
    const int dn = n - d;
    if (dn >= 1 && dn <= core_.half_bandwidth()) return corners_[dn - 1][std::min(i, j)];
    return 0.0;
}

std::vector<std::vector<double>> PeriodicBandMatrix::densify() const {
    auto a = core_.densify();
    const int n = core_.size();
    for (int dn = 1; dn <= core_.half_bandwidth(); ++dn)
        for (int i = 0; i < dn; ++i) a[i][i + n - dn] = a[i + n - dn][i] = corners_[dn - 1][i];
    return a;
}

BandMatrix sample_band_matrix(const BandMatrixSpec& spec) {
    spec.validate();
    const int w = spec.half_bandwidth();
    BandMatrix m(spec.n, w);
    for (int d = 0; d <= w; ++d) {
        const double scale = std::sqrt(spec.profile.value(d / spec.b) / spec.b);
        auto& diag = m.diagonal(d);
        for (int i = 0; i + d < spec.n; ++i) {
            EntryStream stream(spec.seed, entry_key(i, i + d));
            diag[i] = scale * spec.distribution.sample(stream);
        }
    }
    return m;
}

PeriodicBandMatrix sample_periodized(const BandMatrixSpec& spec) {
    spec.validate();
    const int w = spec.half_bandwidth();
    if (2 * w + 1 >= spec.n)
        throw std::invalid_argument("sample_periodized: band and corners overlap");
    BandMatrix core(spec.n, w);
    const double tm = spec.distribution.truncated_mean(spec.b);
    for (int d = 0; d <= w; ++d) {
        const double scale = std::sqrt(spec.profile.value(d / spec.b) / spec.b);
        auto& diag = core.diagonal(d);
        for (int i = 0; i + d < spec.n; ++i) {
            EntryStream stream(spec.seed, entry_key(i, i + d));
            const double wtilde = spec.distribution.sample(stream);
            const double kept = std::abs(wtilde) <= std::sqrt(spec.b) ? wtilde : 0.0;
            diag[i] = scale * (kept - tm);
        }
    }
    std::vector<std::vector<double>> corners(w);
    for (int dn = 1; dn <= w; ++dn) {
        const double scale = std::sqrt(spec.profile.value(dn / spec.b) / spec.b);
        corners[dn - 1].assign(dn, 0.0);
        for (int i = 0; i < dn; ++i) {
            EntryStream stream(spec.seed, entry_key(i, i + spec.n - dn, /*domain=*/1));
            const double wtilde = spec.distribution.sample(stream);
            const double kept = std::abs(wtilde) <= std::sqrt(spec.b) ? wtilde : 0.0;
            corners[dn - 1][i] = scale * (kept - tm);
        }
    }
    return PeriodicBandMatrix(std::move(core), std::move(corners));
}

TruncationDistance truncation_distance_sq(const BandMatrix& full,
                                          const PeriodicBandMatrix& per) {
    if (full.size() != per.size() || full.half_bandwidth() != per.half_bandwidth())
        throw std::invalid_argument("truncation_distance_sq: shapes differ");
    const int n = full.size();
    const int w = full.half_bandwidth();
    KahanSum band;
    for (int d = 0; d <= w; ++d) {
        const auto& a = full.diagonal(d);
        const auto& b = per.core().diagonal(d);
        const double mult = d == 0 ? 1.0 : 2.0;
        for (size_t i = 0; i < a.size(); ++i) {
            const double diff = a[i] - b[i];
            band.add(mult * diff * diff);
        }
    }
    KahanSum corner;
    for (int dn = 1; dn <= w; ++dn)
        for (double x : per.corner(dn)) corner.add(2.0 * x * x);
    return {band.value() / n, corner.value() / n};
}

}  // namespace bandlab

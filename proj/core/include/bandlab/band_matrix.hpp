#pragma once

#include <cstdint>
#include <vector>

#include "bandlab/distribution.hpp"
#include "bandlab/profile.hpp"

namespace bandlab {

// What to sample: n x n symmetric, entries (u(|i-j|/b)/b)^{1/2} w_ij.
struct BandMatrixSpec {
    int n;
    double b;
    BandProfile profile;
    EntryDistribution distribution;
    std::uint64_t seed;

    // floor(C* b): index distance of the outermost stored diagonal.
    int half_bandwidth() const;
    // Throws std::invalid_argument on b < 2 or a band not strictly inside
    // the matrix.
    void validate() const;
};

// Symmetric band matrix in banded-by-diagonals storage. diagonal(d)[i]
// holds entry (i, i+d), 0-based, d = 0..w. Upper triangle only; symmetry is
// structural.
class BandMatrix {
  public:
    BandMatrix(int n, int half_bandwidth);

    int size() const { return n_; }
    int half_bandwidth() const { return w_; }

    std::vector<double>& diagonal(int d) { return diagonals_[d]; }
    const std::vector<double>& diagonal(int d) const { return diagonals_[d]; }

    // Entry (i,j); zero outside the band.
    double at(int i, int j) const;

    double trace() const;
    double frobenius_sq() const;

    std::vector<std::vector<double>> densify() const;

  private:
    int n_;
    int w_;
    std::vector<std::vector<double>> diagonals_;
};

// Truncated and periodically continued matrix: the band holds
// truncate-centered copies of the same w realizations as the coupled
// BandMatrix, the wrap-around corners hold fresh independent copies drawn
// at the periodic distance |i-j|_n = min(|i-j|, n-|i-j|).
class PeriodicBandMatrix {
  public:
    PeriodicBandMatrix(BandMatrix core, std::vector<std::vector<double>> corners);

    int size() const { return core_.size(); }
    int half_bandwidth() const { return core_.half_bandwidth(); }
    const BandMatrix& core() const { return core_; }

    // Corner entries at |i-j| = n-d, d = 1..w: corner(d)[i] is entry
    // (i, i+n-d) for i = 0..d-1.
    const std::vector<double>& corner(int d) const { return corners_[d - 1]; }

    double at(int i, int j) const;
    std::vector<std::vector<double>> densify() const;

  private:
    BandMatrix core_;
    std::vector<std::vector<double>> corners_;
};

BandMatrix sample_band_matrix(const BandMatrixSpec& spec);

// Coupled construction: band entries are truncate_center of the SAME w
// realizations sample_band_matrix(spec) uses; corners are independent.
// Requires 2w+1 < n so band and corners do not overlap.
PeriodicBandMatrix sample_periodized(const BandMatrixSpec& spec);

// n^{-1} Tr (M_full - M_per)^2 for the coupled pair, split into the band
// truncation part and the corner part (full matrix has no corners).
struct TruncationDistance {
    double band;
    double corner;
    double total() const { return band + corner; }
};
TruncationDistance truncation_distance_sq(const BandMatrix& full,
                                          const PeriodicBandMatrix& per);

}  // namespace bandlab

#pragma once

#include <cstdint>

namespace bandlab {

// SplitMix64 finalizer. Full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based stream: a tiny SplitMix64 generator whose state is derived
// from (seed, key). Every matrix entry owns one stream, so a sampled matrix
// is identical no matter the traversal order or thread count. Streams may be
// drawn from repeatedly (rejection-free laws use a fixed number of draws,
// compound laws as many as they need).
class EntryStream {
  public:
    EntryStream(std::uint64_t seed, std::uint64_t key)
        : state_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(key + 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on (0,1]; never returns 0 so log() is safe.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Key for the stream of matrix entry (i,j), i <= j, with a small domain tag
// separating coupled sub-ensembles (band entries vs. fresh corner copies).
constexpr std::uint64_t entry_key(std::uint64_t i, std::uint64_t j, std::uint64_t domain = 0) {
    return (domain << 58) | (i << 29) | j;  // indices < 2^29
}

// Per-replica seed derivation used by the Monte Carlo driver.
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica) {
    return mix64(master_seed ^ mix64(replica + 0x165667b19e3779f9ULL));
}

}  // namespace bandlab

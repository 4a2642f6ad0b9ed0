#include <doctest.h>

#include <cstdint>
#include <set>

#include "bandlab/rng.hpp"

using namespace bandlab;

TEST_CASE("streams are reproducible and key-separated") {
    EntryStream a(42, entry_key(3, 7));
    EntryStream b(42, entry_key(3, 7));
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

    EntryStream c(42, entry_key(7, 3));
    EntryStream d(42, entry_key(3, 7, 1));
    EntryStream e(43, entry_key(3, 7));
    EntryStream f(42, entry_key(3, 7));
    std::set<std::uint64_t> firsts{c.next_u64(), d.next_u64(), e.next_u64(), f.next_u64()};
    CHECK(firsts.size() == 4);
}

TEST_CASE("next_unit lies in (0,1]") {
    EntryStream s(1, 2);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.next_unit();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
    CHECK(lo < 1e-3);
    CHECK(hi > 0.999);
}

TEST_CASE("replica seeds decorrelate") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(replica_seed(7, r));
    CHECK(seen.size() == 1000);
}

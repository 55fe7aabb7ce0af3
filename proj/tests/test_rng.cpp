#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "vrusim/rng.hpp"

using vrusim::RngStream;
using vrusim::derive_seed;

TEST_CASE("identical seeds reproduce the exact sequence") {
    RngStream a(12345);
    RngStream b(12345);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
    RngStream a(1);
    RngStream b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64();
    CHECK(equal == 0);
}

TEST_CASE("seed derivation separates streams and is reproducible") {
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    CHECK(derive_seed(42, 0) != derive_seed(42, 1));
    CHECK(derive_seed(42, 1) != derive_seed(43, 1));
    // substream(base, id) must equal a stream seeded with the derived seed
    RngStream direct(derive_seed(7, 3));
    RngStream sub = RngStream::substream(7, 3);
    for (int i = 0; i < 16; ++i) CHECK(direct.next_u64() == sub.next_u64());
}

TEST_CASE("uniform() stays in [0, 1)") {
    RngStream rng(99);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("uniform(lo, hi) respects bounds and mean") {
    RngStream rng(5);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform(2.0, 6.0);
        REQUIRE(u >= 2.0);
        REQUIRE(u < 6.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("uniform_int covers the inclusive range evenly") {
    RngStream rng(17);
    std::vector<int> counts(10, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const std::int64_t k = rng.uniform_int(0, 9);
        REQUIRE(k >= 0);
        REQUIRE(k <= 9);
        counts[static_cast<std::size_t>(k)] += 1;
    }
    for (int c : counts) {
        CHECK(c > n / 10 - n / 50);  // within 20% of the expected bucket count
        CHECK(c < n / 10 + n / 50);
    }
    // degenerate one-value range
    for (int i = 0; i < 10; ++i) CHECK(rng.uniform_int(4, 4) == 4);
    // negative bounds
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t k = rng.uniform_int(-3, 2);
        REQUIRE(k >= -3);
        REQUIRE(k <= 2);
    }
}

TEST_CASE("normal matches first two moments") {
    RngStream rng(23);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(1.0, 2.0);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("normal consumes exactly two uniforms") {
    RngStream a(31);
    RngStream b(31);
    (void)a.normal(0.0, 1.0);
    (void)b.uniform();
    (void)b.uniform();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("exponential has the requested mean and is nonnegative") {
    RngStream rng(29);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.exponential(2.0);
        REQUIRE(x >= 0.0);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("exponential consumes exactly one uniform") {
    RngStream a(37);
    RngStream b(37);
    (void)a.exponential(1.0);
    (void)b.uniform();
    CHECK(a.next_u64() == b.next_u64());
}

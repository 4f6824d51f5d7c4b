#include "oracles.hpp"

#include "querymind/combinatorics.hpp"

#include <doctest.h>

#include <cmath>

using namespace querymind;

namespace {

Rational q(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// C! - (H_n - H_C) straight from the definition.
Rational witness(unsigned long n, unsigned long c)
{
    Rational h = 0;
    for (unsigned long i = c + 1; i <= n; ++i)
        h += Rational(1, i);
    return Rational(factorial(c)) - h;
}

} // namespace

TEST_CASE("factorials and binomials")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    CHECK(falling_factorial(8, 3) == 336);
    CHECK(falling_factorial(5, 0) == 1);
}

TEST_CASE("derangements")
{
    CHECK(derangement(0) == 1);
    CHECK(derangement(1) == 0);
    CHECK(derangement(4) == 9);
    for (int m = 0; m <= 9; ++m)
        CHECK(derangement(static_cast<unsigned long>(m)) == oracle::fixed_point_free(m));
    // Nearest integer to m!/e, with 1/e bracketed by consecutive partial
    // sums of the alternating series.
    for (unsigned long m = 1; m <= 12; ++m) {
        Rational lo = 0, hi = 0, partial = 0;
        for (unsigned long i = 0; i <= m + 3; ++i) {
            partial += Rational(i % 2 ? -1 : 1) / Rational(factorial(i));
            (i % 2 ? lo : hi) = partial;
        }
        const Rational f(factorial(m));
        const Rational d(derangement(m));
        CHECK(abs(d - f * lo) < q(1, 2));
        CHECK(abs(d - f * hi) < q(1, 2));
    }
}

TEST_CASE("bucket sizes")
{
    CHECK(bucket_size(4, 4) == 1);
    CHECK(bucket_size(4, 3) == 0);
    CHECK(bucket_size(4, 1) == 8);
    CHECK_THROWS_AS(bucket_size(4, 5), Error);
    CHECK_THROWS_AS(bucket_size(4, -1), Error);
    for (int n = 1; n <= 8; ++n) {
        const auto hist = oracle::fixed_point_histogram(n);
        for (int r = 0; r <= n; ++r)
            REQUIRE(bucket_size(static_cast<unsigned long>(n), r) == hist[static_cast<std::size_t>(r)]);
    }
    for (unsigned long n = 1; n <= 12; ++n) {
        BigInt total = 0;
        for (long r = 0; r <= static_cast<long>(n); ++r)
            total += bucket_size(n, r);
        CHECK(total == factorial(n));
    }
}

TEST_CASE("bucket tail sums")
{
    CHECK(bucket_tail_sum(4, 0) == 24);
    CHECK(bucket_tail_sum(4, 4) == 1);
    CHECK(bucket_tail_sum(4, 2) == 7);
    CHECK_THROWS_AS(bucket_tail_sum(4, 5), Error);
    for (unsigned long n = 1; n <= 12; ++n)
        for (long x = 0; x <= static_cast<long>(n); ++x) {
            BigInt direct = 0;
            for (long i = x; i <= static_cast<long>(n); ++i)
                direct += bucket_size(n, i);
            REQUIRE(bucket_tail_sum(n, x) == direct);
            REQUIRE(bucket_tail_sum(n, x) * factorial(static_cast<unsigned long>(x)) <= factorial(n));
        }
}

TEST_CASE("harmonic numbers")
{
    CHECK(harmonic(0) == 0);
    CHECK(harmonic(1) == 1);
    CHECK(harmonic(2) == q(3, 2));
    CHECK(harmonic(4) == q(25, 12));
    CHECK(harmonic(10) == q(7381, 2520));
}

TEST_CASE("trace bound values")
{
    for (unsigned long n = 2; n <= 9; ++n)
        for (unsigned long c = 1; c < n; ++c)
            CHECK(lemma2_bound(n, c, 0) == 1);
    CHECK(lemma2_bound(5, 2, 1) == q(5, 18));
    CHECK(lemma2_bound(5, 2, 3) == (Rational(2) - (harmonic(5) - harmonic(2))) / Rational(120));
    CHECK(lemma2_bound(5, 2, 3) == q(73, 7200));
    CHECK_THROWS_AS(lemma2_bound(5, 5, 0), Error);
    CHECK_THROWS_AS(lemma2_bound(5, 0, 0), Error);
    CHECK_THROWS_AS(lemma2_bound(5, 2, 4), Error);
    CHECK_THROWS_AS(lemma2_bound(5, 2, -1), Error);
}

TEST_CASE("trivial lower bound")
{
    CHECK(trivial_lower_bound(1) == 0);
    CHECK(trivial_lower_bound(2) == 1);
    CHECK(trivial_lower_bound(4) == 3);
    for (unsigned long n = 2; n <= 300; ++n) {
        unsigned long t = 0;
        BigInt p = 1;
        const BigInt f = factorial(n);
        while (p < f) {
            p *= n;
            ++t;
        }
        REQUIRE(trivial_lower_bound(n) == t);
    }
    // Past the exact range: lgamma in double, used only when clearly off an integer.
    for (unsigned long n : {20001UL, 54321UL, 100000UL, 1000000UL}) {
        const double x = std::lgamma(static_cast<double>(n) + 1) / std::log(static_cast<double>(n));
        REQUIRE(std::abs(x - std::round(x)) > 1e-3);
        CHECK(trivial_lower_bound(n) == static_cast<unsigned long>(std::ceil(x)));
    }
}

TEST_CASE("entropy lower bound")
{
    CHECK(entropy_lower_bound(1, 1) == 0);
    CHECK(entropy_lower_bound(4, 4) == 2);
    CHECK(entropy_lower_bound(2, 4) == 2);
    CHECK_THROWS_AS(entropy_lower_bound(4, 3), Error);
    for (unsigned long n = 1; n <= 12; ++n)
        for (unsigned long k = n; k <= 16; ++k) {
            const BigInt size = falling_factorial(k, n);
            unsigned long s = 0;
            BigInt p = 1;
            while (p < size) {
                p *= 8;
                ++s;
            }
            REQUIRE(entropy_lower_bound(n, k) == s);
        }
    const double x = (std::lgamma(1000001.0) - std::lgamma(1.0)) / std::log(2.0) / 3.0;
    CHECK(entropy_lower_bound(1000000, 1000000) == static_cast<unsigned long>(std::ceil(x)));
}

TEST_CASE("exact match counts")
{
    CHECK(exact_match_count(2, 3, 0) == 3);
    CHECK(exact_match_count(2, 3, 1) == 2);
    CHECK(exact_match_count(2, 3, 2) == 1);
    CHECK(exact_match_count(5, 7, 5) == 1);
    CHECK_THROWS_AS(exact_match_count(3, 2, 0), Error);
    CHECK_THROWS_AS(exact_match_count(3, 3, 4), Error);
    for (unsigned long n = 1; n <= 7; ++n)
        for (long x = 0; x <= static_cast<long>(n); ++x)
            REQUIRE(exact_match_count(n, n, x) == bucket_size(n, x));
    for (int n = 1; n <= 5; ++n)
        for (int k = n; k <= 7; ++k) {
            const auto hist = oracle::match_histogram(n, k);
            for (int x = 0; x <= n; ++x)
                REQUIRE(exact_match_count(static_cast<unsigned long>(n), static_cast<unsigned long>(k), x) ==
                        hist[static_cast<std::size_t>(x)]);
        }
    for (unsigned long n = 1; n <= 6; ++n)
        for (unsigned long k = n; k <= 8; ++k) {
            BigInt total = 0;
            for (long x = 0; x <= static_cast<long>(n); ++x) {
                const BigInt c = exact_match_count(n, k, x);
                total += c;
                // P[Y = x] <= 1/x!
                REQUIRE(c * factorial(static_cast<unsigned long>(x)) <= falling_factorial(k, n));
            }
            REQUIRE(total == falling_factorial(k, n));
        }
}

TEST_CASE("shannon entropy")
{
    std::vector<Rational> point{q(1)};
    CHECK(shannon_entropy(point) == 0.0);
    std::vector<Rational> two{q(1, 2), q(1, 2)};
    CHECK(shannon_entropy(two) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<Rational> eight(8, q(1, 8));
    CHECK(shannon_entropy(eight) == doctest::Approx(3.0).epsilon(1e-12));
    std::vector<Rational> zero_entry{q(0), q(1)};
    CHECK(shannon_entropy(zero_entry) == 0.0);
    std::vector<Rational> bad{q(1, 2), q(1, 3)};
    CHECK_THROWS_AS(shannon_entropy(bad), Error);
    std::vector<Rational> negative{q(3, 2), q(-1, 2)};
    CHECK_THROWS_AS(shannon_entropy(negative), Error);

    const std::vector<BigInt> counts{9, 8, 6, 0, 1};
    CHECK(entropy_of_counts(counts) == doctest::Approx(oracle::entropy_bits({9, 8, 6, 0, 1})).epsilon(1e-12));
    for (unsigned long n = 1; n <= 8; ++n) {
        std::vector<BigInt> c;
        for (long x = 0; x <= static_cast<long>(n); ++x)
            c.push_back(exact_match_count(n, n, x));
        CHECK(entropy_of_counts(c) < 3.0);
    }
}

TEST_CASE("iterated logarithm ceiling")
{
    CHECK(iterated_log_ceiling(1000000, LogBase::Natural) == 3);
    CHECK(iterated_log_ceiling(1000000, LogBase::Two) == 5);
    CHECK(iterated_log_ceiling(16, LogBase::Two) == 2);  // log2 log2 16 = 2 exactly
    CHECK(iterated_log_ceiling(17, LogBase::Two) == 3);
    CHECK_THROWS_AS(iterated_log_ceiling(3, LogBase::Natural), Error);
    for (unsigned long n = 4; n <= 5000; n += 7) {
        for (auto base : {LogBase::Natural, LogBase::Two}) {
            const double l = base == LogBase::Two ? std::log2(std::log2(double(n))) : std::log(std::log(double(n)));
            if (std::abs(l - std::round(l)) < 1e-9)
                continue;
            REQUIRE(iterated_log_ceiling(n, base) == static_cast<unsigned long>(std::max(0.0, std::ceil(l))));
        }
    }
}

TEST_CASE("threshold condition, exact range")
{
    for (unsigned long n = 3; n <= 60; ++n)
        for (unsigned long c = 1; c < n; ++c) {
            const auto chk = theorem1_check(n, c);
            const Rational w = witness(n, c);
            REQUIRE(chk.witness.exact);
            REQUIRE(chk.witness.lower == w);
            REQUIRE(chk.holds == (w > 1));
        }
    // Fails at C = 1 for every n >= 3.
    for (unsigned long n = 3; n <= 200; ++n)
        CHECK_FALSE(theorem1_check(n, 1).holds);
    CHECK_THROWS_AS(theorem1_check(5, 5), Error);
    CHECK_THROWS_AS(theorem1_check(5, 0), Error);
}

TEST_CASE("threshold condition at n = 10^6")
{
    // H_{10^6} - H_3 is about 12.56 and H_{10^6} - H_4 about 12.31 (double
    // estimate ln n + gamma + 1/2n; both conclusions hold with wide margins).
    const double hn = std::log(1e6) + 0.5772156649015329 + 1.0 / 2e6;
    CHECK(6.0 - (hn - 11.0 / 6.0) < 0.0);
    CHECK(24.0 - (hn - 25.0 / 12.0) > 10.0);

    const auto c3 = theorem1_check(1000000, 3);
    CHECK_FALSE(c3.holds);
    CHECK(c3.witness.lower <= c3.witness.upper);
    CHECK(c3.witness.upper < 1);
    const auto c4 = theorem1_check(1000000, 4);
    CHECK(c4.holds);
    CHECK(c4.witness.lower > 1);

    const auto nat = theorem1_report(1000000, LogBase::Natural);
    CHECK(nat.c == 3);
    CHECK_FALSE(nat.at_c.holds);
    CHECK_FALSE(nat.lower_bound.has_value());
    CHECK_FALSE(nat.largest_holding_c_up_to_c.has_value());
    CHECK(nat.smallest_holding_c == 4UL);

    const auto two = theorem1_report(1000000, LogBase::Two);
    CHECK(two.c == 5);
    CHECK(two.at_c.holds);
    CHECK(two.lower_bound == 999995UL);
    CHECK(two.largest_holding_c_up_to_c == 5UL);
    CHECK(two.smallest_holding_c == 4UL);
}

TEST_CASE("threshold bracket agrees with exact evaluation across the switchover")
{
    for (unsigned long n : {1999UL, 2000UL, 2001UL, 2500UL}) {
        for (unsigned long c = 2; c <= 5; ++c) {
            const auto chk = theorem1_check(n, c);
            const Rational w = witness(n, c);
            REQUIRE(chk.witness.lower <= w);
            REQUIRE(w <= chk.witness.upper);
            REQUIRE(chk.holds == (w > 1));
        }
    }
}

TEST_CASE("threshold monotone in C")
{
    for (unsigned long n : {10UL, 100UL, 5000UL, 100000UL})
        for (unsigned long c = 1; c + 1 < n && c < 8; ++c)
            if (theorem1_check(n, c).holds)
                CHECK(theorem1_check(n, c + 1).holds);
}

TEST_CASE("theorem report for small n")
{
    CHECK_THROWS_AS(theorem1_report(3), Error);
    for (unsigned long n = 4; n <= 400; ++n) {
        const auto rep = theorem1_report(n);
        std::optional<unsigned long> smallest;
        for (unsigned long c = 1; c < n && !smallest; ++c)
            if (witness(n, c) > 1)
                smallest = c;
        REQUIRE(rep.smallest_holding_c == smallest);
        REQUIRE(rep.at_c.holds == (witness(n, rep.c) > 1));
        if (rep.at_c.holds)
            REQUIRE(rep.lower_bound == n - rep.c);
    }
}

TEST_CASE("bound report")
{
    const auto r = bound_report(4, 4);
    CHECK(r.trivial_lb == 3);
    CHECK(r.entropy_lb == 2UL);
    REQUIRE(r.single_query_entropy.has_value());
    CHECK(*r.single_query_entropy == doctest::Approx(oracle::entropy_bits({9, 8, 6, 0, 1})).epsilon(1e-12));
    CHECK(*r.permutations == 24);
    CHECK(*r.harmonic_n == q(25, 12));
    REQUIRE(r.buckets.size() == 5);
    CHECK(r.buckets[1].bucket_size == 8);
    CHECK(r.buckets[2].tail_sum == 7);
    for (const auto &b : r.buckets)
        CHECK(b.tail_bound_holds);
    REQUIRE(r.matches.size() == 5);
    for (const auto &m : r.matches)
        CHECK(m.below_cap);
    CHECK(r.theorem1_natural.has_value());
    CHECK_FALSE(r.lemma2.empty());

    const auto no_entropy = bound_report(5, 3);
    CHECK_FALSE(no_entropy.entropy_lb.has_value());
    CHECK(no_entropy.matches.empty());

    const auto small = bound_report(2, 2);
    CHECK_FALSE(small.theorem1_natural.has_value());

    const auto big = bound_report(100000, 100000);
    CHECK(big.buckets.empty());
    CHECK(big.theorem1_base2.has_value());

    CHECK_THROWS_AS(bound_report(0, 3), Error);
}

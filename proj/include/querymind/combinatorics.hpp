// combinatorics.hpp -- exact counting formulas and lower-bound calculators

#pragma once

#include "querymind/codespace.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace querymind {

/// Exact rational, always kept in canonical form (reduced, positive denominator).
using Rational = mpq_class;

BigInt factorial(unsigned long m);
BigInt binomial(unsigned long n, unsigned long r);

/// k!/(k-n)!, the number of injective length-n codes over k colors.
BigInt falling_factorial(unsigned long k, unsigned long n);

/// Number of fixed-point-free permutations of m elements, from the
/// alternating sum m! * sum_{i<=m} (-1)^i / i! evaluated in integers.
BigInt derangement(unsigned long m);

/// Permutations of [n] agreeing with a fixed permutation in exactly r places:
/// C(n, r) * D(n - r).
BigInt bucket_size(unsigned long n, long r);

/// Permutations of [n] with at least x fixed points. Never exceeds n!/x!.
BigInt bucket_tail_sum(unsigned long n, long x);

/// H_m = 1 + 1/2 + ... + 1/m, with H_0 = 0.
Rational harmonic(unsigned long m);

/// (C! - (H_{C+t} - H_C)) / (C+t)!, the guaranteed fraction of all n!
/// permutations still consistent after t adversarial turns.
/// Requires 1 <= C < n and 0 <= t <= n - C.
Rational lemma2_bound(unsigned long n, unsigned long c, long t);

/// Smallest t with n^t >= n!, i.e. ceil(log_n(n!)); 0 for n = 1.
unsigned long trivial_lower_bound(unsigned long n);

/// Smallest s with 8^s >= k!/(k-n)!, i.e. ceil(log2(k!/(k-n)!) / 3).
/// Throws `Error(Domain)` when k < n.
unsigned long entropy_lower_bound(unsigned long n, unsigned long k);

/// Injective codes agreeing with a fixed injective query in exactly x
/// positions, by inclusion-exclusion:
/// C(n,x) * sum_j (-1)^j C(n-x,j) (k-x-j)!/(k-n)!.
BigInt exact_match_count(unsigned long n, unsigned long k, long x);

/// Shannon entropy in bits of an exactly normalized distribution. The
/// floating-point result is within 1e-9 of the true value for any input
/// with fewer than 10^6 outcomes. Throws `Error(Domain)` for negative
/// entries or a total different from 1.
double shannon_entropy(std::span<const Rational> p);

/// Same, for a distribution given as nonnegative counts over their total.
double entropy_of_counts(std::span<const BigInt> counts);

enum class LogBase { Natural, Two };

std::string_view to_string(LogBase base);

/// Witness value C! - (H_n - H_C). Exact when n is small enough to sum H_n
/// as a rational; otherwise a dyadic bracket [lower, upper] obtained by
/// directed-rounding summation.
struct WitnessValue
{
    Rational lower;
    Rational upper;
    bool exact = false;
};

/// Decision on the threshold condition C! - (H_n - H_C) > 1 for one C.
struct ThresholdCheck
{
    unsigned long c = 0;
    WitnessValue witness;
    bool holds = false;
};

/// Evaluates C! - (H_n - H_C) > 1 in exact arithmetic for one base of the
/// iterated logarithm C = ceil(log log n).
struct Theorem1Report
{
    unsigned long n = 0;
    LogBase base = LogBase::Natural;
    unsigned long c = 0;                      ///< ceil(log log n) in this base
    ThresholdCheck at_c;                      ///< the condition at C
    std::optional<unsigned long> lower_bound; ///< n - C when the condition holds
    std::optional<unsigned long> largest_holding_c_up_to_c;
    std::optional<unsigned long> smallest_holding_c; ///< over 1 <= C' < n
};

/// ceil(log_b(log_b(n))) for n >= 4, computed without rounding ambiguity.
unsigned long iterated_log_ceiling(unsigned long n, LogBase base);

/// Threshold condition for an explicit C with 1 <= C < n.
ThresholdCheck theorem1_check(unsigned long n, unsigned long c);

/// Requires n >= 4; throws `Error(Domain)` otherwise.
Theorem1Report theorem1_report(unsigned long n, LogBase base = LogBase::Natural);

/// Per-r row of the permutation-game bucket table.
struct BucketRow
{
    unsigned long r = 0;
    BigInt bucket_size;   ///< C(n,r) D(n-r)
    BigInt tail_sum;      ///< sum_{i>=r} bucket_size
    Rational tail_bound;  ///< n!/r!
    bool tail_bound_holds = false;
};

/// Per-x row of the single-query response distribution without repeats.
struct MatchRow
{
    unsigned long x = 0;
    BigInt count;           ///< exact_match_count(n,k,x)
    Rational probability;   ///< count / (k!/(k-n)!)
    Rational cap;           ///< 1/x!
    bool below_cap = false;
};

struct Lemma2Row
{
    unsigned long c = 0;
    unsigned long t = 0;
    Rational bound;
};

/// Every bound quantity for (n, k), recomputable from (n, k) alone.
struct BoundReport
{
    unsigned long n = 0;
    unsigned long k = 0;
    unsigned long trivial_lb = 0;
    std::optional<Theorem1Report> theorem1_natural;
    std::optional<Theorem1Report> theorem1_base2;
    std::optional<unsigned long> entropy_lb;   ///< when k >= n
    std::optional<double> single_query_entropy; ///< when k >= n and n <= kTableMax
    std::optional<BigInt> permutations;         ///< n!, when n <= kTableMax
    std::optional<BigInt> injective_codes;      ///< k!/(k-n)!, when k >= n and n <= kTableMax
    std::optional<Rational> harmonic_n;         ///< when n <= kTableMax
    std::vector<BucketRow> buckets;             ///< when n <= kTableMax
    std::vector<MatchRow> matches;              ///< when k >= n and n <= kTableMax
    std::vector<Lemma2Row> lemma2;              ///< C in {1, 2}, when n <= kTableMax

    static constexpr unsigned long kTableMax = 64;
};

/// Throws `Error(Domain)` when n or k is zero.
BoundReport bound_report(unsigned long n, unsigned long k);

} // namespace querymind

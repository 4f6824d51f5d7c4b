// nonadaptive.hpp -- identifiability of query sets submitted all at once

#pragma once

#include "querymind/codespace.hpp"
#include "querymind/combinatorics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace querymind {

/// Queries submitted together in the non-adaptive game. Responses are
/// black-peg counts.
struct QuerySet
{
    VariantConfig config;
    std::vector<Code> queries;

    std::size_t size() const noexcept { return queries.size(); }
};

/// Throws `Error(Domain)` unless the config is the black-peg, no-repeats,
/// non-adaptive variant.
void require_nonadaptive_scope(const VariantConfig &config);

/// Validates every query against `config`.
QuerySet make_query_set(const VariantConfig &config, std::vector<Code> queries);

/// One code per line as comma-separated colors; '#' starts a comment.
QuerySet parse_query_set(std::string_view text, const VariantConfig &config);
std::string format_query_set(const QuerySet &qs);

/// Black-peg counts of `hidden` against each query, in order.
std::vector<int> response_vector(const QuerySet &qs, const Code &hidden);

struct IdentifiabilityReport
{
    bool identifiable = false;
    std::optional<std::pair<Code, Code>> witness;  ///< lexicographically first collision
    std::size_t s = 0;
    unsigned long entropy_lb = 0;
    long gap = 0;  ///< s - entropy_lb
};

/// Whether the response vector is injective over the whole space.
IdentifiabilityReport is_identifiable(const QuerySet &qs, const CodeSpace &space);

struct MinSizeResult
{
    std::optional<std::size_t> size;
    bool cap_exceeded = false;
    int s_cap = 0;
    QuerySet witness;             ///< lexicographically first minimal set
    unsigned long entropy_lb = 0;
};

/// Default upper limit on the space size for the exhaustive subset search.
inline constexpr std::uint64_t kSubsetSearchBudget = 720;

/// Smallest identifiable query set of size <= s_cap, by exhaustive search
/// over subsets ordered by size, then lexicographically by code index.
MinSizeResult min_nonadaptive_size(const CodeSpace &space, int s_cap, unsigned threads = 1,
                                   std::uint64_t space_budget = kSubsetSearchBudget);

/// Appends the query that leaves the fewest unresolved code pairs until the
/// set is identifiable. Ties go to the lowest index, or, for a nonzero seed,
/// to the earliest candidate in a seed-determined shuffle.
QuerySet greedy_query_set(const CodeSpace &space, std::uint64_t seed = 0);

/// Number of codes giving each black-peg count 0..n against `query`.
std::vector<BigInt> single_query_counts(const CodeSpace &space, const Code &query);

/// Entropy in bits of the black-peg response to `query` for a uniformly
/// random hidden code, from the closed-form match counts. Throws
/// `Error(Domain)` when repeats are allowed.
double entropy_audit(const VariantConfig &config, const Code &query);

/// Exact joint distribution of response vectors over the uniform space.
std::map<std::vector<int>, std::size_t> response_distribution(const QuerySet &qs,
                                                              const CodeSpace &space);

double joint_response_entropy(const QuerySet &qs, const CodeSpace &space);

/// Entropy of each query's response on its own, by enumeration.
std::vector<double> single_response_entropies(const QuerySet &qs, const CodeSpace &space);

} // namespace querymind

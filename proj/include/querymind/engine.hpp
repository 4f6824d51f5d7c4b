// engine.hpp -- games against honest and adversarial codemakers, worst-case
// sweeps and exact game values

#pragma once

#include "querymind/codespace.hpp"
#include "querymind/combinatorics.hpp"
#include "querymind/solution_set.hpp"
#include "querymind/strategies.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace querymind {

enum class Outcome { Determined, Exhausted, Contradiction };

std::string_view to_string(Outcome o);

struct GameTranscript
{
    VariantConfig config;
    std::string strategy;
    std::vector<Turn> turns;
    Outcome outcome = Outcome::Exhausted;
    std::optional<Code> determined;       ///< set iff outcome is Determined
    std::vector<std::size_t> remaining;   ///< |S_t| for t = 0 .. turns.size()
};

/// n*k + 1, enough for both shipped strategies.
int default_turn_budget(const VariantConfig &config);

/// Plays `strategy` against the fixed hidden code `hidden`. Throws
/// `Error(Protocol)` if the strategy submits an invalid code.
GameTranscript play_honest(const Strategy &strategy, const Code &hidden, const CodeSpace &space,
                           int turn_budget);

/// The feedback with the largest surviving bucket (ties: smallest black,
/// then smallest white) and that bucket. Requires a nonempty `previous`.
std::pair<Feedback, SolutionSet> adversary_feedback(const SolutionSet &previous, const Code &query,
                                                    const CodeSpace &space);

/// Plays `strategy` from the full space against `adversary_feedback`.
GameTranscript play_adversarial(const Strategy &strategy, const CodeSpace &space, int turn_budget);

/// Checks |S_t| / n! >= lemma2_bound(n, C, t) for 0 <= t <= n - C along a
/// permutation-game trace. Once the game has ended the final |S_t| carries
/// forward.
struct TraceBoundRow
{
    std::size_t t = 0;
    std::size_t remaining = 0;
    Rational fraction;  ///< remaining / n!
    Rational bound;
    bool holds = false;
};

std::vector<TraceBoundRow> check_lemma2_trace(const GameTranscript &transcript, unsigned long c);

struct WorstCaseResult
{
    std::string strategy;
    VariantConfig config;
    int max_queries = 0;
    std::vector<Code> argmax;                    ///< hidden codes attaining the max
    std::map<int, std::size_t> histogram;        ///< queries -> number of hidden codes
    std::vector<int> queries_per_code;           ///< indexed by code index
    /// Queries until the hidden code has itself been played: one more than
    /// queries_per_code unless the last query already was the hidden code.
    std::vector<int> guesses_per_code;
    int max_guesses = 0;
    std::map<int, std::size_t> guess_histogram;
    std::size_t failures = 0;                    ///< games not ending Determined(hidden)
    std::vector<Code> failed_codes;
};

/// Default upper limit on the space size for exhaustive sweeps.
inline constexpr std::uint64_t kWorstCaseBudget = 5000;

/// Plays every hidden code. Games that share a history prefix share the
/// strategy's decisions, so the sweep walks the strategy tree once; the
/// per-code query counts equal those of `play_honest`. Parallel over the
/// subtrees below the first query.
WorstCaseResult worst_case_queries(const Strategy &strategy, const CodeSpace &space,
                                   int turn_budget, unsigned threads = 1,
                                   std::uint64_t space_budget = kWorstCaseBudget);

/// Default upper limit on the space size for the exact solver.
inline constexpr std::uint64_t kExactBudget = 360;

struct ExactValueResult
{
    std::optional<int> value;   ///< optimal worst-case number of queries
    bool cap_reached = false;   ///< value exceeds depth_cap
    int depth_cap = 0;
    std::optional<Code> best_first_query;
    std::uint64_t states_explored = 0;
};

/// Minimax value of the full game tree: 0 for a singleton, otherwise
/// 1 + min over valid queries of the max over buckets. Memoized on the
/// sorted member list, with iterative deepening over the depth.
ExactValueResult exact_game_value(const CodeSpace &space, int depth_cap, unsigned threads = 1,
                                  std::uint64_t space_budget = kExactBudget);

} // namespace querymind

// strategies.hpp -- codebreaker strategies behind a uniform interface

#pragma once

#include "querymind/codespace.hpp"
#include "querymind/solution_set.hpp"

#include <memory>
#include <mutex>
#include <span>
#include <string_view>
#include <vector>

namespace querymind {

struct Turn
{
    Code query;
    Feedback response;

    bool operator==(const Turn &) const = default;
};

/// What a strategy does next: submit a query, or announce the hidden code.
struct Decision
{
    enum class Kind { Query, Decoded };

    Kind kind = Kind::Query;
    Code code;

    static Decision query(Code c) { return {Kind::Query, std::move(c)}; }
    static Decision decoded(Code c) { return {Kind::Decoded, std::move(c)}; }
};

/// Everything a strategy may look at. `consistent` is the set of codes
/// consistent with `history` under the config's full feedback.
struct GameView
{
    const CodeSpace &space;
    std::span<const Turn> history;
    const SolutionSet &consistent;
};

/// A deterministic codebreaker: identical histories yield identical moves,
/// and every query is a valid code for the config.
class Strategy
{
public:
    virtual ~Strategy() = default;

    virtual std::string_view name() const noexcept = 0;

    /// One-line statement of when this strategy considers the game over.
    virtual std::string_view determination_rule() const noexcept = 0;

    virtual bool uses_white_pegs() const noexcept { return true; }

    virtual Decision next(const GameView &view) const = 0;
};

/// "minimax", "basis" or "first-consistent". Throws `Error(InvalidArgument)`.
std::unique_ptr<Strategy> make_strategy(std::string_view name);

std::vector<std::string_view> strategy_names();

/// Codes consistent with every turn of `history`. When `black_only` is set,
/// white counts in the history are ignored.
SolutionSet consistent_set(std::span<const Turn> history, const CodeSpace &space,
                           bool black_only = false);

/// Largest bucket of `s` under query `q` (responses that no member of `s`
/// produces count as empty buckets).
std::size_t minimax_score(std::size_t query, const SolutionSet &s, const CodeSpace &space);
std::size_t minimax_score(const Code &query, const SolutionSet &s, const CodeSpace &space);

/// Index of the query with the smallest minimax score over the whole
/// space, preferring members of `s`, then the lowest index. Requires |s| >= 2.
std::size_t minimax_next_index(const SolutionSet &s, const CodeSpace &space);
Code minimax_next(const SolutionSet &s, const CodeSpace &space);

/// Lexicographically first code whose 0/1 encoding is independent of the
/// queries so far; Decoded once the black-peg history pins down a single
/// code or no independent code is left. Throws `Error(Contradiction)` when
/// no code is consistent with the history.
Decision basis_next(std::span<const Turn> history, const CodeSpace &space);

/// Greedy lexicographic basis of the span of all valid-code encodings:
/// the full query sequence the basis strategy follows while undetermined.
std::vector<std::size_t> basis_sequence(const CodeSpace &space);

/// Predicts each candidate's black-peg response from the queries' responses
/// by linearity and returns the unique candidate predicted to score n.
/// Candidates outside the span of the queries are kept only when they are
/// consistent with every observed response. Throws `Error(Contradiction)`
/// unless exactly one candidate remains.
Code decode_candidates(std::span<const Code> queries, std::span<const int> responses,
                       const CodeSpace &space);

class MinimaxStrategy final : public Strategy
{
public:
    std::string_view name() const noexcept override { return "minimax"; }
    std::string_view determination_rule() const noexcept override;
    Decision next(const GameView &view) const override;
};

class FirstConsistentStrategy final : public Strategy
{
public:
    std::string_view name() const noexcept override { return "first-consistent"; }
    std::string_view determination_rule() const noexcept override;
    Decision next(const GameView &view) const override;
};

/// Queries a basis of the span of valid-code encodings. Ignores white pegs;
/// its query sequence does not depend on the responses at all.
class BasisStrategy final : public Strategy
{
public:
    std::string_view name() const noexcept override { return "basis"; }
    std::string_view determination_rule() const noexcept override;
    bool uses_white_pegs() const noexcept override { return false; }
    Decision next(const GameView &view) const override;

private:
    std::shared_ptr<const std::vector<std::size_t>> sequence_for(const CodeSpace &space) const;

    mutable std::mutex _mutex;
    mutable std::vector<std::pair<VariantConfig, std::shared_ptr<const std::vector<std::size_t>>>> _cache;
};

} // namespace querymind

#include "querymind/engine.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace querymind {

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::Determined: return "determined";
    case Outcome::Exhausted: return "exhausted";
    case Outcome::Contradiction: return "contradiction";
    }
    return "unknown";
}

int default_turn_budget(const VariantConfig &config)
{
    return config.n * config.k + 1;
}

namespace {

void require_budget(int turn_budget)
{
    if (turn_budget < 1)
        fail(ErrorKind::InvalidArgument,
             "turn budget must be >= 1 (got " + std::to_string(turn_budget) + ")");
}

std::size_t query_index(const CodeSpace &space, const Strategy &strategy, const Code &query)
{
    if (!is_valid_code(query.colors(), space.config()))
        fail(ErrorKind::Protocol, "strategy '" + std::string(strategy.name()) +
                                      "' submitted invalid code '" + to_string(query) + "'");
    return space.index_of(query.colors());
}

ResponseId heaviest_bucket(const std::vector<std::uint32_t> &counts)
{
    // Response ids order by (black, white), so the first maximum is the
    // tie-break winner.
    std::size_t best = 0;
    for (std::size_t r = 1; r < counts.size(); ++r)
        if (counts[r] > counts[best])
            best = r;
    return static_cast<ResponseId>(best);
}

template <typename Respond>
GameTranscript play(const Strategy &strategy, const CodeSpace &space, int turn_budget,
                    Respond &&respond)
{
    require_budget(turn_budget);
    GameTranscript tr;
    tr.config = space.config();
    tr.strategy = std::string(strategy.name());
    SolutionSet s = SolutionSet::full(space.size());
    tr.remaining.push_back(s.size());

    for (;;) {
        if (s.size() == 1) {
            tr.outcome = Outcome::Determined;
            tr.determined = space.code(s.members().front());
            return tr;
        }
        if (s.empty()) {
            tr.outcome = Outcome::Contradiction;
            return tr;
        }
        if (tr.turns.size() >= static_cast<std::size_t>(turn_budget)) {
            tr.outcome = Outcome::Exhausted;
            return tr;
        }
        Decision d = strategy.next(GameView{space, tr.turns, s});
        if (d.kind == Decision::Kind::Decoded) {
            // Announcing a code while several remain is not a determination.
            tr.outcome = Outcome::Contradiction;
            return tr;
        }
        const std::size_t q = query_index(space, strategy, d.code);
        auto [r, next] = respond(s, q);
        tr.turns.push_back({std::move(d.code), space.to_feedback(r)});
        s = std::move(next);
        tr.remaining.push_back(s.size());
    }
}

} // namespace

GameTranscript play_honest(const Strategy &strategy, const Code &hidden, const CodeSpace &space,
                           int turn_budget)
{
    const std::size_t h = space.index_of(hidden);
    return play(strategy, space, turn_budget, [&](const SolutionSet &s, std::size_t q) {
        const ResponseId r = space.response(q, h);
        return std::pair{r, filter_consistent(s, q, r, space)};
    });
}

std::pair<Feedback, SolutionSet> adversary_feedback(const SolutionSet &previous, const Code &query,
                                                    const CodeSpace &space)
{
    if (previous.empty())
        fail(ErrorKind::InvalidArgument, "adversary_feedback requires a nonempty solution set");
    const std::size_t q = space.index_of(query);
    const ResponseId r = heaviest_bucket(partition_counts(previous, q, space));
    return {space.to_feedback(r), filter_consistent(previous, q, r, space)};
}

GameTranscript play_adversarial(const Strategy &strategy, const CodeSpace &space, int turn_budget)
{
    return play(strategy, space, turn_budget, [&](const SolutionSet &s, std::size_t q) {
        const ResponseId r = heaviest_bucket(partition_counts(s, q, space));
        return std::pair{r, filter_consistent(s, q, r, space)};
    });
}

std::vector<TraceBoundRow> check_lemma2_trace(const GameTranscript &transcript, unsigned long c)
{
    const auto &config = transcript.config;
    if (config.repeats != Repeats::Forbidden || config.k != config.n)
        fail(ErrorKind::Domain, "the adversarial trace bound applies to the permutation game only");
    const auto n = static_cast<unsigned long>(config.n);
    if (c < 1 || c >= n)
        fail(ErrorKind::Domain, "trace bound requires 1 <= C < n");
    if (transcript.remaining.empty())
        fail(ErrorKind::InvalidArgument, "transcript has no size trace");
    const BigInt total = factorial(n);
    std::vector<TraceBoundRow> rows;
    for (std::size_t t = 0; t <= n - c; ++t) {
        TraceBoundRow row;
        row.t = t;
        row.remaining = transcript.remaining[std::min(t, transcript.remaining.size() - 1)];
        row.fraction = Rational(BigInt(static_cast<unsigned long>(row.remaining)), total);
        row.fraction.canonicalize();
        row.bound = lemma2_bound(n, c, static_cast<long>(t));
        row.holds = row.fraction >= row.bound;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

class TreeWalker
{
public:
    TreeWalker(const Strategy &strategy, const CodeSpace &space, int budget,
               std::vector<int> &queries, std::vector<int> &guesses, std::vector<std::uint8_t> &failed)
      : _strategy(strategy), _space(space), _budget(budget), _queries(queries), _guesses(guesses),
        _failed(failed)
    {
    }

    void explore(std::vector<Turn> &history, const SolutionSet &s)
    {
        const int depth = static_cast<int>(history.size());
        if (s.size() == 1) {
            const std::uint32_t h = s.members().front();
            _queries[h] = depth;
            // Playing the determined code costs one more guess unless it
            // was the last query.
            const bool last_was_h =
                !history.empty() && std::ranges::equal(history.back().query.colors(), _space.colors(h));
            _guesses[h] = depth + (last_was_h ? 0 : 1);
            return;
        }
        if (depth >= _budget) {
            mark_failed(s, depth);
            return;
        }
        Decision d = _strategy.next(GameView{_space, history, s});
        if (d.kind == Decision::Kind::Decoded) {
            mark_failed(s, depth);
            return;
        }
        const std::size_t q = query_index(_space, _strategy, d.code);
        for (auto &[r, bucket] : partition(s, q, _space)) {
            history.push_back({d.code, _space.to_feedback(r)});
            explore(history, bucket);
            history.pop_back();
        }
    }

private:
    void mark_failed(const SolutionSet &s, int depth)
    {
        for (std::uint32_t h : s.members()) {
            _queries[h] = depth;
            _guesses[h] = depth;
            _failed[h] = 1;
        }
    }

    const Strategy &_strategy;
    const CodeSpace &_space;
    int _budget;
    std::vector<int> &_queries;
    std::vector<int> &_guesses;
    std::vector<std::uint8_t> &_failed;
};

} // namespace

WorstCaseResult worst_case_queries(const Strategy &strategy, const CodeSpace &space,
                                   int turn_budget, unsigned threads, std::uint64_t space_budget)
{
    require_budget(turn_budget);
    if (space.size() > space_budget)
        fail(ErrorKind::Capacity, "worst-case sweep over " + std::to_string(space.size()) +
                                      " codes exceeds the budget of " +
                                      std::to_string(space_budget));
    WorstCaseResult res;
    res.strategy = std::string(strategy.name());
    res.config = space.config();
    res.queries_per_code.assign(space.size(), 0);
    res.guesses_per_code.assign(space.size(), 0);
    std::vector<std::uint8_t> failed(space.size(), 0);

    const SolutionSet all = SolutionSet::full(space.size());
    TreeWalker root(strategy, space, turn_budget, res.queries_per_code, res.guesses_per_code,
                    failed);
    if (all.size() == 1) {
        std::vector<Turn> history;
        root.explore(history, all);
    } else {
        // Expand the first query here so its subtrees can run in parallel;
        // each subtree writes a disjoint set of code indices.
        std::vector<Turn> empty;
        Decision d = strategy.next(GameView{space, empty, all});
        if (d.kind == Decision::Kind::Decoded) {
            std::fill(failed.begin(), failed.end(), 1);
        } else {
            const std::size_t q = query_index(space, strategy, d.code);
            auto buckets = partition(all, q, space);
            detail::parallel_for(buckets.size(), threads, [&](std::size_t i) {
                TreeWalker walker(strategy, space, turn_budget, res.queries_per_code,
                                  res.guesses_per_code, failed);
                std::vector<Turn> history{{d.code, space.to_feedback(buckets[i].first)}};
                walker.explore(history, buckets[i].second);
            });
        }
    }

    for (std::size_t h = 0; h < space.size(); ++h) {
        const int q = res.queries_per_code[h];
        ++res.histogram[q];
        ++res.guess_histogram[res.guesses_per_code[h]];
        res.max_guesses = std::max(res.max_guesses, res.guesses_per_code[h]);
        if (failed[h]) {
            ++res.failures;
            res.failed_codes.push_back(space.code(h));
        }
        if (q > res.max_queries) {
            res.max_queries = q;
            res.argmax.clear();
        }
        if (q == res.max_queries)
            res.argmax.push_back(space.code(h));
    }
    return res;
}

namespace {

struct VectorHash
{
    std::size_t operator()(const std::vector<std::uint32_t> &v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/// Depth-bounded solver: can the codes in `s` always be told apart within
/// d more queries?
class ExactSolver
{
public:
    explicit ExactSolver(const CodeSpace &space) : _space(space)
    {
        // Most distinct responses any single query produces on the full space.
        std::vector<std::uint8_t> seen(space.response_id_count());
        for (std::size_t q = 0; q < space.size(); ++q) {
            std::fill(seen.begin(), seen.end(), 0);
            std::size_t distinct = 0;
            for (std::size_t h = 0; h < space.size(); ++h) {
                auto r = space.response(q, h);
                if (!seen[r]) {
                    seen[r] = 1;
                    ++distinct;
                }
            }
            _max_responses = std::max(_max_responses, distinct);
        }
    }

    /// Leaves distinguishable by a depth-d tree, saturated.
    std::uint64_t capacity(int d) const
    {
        std::uint64_t c = 1;
        for (int i = 0; i < d; ++i) {
            if (c > std::numeric_limits<std::uint64_t>::max() / std::max<std::size_t>(_max_responses, 1))
                return std::numeric_limits<std::uint64_t>::max();
            c *= _max_responses;
        }
        return c;
    }

    bool solvable(const std::vector<std::uint32_t> &s, int d)
    {
        if (s.size() <= 1)
            return true;
        if (d <= 0 || s.size() > capacity(d))
            return false;
        {
            std::lock_guard lock(_mutex);
            auto it = _memo.find(s);
            if (it != _memo.end()) {
                if (d >= it->second.solvable_at)
                    return true;
                if (d <= it->second.unsolvable_up_to)
                    return false;
            }
        }
        bool ok = false;
        for (std::size_t q = 0; q < _space.size() && !ok; ++q)
            ok = query_works(s, q, d);
        record(s, d, ok);
        return ok;
    }

    /// Does querying q first leave every bucket solvable within d - 1?
    bool query_works(const std::vector<std::uint32_t> &s, std::size_t q, int d)
    {
        _states.fetch_add(1, std::memory_order_relaxed);
        std::vector<std::uint32_t> counts(_space.response_id_count(), 0);
        std::uint32_t largest = 0;
        for (std::uint32_t h : s)
            largest = std::max(largest, ++counts[_space.response(q, h)]);
        if (largest == s.size() || largest > capacity(d - 1))
            return false;
        if (largest <= 1)
            return true;
        if (d == 1)
            return false;
        std::vector<std::vector<std::uint32_t>> buckets(counts.size());
        for (std::uint32_t h : s)
            buckets[_space.response(q, h)].push_back(h);
        std::sort(buckets.begin(), buckets.end(),
                  [](const auto &a, const auto &b) { return a.size() > b.size(); });
        for (const auto &b : buckets) {
            if (b.size() <= 1)
                break;
            if (!solvable(b, d - 1))
                return false;
        }
        return true;
    }

    std::uint64_t states() const { return _states.load(); }

private:
    struct Entry
    {
        int unsolvable_up_to = -1;
        int solvable_at = std::numeric_limits<int>::max();
    };

    void record(const std::vector<std::uint32_t> &s, int d, bool ok)
    {
        std::lock_guard lock(_mutex);
        Entry &e = _memo[s];
        if (ok)
            e.solvable_at = std::min(e.solvable_at, d);
        else
            e.unsolvable_up_to = std::max(e.unsolvable_up_to, d);
    }

    const CodeSpace &_space;
    std::size_t _max_responses = 1;
    std::mutex _mutex;
    std::unordered_map<std::vector<std::uint32_t>, Entry, VectorHash> _memo;
    std::atomic<std::uint64_t> _states{0};
};

} // namespace

ExactValueResult exact_game_value(const CodeSpace &space, int depth_cap, unsigned threads,
                                  std::uint64_t space_budget)
{
    if (depth_cap < 0)
        fail(ErrorKind::InvalidArgument, "depth cap must be >= 0");
    if (space.size() > space_budget)
        fail(ErrorKind::Capacity, "exact solve over " + std::to_string(space.size()) +
                                      " codes exceeds the budget of " +
                                      std::to_string(space_budget));
    ExactValueResult res;
    res.depth_cap = depth_cap;
    if (space.size() == 1) {
        res.value = 0;
        return res;
    }
    ExactSolver solver(space);
    std::vector<std::uint32_t> all(space.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = static_cast<std::uint32_t>(i);

    int start = 1;
    while (solver.capacity(start) < all.size())
        ++start;
    for (int d = start; d <= depth_cap; ++d) {
        // Lowest-index working first query, found in parallel: workers skip
        // candidates above the best index seen so far.
        std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
        detail::parallel_for(space.size(), threads, [&](std::size_t q) {
            if (q > best.load())
                return;
            if (solver.query_works(all, q, d)) {
                std::size_t cur = best.load();
                while (q < cur && !best.compare_exchange_weak(cur, q)) {
                }
            }
        });
        if (best.load() != std::numeric_limits<std::size_t>::max()) {
            res.value = d;
            res.best_first_query = space.code(best.load());
            res.states_explored = solver.states();
            return res;
        }
    }
    res.cap_reached = true;
    res.states_explored = solver.states();
    return res;
}

} // namespace querymind

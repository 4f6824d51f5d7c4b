#include "querymind/strategies.hpp"

#include "querymind/linalg.hpp"

#include <algorithm>
#include <limits>

namespace querymind {

namespace {

constexpr std::string_view kDeterminedWhenSingleton =
    "the game ends as soon as exactly one code is consistent with the responses; "
    "that code need not be queried";

std::vector<std::uint8_t> encoding(std::span<const Color> colors, int k)
{
    std::vector<std::uint8_t> v(colors.size() * static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < colors.size(); ++i)
        v[i * static_cast<std::size_t>(k) + (colors[i] - 1)] = 1;
    return v;
}

ResponseId black_only_id(const CodeSpace &space, ResponseId id)
{
    return static_cast<ResponseId>((id / (space.length() + 1)) * (space.length() + 1));
}

} // namespace

SolutionSet consistent_set(std::span<const Turn> history, const CodeSpace &space,
                           bool black_only)
{
    std::vector<std::pair<std::size_t, ResponseId>> turns;
    turns.reserve(history.size());
    for (const auto &t : history) {
        Feedback fb = t.response;
        if (black_only && space.config().feedback == FeedbackKind::BlackWhite)
            fb.white = fb.white.value_or(0);
        ResponseId id = space.response_id(fb);
        turns.emplace_back(space.index_of(t.query), black_only ? black_only_id(space, id) : id);
    }
    std::vector<std::uint32_t> members;
    for (std::size_t h = 0; h < space.size(); ++h) {
        bool ok = true;
        for (const auto &[q, r] : turns) {
            ResponseId got = space.response(q, h);
            if (black_only)
                got = black_only_id(space, got);
            if (got != r) {
                ok = false;
                break;
            }
        }
        if (ok)
            members.push_back(static_cast<std::uint32_t>(h));
    }
    return SolutionSet::from_sorted(space.size(), std::move(members));
}

std::size_t minimax_score(std::size_t query, const SolutionSet &s, const CodeSpace &space)
{
    auto counts = partition_counts(s, query, space);
    return *std::max_element(counts.begin(), counts.end());
}

std::size_t minimax_score(const Code &query, const SolutionSet &s, const CodeSpace &space)
{
    return minimax_score(space.index_of(query), s, space);
}

std::size_t minimax_next_index(const SolutionSet &s, const CodeSpace &space)
{
    if (s.size() < 2)
        fail(ErrorKind::InvalidArgument, "minimax_next requires at least two candidates");
    std::vector<std::uint32_t> counts(space.response_id_count());
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::size_t best_score = std::numeric_limits<std::size_t>::max();
    bool best_member = false;

    for (std::size_t q = 0; q < space.size(); ++q) {
        const bool member = s.contains(q);
        // A later query only wins a tie if it is a member and the incumbent
        // is not; abort the count as soon as it cannot win.
        const std::size_t limit = (member && !best_member) ? best_score : best_score - 1;
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t worst = 0;
        bool aborted = false;
        for (std::uint32_t h : s.members()) {
            std::uint32_t c = ++counts[space.response(q, h)];
            if (c > worst) {
                worst = c;
                if (best != std::numeric_limits<std::size_t>::max() && worst > limit) {
                    aborted = true;
                    break;
                }
            }
        }
        if (aborted)
            continue;
        if (worst < best_score || (worst == best_score && member && !best_member)) {
            best = q;
            best_score = worst;
            best_member = member;
        }
    }
    return best;
}

Code minimax_next(const SolutionSet &s, const CodeSpace &space)
{
    return space.code(minimax_next_index(s, space));
}

std::vector<std::size_t> basis_sequence(const CodeSpace &space)
{
    const int k = space.config().k;
    RationalMatrix m(static_cast<std::size_t>(space.length()) * static_cast<std::size_t>(k));
    std::vector<std::size_t> seq;
    for (std::size_t c = 0; c < space.size(); ++c) {
        auto v = encoding(space.colors(c), k);
        if (m.is_independent(v)) {
            m.append(std::span<const std::uint8_t>(v));
            seq.push_back(c);
            if (m.rank() == m.columns())
                break;
        }
    }
    return seq;
}

Code decode_candidates(std::span<const Code> queries, std::span<const int> responses,
                       const CodeSpace &space)
{
    if (queries.size() != responses.size())
        fail(ErrorKind::InvalidArgument, "decode_candidates: " + std::to_string(queries.size()) +
                                             " queries but " + std::to_string(responses.size()) +
                                             " responses");
    const auto &config = space.config();
    const std::size_t dim = static_cast<std::size_t>(config.n) * static_cast<std::size_t>(config.k);
    RationalMatrix m(dim);
    std::vector<std::size_t> query_index;
    for (const auto &q : queries) {
        query_index.push_back(space.index_of(q));
        auto v = encode01(q, config);
        m.append(std::span<const std::uint8_t>(v));
    }

    std::vector<std::size_t> matches;
    for (std::size_t c = 0; c < space.size() && matches.size() < 2; ++c) {
        auto v = encoding(space.colors(c), config.k);
        if (auto coeffs = m.express(v)) {
            Rational predicted = 0;
            for (std::size_t i = 0; i < coeffs->size(); ++i)
                predicted += (*coeffs)[i] * responses[i];
            if (predicted == config.n)
                matches.push_back(c);
            continue;
        }
        bool consistent = true;
        for (std::size_t i = 0; i < query_index.size() && consistent; ++i)
            consistent = black_pegs(space.colors(query_index[i]), space.colors(c)) == responses[i];
        if (consistent)
            matches.push_back(c);
    }
    if (matches.size() != 1)
        fail(ErrorKind::Contradiction,
             matches.empty() ? "decode_candidates: no candidate is predicted to score n"
                             : "decode_candidates: several candidates are predicted to score n; "
                               "the queries do not span the valid codes");
    return space.code(matches.front());
}

Decision basis_next(std::span<const Turn> history, const CodeSpace &space)
{
    SolutionSet s = consistent_set(history, space, true);
    if (s.empty())
        fail(ErrorKind::Contradiction, "basis_next: no code is consistent with the history");
    if (s.size() == 1)
        return Decision::decoded(space.code(s.members().front()));

    const int k = space.config().k;
    RationalMatrix m(static_cast<std::size_t>(space.length()) * static_cast<std::size_t>(k));
    for (const auto &t : history) {
        auto v = encode01(t.query, space.config());
        m.append(std::span<const std::uint8_t>(v));
    }
    for (std::size_t c = 0; c < space.size(); ++c) {
        if (m.is_independent(encoding(space.colors(c), k)))
            return Decision::query(space.code(c));
    }
    std::vector<Code> queries;
    std::vector<int> responses;
    for (const auto &t : history) {
        queries.push_back(t.query);
        responses.push_back(t.response.black);
    }
    return Decision::decoded(decode_candidates(queries, responses, space));
}

std::string_view MinimaxStrategy::determination_rule() const noexcept
{
    return kDeterminedWhenSingleton;
}

Decision MinimaxStrategy::next(const GameView &view) const
{
    if (view.consistent.empty())
        fail(ErrorKind::Contradiction, "minimax: no code is consistent with the history");
    if (view.consistent.size() == 1)
        return Decision::decoded(view.space.code(view.consistent.members().front()));
    return Decision::query(view.space.code(minimax_next_index(view.consistent, view.space)));
}

std::string_view FirstConsistentStrategy::determination_rule() const noexcept
{
    return kDeterminedWhenSingleton;
}

Decision FirstConsistentStrategy::next(const GameView &view) const
{
    if (view.consistent.empty())
        fail(ErrorKind::Contradiction, "first-consistent: no code is consistent with the history");
    const std::size_t first = view.consistent.members().front();
    if (view.consistent.size() == 1)
        return Decision::decoded(view.space.code(first));
    return Decision::query(view.space.code(first));
}

std::string_view BasisStrategy::determination_rule() const noexcept
{
    return "the game ends once the black-peg responses leave a single consistent code, "
           "at the latest after a full basis of the valid-code encodings has been queried";
}

std::shared_ptr<const std::vector<std::size_t>>
BasisStrategy::sequence_for(const CodeSpace &space) const
{
    std::lock_guard lock(_mutex);
    for (const auto &[config, seq] : _cache)
        if (config == space.config())
            return seq;
    auto seq = std::make_shared<const std::vector<std::size_t>>(basis_sequence(space));
    _cache.emplace_back(space.config(), seq);
    return seq;
}

Decision BasisStrategy::next(const GameView &view) const
{
    const auto &space = view.space;
    // The greedy sequence answers any history that follows it; other
    // histories take the general path.
    auto seq = sequence_for(space);
    bool on_sequence = view.history.size() <= seq->size();
    for (std::size_t i = 0; on_sequence && i < view.history.size(); ++i)
        on_sequence = space.index_of(view.history[i].query) == (*seq)[i];
    if (!on_sequence)
        return basis_next(view.history, space);

    SolutionSet s = consistent_set(view.history, space, true);
    if (s.empty())
        fail(ErrorKind::Contradiction, "basis: no code is consistent with the history");
    if (s.size() == 1)
        return Decision::decoded(space.code(s.members().front()));
    if (view.history.size() < seq->size())
        return Decision::query(space.code((*seq)[view.history.size()]));
    return basis_next(view.history, space);
}

std::unique_ptr<Strategy> make_strategy(std::string_view name)
{
    if (name == "minimax")
        return std::make_unique<MinimaxStrategy>();
    if (name == "basis")
        return std::make_unique<BasisStrategy>();
    if (name == "first-consistent")
        return std::make_unique<FirstConsistentStrategy>();
    fail(ErrorKind::InvalidArgument, "unknown strategy '" + std::string(name) +
                                         "' (expected minimax, basis or first-consistent)");
}

std::vector<std::string_view> strategy_names()
{
    return {"minimax", "basis", "first-consistent"};
}

} // namespace querymind

#include "querymind/nonadaptive.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

namespace querymind {

void require_nonadaptive_scope(const VariantConfig &config)
{
    config.validate();
    if (config.repeats != Repeats::Forbidden)
        fail(ErrorKind::Domain, "non-adaptive analysis covers the no-repeats variant only");
    if (config.feedback != FeedbackKind::BlackOnly)
        fail(ErrorKind::Domain, "non-adaptive analysis covers black-peg feedback only");
    if (config.mode != Mode::NonAdaptive)
        fail(ErrorKind::Domain, "query sets require mode nonadaptive");
}

QuerySet make_query_set(const VariantConfig &config, std::vector<Code> queries)
{
    require_nonadaptive_scope(config);
    for (const auto &q : queries)
        validate_code(q, config);
    return QuerySet{config, std::move(queries)};
}

QuerySet parse_query_set(std::string_view text, const VariantConfig &config)
{
    std::vector<Code> queries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        if (line.empty())
            continue;
        try {
            queries.push_back(parse_code(line));
            validate_code(queries.back(), config);
        } catch (const Error &e) {
            fail(e.kind(), "query set line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return make_query_set(config, std::move(queries));
}

std::string format_query_set(const QuerySet &qs)
{
    std::string out = "# n=" + std::to_string(qs.config.n) + " k=" + std::to_string(qs.config.k) +
                      " s=" + std::to_string(qs.size()) + "\n";
    for (const auto &q : qs.queries)
        out += to_string(q) + "\n";
    return out;
}

std::vector<int> response_vector(const QuerySet &qs, const Code &hidden)
{
    validate_code(hidden, qs.config);
    std::vector<int> out;
    out.reserve(qs.size());
    for (const auto &q : qs.queries)
        out.push_back(black_pegs(q.colors(), hidden.colors()));
    return out;
}

namespace {

void require_space(const QuerySet &qs, const CodeSpace &space)
{
    require_nonadaptive_scope(qs.config);
    if (!(qs.config == space.config()))
        fail(ErrorKind::InvalidArgument, "query set and code space use different configurations");
}

/// Refines class labels by one query's black-peg response; returns the
/// number of classes afterwards.
std::uint32_t refine(const CodeSpace &space, std::size_t query,
                     const std::vector<std::uint32_t> &labels, std::vector<std::uint32_t> &out)
{
    const std::uint32_t stride = static_cast<std::uint32_t>(space.length() + 1);
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    out.resize(labels.size());
    for (std::size_t h = 0; h < labels.size(); ++h) {
        const auto black = black_pegs(space.colors(query), space.colors(h));
        const std::uint64_t key = std::uint64_t(labels[h]) * stride + static_cast<std::uint32_t>(black);
        auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()));
        out[h] = it->second;
    }
    return static_cast<std::uint32_t>(ids.size());
}

std::uint64_t unresolved_pairs(const std::vector<std::uint32_t> &labels, std::uint32_t classes)
{
    std::vector<std::uint64_t> size(classes, 0);
    for (auto l : labels)
        ++size[l];
    std::uint64_t pairs = 0;
    for (auto s : size)
        pairs += s * (s - 1) / 2;
    return pairs;
}

std::uint32_t largest_class(const std::vector<std::uint32_t> &labels, std::uint32_t classes)
{
    std::vector<std::uint32_t> size(classes, 0);
    std::uint32_t largest = 0;
    for (auto l : labels)
        largest = std::max(largest, ++size[l]);
    return largest;
}

/// Most distinct black-peg responses a single query produces.
std::size_t max_distinct_responses(const CodeSpace &space)
{
    std::size_t best = 1;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(space.length()) + 1);
    for (std::size_t q = 0; q < space.size(); ++q) {
        std::fill(seen.begin(), seen.end(), 0);
        std::size_t distinct = 0;
        for (std::size_t h = 0; h < space.size(); ++h) {
            auto b = static_cast<std::size_t>(black_pegs(space.colors(q), space.colors(h)));
            if (!seen[b]) {
                seen[b] = 1;
                ++distinct;
            }
        }
        best = std::max(best, distinct);
    }
    return best;
}

std::uint64_t saturating_pow(std::uint64_t base, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

} // namespace

IdentifiabilityReport is_identifiable(const QuerySet &qs, const CodeSpace &space)
{
    require_space(qs, space);
    IdentifiabilityReport rep;
    rep.s = qs.size();
    rep.entropy_lb = entropy_lower_bound(static_cast<unsigned long>(space.config().n),
                                         static_cast<unsigned long>(space.config().k));
    rep.gap = static_cast<long>(rep.s) - static_cast<long>(rep.entropy_lb);

    // Group codes by response vector; the first group with two members, in
    // order of its smallest member, holds the lexicographically first pair.
    std::map<std::vector<int>, std::uint32_t> first_seen;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t h = 0; h < space.size(); ++h) {
        std::vector<int> v;
        v.reserve(qs.size());
        for (const auto &q : qs.queries)
            v.push_back(black_pegs(q.colors(), space.colors(h)));
        auto [it, inserted] = first_seen.try_emplace(std::move(v), static_cast<std::uint32_t>(h));
        if (!inserted && (!pair || it->second < pair->first))
            pair = std::pair<std::size_t, std::size_t>(it->second, h);
    }
    rep.identifiable = !pair.has_value();
    if (pair)
        rep.witness = std::pair(space.code(pair->first), space.code(pair->second));
    return rep;
}

MinSizeResult min_nonadaptive_size(const CodeSpace &space, int s_cap, unsigned threads,
                                   std::uint64_t space_budget)
{
    require_nonadaptive_scope(space.config());
    if (s_cap < 0)
        fail(ErrorKind::InvalidArgument, "s_cap must be >= 0");
    if (space.size() > space_budget)
        fail(ErrorKind::Capacity, "subset search over " + std::to_string(space.size()) +
                                      " codes exceeds the budget of " +
                                      std::to_string(space_budget));
    MinSizeResult res;
    res.s_cap = s_cap;
    res.witness.config = space.config();
    res.entropy_lb = entropy_lower_bound(static_cast<unsigned long>(space.config().n),
                                         static_cast<unsigned long>(space.config().k));
    const std::size_t n_codes = space.size();
    if (n_codes == 1) {
        res.size = 0;
        return res;
    }
    const std::uint64_t responses = max_distinct_responses(space);

    // Depth-first over increasing index tuples; a class larger than
    // responses^(slots left) can no longer be split into singletons.
    auto search_from = [&](std::size_t first, int s, std::vector<std::size_t> &chosen) {
        std::vector<std::vector<std::uint32_t>> labels(static_cast<std::size_t>(s) + 1);
        labels[0].assign(n_codes, 0);
        auto rec = [&](auto &self, std::size_t start, int depth, std::uint32_t classes) -> bool {
            if (depth == s)
                return classes == n_codes;
            const std::size_t lo = depth == 0 ? first : start;
            const std::size_t hi = depth == 0 ? first + 1 : n_codes;
            for (std::size_t q = lo; q < hi; ++q) {
                if (n_codes - q < static_cast<std::size_t>(s - depth))
                    break;
                const std::uint32_t next = refine(space, q, labels[depth], labels[depth + 1]);
                if (largest_class(labels[depth + 1], next) > saturating_pow(responses, s - depth - 1))
                    continue;
                chosen.push_back(q);
                if (self(self, q + 1, depth + 1, next))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        return rec(rec, 0, 0, 1);
    };

    for (int s = 1; s <= s_cap; ++s) {
        if (saturating_pow(responses, s) < n_codes)
            continue;
        std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
        std::vector<std::vector<std::size_t>> found(n_codes);
        detail::parallel_for(n_codes, threads, [&](std::size_t first) {
            if (first > best.load())
                return;
            std::vector<std::size_t> chosen;
            if (search_from(first, s, chosen)) {
                found[first] = std::move(chosen);
                std::size_t cur = best.load();
                while (first < cur && !best.compare_exchange_weak(cur, first)) {
                }
            }
        });
        if (best.load() != std::numeric_limits<std::size_t>::max()) {
            res.size = static_cast<std::size_t>(s);
            for (std::size_t q : found[best.load()])
                res.witness.queries.push_back(space.code(q));
            return res;
        }
    }
    res.cap_exceeded = true;
    return res;
}

QuerySet greedy_query_set(const CodeSpace &space, std::uint64_t seed)
{
    require_nonadaptive_scope(space.config());
    QuerySet qs{space.config(), {}};
    std::vector<std::size_t> order(space.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    std::vector<std::uint32_t> labels(space.size(), 0), trial, best_labels;
    std::uint32_t classes = 1;
    std::uint64_t pairs = unresolved_pairs(labels, classes);
    while (pairs > 0) {
        std::uint64_t best_pairs = pairs;
        std::size_t best_q = space.size();
        std::uint32_t best_classes = classes;
        for (std::size_t q : order) {
            const std::uint32_t c = refine(space, q, labels, trial);
            const std::uint64_t p = unresolved_pairs(trial, c);
            if (p < best_pairs) {
                best_pairs = p;
                best_q = q;
                best_classes = c;
                best_labels = trial;
            }
        }
        if (best_q == space.size())
            fail(ErrorKind::Invariant, "greedy query set made no progress");
        qs.queries.push_back(space.code(best_q));
        labels = best_labels;
        classes = best_classes;
        pairs = best_pairs;
    }
    return qs;
}

std::vector<BigInt> single_query_counts(const CodeSpace &space, const Code &query)
{
    validate_code(query, space.config());
    std::vector<BigInt> counts(static_cast<std::size_t>(space.length()) + 1, 0);
    for (std::size_t h = 0; h < space.size(); ++h)
        counts[static_cast<std::size_t>(black_pegs(query.colors(), space.colors(h)))] += 1;
    return counts;
}

double entropy_audit(const VariantConfig &config, const Code &query)
{
    config.validate();
    if (config.repeats != Repeats::Forbidden)
        fail(ErrorKind::Domain, "entropy audit covers the no-repeats variant only");
    validate_code(query, config);
    const auto n = static_cast<unsigned long>(config.n);
    const auto k = static_cast<unsigned long>(config.k);
    std::vector<BigInt> counts;
    for (unsigned long x = 0; x <= n; ++x)
        counts.push_back(exact_match_count(n, k, static_cast<long>(x)));
    return entropy_of_counts(counts);
}

std::map<std::vector<int>, std::size_t> response_distribution(const QuerySet &qs,
                                                              const CodeSpace &space)
{
    require_space(qs, space);
    std::map<std::vector<int>, std::size_t> dist;
    for (std::size_t h = 0; h < space.size(); ++h) {
        std::vector<int> v;
        v.reserve(qs.size());
        for (const auto &q : qs.queries)
            v.push_back(black_pegs(q.colors(), space.colors(h)));
        ++dist[v];
    }
    return dist;
}

double joint_response_entropy(const QuerySet &qs, const CodeSpace &space)
{
    std::vector<BigInt> counts;
    for (const auto &[v, c] : response_distribution(qs, space))
        counts.emplace_back(static_cast<unsigned long>(c));
    return entropy_of_counts(counts);
}

std::vector<double> single_response_entropies(const QuerySet &qs, const CodeSpace &space)
{
    require_space(qs, space);
    std::vector<double> out;
    for (const auto &q : qs.queries)
        out.push_back(entropy_of_counts(single_query_counts(space, q)));
    return out;
}

} // namespace querymind

// Experiment orchestration behind the extern "C" surface. Every entry point
// converts C++ exceptions to status codes; nothing throws across the boundary.

#include "querymind/querymind.h"

#include "querymind/serialize.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

using namespace querymind;

struct qm_space
{
    CodeSpace space;
};

struct qm_result
{
    std::string json;
    std::optional<std::string> csv;
    std::string summary;
};

namespace {

thread_local std::string last_error;

constexpr int kDefaultSCap = 6;

/// All-pairs cross-check limit for entropy-audit: the largest space with
/// n <= 6 and k <= 8.
constexpr std::uint64_t kAuditBudget = 20160;

qm_status status_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return QM_INVALID_ARGUMENT;
    case ErrorKind::InvalidCode: return QM_INVALID_CODE;
    case ErrorKind::Domain: return QM_DOMAIN;
    case ErrorKind::Capacity: return QM_CAPACITY;
    case ErrorKind::Contradiction: return QM_CONTRADICTION;
    case ErrorKind::Protocol: return QM_PROTOCOL;
    case ErrorKind::Invariant: return QM_INVARIANT;
    }
    return QM_INTERNAL;
}

template <typename Fn>
qm_status guarded(Fn &&fn)
{
    last_error.clear();
    try {
        return fn();
    } catch (const Error &e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return QM_CAPACITY;
    } catch (const std::exception &e) {
        last_error = e.what();
        return QM_INTERNAL;
    }
}

void require(const void *p, const char *what)
{
    if (p == nullptr)
        fail(ErrorKind::InvalidArgument, std::string(what) + " must not be null");
}

VariantConfig to_config(const qm_config_t *c)
{
    require(c, "config");
    VariantConfig config;
    config.n = c->n;
    config.k = c->k;
    config.feedback = c->feedback == QM_BLACK_ONLY ? FeedbackKind::BlackOnly : FeedbackKind::BlackWhite;
    config.repeats = c->repeats == QM_REPEATS_FORBIDDEN ? Repeats::Forbidden : Repeats::Allowed;
    config.mode = c->mode == QM_NONADAPTIVE ? Mode::NonAdaptive : Mode::Adaptive;
    if (c->feedback != QM_BLACK_ONLY && c->feedback != QM_BLACK_WHITE)
        fail(ErrorKind::InvalidArgument, "unknown feedback kind");
    if (c->repeats != QM_REPEATS_ALLOWED && c->repeats != QM_REPEATS_FORBIDDEN)
        fail(ErrorKind::InvalidArgument, "unknown repeats setting");
    if (c->mode != QM_ADAPTIVE && c->mode != QM_NONADAPTIVE)
        fail(ErrorKind::InvalidArgument, "unknown mode");
    return config;
}

struct Options
{
    std::string strategy = "minimax";
    int turn_budget = 0;
    std::uint64_t space_budget = 0;
    int s_cap = kDefaultSCap;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<std::string> hidden;
    std::optional<std::string> query;
    std::optional<std::string> queries_text;
    int lemma_c = 0;
};

Options resolve(const qm_options_t *o, const VariantConfig &config, std::uint64_t default_budget)
{
    qm_options_t defaults;
    qm_options_init(&defaults);
    if (o == nullptr)
        o = &defaults;
    Options r;
    if (o->strategy != nullptr)
        r.strategy = o->strategy;
    make_strategy(r.strategy);
    if (o->turn_budget < 0)
        fail(ErrorKind::InvalidArgument, "turn budget must be positive");
    r.turn_budget = o->turn_budget > 0 ? o->turn_budget : default_turn_budget(config);
    r.space_budget = o->space_budget > 0 ? o->space_budget : default_budget;
    if (o->s_cap < -1)
        fail(ErrorKind::InvalidArgument, "s-cap must be >= 0");
    r.s_cap = o->s_cap == -1 ? kDefaultSCap : o->s_cap;
    r.seed = o->seed;
    r.threads = o->threads > 0 ? o->threads : std::max(1U, std::thread::hardware_concurrency());
    if (o->hidden != nullptr)
        r.hidden = o->hidden;
    if (o->query != nullptr)
        r.query = o->query;
    if (o->queries_text != nullptr)
        r.queries_text = o->queries_text;
    if (o->lemma_c < 0)
        fail(ErrorKind::InvalidArgument, "lemma C must be >= 1");
    r.lemma_c = o->lemma_c;
    return r;
}

struct Check
{
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Accumulates one experiment's result, checks and human-readable summary.
class Report
{
public:
    Report(std::string command, const VariantConfig &config, const Options &opts)
      : _command(std::move(command))
    {
        _spec = Json{{"command", _command},
                     {"config", to_json(config)},
                     {"strategy", opts.strategy},
                     {"turn_budget", opts.turn_budget},
                     {"space_budget", opts.space_budget},
                     {"s_cap", opts.s_cap},
                     {"seed", opts.seed},
                     {"threads", opts.threads},
                     {"hidden", opts.hidden ? Json(*opts.hidden) : Json(nullptr)},
                     {"query", opts.query ? Json(*opts.query) : Json(nullptr)},
                     {"queries", nullptr},
                     {"lemma_c", opts.lemma_c}};
    }

    Json &spec() { return _spec; }
    Json &result() { return _result; }

    void check(std::string name, bool passed, std::string detail = {})
    {
        _checks.push_back({std::move(name), passed, std::move(detail)});
    }

    void line(const std::string &text) { _summary += text + "\n"; }
    void csv(std::string text) { _csv = std::move(text); }

    qm_status finish(qm_result **out)
    {
        Json checks = Json::array();
        bool ok = true;
        for (const auto &c : _checks) {
            checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            if (!c.passed) {
                ok = false;
                line("invariant violated: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
            }
        }
        Json doc{{"schema_version", kSchemaVersion},
                 {"command", _command},
                 {"spec", _spec},
                 {"status", ok ? "ok" : "invariant-violation"},
                 {"checks", std::move(checks)},
                 {"result", _result}};
        auto res = std::make_unique<qm_result>();
        res->json = doc.dump(2) + "\n";
        res->csv = std::move(_csv);
        res->summary = std::move(_summary);
        *out = res.release();
        if (!ok)
            last_error = "invariant violation in " + _command;
        return ok ? QM_OK : QM_INVARIANT;
    }

private:
    std::string _command;
    Json _spec;
    Json _result = Json::object();
    std::vector<Check> _checks;
    std::string _summary;
    std::optional<std::string> _csv;
};

void require_adaptive(const VariantConfig &config, const char *command)
{
    if (config.mode != Mode::Adaptive)
        fail(ErrorKind::Domain, std::string(command) + " requires mode adaptive");
}

bool has_nk_guarantee(std::string_view strategy)
{
    return strategy == "minimax" || strategy == "basis";
}

bool is_permutation_game(const VariantConfig &config)
{
    return config.repeats == Repeats::Forbidden && config.k == config.n;
}

std::string fixed(double v, int digits = 6)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

qm_status run_solve(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    config.validate();
    require_adaptive(config, "solve");
    Options opts = resolve(o, config, CodeSpace::kDefaultBudget);
    const CodeSpace space(config, opts.space_budget);
    Code hidden;
    if (opts.hidden) {
        hidden = parse_code(*opts.hidden);
        validate_code(hidden, config);
    } else {
        std::size_t index = 0;
        if (opts.seed != 0) {
            std::mt19937_64 rng(opts.seed);
            index = static_cast<std::size_t>(rng() % space.size());
        }
        hidden = space.code(index);
        opts.hidden = to_string(hidden);
    }
    const auto strategy = make_strategy(opts.strategy);
    const GameTranscript t = play_honest(*strategy, hidden, space, opts.turn_budget);

    Report rep("solve", config, opts);
    rep.result() = to_json(t);
    rep.csv(trace_csv(t));
    rep.check("determined-hidden", t.outcome == Outcome::Determined && t.determined == hidden,
              std::string(to_string(t.outcome)));
    if (has_nk_guarantee(opts.strategy))
        rep.check("at-most-nk-queries", t.turns.size() <= static_cast<std::size_t>(config.n * config.k),
                  std::to_string(t.turns.size()) + " queries");
    rep.line("solve: strategy=" + opts.strategy + " hidden=" + to_string(hidden) +
             " outcome=" + std::string(to_string(t.outcome)) +
             (t.determined ? " code=" + to_string(*t.determined) : std::string()) +
             " queries=" + std::to_string(t.turns.size()));
    if (!strategy->uses_white_pegs() && config.feedback == FeedbackKind::BlackWhite)
        rep.line("note: strategy " + opts.strategy + " ignores white pegs");
    return rep.finish(out);
}

qm_status run_worst_case(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    config.validate();
    require_adaptive(config, "worst-case");
    const Options opts = resolve(o, config, kWorstCaseBudget);
    const CodeSpace space(config, opts.space_budget);
    const auto strategy = make_strategy(opts.strategy);
    const WorstCaseResult r =
        worst_case_queries(*strategy, space, opts.turn_budget, opts.threads, opts.space_budget);

    Report rep("worst-case", config, opts);
    rep.result() = to_json(r);
    rep.csv(histogram_csv(r));
    rep.check("all-determined", r.failures == 0, std::to_string(r.failures) + " failures");
    if (has_nk_guarantee(opts.strategy))
        rep.check("at-most-nk-queries", r.max_queries <= config.n * config.k,
                  "max " + std::to_string(r.max_queries));
    rep.line("worst-case: strategy=" + opts.strategy + " codes=" + std::to_string(space.size()) +
             " max=" + std::to_string(r.max_guesses) + " max_queries=" + std::to_string(r.max_queries) +
             " failures=" + std::to_string(r.failures));
    rep.line("  max counts guesses up to and including playing the hidden code; max_queries stops "
             "as soon as one candidate remains (" + std::to_string(r.argmax.size()) +
             " codes attain it, first " + (r.argmax.empty() ? "-" : to_string(r.argmax.front())) + ")");
    if (!strategy->uses_white_pegs() && config.feedback == FeedbackKind::BlackWhite)
        rep.line("note: strategy " + opts.strategy + " ignores white pegs");
    return rep.finish(out);
}

qm_status run_exact_value(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    config.validate();
    require_adaptive(config, "exact-value");
    const Options opts = resolve(o, config, kExactBudget);
    const CodeSpace space(config, opts.space_budget);
    const ExactValueResult r = exact_game_value(space, opts.turn_budget, opts.threads, opts.space_budget);

    Report rep("exact-value", config, opts);
    rep.result() = to_json(r);
    MinimaxStrategy minimax;
    const WorstCaseResult mm = worst_case_queries(minimax, space, default_turn_budget(config),
                                                  opts.threads, space.size());
    rep.result()["minimax_worst_case"] = mm.max_queries;
    if (r.value)
        rep.check("at-most-minimax-worst-case", *r.value <= mm.max_queries,
                  std::to_string(*r.value) + " vs " + std::to_string(mm.max_queries));
    if (is_permutation_game(config)) {
        const auto lb = trivial_lower_bound(static_cast<unsigned long>(config.n));
        rep.result()["trivial_lb"] = lb;
        if (r.value)
            rep.check("at-least-trivial-lower-bound", static_cast<unsigned long>(*r.value) >= lb,
                      std::to_string(*r.value) + " vs " + std::to_string(lb));
    }
    rep.line("exact-value: value=" + (r.value ? std::to_string(*r.value) : std::string("none")) +
             (r.cap_reached ? " cap-reached depth_cap=" + std::to_string(r.depth_cap) : std::string()) +
             " minimax_worst_case=" + std::to_string(mm.max_queries) +
             (r.best_first_query ? " first=" + to_string(*r.best_first_query) : std::string()));
    return rep.finish(out);
}

qm_status run_bounds(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    require(c, "config");
    if (c->n < 1 || c->k < 1)
        fail(ErrorKind::InvalidArgument, "bounds require n >= 1 and k >= 1");
    VariantConfig config;
    config.n = c->n;
    config.k = c->k;
    config.feedback = c->feedback == QM_BLACK_ONLY ? FeedbackKind::BlackOnly : FeedbackKind::BlackWhite;
    config.repeats = c->repeats == QM_REPEATS_FORBIDDEN ? Repeats::Forbidden : Repeats::Allowed;
    config.mode = c->mode == QM_NONADAPTIVE ? Mode::NonAdaptive : Mode::Adaptive;
    const Options opts = resolve(o, VariantConfig{}, CodeSpace::kDefaultBudget);
    const auto n = static_cast<unsigned long>(c->n);
    const auto k = static_cast<unsigned long>(c->k);
    const BoundReport r = bound_report(n, k);

    Report rep("bounds", config, opts);
    rep.result() = to_json(r);
    if (!r.buckets.empty()) {
        rep.csv(bucket_csv(r));
        BigInt total = 0;
        bool tails = true;
        for (const auto &b : r.buckets) {
            total += b.bucket_size;
            tails = tails && b.tail_bound_holds;
        }
        rep.check("bucket-sizes-sum-to-n-factorial", total == factorial(n));
        rep.check("tail-sum-at-most-n-factorial-over-x-factorial", tails);
    }
    if (!r.matches.empty()) {
        bool caps = true;
        for (const auto &m : r.matches)
            caps = caps && m.below_cap;
        rep.check("match-probability-at-most-inverse-factorial", caps);
    }
    if (r.single_query_entropy)
        rep.check("single-query-entropy-below-3", *r.single_query_entropy < 3.0,
                  fixed(*r.single_query_entropy));

    rep.line("bounds: n=" + std::to_string(n) + " k=" + std::to_string(k) +
             " trivial_lb=" + std::to_string(r.trivial_lb) +
             (r.entropy_lb ? " entropy_lb=" + std::to_string(*r.entropy_lb) : std::string()) +
             (r.single_query_entropy ? " single_query_entropy=" + fixed(*r.single_query_entropy)
                                     : std::string()));
    for (const auto *t : {&r.theorem1_natural, &r.theorem1_base2}) {
        if (!*t)
            continue;
        const auto &th = **t;
        rep.line("threshold (" + std::string(to_string(th.base)) + "): C=" + std::to_string(th.c) +
                 " holds=" + (th.at_c.holds ? "yes" : "no") +
                 (th.lower_bound ? " lower_bound=" + std::to_string(*th.lower_bound) : std::string()) +
                 (th.smallest_holding_c ? " smallest_holding_C=" + std::to_string(*th.smallest_holding_c)
                                        : std::string()));
    }
    return rep.finish(out);
}

qm_status run_adversary_trace(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    config.validate();
    require_adaptive(config, "adversary-trace");
    const Options opts = resolve(o, config, CodeSpace::kDefaultBudget);
    const CodeSpace space(config, opts.space_budget);
    const auto strategy = make_strategy(opts.strategy);
    const GameTranscript t = play_adversarial(*strategy, space, opts.turn_budget);

    Report rep("adversary-trace", config, opts);
    rep.result() = to_json(t);
    rep.csv(trace_csv(t));
    bool monotone = true;
    for (std::size_t i = 1; i < t.remaining.size(); ++i)
        monotone = monotone && t.remaining[i] <= t.remaining[i - 1];
    rep.check("starts-at-full-space", !t.remaining.empty() && t.remaining.front() == space.size());
    rep.check("non-increasing", monotone);
    rep.check("determined", t.outcome == Outcome::Determined, std::string(to_string(t.outcome)));

    Json bounds = Json::array();
    if (is_permutation_game(config)) {
        std::vector<unsigned long> cs;
        if (opts.lemma_c > 0)
            cs.push_back(static_cast<unsigned long>(opts.lemma_c));
        else
            for (unsigned long cc = 1; cc <= 2 && cc < static_cast<unsigned long>(config.n); ++cc)
                cs.push_back(cc);
        for (unsigned long cc : cs) {
            const auto rows = check_lemma2_trace(t, cc);
            bool all = std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.holds; });
            bounds.push_back(Json{{"c", cc}, {"holds", all}, {"rows", to_json(rows)}});
            rep.check("trace-bound-c" + std::to_string(cc), all);
        }
    } else if (opts.lemma_c > 0) {
        fail(ErrorKind::Domain, "the trace bound applies to the permutation game only");
    }
    rep.result()["trace_bounds"] = std::move(bounds);

    std::string trace;
    for (std::size_t i = 0; i < t.remaining.size(); ++i)
        trace += (i ? "," : "") + std::to_string(t.remaining[i]);
    rep.line("adversary-trace: strategy=" + opts.strategy + " queries=" +
             std::to_string(t.turns.size()) + " outcome=" + std::string(to_string(t.outcome)) +
             " remaining=" + trace);
    return rep.finish(out);
}

qm_status run_nonadaptive_search(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    require_nonadaptive_scope(config);
    const Options opts = resolve(o, config, kSubsetSearchBudget);
    const CodeSpace space(config);
    std::optional<QuerySet> given;
    if (opts.queries_text)
        given = parse_query_set(*opts.queries_text, config);

    const MinSizeResult min = min_nonadaptive_size(space, opts.s_cap, opts.threads, opts.space_budget);
    const QuerySet greedy = greedy_query_set(space, opts.seed);
    const IdentifiabilityReport greedy_rep = is_identifiable(greedy, space);

    Report rep("nonadaptive-search", config, opts);
    if (given)
        rep.spec()["queries"] = to_json(*given)["queries"];
    const double log_size = std::log2(static_cast<double>(space.size()));

    auto entropy_checks = [&](const QuerySet &qs, const std::string &label, Json &j) {
        const double joint = joint_response_entropy(qs, space);
        double sum = 0;
        for (double h : single_response_entropies(qs, space))
            sum += h;
        j["joint_entropy"] = joint;
        j["sum_single_entropies"] = sum;
        rep.check(label + "-subadditive", joint <= sum + 1e-9, fixed(joint) + " <= " + fixed(sum));
        if (j.value("identifiable", false))
            rep.check(label + "-entropy-equals-log-size", std::abs(joint - log_size) < 1e-9,
                      fixed(joint) + " vs " + fixed(log_size));
    };

    Json jmin = to_json(min);
    if (min.size) {
        rep.check("min-size-at-least-entropy-bound", *min.size >= min.entropy_lb,
                  std::to_string(*min.size) + " vs " + std::to_string(min.entropy_lb));
        rep.check("min-size-at-most-greedy", *min.size <= greedy.size());
        const auto wrep = is_identifiable(min.witness, space);
        rep.check("witness-identifiable", wrep.identifiable);
        jmin["identifiable"] = wrep.identifiable;
        entropy_checks(min.witness, "witness", jmin);
    } else {
        rep.check("cap-consistent-with-greedy", greedy.size() > static_cast<std::size_t>(opts.s_cap));
    }
    Json jgreedy = to_json(greedy);
    jgreedy.update(to_json(greedy_rep));
    rep.check("greedy-identifiable", greedy_rep.identifiable);
    entropy_checks(greedy, "greedy", jgreedy);

    rep.result() = Json{{"codes", space.size()}, {"minimum", std::move(jmin)}, {"greedy", std::move(jgreedy)}};
    if (given) {
        const auto grep = is_identifiable(*given, space);
        Json jg = to_json(*given);
        jg.update(to_json(grep));
        entropy_checks(*given, "given", jg);
        rep.result()["given"] = std::move(jg);
        rep.line("given set: s=" + std::to_string(given->size()) +
                 " identifiable=" + (grep.identifiable ? "yes" : "no") +
                 (grep.witness ? " collision=" + to_string(grep.witness->first) + "|" +
                                     to_string(grep.witness->second)
                               : std::string()));
    }
    rep.line("nonadaptive-search: codes=" + std::to_string(space.size()) + " min=" +
             (min.size ? std::to_string(*min.size) : ">" + std::to_string(opts.s_cap)) +
             " entropy_lb=" + std::to_string(min.entropy_lb) +
             " greedy=" + std::to_string(greedy.size()));
    return rep.finish(out);
}

qm_status run_entropy_audit(const qm_config_t *c, const qm_options_t *o, qm_result **out)
{
    const VariantConfig config = to_config(c);
    config.validate();
    if (config.repeats != Repeats::Forbidden)
        fail(ErrorKind::Domain, "entropy audit covers the no-repeats variant only");
    const Options opts = resolve(o, config, kAuditBudget);
    const CodeSpace space(config, opts.space_budget);
    const auto n = static_cast<unsigned long>(config.n);
    const auto k = static_cast<unsigned long>(config.k);

    std::vector<std::size_t> audited;
    if (opts.query) {
        Code q = parse_code(*opts.query);
        validate_code(q, config);
        audited.push_back(space.index_of(q));
    } else {
        audited.resize(space.size());
        std::iota(audited.begin(), audited.end(), std::size_t{0});
    }

    std::vector<BigInt> expected;
    for (unsigned long x = 0; x <= n; ++x)
        expected.push_back(exact_match_count(n, k, static_cast<long>(x)));
    const BigInt total = falling_factorial(k, n);

    std::vector<MatchRow> rows;
    bool caps = true;
    for (unsigned long x = 0; x <= n; ++x) {
        MatchRow m;
        m.x = x;
        m.count = expected[x];
        m.probability = Rational(m.count, total);
        m.probability.canonicalize();
        m.cap = Rational(BigInt(1), factorial(x));
        m.cap.canonicalize();
        m.below_cap = m.probability <= m.cap;
        caps = caps && m.below_cap;
        rows.push_back(std::move(m));
    }

    // Every audited query goes through the closed form, and its response
    // distribution is also counted directly over the whole space.
    std::vector<double> entropy(audited.size());
    std::vector<std::uint8_t> mismatch(audited.size(), 0);
    const std::size_t n1 = n + 1;
    detail::parallel_for(audited.size(), opts.threads, [&](std::size_t i) {
        const std::size_t q = audited[i];
        entropy[i] = entropy_audit(config, space.code(q));
        std::vector<std::uint64_t> counts(n1, 0);
        for (std::size_t h = 0; h < space.size(); ++h)
            ++counts[static_cast<std::size_t>(black_pegs(space.colors(q), space.colors(h)))];
        for (std::size_t x = 0; x < n1; ++x)
            if (expected[x] != BigInt(static_cast<unsigned long>(counts[x])))
                mismatch[i] = 1;
    });
    const double max_entropy = *std::max_element(entropy.begin(), entropy.end());
    const auto mismatches = static_cast<std::size_t>(std::count(mismatch.begin(), mismatch.end(), 1));

    Report rep("entropy-audit", config, opts);
    rep.result() = Json{{"codes", space.size()},
                        {"queries_audited", audited.size()},
                        {"entropy", entropy.front()},
                        {"max_entropy", max_entropy},
                        {"distribution_mismatches", mismatches},
                        {"matches", Json::array()}};
    for (const auto &m : rows)
        rep.result()["matches"].push_back(Json{{"x", m.x},
                                               {"count", to_json(m.count)},
                                               {"probability", to_json(m.probability)},
                                               {"cap", to_json(m.cap)},
                                               {"below_cap", m.below_cap}});
    rep.csv(match_csv(rows));
    rep.check("entropy-below-3", max_entropy < 3.0 - 1e-6, fixed(max_entropy));
    rep.check("probability-at-most-inverse-factorial", caps);
    rep.check("closed-form-matches-enumeration", mismatches == 0,
              std::to_string(mismatches) + " queries differ");
    rep.line("entropy-audit: n=" + std::to_string(n) + " k=" + std::to_string(k) +
             " queries=" + std::to_string(audited.size()) + " entropy=" + fixed(max_entropy) +
             " bound=3");
    return rep.finish(out);
}

template <typename Fn>
qm_status run(qm_result **out, Fn &&fn)
{
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        return fn();
    });
}

} // namespace

extern "C" {

const char *qm_version(void)
{
    return QUERYMIND_VERSION;
}

const char *qm_last_error(void)
{
    return last_error.c_str();
}

void qm_config_init(qm_config_t *config)
{
    if (config == nullptr)
        return;
    *config = qm_config_t{4, 6, QM_BLACK_WHITE, QM_REPEATS_ALLOWED, QM_ADAPTIVE};
}

void qm_options_init(qm_options_t *options)
{
    if (options == nullptr)
        return;
    *options = qm_options_t{};
    options->s_cap = -1;
}

qm_status qm_config_validate(const qm_config_t *config)
{
    return guarded([&] {
        to_config(config).validate();
        return QM_OK;
    });
}

qm_status qm_space_create(const qm_config_t *config, uint64_t budget, qm_space **out)
{
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        const VariantConfig c = to_config(config);
        *out = new qm_space{CodeSpace(c, budget > 0 ? budget : CodeSpace::kDefaultBudget)};
        return QM_OK;
    });
}

void qm_space_destroy(qm_space *space)
{
    delete space;
}

uint64_t qm_space_size(const qm_space *space)
{
    return space == nullptr ? 0 : space->space.size();
}

qm_status qm_space_code(const qm_space *space, uint64_t index, uint8_t *colors, size_t length)
{
    return guarded([&] {
        require(space, "space");
        require(colors, "colors");
        if (index >= space->space.size())
            fail(ErrorKind::InvalidArgument, "index out of range");
        if (length != static_cast<std::size_t>(space->space.length()))
            fail(ErrorKind::InvalidArgument, "buffer length must equal n");
        auto c = space->space.colors(static_cast<std::size_t>(index));
        std::copy(c.begin(), c.end(), colors);
        return QM_OK;
    });
}

qm_status qm_space_index(const qm_space *space, const uint8_t *colors, size_t length, uint64_t *index)
{
    return guarded([&] {
        require(space, "space");
        require(colors, "colors");
        require(index, "index");
        *index = space->space.index_of(std::span<const Color>(colors, length));
        return QM_OK;
    });
}

qm_status qm_feedback(const qm_config_t *config, const uint8_t *q, const uint8_t *h, size_t length,
                      int *black, int *white)
{
    return guarded([&] {
        require(q, "q");
        require(h, "h");
        require(black, "black");
        require(white, "white");
        const VariantConfig c = to_config(config);
        c.validate();
        const Feedback fb = feedback(Code(std::vector<Color>(q, q + length)),
                                     Code(std::vector<Color>(h, h + length)), c);
        *black = fb.black;
        *white = fb.white.value_or(-1);
        return QM_OK;
    });
}

qm_status qm_solve(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_solve(config, options, out); });
}

qm_status qm_worst_case(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_worst_case(config, options, out); });
}

qm_status qm_exact_value(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_exact_value(config, options, out); });
}

qm_status qm_bounds(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_bounds(config, options, out); });
}

qm_status qm_adversary_trace(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_adversary_trace(config, options, out); });
}

qm_status qm_nonadaptive_search(const qm_config_t *config, const qm_options_t *options,
                                qm_result **out)
{
    return run(out, [&] { return run_nonadaptive_search(config, options, out); });
}

qm_status qm_entropy_audit(const qm_config_t *config, const qm_options_t *options, qm_result **out)
{
    return run(out, [&] { return run_entropy_audit(config, options, out); });
}

const char *qm_result_json(const qm_result *result)
{
    return result == nullptr ? nullptr : result->json.c_str();
}

const char *qm_result_csv(const qm_result *result)
{
    return result == nullptr || !result->csv ? nullptr : result->csv->c_str();
}

const char *qm_result_summary(const qm_result *result)
{
    return result == nullptr ? nullptr : result->summary.c_str();
}

void qm_result_destroy(qm_result *result)
{
    delete result;
}

} // extern "C"

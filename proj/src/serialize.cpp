#include "querymind/serialize.hpp"

#include <sstream>

namespace querymind {

namespace {

Json codes_json(const std::vector<Code> &codes)
{
    Json out = Json::array();
    for (const auto &c : codes)
        out.push_back(to_string(c));
    return out;
}

template <typename T>
Json optional_json(const std::optional<T> &v)
{
    return v ? Json(to_json(*v)) : Json(nullptr);
}

template <typename T>
Json optional_plain(const std::optional<T> &v)
{
    return v ? Json(*v) : Json(nullptr);
}

std::string rational_text(const Rational &v)
{
    return v.get_str();
}

} // namespace

Json to_json(const VariantConfig &config)
{
    return Json{{"n", config.n},
                {"k", config.k},
                {"feedback", to_string(config.feedback)},
                {"repeats", to_string(config.repeats)},
                {"mode", to_string(config.mode)}};
}

VariantConfig config_from_json(const Json &j)
{
    VariantConfig c;
    try {
        c.n = j.at("n").get<int>();
        c.k = j.at("k").get<int>();
        c.feedback = parse_feedback_kind(j.at("feedback").get<std::string>());
        c.repeats = parse_repeats(j.at("repeats").get<std::string>());
        c.mode = parse_mode(j.at("mode").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

Json to_json(const Feedback &fb)
{
    Json j{{"black", fb.black}};
    j["white"] = optional_plain(fb.white);
    return j;
}

Json to_json(const BigInt &v)
{
    return v.get_str();
}

Json to_json(const Rational &v)
{
    return Json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

Json to_json(const GameTranscript &t)
{
    Json turns = Json::array();
    for (const auto &turn : t.turns)
        turns.push_back(Json{{"query", to_string(turn.query)}, {"response", to_json(turn.response)}});
    return Json{{"config", to_json(t.config)},
                {"strategy", t.strategy},
                {"outcome", to_string(t.outcome)},
                {"determined", t.determined ? Json(to_string(*t.determined)) : Json(nullptr)},
                {"queries", t.turns.size()},
                {"turns", std::move(turns)},
                {"remaining", t.remaining}};
}

Json to_json(const WorstCaseResult &r)
{
    Json hist = Json::array();
    for (const auto &[q, count] : r.histogram)
        hist.push_back(Json{{"queries", q}, {"count", count}});
    Json guesses = Json::array();
    for (const auto &[g, count] : r.guess_histogram)
        guesses.push_back(Json{{"guesses", g}, {"count", count}});
    return Json{{"strategy", r.strategy},
                {"config", to_json(r.config)},
                {"codes", r.queries_per_code.size()},
                {"max_queries", r.max_queries},
                {"argmax", codes_json(r.argmax)},
                {"histogram", std::move(hist)},
                {"max_guesses", r.max_guesses},
                {"guess_histogram", std::move(guesses)},
                {"failures", r.failures},
                {"failed_codes", codes_json(r.failed_codes)}};
}

Json to_json(const ExactValueResult &r)
{
    // states_explored depends on thread scheduling and stays out of artifacts.
    return Json{{"value", optional_plain(r.value)},
                {"cap_reached", r.cap_reached},
                {"depth_cap", r.depth_cap},
                {"best_first_query",
                 r.best_first_query ? Json(to_string(*r.best_first_query)) : Json(nullptr)}};
}

Json to_json(const Theorem1Report &r)
{
    const auto &w = r.at_c.witness;
    return Json{{"n", r.n},
                {"base", to_string(r.base)},
                {"c", r.c},
                {"holds", r.at_c.holds},
                {"witness_exact", w.exact},
                {"witness_lower", to_json(w.lower)},
                {"witness_upper", to_json(w.upper)},
                {"lower_bound", optional_plain(r.lower_bound)},
                {"largest_holding_c_up_to_c", optional_plain(r.largest_holding_c_up_to_c)},
                {"smallest_holding_c", optional_plain(r.smallest_holding_c)}};
}

Json to_json(const BoundReport &r)
{
    Json buckets = Json::array();
    for (const auto &b : r.buckets)
        buckets.push_back(Json{{"r", b.r},
                               {"bucket_size", to_json(b.bucket_size)},
                               {"tail_sum", to_json(b.tail_sum)},
                               {"tail_bound", to_json(b.tail_bound)},
                               {"tail_bound_holds", b.tail_bound_holds}});
    Json matches = Json::array();
    for (const auto &m : r.matches)
        matches.push_back(Json{{"x", m.x},
                               {"count", to_json(m.count)},
                               {"probability", to_json(m.probability)},
                               {"cap", to_json(m.cap)},
                               {"below_cap", m.below_cap}});
    Json lemma2 = Json::array();
    for (const auto &l : r.lemma2)
        lemma2.push_back(Json{{"c", l.c}, {"t", l.t}, {"bound", to_json(l.bound)}});
    return Json{{"n", r.n},
                {"k", r.k},
                {"trivial_lb", r.trivial_lb},
                {"theorem1_natural", optional_json(r.theorem1_natural)},
                {"theorem1_base2", optional_json(r.theorem1_base2)},
                {"entropy_lb", optional_plain(r.entropy_lb)},
                {"single_query_entropy", optional_plain(r.single_query_entropy)},
                {"permutations", optional_json(r.permutations)},
                {"injective_codes", optional_json(r.injective_codes)},
                {"harmonic_n", optional_json(r.harmonic_n)},
                {"buckets", std::move(buckets)},
                {"matches", std::move(matches)},
                {"lemma2", std::move(lemma2)}};
}

Json to_json(const std::vector<TraceBoundRow> &rows)
{
    Json out = Json::array();
    for (const auto &row : rows)
        out.push_back(Json{{"t", row.t},
                           {"remaining", row.remaining},
                           {"fraction", to_json(row.fraction)},
                           {"bound", to_json(row.bound)},
                           {"holds", row.holds}});
    return out;
}

Json to_json(const QuerySet &qs)
{
    return Json{{"size", qs.size()}, {"queries", codes_json(qs.queries)}};
}

Json to_json(const IdentifiabilityReport &r)
{
    Json witness = nullptr;
    if (r.witness)
        witness = Json::array({to_string(r.witness->first), to_string(r.witness->second)});
    return Json{{"identifiable", r.identifiable},
                {"witness", std::move(witness)},
                {"s", r.s},
                {"entropy_lb", r.entropy_lb},
                {"gap", r.gap}};
}

Json to_json(const MinSizeResult &r)
{
    return Json{{"size", optional_plain(r.size)},
                {"cap_exceeded", r.cap_exceeded},
                {"s_cap", r.s_cap},
                {"entropy_lb", r.entropy_lb},
                {"witness", r.size ? to_json(r.witness) : Json(nullptr)}};
}

std::string histogram_csv(const WorstCaseResult &r)
{
    std::ostringstream out;
    out << "queries,count\n";
    for (const auto &[q, count] : r.histogram)
        out << q << ',' << count << '\n';
    return out.str();
}

std::string trace_csv(const GameTranscript &t)
{
    std::ostringstream out;
    out << "t,remaining\n";
    for (std::size_t i = 0; i < t.remaining.size(); ++i)
        out << i << ',' << t.remaining[i] << '\n';
    return out.str();
}

std::string lemma2_csv(const std::vector<std::pair<unsigned long, std::vector<TraceBoundRow>>> &rows)
{
    std::ostringstream out;
    out << "c,t,remaining,fraction,bound,holds\n";
    for (const auto &[c, trace] : rows)
        for (const auto &row : trace)
            out << c << ',' << row.t << ',' << row.remaining << ',' << rational_text(row.fraction)
                << ',' << rational_text(row.bound) << ',' << (row.holds ? "true" : "false") << '\n';
    return out.str();
}

std::string bucket_csv(const BoundReport &r)
{
    std::ostringstream out;
    out << "r,bucket_size,tail_sum,tail_bound,holds\n";
    for (const auto &b : r.buckets)
        out << b.r << ',' << b.bucket_size.get_str() << ',' << b.tail_sum.get_str() << ','
            << rational_text(b.tail_bound) << ',' << (b.tail_bound_holds ? "true" : "false") << '\n';
    return out.str();
}

std::string match_csv(const std::vector<MatchRow> &rows)
{
    std::ostringstream out;
    out << "x,count,probability,cap,below_cap\n";
    for (const auto &m : rows)
        out << m.x << ',' << m.count.get_str() << ',' << rational_text(m.probability) << ','
            << rational_text(m.cap) << ',' << (m.below_cap ? "true" : "false") << '\n';
    return out.str();
}

} // namespace querymind

#include "querymind/serialize.hpp"

#include <doctest.h>

using namespace querymind;

TEST_CASE("config round-trips through json")
{
    VariantConfig c;
    c.n = 5;
    c.k = 7;
    c.repeats = Repeats::Forbidden;
    c.feedback = FeedbackKind::BlackOnly;
    c.mode = Mode::NonAdaptive;
    const auto j = to_json(c);
    CHECK(j.dump() == R"({"n":5,"k":7,"feedback":"black-only","repeats":"forbidden","mode":"nonadaptive"})");
    const auto back = config_from_json(j);
    CHECK(back.n == 5);
    CHECK(back.k == 7);
    CHECK(back.repeats == Repeats::Forbidden);
    CHECK(back.feedback == FeedbackKind::BlackOnly);
    CHECK(back.mode == Mode::NonAdaptive);

    CHECK_THROWS_AS(config_from_json(Json{{"n", 3}}), Error);
    CHECK_THROWS_AS(config_from_json(Json{{"n", 0}, {"k", 3}, {"feedback", "black-only"}, {"repeats", "forbidden"},
                                          {"mode", "adaptive"}}),
                    Error);
}

TEST_CASE("exact numbers serialize as strings")
{
    CHECK(to_json(factorial(30)).get<std::string>() == "265252859812191058636308480000000");
    const auto r = to_json(Rational(73, 7200));
    CHECK(r["num"] == "73");
    CHECK(r["den"] == "7200");
    Feedback fb;
    fb.black = 2;
    CHECK(to_json(fb).dump() == R"({"black":2,"white":null})");
    fb.white = 1;
    CHECK(to_json(fb).dump() == R"({"black":2,"white":1})");
}

TEST_CASE("worst-case json and csv")
{
    VariantConfig c;
    c.n = 2;
    c.k = 2;
    const CodeSpace space(c);
    MinimaxStrategy minimax;
    const auto r = worst_case_queries(minimax, space, 5);
    const auto j = to_json(r);
    CHECK(j["codes"] == 4);
    CHECK(j["max_queries"] == r.max_queries);
    CHECK(j["failures"] == 0);
    CHECK_FALSE(j.contains("queries_per_code"));
    const auto csv = histogram_csv(r);
    CHECK(csv.rfind("queries,count\n", 0) == 0);
    std::size_t total = 0;
    for (const auto &[q, n] : r.histogram)
        total += n;
    CHECK(total == 4);
    // Same input, same bytes.
    CHECK(to_json(worst_case_queries(minimax, space, 5, 3)).dump() == j.dump());
}

TEST_CASE("bound report tables")
{
    const auto r = bound_report(4, 4);
    const auto j = to_json(r);
    CHECK(j["trivial_lb"] == 3);
    CHECK(j["buckets"].size() == 5);
    const auto csv = bucket_csv(r);
    CHECK(csv.find("0,9,24,24,true\n") != std::string::npos);
    const auto m = match_csv(r.matches);
    CHECK(m.find("4,1,1/24,1/24,true\n") != std::string::npos);
    CHECK(m.find("3,0,0,1/6,true\n") != std::string::npos);
}

TEST_CASE("exact value json omits the work counter")
{
    VariantConfig c;
    c.n = 2;
    c.k = 3;
    const auto j = to_json(exact_game_value(CodeSpace(c), 6));
    CHECK_FALSE(j.contains("states_explored"));
    CHECK(j["cap_reached"] == false);
    CHECK(j["value"].is_number());
}

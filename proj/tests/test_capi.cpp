// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "querymind/querymind.h"

#include <cstring>
#include <string>

namespace {

using Json = nlohmann::json;

qm_config_t config(int n, int k)
{
    qm_config_t c;
    qm_config_init(&c);
    c.n = n;
    c.k = k;
    return c;
}

/// Runs one entry point, returns the status and the parsed document.
template <typename Fn>
std::pair<qm_status, Json> call(Fn fn, const qm_config_t &c, const qm_options_t &o, std::string *csv = nullptr)
{
    qm_result *r = nullptr;
    const qm_status st = fn(&c, &o, &r);
    Json doc;
    if (r != nullptr) {
        doc = Json::parse(qm_result_json(r));
        if (csv != nullptr && qm_result_csv(r) != nullptr)
            *csv = qm_result_csv(r);
        CHECK(std::strlen(qm_result_summary(r)) > 0);
        qm_result_destroy(r);
    }
    return {st, doc};
}

qm_options_t options()
{
    qm_options_t o;
    qm_options_init(&o);
    o.threads = 1;
    return o;
}

} // namespace

TEST_CASE("defaults and version")
{
    CHECK(std::string(qm_version()) == "0.1.0");
    const auto c = config(4, 6);
    CHECK(c.feedback == QM_BLACK_WHITE);
    CHECK(c.repeats == QM_REPEATS_ALLOWED);
    CHECK(c.mode == QM_ADAPTIVE);
    CHECK(qm_config_validate(&c) == QM_OK);
    const auto bad = config(0, 6);
    CHECK(qm_config_validate(&bad) == QM_INVALID_ARGUMENT);
    CHECK(std::strlen(qm_last_error()) > 0);
    CHECK(qm_config_validate(nullptr) == QM_INVALID_ARGUMENT);
}

TEST_CASE("code space handles")
{
    auto c = config(3, 3);
    c.repeats = QM_REPEATS_FORBIDDEN;
    qm_space *s = nullptr;
    REQUIRE(qm_space_create(&c, 0, &s) == QM_OK);
    CHECK(qm_space_size(s) == 6);
    std::uint8_t colors[3];
    REQUIRE(qm_space_code(s, 5, colors, 3) == QM_OK);
    CHECK(colors[0] == 3);
    CHECK(colors[2] == 1);
    std::uint64_t index = 0;
    CHECK(qm_space_index(s, colors, 3, &index) == QM_OK);
    CHECK(index == 5);
    CHECK(qm_space_code(s, 6, colors, 3) == QM_INVALID_ARGUMENT);
    CHECK(qm_space_code(s, 0, colors, 2) == QM_INVALID_ARGUMENT);
    const std::uint8_t repeated[3] = {1, 1, 2};
    CHECK(qm_space_index(s, repeated, 3, &index) == QM_INVALID_CODE);
    qm_space_destroy(s);
    qm_space_destroy(nullptr);

    const auto big = config(4, 6);
    CHECK(qm_space_create(&big, 100, &s) == QM_CAPACITY);
}

TEST_CASE("feedback")
{
    const auto c = config(4, 3);
    const std::uint8_t q[4] = {1, 1, 2, 2};
    const std::uint8_t h[4] = {1, 2, 1, 3};
    int black = -9, white = -9;
    REQUIRE(qm_feedback(&c, q, h, 4, &black, &white) == QM_OK);
    CHECK(black == 1);
    CHECK(white == 2);
    auto b = c;
    b.feedback = QM_BLACK_ONLY;
    REQUIRE(qm_feedback(&b, q, h, 4, &black, &white) == QM_OK);
    CHECK(white == -1);
    const std::uint8_t bad[4] = {1, 1, 2, 7};
    CHECK(qm_feedback(&c, bad, h, 4, &black, &white) == QM_INVALID_CODE);
}

TEST_CASE("solve")
{
    auto o = options();
    o.hidden = "6,5,4,3";
    std::string csv;
    auto [st, doc] = call(qm_solve, config(4, 6), o, &csv);
    REQUIRE(st == QM_OK);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "solve");
    CHECK(doc["status"] == "ok");
    CHECK(doc["result"]["determined"] == "6,5,4,3");
    CHECK(csv.rfind("t,remaining\n1296\n", 0) != 0);
    CHECK(csv.rfind("t,remaining\n0,1296\n", 0) == 0);

    // A single turn cannot finish: the result is still delivered.
    o.turn_budget = 1;
    auto [st2, doc2] = call(qm_solve, config(4, 6), o);
    CHECK(st2 == QM_INVARIANT);
    CHECK(doc2["status"] == "invariant-violation");

    o = options();
    o.hidden = "1,2";
    CHECK(call(qm_solve, config(4, 6), o).first == QM_INVALID_CODE);
    o = options();
    o.strategy = "psychic";
    CHECK(call(qm_solve, config(4, 6), o).first == QM_INVALID_ARGUMENT);
    auto na = config(3, 3);
    na.mode = QM_NONADAPTIVE;
    CHECK(call(qm_solve, na, options()).first == QM_DOMAIN);

    qm_result *r = nullptr;
    CHECK(qm_solve(nullptr, nullptr, &r) == QM_INVALID_ARGUMENT);
    CHECK(r == nullptr);
}

TEST_CASE("worst case reproduces the classic distribution")
{
    auto [st, doc] = call(qm_worst_case, config(4, 6), options());
    REQUIRE(st == QM_OK);
    CHECK(doc["result"]["max_queries"] == 4);
    CHECK(doc["result"]["max_guesses"] == 5);
    const Json expected = Json::parse(
        R"([{"guesses":1,"count":1},{"guesses":2,"count":6},{"guesses":3,"count":62},)"
        R"({"guesses":4,"count":533},{"guesses":5,"count":694}])");
    CHECK(doc["result"]["guess_histogram"] == expected);

    auto o = options();
    o.space_budget = 100;
    CHECK(call(qm_worst_case, config(4, 6), o).first == QM_CAPACITY);
}

TEST_CASE("results are byte-identical across runs and thread counts")
{
    auto run = [](unsigned threads) {
        auto o = options();
        o.threads = threads;
        qm_result *r = nullptr;
        auto c = config(4, 4);
        c.repeats = QM_REPEATS_FORBIDDEN;
        c.feedback = QM_BLACK_ONLY;
        REQUIRE(qm_adversary_trace(&c, &o, &r) == QM_OK);
        Json doc = Json::parse(qm_result_json(r));
        qm_result_destroy(r);
        doc["spec"].erase("threads");
        return doc.dump();
    };
    CHECK(run(1) == run(1));
    CHECK(run(1) == run(3));
}

TEST_CASE("exact value, bounds, traces")
{
    auto p = config(4, 4);
    p.repeats = QM_REPEATS_FORBIDDEN;
    p.feedback = QM_BLACK_ONLY;
    auto [st, doc] = call(qm_exact_value, p, options());
    REQUIRE(st == QM_OK);
    CHECK(doc["result"]["value"] == 4);

    auto [sb, db] = call(qm_bounds, config(1'000'000, 1'000'000), options());
    REQUIRE(sb == QM_OK);
    CHECK(db["result"]["trivial_lb"] == 927619);

    auto o = options();
    o.lemma_c = 2;
    CHECK(call(qm_adversary_trace, p, o).first == QM_OK);
    CHECK(call(qm_adversary_trace, config(3, 3), o).first == QM_DOMAIN);
    CHECK(call(qm_exact_value, config(4, 6), options()).first == QM_CAPACITY);
}

TEST_CASE("non-adaptive search and entropy audit")
{
    auto c = config(3, 4);
    c.repeats = QM_REPEATS_FORBIDDEN;
    c.feedback = QM_BLACK_ONLY;
    c.mode = QM_NONADAPTIVE;
    auto [st, doc] = call(qm_nonadaptive_search, c, options());
    REQUIRE(st == QM_OK);
    CHECK(doc["result"]["minimum"]["size"] == 4);

    auto o = options();
    o.queries_text = "1,2,3\n";
    auto [st2, doc2] = call(qm_nonadaptive_search, c, o);
    CHECK(st2 == QM_OK);
    CHECK(doc2["result"]["given"]["identifiable"] == false);
    o.queries_text = "1,2,2\n";
    CHECK(call(qm_nonadaptive_search, c, o).first == QM_INVALID_CODE);

    auto e = config(4, 4);
    e.repeats = QM_REPEATS_FORBIDDEN;
    e.feedback = QM_BLACK_ONLY;
    o = options();
    o.query = "1,2,3,4";
    auto [se, de] = call(qm_entropy_audit, e, o);
    REQUIRE(se == QM_OK);
    CHECK(de["status"] == "ok");
    CHECK(call(qm_entropy_audit, config(4, 4), options()).first == QM_DOMAIN);
}

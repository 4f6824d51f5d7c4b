// serialize.hpp -- JSON and CSV forms of results

#pragma once

#include "querymind/combinatorics.hpp"
#include "querymind/engine.hpp"
#include "querymind/nonadaptive.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace querymind {

using Json = nlohmann::ordered_json;

/// Bumped whenever a JSON key or CSV column changes meaning.
inline constexpr int kSchemaVersion = 1;

Json to_json(const VariantConfig &config);
Json to_json(const Feedback &fb);
Json to_json(const BigInt &v);     ///< decimal string
Json to_json(const Rational &v);   ///< {"num": "...", "den": "..."}
Json to_json(const GameTranscript &t);
Json to_json(const WorstCaseResult &r);
Json to_json(const ExactValueResult &r);
Json to_json(const Theorem1Report &r);
Json to_json(const BoundReport &r);
Json to_json(const std::vector<TraceBoundRow> &rows);
Json to_json(const QuerySet &qs);
Json to_json(const IdentifiabilityReport &r);
Json to_json(const MinSizeResult &r);

/// Parses the config object written by `to_json`.
VariantConfig config_from_json(const Json &j);

/// queries,count
std::string histogram_csv(const WorstCaseResult &r);
/// t,remaining
std::string trace_csv(const GameTranscript &t);
/// c,t,remaining,fraction,bound,holds
std::string lemma2_csv(const std::vector<std::pair<unsigned long, std::vector<TraceBoundRow>>> &rows);
/// r,bucket_size,tail_sum,tail_bound,holds
std::string bucket_csv(const BoundReport &r);
/// x,count,probability,cap,below_cap
std::string match_csv(const std::vector<MatchRow> &rows);

} // namespace querymind

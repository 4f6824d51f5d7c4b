#include "querymind/solution_set.hpp"

#include <string>

namespace querymind {

SolutionSet SolutionSet::full(std::size_t universe)
{
    std::vector<std::uint32_t> members(universe);
    for (std::size_t i = 0; i < universe; ++i)
        members[i] = static_cast<std::uint32_t>(i);
    return from_sorted(universe, std::move(members));
}

SolutionSet SolutionSet::from_sorted(std::size_t universe, std::vector<std::uint32_t> members)
{
    SolutionSet s;
    s._universe = universe;
    s._bits.assign((universe + 63) / 64, 0);
    std::int64_t prev = -1;
    for (std::uint32_t m : members) {
        if (m >= universe || static_cast<std::int64_t>(m) <= prev)
            fail(ErrorKind::InvalidArgument,
                 "solution set members must be strictly increasing and below " +
                     std::to_string(universe));
        s._bits[m / 64] |= std::uint64_t(1) << (m % 64);
        prev = m;
    }
    s._members = std::move(members);
    return s;
}

SolutionSet filter_consistent(const SolutionSet &s, std::size_t query, ResponseId r,
                              const CodeSpace &space)
{
    std::vector<std::uint32_t> kept;
    for (std::uint32_t h : s.members())
        if (space.response(query, h) == r)
            kept.push_back(h);
    return SolutionSet::from_sorted(s.universe(), std::move(kept));
}

SolutionSet filter_consistent(const SolutionSet &s, const Code &query, const Feedback &r,
                              const CodeSpace &space)
{
    return filter_consistent(s, space.index_of(query), space.response_id(r), space);
}

std::vector<std::uint32_t> partition_counts(const SolutionSet &s, std::size_t query,
                                            const CodeSpace &space)
{
    std::vector<std::uint32_t> counts(space.response_id_count(), 0);
    for (std::uint32_t h : s.members())
        ++counts[space.response(query, h)];
    return counts;
}

std::vector<std::pair<ResponseId, SolutionSet>> partition(const SolutionSet &s,
                                                          std::size_t query,
                                                          const CodeSpace &space)
{
    std::vector<std::vector<std::uint32_t>> buckets(space.response_id_count());
    for (std::uint32_t h : s.members())
        buckets[space.response(query, h)].push_back(h);
    std::vector<std::pair<ResponseId, SolutionSet>> out;
    for (std::size_t r = 0; r < buckets.size(); ++r)
        if (!buckets[r].empty())
            out.emplace_back(static_cast<ResponseId>(r),
                             SolutionSet::from_sorted(s.universe(), std::move(buckets[r])));
    return out;
}

} // namespace querymind

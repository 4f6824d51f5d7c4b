#pragma once

#include "querymind/codespace.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace querymind {

/// Immutable subset of a code space's indices: a bitset plus the sorted
/// member list and cached cardinality.
class SolutionSet
{
public:
    SolutionSet() = default;

    /// Every code in a space of `universe` codes.
    static SolutionSet full(std::size_t universe);

    /// Builds from strictly increasing indices below `universe`.
    static SolutionSet from_sorted(std::size_t universe, std::vector<std::uint32_t> members);

    std::size_t universe() const noexcept { return _universe; }
    std::size_t size() const noexcept { return _members.size(); }
    bool empty() const noexcept { return _members.empty(); }

    bool contains(std::size_t index) const noexcept
    {
        return index < _universe && ((_bits[index / 64] >> (index % 64)) & 1U);
    }

    std::span<const std::uint32_t> members() const noexcept { return _members; }
    std::span<const std::uint64_t> words() const noexcept { return _bits; }

    bool operator==(const SolutionSet &other) const
    {
        return _universe == other._universe && _members == other._members;
    }

private:
    std::size_t _universe = 0;
    std::vector<std::uint64_t> _bits;
    std::vector<std::uint32_t> _members;
};

/// Members h of `s` with feedback(q, h) == r. May be empty.
SolutionSet filter_consistent(const SolutionSet &s, std::size_t query, ResponseId r,
                              const CodeSpace &space);
SolutionSet filter_consistent(const SolutionSet &s, const Code &query, const Feedback &r,
                              const CodeSpace &space);

/// Bucket sizes of `s` under `query`, indexed by response id.
std::vector<std::uint32_t> partition_counts(const SolutionSet &s, std::size_t query,
                                            const CodeSpace &space);

/// Nonempty buckets of `s` under `query`, in increasing response-id order.
std::vector<std::pair<ResponseId, SolutionSet>> partition(const SolutionSet &s,
                                                          std::size_t query,
                                                          const CodeSpace &space);

} // namespace querymind

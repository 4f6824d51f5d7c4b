// Brute-force reference implementations. Deliberately naive: each follows
// the textbook definition and shares no code with the library beyond the
// plain data types.

#pragma once

#include "querymind/codespace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using querymind::Code;
using querymind::Color;
using querymind::Repeats;
using querymind::VariantConfig;

inline int black(const std::vector<int> &q, const std::vector<int> &h)
{
    int b = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        b += q[i] == h[i];
    return b;
}

inline std::vector<int> ints(const Code &c)
{
    return {c.colors().begin(), c.colors().end()};
}

/// White pegs as the best black count over all rearrangements of q, minus
/// the black count of q itself.
inline int white_by_rearrangement(const std::vector<int> &q, const std::vector<int> &h)
{
    std::vector<std::size_t> perm(q.size());
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        std::vector<int> moved(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            moved[i] = q[perm[i]];
        best = std::max(best, black(moved, h));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best - black(q, h);
}

/// All valid codes in lexicographic order, by counting in base k.
inline std::vector<std::vector<int>> all_codes(int n, int k, bool distinct)
{
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(n), 1);
    for (;;) {
        bool ok = true;
        if (distinct)
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n && ok; ++j)
                    ok = c[i] != c[j];
        if (ok)
            out.push_back(c);
        int i = n - 1;
        while (i >= 0 && c[i] == k)
            c[i--] = 1;
        if (i < 0)
            return out;
        ++c[i];
    }
}

inline std::vector<std::vector<int>> all_codes(const VariantConfig &c)
{
    return all_codes(c.n, c.k, c.repeats == Repeats::Forbidden);
}

inline std::vector<std::vector<int>> permutations(int n)
{
    return all_codes(n, n, true);
}

inline std::uint64_t fixed_point_free(int m)
{
    std::uint64_t count = 0;
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < m; ++i)
            ok = ok && p[i] != i;
        count += ok;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

/// Permutations of [n] with exactly r fixed points, indexed by r.
inline std::vector<std::uint64_t> fixed_point_histogram(int n)
{
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    for (const auto &p : permutations(n))
        ++hist[static_cast<std::size_t>(black(p, id))];
    return hist;
}

/// Injective codes over k colors agreeing with (1..n) in exactly x places.
inline std::vector<std::uint64_t> match_histogram(int n, int k)
{
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    for (const auto &c : all_codes(n, k, true))
        ++hist[static_cast<std::size_t>(black(c, id))];
    return hist;
}

/// (black, white) with white by rearrangement; white = -1 for black-only.
inline std::pair<int, int> response(const std::vector<int> &q, const std::vector<int> &h,
                                    bool with_white)
{
    return {black(q, h), with_white ? white_by_rearrangement(q, h) : -1};
}

/// Largest group of `s` sharing a response to q.
inline std::size_t largest_bucket(const std::vector<int> &q, const std::vector<std::vector<int>> &s,
                                  bool with_white)
{
    std::map<std::pair<int, int>, std::size_t> buckets;
    std::size_t best = 0;
    for (const auto &h : s)
        best = std::max(best, ++buckets[response(q, h, with_white)]);
    return best;
}

/// Recursive game-tree value over explicit code lists, no memo.
inline int game_value(const std::vector<std::vector<int>> &s,
                      const std::vector<std::vector<int>> &queries, bool with_white, int depth_left)
{
    if (s.size() <= 1)
        return 0;
    if (depth_left == 0)
        return 1 << 20;
    int best = 1 << 20;
    for (const auto &q : queries) {
        std::map<std::pair<int, int>, std::vector<std::vector<int>>> buckets;
        for (const auto &h : s)
            buckets[response(q, h, with_white)].push_back(h);
        if (buckets.size() == 1)
            continue;
        int worst = 0;
        for (const auto &[r, b] : buckets) {
            worst = std::max(worst, game_value(b, queries, with_white, std::min(depth_left - 1, best - 2)));
            if (1 + worst >= best)
                break;
        }
        best = std::min(best, 1 + worst);
    }
    return best;
}

/// Whether the black-peg response vectors to `queries` separate all codes.
inline bool separates(const std::vector<std::vector<int>> &queries,
                      const std::vector<std::vector<int>> &codes)
{
    std::map<std::vector<int>, int> seen;
    for (const auto &h : codes) {
        std::vector<int> v;
        for (const auto &q : queries)
            v.push_back(black(q, h));
        if (++seen[v] > 1)
            return false;
    }
    return true;
}

/// Smallest separating subset size by trying every subset of the codes.
inline int min_separating_size(const std::vector<std::vector<int>> &codes)
{
    const std::size_t n = codes.size();
    int best = static_cast<int>(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const int bits = std::popcount(mask);
        if (bits >= best)
            continue;
        std::vector<std::vector<int>> qs;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                qs.push_back(codes[i]);
        if (separates(qs, codes))
            best = bits;
    }
    return best;
}

/// Rank by floating-point elimination with partial pivoting.
inline std::size_t rank_double(std::vector<std::vector<double>> m)
{
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        for (std::size_t r = rank; r < m.size(); ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c]))
                piv = r;
        if (std::abs(m[piv][c]) < 1e-9)
            continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank)
                continue;
            const double f = m[r][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline double entropy_bits(const std::vector<std::uint64_t> &counts)
{
    double total = 0;
    for (auto c : counts)
        total += static_cast<double>(c);
    double h = 0;
    for (auto c : counts)
        if (c > 0) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log2(p);
        }
    return h;
}

} // namespace oracle

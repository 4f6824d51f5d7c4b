#include "querymind/linalg.hpp"

#include <string>

namespace querymind {

namespace {

std::vector<Rational> widen(std::span<const std::uint8_t> v)
{
    std::vector<Rational> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i];
    return out;
}

} // namespace

void RationalMatrix::reduce(std::vector<Rational> &v, std::vector<Rational> &combination) const
{
    for (const auto &b : _basis) {
        if (sgn(v[b.pivot]) == 0)
            continue;
        const Rational f = v[b.pivot];
        for (std::size_t c = 0; c < _columns; ++c)
            if (sgn(b.values[c]) != 0)
                v[c] -= f * b.values[c];
        for (std::size_t i = 0; i < b.combination.size(); ++i)
            if (sgn(b.combination[i]) != 0)
                combination[i] -= f * b.combination[i];
    }
}

bool RationalMatrix::append(std::span<const Rational> row)
{
    if (row.size() != _columns)
        fail(ErrorKind::InvalidArgument, "row has " + std::to_string(row.size()) +
                                             " entries, matrix has " +
                                             std::to_string(_columns) + " columns");
    const std::size_t index = _rows.size();
    _rows.emplace_back(row.begin(), row.end());
    for (auto &b : _basis)
        b.combination.emplace_back(0);

    // residual = row - sum f_j b_j, tracked as a combination of rows
    std::vector<Rational> residual(row.begin(), row.end());
    std::vector<Rational> combination(index + 1, Rational(0));
    combination[index] = 1;
    reduce(residual, combination);

    std::size_t pivot = 0;
    while (pivot < _columns && sgn(residual[pivot]) == 0)
        ++pivot;
    if (pivot == _columns)
        return false;

    const Rational scale = residual[pivot];
    for (auto &x : residual)
        x /= scale;
    for (auto &x : combination)
        x /= scale;

    // Keep the basis fully reduced: clear the new pivot column elsewhere.
    for (auto &b : _basis) {
        if (sgn(b.values[pivot]) == 0)
            continue;
        const Rational f = b.values[pivot];
        for (std::size_t c = 0; c < _columns; ++c)
            if (sgn(residual[c]) != 0)
                b.values[c] -= f * residual[c];
        for (std::size_t i = 0; i < combination.size(); ++i)
            if (sgn(combination[i]) != 0)
                b.combination[i] -= f * combination[i];
    }
    _basis.push_back({pivot, std::move(residual), std::move(combination)});
    return true;
}

bool RationalMatrix::append(std::span<const std::uint8_t> row)
{
    auto wide = widen(row);
    return append(std::span<const Rational>(wide));
}

bool RationalMatrix::is_independent(std::span<const std::uint8_t> v) const
{
    if (v.size() != _columns)
        fail(ErrorKind::InvalidArgument, "vector length does not match matrix columns");
    auto residual = widen(v);
    // Only the residual matters here, so skip the combination bookkeeping.
    for (const auto &b : _basis) {
        if (sgn(residual[b.pivot]) == 0)
            continue;
        const Rational f = residual[b.pivot];
        for (std::size_t c = 0; c < _columns; ++c)
            if (sgn(b.values[c]) != 0)
                residual[c] -= f * b.values[c];
    }
    for (const auto &x : residual)
        if (sgn(x) != 0)
            return true;
    return false;
}

std::optional<std::vector<Rational>> RationalMatrix::express(std::span<const std::uint8_t> v) const
{
    if (v.size() != _columns)
        fail(ErrorKind::InvalidArgument, "vector length does not match matrix columns");
    auto residual = widen(v);
    std::vector<Rational> combination(_rows.size(), Rational(0));
    reduce(residual, combination);
    for (const auto &x : residual)
        if (sgn(x) != 0)
            return std::nullopt;
    // residual = v - sum(...) = 0, and combination holds -(coefficients).
    for (auto &x : combination)
        x = -x;
    return combination;
}

std::size_t rank_of(std::span<const std::vector<std::uint8_t>> vectors)
{
    if (vectors.empty())
        return 0;
    RationalMatrix m(vectors.front().size());
    for (const auto &v : vectors)
        m.append(std::span<const std::uint8_t>(v));
    return m.rank();
}

} // namespace querymind

#pragma once

#include "querymind/combinatorics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace querymind {

/// Rows of exact rationals kept alongside a reduced row-echelon basis of
/// their span. Each basis vector remembers its expression as a combination
/// of the appended rows, so membership tests can also return coefficients.
class RationalMatrix
{
public:
    explicit RationalMatrix(std::size_t columns) : _columns(columns) {}

    std::size_t columns() const noexcept { return _columns; }
    std::size_t rows() const noexcept { return _rows.size(); }
    std::size_t rank() const noexcept { return _basis.size(); }

    /// Appends a row; returns true if the rank grew.
    bool append(std::span<const Rational> row);
    bool append(std::span<const std::uint8_t> row);

    bool is_independent(std::span<const std::uint8_t> v) const;

    /// Coefficients a with sum_i a_i * row_i == v, or nullopt when v is
    /// outside the row space. Dependent rows get coefficient 0.
    std::optional<std::vector<Rational>> express(std::span<const std::uint8_t> v) const;

    const std::vector<Rational> &row(std::size_t i) const { return _rows.at(i); }

private:
    struct BasisVector
    {
        std::size_t pivot;
        std::vector<Rational> values;       // pivot entry is 1
        std::vector<Rational> combination;  // over appended rows
    };

    /// Reduces `v` against the basis, accumulating into `combination`.
    void reduce(std::vector<Rational> &v, std::vector<Rational> &combination) const;

    std::size_t _columns;
    std::vector<std::vector<Rational>> _rows;
    std::vector<BasisVector> _basis;
};

/// Rank of a list of 0/1 vectors of equal length.
std::size_t rank_of(std::span<const std::vector<std::uint8_t>> vectors);

} // namespace querymind

// codespace.hpp -- variant configuration, codes, feedback and the indexed code space

#pragma once

#include "querymind/errors.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace querymind {

using BigInt = mpz_class;

/// A color is stored 1-based, exactly as it appears in the external format.
using Color = std::uint8_t;

enum class FeedbackKind { BlackOnly, BlackWhite };
enum class Repeats { Allowed, Forbidden };
enum class Mode { Adaptive, NonAdaptive };

/// Largest alphabet representable by `Color`.
inline constexpr int kMaxColors = 255;

/// Largest sequence length; keeps response ids within 16 bits.
inline constexpr int kMaxLength = 64;

/// The five game parameters: length, alphabet, distance function,
/// repetition rule and adaptiveness.
struct VariantConfig
{
    int n = 4;
    int k = 6;
    FeedbackKind feedback = FeedbackKind::BlackWhite;
    Repeats repeats = Repeats::Allowed;
    Mode mode = Mode::Adaptive;

    /// Throws `Error(InvalidArgument)` unless n >= 1, k >= 1 and, when
    /// repeats are forbidden, k >= n.
    void validate() const;

    bool operator==(const VariantConfig &) const = default;

    /// The black-peg, adaptive, no-repeats game on permutations of [n].
    static VariantConfig permutation(int n);
};

std::string_view to_string(FeedbackKind v);
std::string_view to_string(Repeats v);
std::string_view to_string(Mode v);
FeedbackKind parse_feedback_kind(std::string_view s);
Repeats parse_repeats(std::string_view s);
Mode parse_mode(std::string_view s);

/// A length-n color sequence. Validity is always relative to a config.
class Code
{
public:
    Code() = default;
    explicit Code(std::vector<Color> colors) : _colors(std::move(colors)) {}
    Code(std::initializer_list<int> colors);

    std::size_t size() const noexcept { return _colors.size(); }
    Color operator[](std::size_t i) const { return _colors[i]; }
    std::span<const Color> colors() const noexcept { return _colors; }

    auto operator<=>(const Code &) const = default;
    bool operator==(const Code &) const = default;

private:
    std::vector<Color> _colors;
};

/// Formats as comma-separated 1-based colors, e.g. "1,2,3".
std::string to_string(const Code &code);

/// Parses the comma-separated form. Only syntax is checked here.
Code parse_code(std::string_view text);

/// Throws `Error(InvalidCode)` if `code` is not valid for `config`.
void validate_code(const Code &code, const VariantConfig &config);
bool is_valid_code(std::span<const Color> colors, const VariantConfig &config) noexcept;

struct Feedback
{
    int black = 0;
    std::optional<int> white;

    auto operator<=>(const Feedback &) const = default;
    bool operator==(const Feedback &) const = default;
};

std::string to_string(const Feedback &fb);

/// Black and white peg counts. White pegs use the color-count formula
/// sum_c min(#c in q, #c in h) - black.
Feedback feedback(const Code &q, const Code &h, const VariantConfig &config);

/// Unchecked kernels over raw color spans of equal length.
int black_pegs(std::span<const Color> q, std::span<const Color> h) noexcept;
int common_colors(std::span<const Color> q, std::span<const Color> h) noexcept;

/// 0/1 vector of length n*k with a one at i*k + (c_i - 1).
std::vector<std::uint8_t> encode01(const Code &code, const VariantConfig &config);

/// Number of valid codes for `config`: k^n, or k!/(k-n)! without repeats.
BigInt space_size(const VariantConfig &config);

/// Dense response id: black * (n + 1) + white (white = 0 for black-only).
using ResponseId = std::uint16_t;

/// All valid codes for a config in lexicographic order, with a bijective
/// index. Immutable after construction and safe for concurrent reads.
class CodeSpace
{
public:
    static constexpr std::uint64_t kDefaultBudget = 10'000'000;

    /// Throws `Error(Capacity)` if the space has more than `budget` codes.
    explicit CodeSpace(const VariantConfig &config,
                       std::uint64_t budget = kDefaultBudget);

    const VariantConfig &config() const noexcept { return _config; }
    std::size_t size() const noexcept { return _size; }
    int length() const noexcept { return _config.n; }

    std::span<const Color> colors(std::size_t index) const
    {
        return {_colors.data() + index * static_cast<std::size_t>(_config.n),
                static_cast<std::size_t>(_config.n)};
    }
    Code code(std::size_t index) const;

    /// Rank of a code in the lexicographic order. Throws `Error(InvalidCode)`.
    std::size_t index_of(const Code &code) const;
    std::size_t index_of(std::span<const Color> colors) const;

    /// Number of distinct response ids (not all need be realizable).
    std::size_t response_id_count() const noexcept { return _response_ids; }

    ResponseId response(std::size_t query, std::size_t hidden) const noexcept
    {
        if (_table)
            return (*_table)[query * _size + hidden];
        return compute_response(query, hidden);
    }
    ResponseId response_id(const Feedback &fb) const;
    Feedback to_feedback(ResponseId id) const;

    /// Id of the all-black response.
    ResponseId solved_response() const noexcept
    {
        return static_cast<ResponseId>(_config.n * (_config.n + 1));
    }

    /// Spaces up to this size get a precomputed query x hidden response table.
    static constexpr std::size_t kTableLimit = 6000;

private:
    ResponseId compute_response(std::size_t query, std::size_t hidden) const noexcept;

    VariantConfig _config;
    std::size_t _size = 0;
    std::size_t _response_ids = 0;
    std::vector<Color> _colors;
    std::shared_ptr<const std::vector<std::uint8_t>> _table;
};

} // namespace querymind

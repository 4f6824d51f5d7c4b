#include "querymind/codespace.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

namespace querymind {

void VariantConfig::validate() const
{
    if (n < 1)
        fail(ErrorKind::InvalidArgument, "n must be >= 1 (got " + std::to_string(n) + ")");
    if (k < 1)
        fail(ErrorKind::InvalidArgument, "k must be >= 1 (got " + std::to_string(k) + ")");
    if (n > kMaxLength)
        fail(ErrorKind::InvalidArgument,
             "n must be <= " + std::to_string(kMaxLength) + " (got " + std::to_string(n) + ")");
    if (k > kMaxColors)
        fail(ErrorKind::InvalidArgument,
             "k must be <= " + std::to_string(kMaxColors) + " (got " + std::to_string(k) + ")");
    if (repeats == Repeats::Forbidden && k < n)
        fail(ErrorKind::InvalidArgument,
             "k >= n is required when repeats are forbidden (n=" + std::to_string(n) +
                 ", k=" + std::to_string(k) + ")");
}

VariantConfig VariantConfig::permutation(int n)
{
    return VariantConfig{n, n, FeedbackKind::BlackOnly, Repeats::Forbidden, Mode::Adaptive};
}

std::string_view to_string(FeedbackKind v)
{
    return v == FeedbackKind::BlackOnly ? "black-only" : "black-white";
}

std::string_view to_string(Repeats v)
{
    return v == Repeats::Allowed ? "allowed" : "forbidden";
}

std::string_view to_string(Mode v)
{
    return v == Mode::Adaptive ? "adaptive" : "nonadaptive";
}

FeedbackKind parse_feedback_kind(std::string_view s)
{
    if (s == "b" || s == "black-only")
        return FeedbackKind::BlackOnly;
    if (s == "bw" || s == "black-white")
        return FeedbackKind::BlackWhite;
    fail(ErrorKind::InvalidArgument, "unknown feedback kind '" + std::string(s) + "'");
}

Repeats parse_repeats(std::string_view s)
{
    if (s == "yes" || s == "allowed")
        return Repeats::Allowed;
    if (s == "no" || s == "forbidden")
        return Repeats::Forbidden;
    fail(ErrorKind::InvalidArgument, "unknown repeats setting '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s)
{
    if (s == "adaptive")
        return Mode::Adaptive;
    if (s == "nonadaptive")
        return Mode::NonAdaptive;
    fail(ErrorKind::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

Code::Code(std::initializer_list<int> colors)
{
    _colors.reserve(colors.size());
    for (int c : colors) {
        if (c < 1 || c > kMaxColors)
            fail(ErrorKind::InvalidCode, "color " + std::to_string(c) + " out of range");
        _colors.push_back(static_cast<Color>(c));
    }
}

std::string to_string(const Code &code)
{
    std::string out;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(code[i]);
    }
    return out;
}

Code parse_code(std::string_view text)
{
    std::vector<Color> colors;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string_view field = text.substr(pos, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - pos);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
            field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                                  field.back() == '\r'))
            field.remove_suffix(1);
        int value = 0;
        auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || end != field.data() + field.size())
            fail(ErrorKind::InvalidCode, "malformed code '" + std::string(text) + "'");
        if (value < 1 || value > kMaxColors)
            fail(ErrorKind::InvalidCode,
                 "color " + std::to_string(value) + " out of range in '" + std::string(text) + "'");
        colors.push_back(static_cast<Color>(value));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return Code(std::move(colors));
}

bool is_valid_code(std::span<const Color> colors, const VariantConfig &config) noexcept
{
    if (colors.size() != static_cast<std::size_t>(config.n))
        return false;
    std::array<bool, kMaxColors + 1> seen{};
    for (Color c : colors) {
        if (c < 1 || c > config.k)
            return false;
        if (config.repeats == Repeats::Forbidden) {
            if (seen[c])
                return false;
            seen[c] = true;
        }
    }
    return true;
}

void validate_code(const Code &code, const VariantConfig &config)
{
    if (code.size() != static_cast<std::size_t>(config.n))
        fail(ErrorKind::InvalidCode, "code '" + to_string(code) + "' has length " +
                                         std::to_string(code.size()) + ", expected " +
                                         std::to_string(config.n));
    if (!is_valid_code(code.colors(), config)) {
        for (Color c : code.colors())
            if (c < 1 || c > config.k)
                fail(ErrorKind::InvalidCode, "code '" + to_string(code) + "' has color " +
                                                 std::to_string(c) + " outside [1, " +
                                                 std::to_string(config.k) + "]");
        fail(ErrorKind::InvalidCode,
             "code '" + to_string(code) + "' repeats a color but repeats are forbidden");
    }
}

int black_pegs(std::span<const Color> q, std::span<const Color> h) noexcept
{
    int black = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        black += (q[i] == h[i]);
    return black;
}

int common_colors(std::span<const Color> q, std::span<const Color> h) noexcept
{
    std::array<int, kMaxColors + 1> count{};
    for (Color c : q)
        ++count[c];
    int common = 0;
    for (Color c : h) {
        if (count[c] > 0) {
            --count[c];
            ++common;
        }
    }
    return common;
}

Feedback feedback(const Code &q, const Code &h, const VariantConfig &config)
{
    validate_code(q, config);
    validate_code(h, config);
    Feedback fb;
    fb.black = black_pegs(q.colors(), h.colors());
    if (config.feedback == FeedbackKind::BlackWhite)
        fb.white = common_colors(q.colors(), h.colors()) - fb.black;
    return fb;
}

std::string to_string(const Feedback &fb)
{
    std::string s = "b=" + std::to_string(fb.black);
    if (fb.white)
        s += ",w=" + std::to_string(*fb.white);
    return s;
}

std::vector<std::uint8_t> encode01(const Code &code, const VariantConfig &config)
{
    validate_code(code, config);
    const auto k = static_cast<std::size_t>(config.k);
    std::vector<std::uint8_t> v(code.size() * k, 0);
    for (std::size_t i = 0; i < code.size(); ++i)
        v[i * k + (code[i] - 1)] = 1;
    return v;
}

namespace {

BigInt falling(unsigned long top, unsigned long count)
{
    BigInt r = 1;
    for (unsigned long i = 0; i < count; ++i)
        r *= top - i;
    return r;
}

void enumerate_repeats(const VariantConfig &config, std::size_t size, std::vector<Color> &out)
{
    const auto n = static_cast<std::size_t>(config.n);
    out.resize(size * n);
    std::vector<Color> cur(n, 1);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::copy(cur.begin(), cur.end(), out.begin() + idx * n);
        for (std::size_t pos = n; pos-- > 0;) {
            if (cur[pos] < config.k) {
                ++cur[pos];
                break;
            }
            cur[pos] = 1;
        }
    }
}

void enumerate_injective(const VariantConfig &config, std::size_t size, std::vector<Color> &out)
{
    const auto n = static_cast<std::size_t>(config.n);
    out.clear();
    out.reserve(size * n);
    std::vector<Color> cur(n);
    std::vector<bool> used(config.k + 1, false);
    auto rec = [&](auto &self, std::size_t pos) -> void {
        if (pos == n) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        for (int c = 1; c <= config.k; ++c) {
            if (used[c])
                continue;
            used[c] = true;
            cur[pos] = static_cast<Color>(c);
            self(self, pos + 1);
            used[c] = false;
        }
    };
    rec(rec, 0);
}

} // namespace

BigInt space_size(const VariantConfig &config)
{
    config.validate();
    if (config.repeats == Repeats::Allowed) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(config.k),
                      static_cast<unsigned long>(config.n));
        return r;
    }
    return falling(static_cast<unsigned long>(config.k), static_cast<unsigned long>(config.n));
}

CodeSpace::CodeSpace(const VariantConfig &config, std::uint64_t budget)
  : _config(config)
{
    _config.validate();
    BigInt total = space_size(_config);
    if (total > BigInt(std::to_string(budget)))
        fail(ErrorKind::Capacity, "code space of size " + total.get_str() +
                                      " exceeds the enumeration budget of " +
                                      std::to_string(budget));
    _size = total.get_ui();
    const auto n1 = static_cast<std::size_t>(_config.n + 1);
    _response_ids = n1 * n1;

    if (_config.repeats == Repeats::Allowed)
        enumerate_repeats(_config, _size, _colors);
    else
        enumerate_injective(_config, _size, _colors);

    if (_size <= kTableLimit && _response_ids <= 256) {
        auto table = std::make_shared<std::vector<std::uint8_t>>(_size * _size);
        for (std::size_t q = 0; q < _size; ++q)
            for (std::size_t h = 0; h < _size; ++h)
                (*table)[q * _size + h] = static_cast<std::uint8_t>(compute_response(q, h));
        _table = std::move(table);
    }
}

Code CodeSpace::code(std::size_t index) const
{
    if (index >= _size)
        fail(ErrorKind::InvalidArgument, "code index " + std::to_string(index) +
                                             " out of range for space of size " +
                                             std::to_string(_size));
    auto c = colors(index);
    return Code(std::vector<Color>(c.begin(), c.end()));
}

std::size_t CodeSpace::index_of(const Code &code) const
{
    validate_code(code, _config);
    return index_of(code.colors());
}

std::size_t CodeSpace::index_of(std::span<const Color> c) const
{
    if (!is_valid_code(c, _config))
        fail(ErrorKind::InvalidCode, "code is not valid for this configuration");
    const auto n = static_cast<std::size_t>(_config.n);
    const auto k = static_cast<std::size_t>(_config.k);
    std::size_t index = 0;
    if (_config.repeats == Repeats::Allowed) {
        for (std::size_t i = 0; i < n; ++i)
            index = index * k + (c[i] - 1);
        return index;
    }
    // Lexicographic rank among injective sequences: at position i there are
    // (k-i-1)!/(k-n)! completions for each smaller unused color.
    std::vector<std::size_t> completions(n);
    std::size_t w = 1;
    for (std::size_t i = n; i-- > 0;) {
        completions[i] = w;
        w *= (k - i);
    }
    std::array<bool, kMaxColors + 1> used{};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t col = 1; col < c[i]; ++col)
            smaller += !used[col];
        index += smaller * completions[i];
        used[c[i]] = true;
    }
    return index;
}

ResponseId CodeSpace::compute_response(std::size_t query, std::size_t hidden) const noexcept
{
    auto q = colors(query);
    auto h = colors(hidden);
    int black = black_pegs(q, h);
    int white = 0;
    if (_config.feedback == FeedbackKind::BlackWhite)
        white = common_colors(q, h) - black;
    return static_cast<ResponseId>(black * (_config.n + 1) + white);
}

ResponseId CodeSpace::response_id(const Feedback &fb) const
{
    const bool bw = _config.feedback == FeedbackKind::BlackWhite;
    if (fb.white.has_value() != bw)
        fail(ErrorKind::InvalidArgument,
             bw ? "black-white feedback requires a white count"
                : "black-only feedback must not carry a white count");
    int white = fb.white.value_or(0);
    if (fb.black < 0 || white < 0 || fb.black + white > _config.n)
        fail(ErrorKind::InvalidArgument, "feedback " + to_string(fb) + " out of range");
    return static_cast<ResponseId>(fb.black * (_config.n + 1) + white);
}

Feedback CodeSpace::to_feedback(ResponseId id) const
{
    Feedback fb;
    fb.black = id / (_config.n + 1);
    if (_config.feedback == FeedbackKind::BlackWhite)
        fb.white = id % (_config.n + 1);
    return fb;
}

} // namespace querymind

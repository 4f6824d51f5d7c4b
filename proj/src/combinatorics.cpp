#include "querymind/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <mpfr.h>

namespace querymind {

namespace {

// Beyond these sizes the exact integers get unwieldy and the code switches to
// directed-rounding brackets, which still decide every comparison exactly.
constexpr unsigned long kExactFactorialMax = 20000;
constexpr unsigned long kExactHarmonicMax = 2000;

void require(bool ok, const std::string &what)
{
    if (!ok)
        fail(ErrorKind::Domain, what);
}

/// RAII holder for an MPFR value.
class Mpfr
{
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(_v, prec); }
    ~Mpfr() { mpfr_clear(_v); }
    Mpfr(const Mpfr &) = delete;
    Mpfr &operator=(const Mpfr &) = delete;

    mpfr_ptr get() { return _v; }
    mpfr_srcptr get() const { return _v; }

    Rational to_rational() const
    {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), _v);
        return q;
    }

private:
    mpfr_t _v;
};

/// Bracket [lower, upper] of sum_{i=1..n} 1/i.
struct Bracket
{
    Rational lower;
    Rational upper;
    bool exact = false;
};

Bracket harmonic_bracket(unsigned long n, mpfr_prec_t prec)
{
    if (n <= kExactHarmonicMax) {
        Rational h = harmonic(n);
        return {h, h, true};
    }
    Mpfr lo(prec), hi(prec), term(prec);
    mpfr_set_ui(lo.get(), 0, MPFR_RNDD);
    mpfr_set_ui(hi.get(), 0, MPFR_RNDU);
    for (unsigned long i = 1; i <= n; ++i) {
        mpfr_set_ui(term.get(), i, MPFR_RNDN);
        mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
        mpfr_set_ui(term.get(), i, MPFR_RNDN);
        mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    return {lo.to_rational(), hi.to_rational(), false};
}

/// Bracket of ln(m!) via the log-gamma function.
std::pair<Rational, Rational> log_factorial_bracket(unsigned long m, mpfr_prec_t prec)
{
    Mpfr x(prec), lo(prec), hi(prec);
    mpfr_set_ui(x.get(), m + 1, MPFR_RNDN);
    mpfr_lngamma(lo.get(), x.get(), MPFR_RNDD);
    mpfr_lngamma(hi.get(), x.get(), MPFR_RNDU);
    return {lo.to_rational(), hi.to_rational()};
}

std::pair<Rational, Rational> log_bracket(unsigned long m, mpfr_prec_t prec)
{
    Mpfr x(prec), lo(prec), hi(prec);
    mpfr_set_ui(x.get(), m, MPFR_RNDN);
    mpfr_log(lo.get(), x.get(), MPFR_RNDD);
    mpfr_log(hi.get(), x.get(), MPFR_RNDU);
    return {lo.to_rational(), hi.to_rational()};
}

BigInt ceil_q(const Rational &q)
{
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace

BigInt factorial(unsigned long m)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), m);
    return r;
}

BigInt binomial(unsigned long n, unsigned long r)
{
    if (r > n)
        return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, r);
    return out;
}

BigInt falling_factorial(unsigned long k, unsigned long n)
{
    if (n > k)
        return 0;
    BigInt r = 1;
    for (unsigned long i = 0; i < n; ++i)
        r *= k - i;
    return r;
}

BigInt derangement(unsigned long m)
{
    // term = m!/i!, walked from i = m down to 0.
    BigInt sum = 0;
    BigInt term = 1;
    for (unsigned long i = m + 1; i-- > 0;) {
        if (i % 2 == 0)
            sum += term;
        else
            sum -= term;
        term *= i;
    }
    return sum;
}

BigInt bucket_size(unsigned long n, long r)
{
    require(r >= 0 && static_cast<unsigned long>(r) <= n,
            "bucket_size: r = " + std::to_string(r) + " outside [0, " + std::to_string(n) + "]");
    auto ur = static_cast<unsigned long>(r);
    return binomial(n, ur) * derangement(n - ur);
}

BigInt bucket_tail_sum(unsigned long n, long x)
{
    require(x >= 0 && static_cast<unsigned long>(x) <= n,
            "bucket_tail_sum: x = " + std::to_string(x) + " outside [0, " + std::to_string(n) + "]");
    BigInt sum = 0;
    for (unsigned long i = static_cast<unsigned long>(x); i <= n; ++i)
        sum += bucket_size(n, static_cast<long>(i));
    return sum;
}

Rational harmonic(unsigned long m)
{
    Rational h = 0;
    for (unsigned long i = 1; i <= m; ++i)
        h += Rational(1, i);
    return h;
}

Rational lemma2_bound(unsigned long n, unsigned long c, long t)
{
    require(c >= 1 && c < n,
            "lemma2_bound: C = " + std::to_string(c) + " must satisfy 1 <= C < n = " +
                std::to_string(n));
    require(t >= 0 && static_cast<unsigned long>(t) <= n - c,
            "lemma2_bound: t = " + std::to_string(t) + " outside [0, n - C = " +
                std::to_string(n - c) + "]");
    const unsigned long ct = c + static_cast<unsigned long>(t);
    Rational tail = 0;
    for (unsigned long i = c + 1; i <= ct; ++i)
        tail += Rational(1, i);
    Rational out = (Rational(factorial(c)) - tail) / Rational(factorial(ct));
    out.canonicalize();
    return out;
}

unsigned long trivial_lower_bound(unsigned long n)
{
    if (n <= 1)
        return 0;
    if (n <= kExactFactorialMax) {
        const BigInt target = factorial(n);
        const double estimate = std::lgamma(static_cast<double>(n) + 1.0) / std::log(static_cast<double>(n));
        unsigned long t = estimate > 3.0 ? static_cast<unsigned long>(estimate) - 2 : 0;
        BigInt power;
        auto pow_n = [&](unsigned long e) {
            mpz_ui_pow_ui(power.get_mpz_t(), n, e);
            return power;
        };
        while (t > 0 && pow_n(t) >= target)
            --t;
        while (pow_n(t) < target)
            ++t;
        return t;
    }
    // For n >= 3, n^t != n! (n - 1 divides n! but not n^t), so a strict
    // bracket always decides the ceiling.
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        auto [lf_lo, lf_hi] = log_factorial_bracket(n, prec);
        auto [ln_lo, ln_hi] = log_bracket(n, prec);
        Rational lo = lf_lo / ln_hi;
        Rational hi = lf_hi / ln_lo;
        BigInt a = ceil_q(lo);
        BigInt b = ceil_q(hi);
        if (a == b)
            return a.get_ui();
    }
}

unsigned long entropy_lower_bound(unsigned long n, unsigned long k)
{
    require(n >= 1 && k >= n, "entropy_lower_bound requires k >= n >= 1 (n=" +
                                  std::to_string(n) + ", k=" + std::to_string(k) + ")");
    auto exact = [&]() {
        const BigInt p = falling_factorial(k, n);
        unsigned long bits = mpz_sizeinbase(p.get_mpz_t(), 2); // 2^(bits-1) <= p < 2^bits
        unsigned long s = (bits - 1) / 3;
        BigInt power;
        while (true) {
            mpz_ui_pow_ui(power.get_mpz_t(), 2, 3 * s);
            if (power >= p)
                return s;
            ++s;
        }
    };
    if (n <= kExactFactorialMax)
        return exact();
    Mpfr lo(256), hi(256), a(256), b(256), x(256);
    mpfr_set_ui(x.get(), k + 1, MPFR_RNDN);
    mpfr_lngamma(a.get(), x.get(), MPFR_RNDD);
    mpfr_set_ui(x.get(), k - n + 1, MPFR_RNDN);
    mpfr_lngamma(b.get(), x.get(), MPFR_RNDU);
    mpfr_sub(lo.get(), a.get(), b.get(), MPFR_RNDD);
    mpfr_set_ui(x.get(), k + 1, MPFR_RNDN);
    mpfr_lngamma(a.get(), x.get(), MPFR_RNDU);
    mpfr_set_ui(x.get(), k - n + 1, MPFR_RNDN);
    mpfr_lngamma(b.get(), x.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.get(), b.get(), MPFR_RNDU);
    // ln 8 bracket, then s = ceil(ln P / ln 8).
    Mpfr l8lo(256), l8hi(256);
    mpfr_set_ui(x.get(), 8, MPFR_RNDN);
    mpfr_log(l8lo.get(), x.get(), MPFR_RNDD);
    mpfr_log(l8hi.get(), x.get(), MPFR_RNDU);
    BigInt s_lo = ceil_q(lo.to_rational() / l8hi.to_rational());
    BigInt s_hi = ceil_q(hi.to_rational() / l8lo.to_rational());
    if (s_lo == s_hi)
        return s_lo.get_ui();
    return exact();
}

BigInt exact_match_count(unsigned long n, unsigned long k, long x)
{
    require(n >= 1 && k >= n, "exact_match_count requires k >= n >= 1 (n=" +
                                  std::to_string(n) + ", k=" + std::to_string(k) + ")");
    require(x >= 0 && static_cast<unsigned long>(x) <= n,
            "exact_match_count: x = " + std::to_string(x) + " outside [0, " +
                std::to_string(n) + "]");
    const auto ux = static_cast<unsigned long>(x);
    const unsigned long free = n - ux;
    BigInt sum = 0;
    for (unsigned long j = 0; j <= free; ++j) {
        // (k-x-j)!/(k-n)! injective fillings of the n-x-j unconstrained slots
        BigInt term = binomial(free, j) * falling_factorial(k - ux - j, free - j);
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return binomial(n, ux) * sum;
}

double shannon_entropy(std::span<const Rational> p)
{
    Rational total = 0;
    for (const auto &v : p) {
        require(sgn(v) >= 0, "shannon_entropy: negative probability " + v.get_str());
        total += v;
    }
    require(total == 1, "shannon_entropy: probabilities sum to " + total.get_str() + ", not 1");
    double h = 0.0;
    for (const auto &v : p) {
        if (sgn(v) == 0)
            continue;
        double x = v.get_d();
        h -= x * std::log2(x);
    }
    return h;
}

double entropy_of_counts(std::span<const BigInt> counts)
{
    BigInt total = 0;
    for (const auto &c : counts) {
        require(sgn(c) >= 0, "entropy_of_counts: negative count " + c.get_str());
        total += c;
    }
    require(sgn(total) > 0, "entropy_of_counts: empty distribution");
    std::vector<Rational> p;
    p.reserve(counts.size());
    for (const auto &c : counts) {
        Rational q(c, total);
        q.canonicalize();
        p.push_back(std::move(q));
    }
    return shannon_entropy(p);
}

std::string_view to_string(LogBase base)
{
    return base == LogBase::Natural ? "e" : "2";
}

unsigned long iterated_log_ceiling(unsigned long n, LogBase base)
{
    require(n >= 4, "iterated_log_ceiling requires n >= 4 (got " + std::to_string(n) + ")");
    if (base == LogBase::Two) {
        // n <= 2^(2^c)  <=>  2^c >= ceil(log2 n)
        unsigned long bits = 0;
        while ((bits < 64) && ((1ULL << bits) < n))
            ++bits;
        unsigned long c = 0;
        while ((1UL << c) < bits)
            ++c;
        return c;
    }
    // ln ln n is never an integer for integer n >= 2, so the bracket settles.
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Mpfr x(prec), lo(prec), hi(prec);
        mpfr_set_ui(x.get(), n, MPFR_RNDN);
        mpfr_log(lo.get(), x.get(), MPFR_RNDD);
        mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_log(hi.get(), x.get(), MPFR_RNDU);
        mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
        BigInt a = ceil_q(lo.to_rational());
        BigInt b = ceil_q(hi.to_rational());
        if (a == b)
            return sgn(a) > 0 ? a.get_ui() : 0;
    }
}

namespace {

/// Decides the threshold for C against a bracket of H_n; empty when the
/// bracket is too wide to decide.
std::optional<ThresholdCheck> check_with(unsigned long c, const Bracket &hn)
{
    ThresholdCheck out;
    out.c = c;
    const Rational base = Rational(factorial(c)) + harmonic(c);
    // witness = C! + H_C - H_n
    out.witness.lower = base - hn.upper;
    out.witness.upper = base - hn.lower;
    out.witness.lower.canonicalize();
    out.witness.upper.canonicalize();
    out.witness.exact = hn.exact;
    if (out.witness.lower > 1)
        out.holds = true;
    else if (out.witness.upper <= 1)
        out.holds = false;
    else
        return std::nullopt;
    return out;
}

// H_n - H_C is never an integer for C < n, so the witness never equals 1
// and doubling the precision eventually decides every check.
template <typename Fn>
auto with_settled_bracket(unsigned long n, Fn &&attempt)
{
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Bracket hn = harmonic_bracket(n, prec);
        if (auto result = attempt(hn))
            return *result;
        if (hn.exact)
            fail(ErrorKind::Invariant, "exact harmonic bracket failed to decide for n=" +
                                           std::to_string(n));
    }
}

} // namespace

ThresholdCheck theorem1_check(unsigned long n, unsigned long c)
{
    require(c >= 1 && c < n, "theorem1_check requires 1 <= C < n (n=" + std::to_string(n) +
                                 ", C=" + std::to_string(c) + ")");
    return with_settled_bracket(n, [&](const Bracket &hn) { return check_with(c, hn); });
}

Theorem1Report theorem1_report(unsigned long n, LogBase base)
{
    require(n >= 4, "theorem1_report requires n >= 4 (got " + std::to_string(n) + ")");
    Theorem1Report r;
    r.n = n;
    r.base = base;
    r.c = iterated_log_ceiling(n, base);
    const unsigned long c_eff = std::clamp<unsigned long>(r.c, 1, n - 1);

    return with_settled_bracket(n, [&](const Bracket &hn) -> std::optional<Theorem1Report> {
        Theorem1Report out = r;
        auto at_c = check_with(c_eff, hn);
        if (!at_c)
            return std::nullopt;
        out.at_c = *at_c;
        out.at_c.c = r.c;
        if (r.c >= 1 && out.at_c.holds)
            out.lower_bound = n - r.c;
        for (unsigned long c = c_eff; c >= 1; --c) {
            auto chk = check_with(c, hn);
            if (!chk)
                return std::nullopt;
            if (chk->holds) {
                out.largest_holding_c_up_to_c = c;
                break;
            }
        }
        // The condition is monotone in C, so the first hit is the smallest.
        for (unsigned long c = 1; c < n; ++c) {
            auto chk = check_with(c, hn);
            if (!chk)
                return std::nullopt;
            if (chk->holds) {
                out.smallest_holding_c = c;
                break;
            }
        }
        return out;
    });
}

BoundReport bound_report(unsigned long n, unsigned long k)
{
    require(n >= 1 && k >= 1, "bound_report requires n >= 1 and k >= 1");
    BoundReport rep;
    rep.n = n;
    rep.k = k;
    rep.trivial_lb = trivial_lower_bound(n);
    if (n >= 4) {
        rep.theorem1_natural = theorem1_report(n, LogBase::Natural);
        rep.theorem1_base2 = theorem1_report(n, LogBase::Two);
    }
    if (k >= n)
        rep.entropy_lb = entropy_lower_bound(n, k);
    if (n > BoundReport::kTableMax)
        return rep;

    rep.permutations = factorial(n);
    rep.harmonic_n = harmonic(n);
    BigInt tail = 0;
    std::vector<BigInt> sizes(n + 1);
    for (unsigned long r = 0; r <= n; ++r)
        sizes[r] = bucket_size(n, static_cast<long>(r));
    rep.buckets.resize(n + 1);
    for (unsigned long r = n + 1; r-- > 0;) {
        tail += sizes[r];
        BucketRow &row = rep.buckets[r];
        row.r = r;
        row.bucket_size = sizes[r];
        row.tail_sum = tail;
        row.tail_bound = Rational(factorial(n), factorial(r));
        row.tail_bound.canonicalize();
        row.tail_bound_holds = Rational(tail) <= row.tail_bound;
    }
    for (unsigned long c = 1; c <= 2 && c < n; ++c)
        for (unsigned long t = 0; t <= n - c; ++t)
            rep.lemma2.push_back({c, t, lemma2_bound(n, c, static_cast<long>(t))});

    if (k >= n) {
        const BigInt total = falling_factorial(k, n);
        rep.injective_codes = total;
        std::vector<BigInt> counts;
        for (unsigned long x = 0; x <= n; ++x) {
            MatchRow row;
            row.x = x;
            row.count = exact_match_count(n, k, static_cast<long>(x));
            row.probability = Rational(row.count, total);
            row.probability.canonicalize();
            row.cap = Rational(1, factorial(x));
            row.cap.canonicalize();
            row.below_cap = row.probability <= row.cap;
            counts.push_back(row.count);
            rep.matches.push_back(std::move(row));
        }
        rep.single_query_entropy = entropy_of_counts(counts);
    }
    return rep;
}

} // namespace querymind

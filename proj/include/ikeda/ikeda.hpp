/**
 * @file ikeda.hpp
 * @brief Prime-indexed Hecke eigenvalues of degree-n Ikeda lifts.
 *
 * For an Ikeda lift F of weight k and degree n of a normalized eigenform f
 * of weight 2k - n, lambda_F(p) is computed three ways:
 *
 *  - route_sum: the double sum over (j, r) with q-binomials at q = p and
 *    exponents E0 + c_{j,r}, E0 = nk/2 - n(n+1)/4;
 *  - route_factored: prod_{i=1}^{n/2} (a + p^{k-i} + p^{k-n-1+i});
 *  - route_reciprocal: evaluating g~_p, assembled from the coefficients of
 *    G_p(x) = sum_i a_i x^i and Dickson transforms with c = p^{2k-n-1}.
 *
 * Half-integer powers of p live in Q(sqrt p). All comparisons are exact.
 */
#ifndef IKEDA_IKEDA_HPP
#define IKEDA_IKEDA_HPP

#include <algorithm>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ikeda/error.hpp"
#include "ikeda/exactnum.hpp"
#include "ikeda/modforms.hpp"
#include "ikeda/polynomial.hpp"
#include "ikeda/qseries.hpp"

namespace ikeda::lift {

using num::Integer;
using num::QuadExt;
using num::Rational;
using poly::IntPoly;
using poly::QuadPoly;

/// Validated (degree n, weight k): n, k even, k > n + 1, 2k - n >= 12.
class IkedaParams {
public:
    static IkedaParams create(long n, long k)
    {
        if (n < 2 || n % 2 != 0) throw DomainError("degree n must be an even integer >= 2, got " + std::to_string(n));
        if (k <= 0 || k % 2 != 0) throw DomainError("weight k must be an even positive integer, got " + std::to_string(k));
        if (k <= n + 1)
            throw DomainError("need k > n + 1, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
        if (2 * k - n < 12)
            throw DomainError("eigenform weight 2k - n = " + std::to_string(2 * k - n) + " has no cusp forms (< 12)");
        return IkedaParams(n, k);
    }

    long n() const { return n_; }
    long k() const { return k_; }
    long half_n() const { return n_ / 2; }

    /// Weight 2k - n of the elliptic eigenform.
    int eigenform_weight() const { return static_cast<int>(2 * k_ - n_); }

    /// nk/2 - n(n+1)/4.
    Rational base_exponent() const { return num::make_rational(Integer(2 * n_ * k_ - n_ * (n_ + 1)), Integer(4)); }

    /// 2k - n - 1, so that the Satake normalization is p^{(2k-n-1)/2}.
    long odd_exponent() const { return 2 * k_ - n_ - 1; }

    /// 4 p^{2k-n-1}: a_f(p)^2 must not exceed this.
    Integer deligne_square_bound(const Integer& p) const
    {
        return 4 * num::ipow(p, static_cast<unsigned long>(odd_exponent()));
    }

    /// Largest integer x with x^2 <= 4 p^{2k-n-1}.
    Integer deligne_extreme(const Integer& p) const { return num::isqrt(deligne_square_bound(p)); }

    friend bool operator==(const IkedaParams&, const IkedaParams&) = default;

private:
    IkedaParams(long n, long k) : n_(n), k_(k) {}
    long n_;
    long k_;
};

struct TermExponent {
    long j;
    long r;
    Rational c;      // c_{j,r}
    Rational total;  // E0 + c_{j,r}
};

/// c_{j,r} = ( -(n/2 - j)(n/2 + j) + (j - 2r)(n - 2k + 1) ) / 2
inline Rational term_exponent_c(const IkedaParams& prm, long j, long r)
{
    const long h = prm.half_n();
    return num::make_rational(Integer(-(h - j) * (h + j) + (j - 2 * r) * (prm.n() - 2 * prm.k() + 1)), Integer(2));
}

namespace detail {

inline Integer nonneg_integer_exponent(const Rational& e, const std::string& what)
{
    if (!num::is_integer(e) || e < 0)
        throw DomainError(what + " = " + num::to_fraction_string(e) + " is not a non-negative integer");
    return e.get_num();
}

inline void require_prime(const Integer& p)
{
    if (!num::is_prime(p)) throw DomainError(p.get_str() + " is not prime");
}

/// Twice a rational exponent that must be a half-integer.
inline long doubled(const Rational& e)
{
    const Rational d = 2 * e;
    if (!num::is_integer(d)) throw InternalError("exponent " + num::to_fraction_string(e) + " is not a half-integer");
    return d.get_num().get_si();
}

}  // namespace detail

/// Every (j, r) exponent of the double sum; totals asserted integral and >= 0.
inline std::vector<TermExponent> term_exponents(const IkedaParams& prm)
{
    std::vector<TermExponent> out;
    const Rational e0 = prm.base_exponent();
    for (long j = 1; j <= prm.half_n(); ++j) {
        for (long r = 0; r <= j / 2; ++r) {
            Rational c = term_exponent_c(prm, j, r);
            Rational total = e0 + c;
            detail::nonneg_integer_exponent(total, "E0 + c_{" + std::to_string(j) + "," + std::to_string(r) + "}");
            out.push_back({j, r, std::move(c), std::move(total)});
        }
    }
    return out;
}

/// E0 - n^2/8, the exponent of the constant term.
inline Rational constant_term_exponent(const IkedaParams& prm)
{
    return prm.base_exponent() - num::make_rational(Integer(prm.n() * prm.n()), Integer(8));
}

/// (-1)^r j/(j-r) C(j-r, r), asserted to be a (signed) integer.
inline Integer dickson_coefficient(long j, long r)
{
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j - r), static_cast<unsigned long>(r));
    const Rational q = num::make_rational(Integer(j) * binom, Integer(j - r));
    if (!num::is_integer(q) || q <= 0)
        throw InternalError("j/(j-r) C(j-r,r) not a positive integer at j = " + std::to_string(j) +
                            ", r = " + std::to_string(r));
    return (r % 2 == 0) ? q.get_num() : Integer(-q.get_num());
}

/// lambda_F(p) from the explicit double sum.
inline Integer route_sum(const IkedaParams& prm, const Integer& p, const Integer& ap)
{
    detail::require_prime(p);
    const long n = prm.n();
    Integer total = 0;
    for (const auto& t : term_exponents(prm)) {
        const Integer e = t.total.get_num();
        total += dickson_coefficient(t.j, t.r) * qseries::q_binomial_eval(n, prm.half_n() - t.j, p) *
                 num::ipow(p, e.get_ui()) * num::ipow(ap, static_cast<unsigned long>(t.j - 2 * t.r));
    }
    const Integer ce = detail::nonneg_integer_exponent(constant_term_exponent(prm), "E0 - n^2/8");
    total += num::ipow(p, ce.get_ui()) * qseries::q_binomial_eval(n, prm.half_n(), p);
    return total;
}

/// The linear factors x + p^{k-i} + p^{k-n-1+i}, i = 1..n/2.
inline std::vector<IntPoly> linear_factors(const IkedaParams& prm, const Integer& p)
{
    std::vector<IntPoly> out;
    for (long i = 1; i <= prm.half_n(); ++i) {
        Integer shift = num::ipow(p, static_cast<unsigned long>(prm.k() - i)) +
                        num::ipow(p, static_cast<unsigned long>(prm.k() - prm.n() - 1 + i));
        out.push_back(IntPoly{std::move(shift), Integer(1)});
    }
    return out;
}

/// prod_{i=1}^{n/2} (ap + p^{k-i} + p^{k-n-1+i}).
inline Integer route_factored(const IkedaParams& prm, const Integer& p, const Integer& ap)
{
    detail::require_prime(p);
    Integer acc = 1;
    for (long i = 1; i <= prm.half_n(); ++i)
        acc *= ap + num::ipow(p, static_cast<unsigned long>(prm.k() - i)) +
               num::ipow(p, static_cast<unsigned long>(prm.k() - prm.n() - 1 + i));
    return acc;
}

/// a_i = p^{E0} p^{i(i-n)/2} binom(n, i)_p for i = 0..n, in Q(sqrt p).
inline QuadPoly build_G(const IkedaParams& prm, const Integer& p)
{
    detail::require_prime(p);
    const long n = prm.n();
    const long e0x2 = detail::doubled(prm.base_exponent());
    std::vector<QuadExt> a;
    a.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
        const QuadExt scale = num::pow_p_half(p, e0x2 + i * (i - n));
        a.push_back(scale * scale.embed(Rational(qseries::q_binomial_eval(n, i, p))));
    }
    return QuadPoly(std::move(a));
}

/**
 * g~_p(x) = a_{n/2} + sum_{i<n/2} a_i p^{(2k-n-1)(i-n/2)/2} D_{n/2-i}(x)
 * with D the Dickson transform for c = p^{2k-n-1}.
 *
 * The assembly runs in Q(sqrt p); every final coefficient must be an
 * integer, the result must be monic of degree n/2, and it must equal the
 * expanded product of linear_factors. Any failure is an InternalError.
 */
inline IntPoly build_tilde_gp(const IkedaParams& prm, const Integer& p)
{
    const QuadPoly g = build_G(prm, p);
    const long h = prm.half_n();
    const long w1 = prm.odd_exponent();
    const auto a = g.coefficients();
    const QuadExt c = QuadExt::rational(Rational(num::ipow(p, static_cast<unsigned long>(w1))), p);

    QuadPoly acc = QuadPoly::constant(a[static_cast<std::size_t>(h)]);
    for (long i = 0; i < h; ++i) {
        const QuadExt scale = a[static_cast<std::size_t>(i)] * num::pow_p_half(p, w1 * (i - h));
        acc += scale * poly::dickson(static_cast<unsigned>(h - i), c);
    }

    std::vector<Integer> coeffs;
    for (const auto& q : acc.coefficients()) {
        if (!q.is_rational() || !num::is_integer(q.rational_part()))
            throw InternalError("g~_p coefficient " + q.to_string() + " is not an integer");
        coeffs.push_back(q.rational_part().get_num());
    }
    IntPoly out(std::move(coeffs));
    if (out.degree() != h || !out.is_monic())
        throw InternalError("g~_p is not monic of degree n/2 for p = " + p.get_str());
    if (!(out == poly::expand_product(linear_factors(prm, p))))
        throw InternalError("g~_p differs from the product of its claimed linear factors at p = " + p.get_str());
    return out;
}

inline Integer route_reciprocal(const IkedaParams& prm, const Integer& p, const Integer& ap)
{
    return poly::eval_poly(build_tilde_gp(prm, p), ap);
}

/// G_p == p^{E0} prod_{j=0}^{n-1} (1 + p^{j + (1-n)/2} x), coefficientwise in Q(sqrt p).
inline bool factorization_check(const IkedaParams& prm, const Integer& p)
{
    detail::require_prime(p);
    const QuadExt one = QuadExt::one(p);
    QuadPoly rhs = QuadPoly::constant(num::pow_p_half(p, detail::doubled(prm.base_exponent())));
    for (long j = 0; j < prm.n(); ++j) rhs *= QuadPoly{one, num::pow_p_half(p, 2 * j + 1 - prm.n())};
    return rhs == build_G(prm, p);
}

struct Bounds {
    QuadExt lower;
    QuadExt upper;
};

/// p^{E0 + n^2/8} prod_{i=1}^{n/2} (1 -+ p^{-(i - 1/2)})^2.
inline Bounds bounds(const IkedaParams& prm, const Integer& p)
{
    detail::require_prime(p);
    const long lead = detail::doubled(prm.base_exponent()) + prm.n() * prm.n() / 4;
    QuadExt lower = num::pow_p_half(p, lead);
    QuadExt upper = lower;
    const QuadExt one = QuadExt::one(p);
    for (long i = 1; i <= prm.half_n(); ++i) {
        const QuadExt t = num::pow_p_half(p, -(2 * i - 1));
        const QuadExt lo = one - t;
        const QuadExt hi = one + t;
        lower *= lo * lo;
        upper *= hi * hi;
    }
    return {std::move(lower), std::move(upper)};
}

struct EigenvalueReport {
    Integer p;
    Integer a_p;
    Integer lambda;
    QuadExt lower;
    QuadExt upper;
    bool positive = false;
    bool within_bounds = false;
    bool routes_agree = false;

    bool ok() const { return positive && within_bounds && routes_agree; }
};

/**
 * Computes lambda_F(p) by all three routes and checks positivity and the
 * two-sided bound exactly. Throws ValidationError if ap is outside the
 * Deligne range, InternalError if the routes disagree.
 */
inline EigenvalueReport verify_prime(const IkedaParams& prm, const Integer& p, const Integer& ap)
{
    detail::require_prime(p);
    if (ap * ap > prm.deligne_square_bound(p))
        throw ValidationError("a(" + p.get_str() + ") = " + ap.get_str() + " violates Deligne's bound", p.get_ui());

    const Integer by_sum = route_sum(prm, p, ap);
    const Integer by_product = route_factored(prm, p, ap);
    const Integer by_reciprocal = route_reciprocal(prm, p, ap);
    if (by_sum != by_product || by_product != by_reciprocal)
        throw InternalError("routes disagree at p = " + p.get_str() + ": " + by_sum.get_str() + ", " +
                            by_product.get_str() + ", " + by_reciprocal.get_str());

    auto [lower, upper] = bounds(prm, p);
    const QuadExt lam = QuadExt::rational(Rational(by_product), p);
    EigenvalueReport rep{p, ap, by_product, lower, upper};
    rep.routes_agree = true;
    rep.positive = by_product > 0;
    rep.within_bounds = compare(lam, lower) >= 0 && compare(upper, lam) >= 0;
    return rep;
}

/// Per-prime result of a sweep; exactly one of report / error is set.
struct PrimeOutcome {
    Integer p;
    std::optional<EigenvalueReport> report;
    std::string error;

    bool ok() const { return report && report->ok(); }
};

inline std::vector<Integer> primes_up_to(unsigned long pmax)
{
    std::vector<Integer> out;
    const auto spf = modforms::smallest_prime_factors(pmax);
    for (unsigned long m = 2; m <= pmax; ++m)
        if (spf[m] == m) out.emplace_back(m);
    return out;
}

/**
 * verify_prime for every prime p <= pmax with a_f(p) taken from f. Primes
 * are split across workers; results come back ordered by p regardless of
 * the worker count.
 */
inline std::vector<PrimeOutcome> sweep(const IkedaParams& prm, const modforms::FourierSeries& f, unsigned long pmax,
                                       unsigned workers = 0)
{
    if (f.weight() != prm.eigenform_weight())
        throw DomainError("eigenform weight " + std::to_string(f.weight()) + " does not match 2k - n = " +
                          std::to_string(prm.eigenform_weight()));
    const std::vector<Integer> primes = primes_up_to(pmax);
    std::vector<PrimeOutcome> out(primes.size());

    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < primes.size(); i += step) {
            PrimeOutcome& o = out[i];
            o.p = primes[i];
            try {
                o.report = verify_prime(prm, o.p, modforms::hecke_eigenvalue_prime(f, o.p));
            } catch (const std::exception& e) {
                o.error = e.what();
            }
        }
    };

    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(primes.size(), 1)));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 1; w < workers; ++w) jobs.push_back(std::async(std::launch::async, work, w, workers));
    work(0, workers);
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace ikeda::lift

#endif  // IKEDA_IKEDA_HPP

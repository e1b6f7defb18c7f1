/**
 * @file modforms.hpp
 * @brief Fourier coefficients of level-one normalized Hecke eigenforms.
 *
 * Built-in forms cover the weights whose cusp space is one-dimensional,
 * {12, 16, 18, 20, 22, 26}: there the normalized cusp form is Delta times a
 * monomial in E_4 and E_6. Delta itself is built twice (eta^24 and
 * (E_4^3 - E_6^2)/1728) and the two constructions must agree. Other weights
 * come in through the plain-text coefficient table read by load_eigenform.
 */
#ifndef IKEDA_MODFORMS_HPP
#define IKEDA_MODFORMS_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ikeda/error.hpp"
#include "ikeda/exactnum.hpp"

namespace ikeda::modforms {

using num::Integer;
using num::Rational;

/// Truncated q-expansion sum_{m=0}^{N} a(m) q^m of a modular form.
class FourierSeries {
public:
    FourierSeries(int weight, std::vector<Integer> coefficients)
        : weight_(weight), a_(std::move(coefficients))
    {
        if (weight_ <= 0 || weight_ % 2 != 0)
            throw DomainError("weight must be an even positive integer, got " + std::to_string(weight_));
        if (a_.size() < 2) throw DomainError("series must reach at least q^1");
    }

    int weight() const { return weight_; }
    std::size_t truncation() const { return a_.size() - 1; }
    const std::vector<Integer>& coefficients() const { return a_; }

    const Integer& operator[](std::size_t m) const { return a_[m]; }
    const Integer& at(std::size_t m) const
    {
        if (m >= a_.size())
            throw DomainError("coefficient a(" + std::to_string(m) + ") beyond truncation " +
                              std::to_string(truncation()));
        return a_[m];
    }

private:
    int weight_;
    std::vector<Integer> a_;
};

using Series = std::vector<Integer>;

/// Product of two power series, keeping terms through q^N.
inline Series mul_truncated(const Series& x, const Series& y, std::size_t n)
{
    Series out(n + 1, Integer(0));
    for (std::size_t i = 0; i < x.size() && i <= n; ++i) {
        if (x[i] == 0) continue;
        const std::size_t jmax = std::min(y.size() - 1, n - i);
        for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += x[i] * y[j];
    }
    return out;
}

/// B_m with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0.
inline Rational bernoulli(unsigned m)
{
    std::vector<Rational> b(m + 1);
    b[0] = 1;
    for (unsigned k = 1; k <= m; ++k) {
        Rational s = 0;
        Integer binom = 1;  // C(k+1, j), updated in j
        for (unsigned j = 0; j < k; ++j) {
            s += Rational(binom) * b[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b[k] = -s / Rational(k + 1);
    }
    return b[m];
}

/// sigma_e(m) for m = 0..n (index 0 unused).
inline Series divisor_sums(unsigned e, std::size_t n)
{
    Series s(n + 1, Integer(0));
    for (std::size_t d = 1; d <= n; ++d) {
        const Integer de = num::ipow(Integer(static_cast<unsigned long>(d)), e);
        for (std::size_t m = d; m <= n; m += d) s[m] += de;
    }
    return s;
}

inline FourierSeries eisenstein(int w, std::size_t n)
{
    if (w < 4 || w % 2 != 0) throw DomainError("eisenstein: weight must be even and >= 4");
    const Rational factor = Rational(-2 * w) / bernoulli(static_cast<unsigned>(w));
    const Series sigma = divisor_sums(static_cast<unsigned>(w - 1), n);
    Series a(n + 1, Integer(0));
    a[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        const Rational c = factor * Rational(sigma[m]);
        if (!num::is_integer(c))
            throw InternalError("E_" + std::to_string(w) + " coefficient " + std::to_string(m) + " not integral");
        a[m] = c.get_num();
    }
    return FourierSeries(w, std::move(a));
}

namespace detail {

/// prod_{m>=1} (1 - q^m) through q^n, via sum_j (-1)^j q^{j(3j-1)/2}.
inline Series euler_product(std::size_t n)
{
    Series e(n + 1, Integer(0));
    e[0] = 1;
    for (std::size_t j = 1;; ++j) {
        const std::size_t lo = j * (3 * j - 1) / 2;
        const std::size_t hi = j * (3 * j + 1) / 2;
        if (lo > n) break;
        const int s = (j % 2 == 0) ? 1 : -1;
        e[lo] += s;
        if (hi <= n) e[hi] += s;
    }
    return e;
}

inline Series power_truncated(Series base, unsigned e, std::size_t n)
{
    Series acc(n + 1, Integer(0));
    acc[0] = 1;
    while (e > 0) {
        if (e & 1U) acc = mul_truncated(acc, base, n);
        e >>= 1U;
        if (e > 0) base = mul_truncated(base, base, n);
    }
    return acc;
}

inline Series delta_from_eta(std::size_t n)
{
    const Series eta24 = power_truncated(euler_product(n - 1), 24, n - 1);
    Series a(n + 1, Integer(0));
    for (std::size_t m = 1; m <= n; ++m) a[m] = eta24[m - 1];
    return a;
}

inline Series delta_from_eisenstein(std::size_t n)
{
    const Series e4 = eisenstein(4, n).coefficients();
    const Series e6 = eisenstein(6, n).coefficients();
    const Series e4cubed = mul_truncated(mul_truncated(e4, e4, n), e4, n);
    const Series e6squared = mul_truncated(e6, e6, n);
    Series a(n + 1, Integer(0));
    for (std::size_t m = 0; m <= n; ++m) {
        const Integer diff = e4cubed[m] - e6squared[m];
        if (!mpz_divisible_ui_p(diff.get_mpz_t(), 1728))
            throw InternalError("E4^3 - E6^2 not divisible by 1728 at index " + std::to_string(m));
        a[m] = diff / 1728;
    }
    return a;
}

}  // namespace detail

/// Delta = q prod (1 - q^m)^24, cross-checked against (E_4^3 - E_6^2)/1728.
inline FourierSeries delta(std::size_t n)
{
    if (n < 1) throw DomainError("delta: truncation must be at least 1");
    Series eta = detail::delta_from_eta(n);
    const Series eis = detail::delta_from_eisenstein(n);
    for (std::size_t m = 0; m <= n; ++m)
        if (eta[m] != eis[m])
            throw InternalError("Delta constructions disagree at a(" + std::to_string(m) + "): " + eta[m].get_str() +
                                " vs " + eis[m].get_str());
    return FourierSeries(12, std::move(eta));
}

inline bool has_builtin_eigenform(int w)
{
    switch (w) {
    case 12: case 16: case 18: case 20: case 22: case 26: return true;
    default: return false;
    }
}

/// The normalized eigenform spanning S_w for w in {12,16,18,20,22,26}.
inline FourierSeries eigenform(int w, std::size_t n)
{
    if (!has_builtin_eigenform(w))
        throw DomainError("no built-in eigenform of weight " + std::to_string(w) +
                          " (cusp space is not one-dimensional); supply coefficients with load_eigenform");
    Series f = delta(n).coefficients();
    auto times = [&](int ew) { f = mul_truncated(f, eisenstein(ew, n).coefficients(), n); };
    switch (w) {
    case 16: times(4); break;
    case 18: times(6); break;
    case 20: times(4); times(4); break;
    case 22: times(4); times(6); break;
    case 26: times(4); times(4); times(6); break;
    default: break;
    }
    return FourierSeries(w, std::move(f));
}

/// a(p)^2 <= 4 p^{w-1}.
inline bool satisfies_deligne(const Integer& ap, const Integer& p, int w)
{
    return ap * ap <= 4 * num::ipow(p, static_cast<unsigned long>(w - 1));
}

/// Smallest prime factor of each m <= n (0 and 1 map to 0).
inline std::vector<std::size_t> smallest_prime_factors(std::size_t n)
{
    std::vector<std::size_t> spf(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (std::size_t j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

struct Violation {
    std::size_t index;
    std::string reason;
};

/**
 * Checks normalization, Deligne bounds at primes, the Hecke recursion at
 * prime powers and multiplicativity at every other index, in increasing
 * index order. Entries may be absent (nullopt); relations touching an absent
 * entry are skipped. Returns the first violation.
 */
inline std::optional<Violation> find_violation(int weight, const std::vector<std::optional<Integer>>& a)
{
    if (a.empty()) return Violation{0, "empty coefficient table"};
    if (a[0] && *a[0] != 0) return Violation{0, "a(0) must be 0 for a cusp form"};
    if (a.size() < 2 || !a[1]) return Violation{1, "a(1) missing"};
    if (*a[1] != 1) return Violation{1, "a(1) = " + a[1]->get_str() + ", expected 1 (normalization)"};

    const std::size_t n = a.size() - 1;
    const auto spf = smallest_prime_factors(n);
    for (std::size_t m = 2; m <= n; ++m) {
        if (!a[m]) continue;
        const std::size_t p = spf[m];
        std::size_t pe = 1;  // largest power of p dividing m
        while (m % (pe * p) == 0) pe *= p;

        if (pe == m && p == m) {
            if (!satisfies_deligne(*a[m], Integer(static_cast<unsigned long>(p)), weight))
                return Violation{m, "Deligne bound violated at p = " + std::to_string(p)};
        } else if (pe == m) {
            const std::size_t prev = m / p;
            const std::size_t prev2 = prev / p;
            if (!a[p] || !a[prev] || !a[prev2]) continue;
            const Integer expect = *a[p] * *a[prev] -
                                   num::ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(weight - 1)) * *a[prev2];
            if (*a[m] != expect)
                return Violation{m, "Hecke relation fails: a(" + std::to_string(m) + ") = " + a[m]->get_str() +
                                        ", expected " + expect.get_str()};
        } else {
            const std::size_t rest = m / pe;
            if (!a[pe] || !a[rest]) continue;
            const Integer expect = *a[pe] * *a[rest];
            if (*a[m] != expect)
                return Violation{m, "multiplicativity fails: a(" + std::to_string(m) + ") != a(" + std::to_string(pe) +
                                        ") a(" + std::to_string(rest) + ")"};
        }
    }
    return std::nullopt;
}

inline std::optional<Violation> find_violation(const FourierSeries& f)
{
    std::vector<std::optional<Integer>> a(f.coefficients().begin(), f.coefficients().end());
    return find_violation(f.weight(), a);
}

/// a_f(p), with Deligne's bound asserted.
inline Integer hecke_eigenvalue_prime(const FourierSeries& f, const Integer& p)
{
    if (!num::is_prime(p)) throw DomainError(p.get_str() + " is not prime");
    if (p > static_cast<unsigned long>(f.truncation()))
        throw DomainError("prime " + p.get_str() + " exceeds series truncation " + std::to_string(f.truncation()));
    const Integer& ap = f[p.get_ui()];
    if (!satisfies_deligne(ap, p, f.weight()))
        throw ValidationError("a(" + p.get_str() + ") = " + ap.get_str() + " violates Deligne's bound", p.get_ui());
    return ap;
}

/**
 * Reads "m a(m)" lines (decimal, whitespace separated, '#' comments) with m
 * strictly increasing from 1. Every index up to the largest listed prime
 * must be present. The returned series is truncated at the end of the first
 * contiguous run of indices.
 */
inline FourierSeries parse_eigenform(std::istream& in, int weight)
{
    if (weight <= 0 || weight % 2 != 0) throw DomainError("weight must be an even positive integer");
    std::vector<std::optional<Integer>> a{Integer(0)};
    std::string line;
    std::size_t lineno = 0;
    std::size_t last = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string ms, vs, extra;
        ls >> ms >> vs;
        if (vs.empty() || (ls >> extra))
            throw ValidationError("line " + std::to_string(lineno) + ": expected 'm a(m)'", last + 1);
        std::size_t m = 0;
        Integer v;
        try {
            std::size_t used = 0;
            m = std::stoul(ms, &used);
            if (used != ms.size() || ms[0] == '-' || ms[0] == '+') throw std::invalid_argument(ms);
            v = Integer(vs);
        } catch (const std::exception&) {
            throw ValidationError("line " + std::to_string(lineno) + ": malformed entry '" + line + "'", last + 1);
        }
        if (last == 0 && m != 1) throw ValidationError("table must start at m = 1", 1);
        if (m <= last)
            throw ValidationError("line " + std::to_string(lineno) + ": index " + std::to_string(m) +
                                      " not strictly increasing", m);
        a.resize(m + 1);
        a[m] = std::move(v);
        last = m;
    }
    if (last == 0) throw ValidationError("no coefficients found", 1);

    std::size_t max_prime = 0;
    const auto spf = smallest_prime_factors(last);
    for (std::size_t m = 2; m <= last; ++m)
        if (a[m] && spf[m] == m) max_prime = m;
    for (std::size_t m = 1; m <= max_prime; ++m)
        if (!a[m]) throw ValidationError("missing a(" + std::to_string(m) + ")", m);

    if (auto bad = find_violation(weight, a)) throw ValidationError(bad->reason, bad->index);

    std::size_t contiguous = 1;
    while (contiguous + 1 < a.size() && a[contiguous + 1]) ++contiguous;
    std::vector<Integer> coeffs;
    coeffs.reserve(contiguous + 1);
    for (std::size_t m = 0; m <= contiguous; ++m) coeffs.push_back(*a[m]);
    return FourierSeries(weight, std::move(coeffs));
}

inline FourierSeries load_eigenform(const std::string& path, int weight)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open eigenform file '" + path + "'");
    return parse_eigenform(in, weight);
}

}  // namespace ikeda::modforms

#endif  // IKEDA_MODFORMS_HPP

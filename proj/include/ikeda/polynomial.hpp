/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over Integer, Rational, QuadExt, or
 *        another polynomial ring; Dickson-type reciprocal transforms.
 *
 * Coefficients are stored by ascending exponent with trailing zeros trimmed,
 * so the zero polynomial has no coefficients. Because a QuadExt zero still
 * carries a radicand, every zero/one needed during arithmetic is produced
 * from a sample coefficient through ring_traits.
 */
#ifndef IKEDA_POLYNOMIAL_HPP
#define IKEDA_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ikeda/error.hpp"
#include "ikeda/exactnum.hpp"

namespace ikeda::poly {

using num::Integer;
using num::QuadExt;
using num::Rational;

template <class T>
struct ring_traits;

template <>
struct ring_traits<Integer> {
    static Integer zero_like(const Integer&) { return 0; }
    static Integer one_like(const Integer&) { return 1; }
    static bool is_zero(const Integer& x) { return x == 0; }
};

template <>
struct ring_traits<Rational> {
    static Rational zero_like(const Rational&) { return 0; }
    static Rational one_like(const Rational&) { return 1; }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct ring_traits<QuadExt> {
    static QuadExt zero_like(const QuadExt& s) { return QuadExt::zero(s.radicand()); }
    static QuadExt one_like(const QuadExt& s) { return QuadExt::one(s.radicand()); }
    static bool is_zero(const QuadExt& x) { return x.is_zero(); }
};

template <class T>
class Poly {
public:
    using coeff_type = T;

    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(T c) { return Poly(std::vector<T>{std::move(c)}); }

    /// c * x^d
    static Poly monomial(const T& c, std::size_t d)
    {
        std::vector<T> v(d + 1, ring_traits<T>::zero_like(c));
        v[d] = c;
        return Poly(std::move(v));
    }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::span<const T> coefficients() const { return c_; }
    const T& operator[](std::size_t i) const { return c_.at(i); }
    const T& leading() const
    {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == ring_traits<T>::one_like(c_.back()); }

    friend Poly operator+(const Poly& x, const Poly& y) { return combine(x, y, false); }
    friend Poly operator-(const Poly& x, const Poly& y) { return combine(x, y, true); }

    Poly operator-() const
    {
        std::vector<T> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(ring_traits<T>::zero_like(c) - c);
        return Poly(std::move(v));
    }

    friend Poly operator*(const Poly& x, const Poly& y)
    {
        if (x.is_zero() || y.is_zero()) return Poly{};
        std::vector<T> v(x.c_.size() + y.c_.size() - 1, ring_traits<T>::zero_like(x.c_.front()));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (ring_traits<T>::is_zero(x.c_[i])) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) v[i + j] += x.c_[i] * y.c_[j];
        }
        return Poly(std::move(v));
    }

    /// Scalar multiple.
    friend Poly operator*(const T& s, const Poly& x)
    {
        std::vector<T> v;
        v.reserve(x.c_.size());
        for (const auto& c : x.c_) v.push_back(s * c);
        return Poly(std::move(v));
    }

    Poly& operator+=(const Poly& y) { return *this = *this + y; }
    Poly& operator-=(const Poly& y) { return *this = *this - y; }
    Poly& operator*=(const Poly& y) { return *this = *this * y; }

    friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

private:
    static Poly combine(const Poly& x, const Poly& y, bool subtract)
    {
        if (x.is_zero()) return subtract ? -y : y;
        if (y.is_zero()) return x;
        const T zero = ring_traits<T>::zero_like(x.c_.front());
        std::vector<T> v(std::max(x.c_.size(), y.c_.size()), zero);
        for (std::size_t i = 0; i < x.c_.size(); ++i) v[i] = x.c_[i];
        for (std::size_t i = 0; i < y.c_.size(); ++i) {
            if (subtract)
                v[i] -= y.c_[i];
            else
                v[i] += y.c_[i];
        }
        return Poly(std::move(v));
    }

    void trim()
    {
        while (!c_.empty() && ring_traits<T>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

template <class T>
struct ring_traits<Poly<T>> {
    static Poly<T> zero_like(const Poly<T>&) { return {}; }
    static Poly<T> one_like(const Poly<T>& s)
    {
        if (!s.is_zero()) return Poly<T>::constant(ring_traits<T>::one_like(s.leading()));
        if constexpr (std::is_constructible_v<T, int>)
            return Poly<T>::constant(T(1));
        else
            throw DomainError("no unit available from an empty sample polynomial");
    }
    static bool is_zero(const Poly<T>& x) { return x.is_zero(); }
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;
using QuadPoly = Poly<QuadExt>;

// Embedding of a coefficient into the domain of an evaluation point.
inline Integer embed(const Integer& c, const Integer&) { return c; }
inline Rational embed(const Integer& c, const Rational&) { return Rational(c); }
inline Rational embed(const Rational& c, const Rational&) { return c; }
inline QuadExt embed(const Integer& c, const QuadExt& at) { return at.embed(Rational(c)); }
inline QuadExt embed(const Rational& c, const QuadExt& at) { return at.embed(c); }
inline QuadExt embed(const QuadExt& c, const QuadExt&) { return c; }

/// Horner evaluation of poly at point; the result lives in the point's domain.
template <class C, class P>
P eval_poly(const Poly<C>& poly, const P& point)
{
    const auto cs = poly.coefficients();
    if (cs.empty()) return ring_traits<P>::zero_like(point);
    P acc = embed(cs.back(), point);
    for (std::size_t i = cs.size() - 1; i-- > 0;) acc = acc * point + embed(cs[i], point);
    return acc;
}

/**
 * The polynomial D_i with D_i(x + c/x) = x^i + (c/x)^i.
 *
 * Built by D_0 = 2, D_1 = y, D_i = y D_{i-1} - c D_{i-2}. Monic of degree
 * i for i >= 1; integer coefficients when c is an integer.
 */
template <class T>
Poly<T> dickson(unsigned i, const T& c)
{
    const T one = ring_traits<T>::one_like(c);
    const Poly<T> two = Poly<T>::constant(one + one);
    if (i == 0) return two;
    const Poly<T> y = Poly<T>::monomial(one, 1);
    Poly<T> prev = two;
    Poly<T> cur = y;
    for (unsigned step = 2; step <= i; ++step) {
        Poly<T> next = y * cur - c * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Coefficient at i equals coefficient at deg - i for every i.
template <class T>
bool is_palindromic(const Poly<T>& p)
{
    const auto cs = p.coefficients();
    return std::equal(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(cs.size() / 2), cs.rbegin());
}

template <class T>
Poly<T> expand_product(std::span<const Poly<T>> factors)
{
    if (factors.empty()) throw DomainError("expand_product of an empty factor list");
    Poly<T> acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc *= factors[i];
    return acc;
}

template <class T>
Poly<T> expand_product(const std::vector<Poly<T>>& factors)
{
    return expand_product(std::span<const Poly<T>>(factors));
}

/**
 * Quotient of num by den over Z[x]. Throws InternalError if the division
 * leaves a remainder or needs a non-integer quotient coefficient.
 */
inline IntPoly divide_exact(const IntPoly& num, const IntPoly& den)
{
    if (den.is_zero()) throw DomainError("polynomial division by zero");
    if (num.is_zero()) return {};
    const long dn = den.degree();
    std::vector<Integer> rem(num.coefficients().begin(), num.coefficients().end());
    if (static_cast<long>(rem.size()) - 1 < dn) throw InternalError("inexact polynomial division: degree");
    std::vector<Integer> quot(rem.size() - static_cast<std::size_t>(dn), Integer(0));
    const Integer& lead = den.leading();
    const auto dc = den.coefficients();
    for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
        const Integer& top = rem[static_cast<std::size_t>(k + dn)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw InternalError("inexact polynomial division: non-integral quotient");
        const Integer q = top / lead;
        quot[static_cast<std::size_t>(k)] = q;
        for (long j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= q * dc[static_cast<std::size_t>(j)];
    }
    for (const auto& r : rem)
        if (r != 0) throw InternalError("inexact polynomial division: nonzero remainder");
    return IntPoly(std::move(quot));
}

/// "1 + q + 2q^2 - q^3", ascending exponents.
inline std::string to_string(const IntPoly& p, char var = 'x')
{
    const auto cs = p.coefficients();
    if (cs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const Integer& c = cs[i];
        if (c == 0) continue;
        const Integer mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

}  // namespace ikeda::poly

#endif  // IKEDA_POLYNOMIAL_HPP

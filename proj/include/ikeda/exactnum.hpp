/**
 * @file exactnum.hpp
 * @brief Exact scalars: GMP-backed integers and rationals, and the real
 *        quadratic ring Q(sqrt p) with exact sign determination.
 *
 * QuadExt values carry a single prime radicand. Arithmetic between values
 * with different radicands throws. Since sqrt(p) is irrational for prime p,
 * the (rational, surd) pair is a canonical representation of the real number.
 */
#ifndef IKEDA_EXACTNUM_HPP
#define IKEDA_EXACTNUM_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ikeda/error.hpp"

namespace ikeda::num {

using Integer = mpz_class;
using Rational = mpq_class;

/// Rational in lowest terms with positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Exact power b^e for e >= 0.
inline Integer ipow(const Integer& b, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Integer ipow(long b, unsigned long e) { return ipow(Integer(b), e); }

/// Exact power b^e for any integer e; negative e gives 1/b^|e|.
inline Rational rpow(const Integer& b, long e)
{
    if (e >= 0) return Rational(ipow(b, static_cast<unsigned long>(e)));
    return make_rational(Integer(1), ipow(b, static_cast<unsigned long>(-e)));
}

/// floor(sqrt(n)) for n >= 0.
inline Integer isqrt(const Integer& n)
{
    if (n < 0) throw DomainError("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// BPSW below 2^64; probabilistic (40 rounds) above.
inline bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline int sign(const Integer& x) { return sgn(x); }
inline int sign(const Rational& x) { return sgn(x); }

/// "num/den" with the denominator always written, e.g. "3/1", "-1/2".
inline std::string to_fraction_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "num/den" or a bare integer.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational '" + s + "'");
    }
}

/// RAII holder for an mpfr_t, used only for human-readable renderings.
class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

inline mpfr_prec_t bits_for_digits(int digits)
{
    return static_cast<mpfr_prec_t>(digits * 3.33) + 64;
}

inline void set_rational(MpfrValue& out, const Rational& r)
{
    mpfr_set_q(out.get(), r.get_mpq_t(), MPFR_RNDN);
}

inline std::string format_significant(const MpfrValue& v, int digits)
{
    char* buf = nullptr;
    int len = mpfr_asprintf(&buf, "%.*Rg", digits, v.get());
    if (len < 0) throw InternalError("mpfr formatting failed");
    std::string s(buf, static_cast<std::size_t>(len));
    mpfr_free_str(buf);
    return s;
}

enum class QuadOp { add, sub, mul };

/**
 * a + b*sqrt(p) with a, b rational and p prime.
 *
 * The radicand is validated once on public construction; results of
 * arithmetic inherit it without rechecking.
 */
class QuadExt {
public:
    QuadExt(Rational rational_part, Rational surd_part, Integer radicand)
        : a_(std::move(rational_part)), b_(std::move(surd_part)), p_(std::move(radicand))
    {
        if (!is_prime(p_)) throw DomainError("QuadExt radicand " + p_.get_str() + " is not prime");
        a_.canonicalize();
        b_.canonicalize();
    }

    static QuadExt rational(Rational a, Integer p) { return QuadExt(std::move(a), Rational(0), std::move(p)); }
    static QuadExt zero(const Integer& p) { return unchecked(Rational(0), Rational(0), p); }
    static QuadExt one(const Integer& p) { return unchecked(Rational(1), Rational(0), p); }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    const Integer& radicand() const { return p_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// QuadExt with the same radicand as this value.
    QuadExt embed(const Rational& r) const { return unchecked(r, Rational(0), p_); }

    /// Exact sign of a + b*sqrt(p), decided by comparing a^2 with b^2 p.
    int sign() const
    {
        const int sa = sgn(a_);
        const int sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * Rational(p_);
        const int c = cmp(lhs, rhs);
        // c == 0 would make sqrt(p) rational.
        if (c == 0) throw InternalError("sqrt(" + p_.get_str() + ") behaved as rational");
        return c > 0 ? sa : sb;
    }

    QuadExt operator-() const { return unchecked(-a_, -b_, p_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y)
    {
        check_same(x, y);
        return unchecked(x.a_ + y.a_, x.b_ + y.b_, x.p_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y)
    {
        check_same(x, y);
        return unchecked(x.a_ - y.a_, x.b_ - y.b_, x.p_);
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y)
    {
        check_same(x, y);
        return unchecked(x.a_ * y.a_ + x.b_ * y.b_ * Rational(x.p_), x.a_ * y.b_ + x.b_ * y.a_, x.p_);
    }
    QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
    QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
    QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y)
    {
        return x.p_ == y.p_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Exact three-way comparison; radicands must match.
    friend int compare(const QuadExt& x, const QuadExt& y) { return (x - y).sign(); }

    /// Lossless "R+S*sqrt(P)" with R, S written as num/den.
    std::string to_string() const
    {
        return to_fraction_string(a_) + "+" + to_fraction_string(b_) + "*sqrt(" + p_.get_str() + ")";
    }

    /// Approximate decimal with the given number of significant digits.
    std::string to_decimal(int digits = 50) const
    {
        const mpfr_prec_t bits = bits_for_digits(digits);
        MpfrValue root(bits), a(bits), b(bits);
        mpfr_set_z(root.get(), p_.get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
        set_rational(a, a_);
        set_rational(b, b_);
        mpfr_mul(b.get(), b.get(), root.get(), MPFR_RNDN);
        mpfr_add(a.get(), a.get(), b.get(), MPFR_RNDN);
        return format_significant(a, digits);
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

private:
    static QuadExt unchecked(Rational a, Rational b, const Integer& p)
    {
        QuadExt q;
        q.a_ = std::move(a);
        q.b_ = std::move(b);
        q.p_ = p;
        return q;
    }

    static void check_same(const QuadExt& x, const QuadExt& y)
    {
        if (x.p_ != y.p_)
            throw DomainError("radicand mismatch: sqrt(" + x.p_.get_str() + ") vs sqrt(" + y.p_.get_str() + ")");
    }

    QuadExt() = default;

    Rational a_;
    Rational b_;
    Integer p_;
};

inline int quad_sign(const QuadExt& x) { return x.sign(); }

inline QuadExt quad_arith(const QuadExt& x, const QuadExt& y, QuadOp op)
{
    switch (op) {
    case QuadOp::add: return x + y;
    case QuadOp::sub: return x - y;
    case QuadOp::mul: return x * y;
    }
    throw InternalError("unknown QuadOp");
}

/// p^(h/2) as an element of Q(sqrt p).
inline QuadExt pow_p_half(const Integer& p, long h)
{
    if (!is_prime(p)) throw DomainError("pow_p_half: " + p.get_str() + " is not prime");
    // floor division keeps (h - 1)/2 correct for negative odd h
    const long half = (h >= 0) ? h / 2 : -((-h + 1) / 2);
    if (h % 2 == 0) return QuadExt::rational(rpow(p, half), p);
    return QuadExt(Rational(0), rpow(p, half), p);
}

/// Parses the "R+S*sqrt(P)" grammar emitted by QuadExt::to_string.
inline QuadExt parse_quad(std::string_view text)
{
    const std::string s(text);
    const auto star = s.find("*sqrt(");
    if (star == std::string::npos || s.empty() || s.back() != ')')
        throw DomainError("malformed quadratic value '" + s + "'");
    // split at the '+' that starts S; R itself may not contain '+'
    const auto plus = s.find('+');
    if (plus == std::string::npos || plus > star) throw DomainError("malformed quadratic value '" + s + "'");
    const Rational r = parse_rational(std::string_view(s).substr(0, plus));
    const Rational q = parse_rational(std::string_view(s).substr(plus + 1, star - plus - 1));
    const std::string p = s.substr(star + 6, s.size() - star - 7);
    try {
        return QuadExt(r, q, Integer(p));
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed radicand in '" + s + "'");
    }
}

}  // namespace ikeda::num

#endif  // IKEDA_EXACTNUM_HPP

/**
 * @file qseries.hpp
 * @brief q-integers, q-factorials and q-binomial coefficients in Z[q], and
 *        the expansion of prod_{i<n} (1 + q^i x).
 */
#ifndef IKEDA_QSERIES_HPP
#define IKEDA_QSERIES_HPP

#include <string>
#include <vector>

#include "ikeda/error.hpp"
#include "ikeda/exactnum.hpp"
#include "ikeda/polynomial.hpp"

namespace ikeda::qseries {

using num::Integer;
using QPoly = poly::IntPoly;

/// Polynomial in x whose coefficients are polynomials in q.
using QXPoly = poly::Poly<QPoly>;

/// 1 + q + ... + q^{n-1}; zero for n = 0.
inline QPoly q_int(long n)
{
    if (n < 0) throw DomainError("q_int: negative n = " + std::to_string(n) + " is not supported");
    return QPoly(std::vector<Integer>(static_cast<std::size_t>(n), Integer(1)));
}

inline QPoly q_factorial(long n)
{
    if (n < 0) throw DomainError("q_factorial: negative n = " + std::to_string(n));
    QPoly acc = QPoly::constant(1);
    for (long i = 2; i <= n; ++i) acc *= q_int(i);
    return acc;
}

/**
 * (n)_q! / ((m)_q! (n-m)_q!) by exact division over Z[q].
 *
 * A remainder would contradict integrality of the Gaussian coefficient and
 * is reported as an InternalError by divide_exact.
 */
inline QPoly q_binomial(long n, long m)
{
    if (n < 0 || m < 0) throw DomainError("q_binomial: negative argument");
    if (m > n) throw DomainError("q_binomial: m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
    return poly::divide_exact(q_factorial(n), q_factorial(m) * q_factorial(n - m));
}

inline Integer q_binomial_eval(long n, long m, const Integer& q0)
{
    return poly::eval_poly(q_binomial(n, m), q0);
}

/// prod_{i=0}^{n-1} (1 + q^i x), expanded in powers of x.
inline QXPoly qbinom_theorem_expand(long n)
{
    if (n < 1) throw DomainError("qbinom_theorem_expand: n must be positive");
    const QPoly one = QPoly::constant(1);
    QXPoly acc = QXPoly::constant(one);
    for (long i = 0; i < n; ++i) acc *= QXPoly{one, QPoly::monomial(Integer(1), static_cast<std::size_t>(i))};
    return acc;
}

}  // namespace ikeda::qseries

#endif  // IKEDA_QSERIES_HPP

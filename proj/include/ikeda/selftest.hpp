/**
 * @file selftest.hpp
 * @brief Invariant checks of every module, runnable from the CLI.
 *
 * Each check returns an empty string on success or a description of the
 * first counterexample. Randomized checks use fixed seeds.
 */
#ifndef IKEDA_SELFTEST_HPP
#define IKEDA_SELFTEST_HPP

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ikeda/exactnum.hpp"
#include "ikeda/ikeda.hpp"
#include "ikeda/modforms.hpp"
#include "ikeda/polynomial.hpp"
#include "ikeda/qseries.hpp"

namespace ikeda::selftest {

using num::Integer;
using num::QuadExt;
using num::Rational;

struct Check {
    std::string module;
    std::string name;
    std::function<std::string()> run;
};

struct Outcome {
    std::string module;
    std::string name;
    std::string failure;  // empty on success
};

/// The eight (n, k) pairs whose eigenform weight has a built-in eigenform.
inline const std::vector<std::pair<long, long>>& desk_params()
{
    static const std::vector<std::pair<long, long>> v{{2, 10}, {2, 12}, {2, 14}, {4, 8},
                                                      {4, 10}, {4, 12}, {6, 14}, {6, 16}};
    return v;
}

/// All valid (n, k) with n <= nmax, k <= kmax.
inline std::vector<lift::IkedaParams> valid_params(long nmax, long kmax)
{
    std::vector<lift::IkedaParams> out;
    for (long n = 2; n <= nmax; n += 2)
        for (long k = 2; k <= kmax; k += 2)
            if (k > n + 1 && 2 * k - n >= 12) out.push_back(lift::IkedaParams::create(n, k));
    return out;
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, long span = 1000)
{
    std::uniform_int_distribution<long> top(-span, span);
    std::uniform_int_distribution<long> bottom(1, span);
    return num::make_rational(Integer(top(rng)), Integer(bottom(rng)));
}

inline Integer random_in(gmp_randclass& rng, const Integer& lo, const Integer& hi)
{
    return lo + rng.get_z_range(hi - lo + 1);
}

inline int mpfr_sign_of(const QuadExt& x, int digits)
{
    const mpfr_prec_t bits = num::bits_for_digits(digits);
    num::MpfrValue root(bits), a(bits), b(bits);
    mpfr_set_z(root.get(), x.radicand().get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    num::set_rational(a, x.rational_part());
    num::set_rational(b, x.surd_part());
    mpfr_mul(b.get(), b.get(), root.get(), MPFR_RNDN);
    mpfr_add(a.get(), a.get(), b.get(), MPFR_RNDN);
    return mpfr_sgn(a.get());
}

inline Integer classical_binomial(long n, long m)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
    return r;
}

}  // namespace detail

inline std::vector<Check> exactnum_checks()
{
    using std::to_string;
    std::vector<Check> c;
    c.push_back({"exactnum", "sign is zero iff both parts are zero", [] {
        std::mt19937_64 rng(11);
        const std::array<long, 4> primes{2, 3, 5, 7};
        for (int s = 0; s < 1000; ++s) {
            Rational a = (s % 3 == 0) ? Rational(0) : detail::random_rational(rng);
            Rational b = (s % 5 == 0) ? Rational(0) : detail::random_rational(rng);
            const QuadExt x(a, b, Integer(primes[static_cast<std::size_t>(s) % 4]));
            if ((x.sign() == 0) != (a == 0 && b == 0)) return "counterexample " + x.to_string();
        }
        return std::string();
    }});
    c.push_back({"exactnum", "sign agrees with 100-digit evaluation", [] {
        std::mt19937_64 rng(12);
        std::vector<long> primes;
        for (long p = 2; p <= 50; ++p)
            if (num::is_prime(Integer(p))) primes.push_back(p);
        for (int s = 0; s < 2000; ++s) {
            const QuadExt x(detail::random_rational(rng), detail::random_rational(rng),
                            Integer(primes[static_cast<std::size_t>(s) % primes.size()]));
            if (x.sign() != detail::mpfr_sign_of(x, 100)) return "sign mismatch at " + x.to_string();
        }
        return std::string();
    }});
    c.push_back({"exactnum", "ring axioms on random triples", [] {
        std::mt19937_64 rng(13);
        for (int s = 0; s < 1000; ++s) {
            const Integer p = (s % 2) ? 3 : 2;
            auto r = [&] { return QuadExt(detail::random_rational(rng), detail::random_rational(rng), p); };
            const QuadExt x = r(), y = r(), z = r();
            if (!(x + y == y + x) || !(x * y == y * x)) return "commutativity fails at " + x.to_string();
            if (!((x + y) + z == x + (y + z)) || !((x * y) * z == x * (y * z)))
                return "associativity fails at " + x.to_string();
            if (!(x * (y + z) == x * y + x * z)) return "distributivity fails at " + x.to_string();
        }
        return std::string();
    }});
    c.push_back({"exactnum", "pow_p_half is a homomorphism in h", [] {
        for (long p : {2L, 3L, 5L, 7L, 47L})
            for (long h1 = -40; h1 <= 40; ++h1)
                for (long h2 = -40; h2 <= 40; ++h2)
                    if (!(num::pow_p_half(Integer(p), h1) * num::pow_p_half(Integer(p), h2) ==
                          num::pow_p_half(Integer(p), h1 + h2)))
                        return "fails at p=" + to_string(p) + " h=" + to_string(h1) + "," + to_string(h2);
        return std::string();
    }});
    return c;
}

inline std::vector<Check> qseries_checks()
{
    using std::to_string;
    std::vector<Check> c;
    c.push_back({"qseries", "q-binomial symmetry n <= 16", [] {
        for (long n = 0; n <= 16; ++n)
            for (long m = 0; m <= n; ++m)
                if (!(qseries::q_binomial(n, m) == qseries::q_binomial(n, n - m)))
                    return "asymmetric at n=" + to_string(n) + " m=" + to_string(m);
        return std::string();
    }});
    c.push_back({"qseries", "q-binomial at q=1 is the classical binomial, non-negative coefficients", [] {
        for (long n = 0; n <= 16; ++n)
            for (long m = 0; m <= n; ++m) {
                const auto b = qseries::q_binomial(n, m);
                if (qseries::q_binomial_eval(n, m, 1) != detail::classical_binomial(n, m))
                    return "q=1 mismatch at n=" + to_string(n) + " m=" + to_string(m);
                for (const auto& x : b.coefficients())
                    if (x < 0) return "negative coefficient at n=" + to_string(n) + " m=" + to_string(m);
            }
        return std::string();
    }});
    c.push_back({"qseries", "q-binomial theorem n <= 16", [] {
        for (long n = 1; n <= 16; ++n) {
            const auto lhs = qseries::qbinom_theorem_expand(n);
            if (lhs.degree() != n) return "degree mismatch at n=" + to_string(n);
            for (long j = 0; j <= n; ++j) {
                const auto rhs = qseries::q_binomial(n, j) *
                                 qseries::QPoly::monomial(Integer(1), static_cast<std::size_t>(j * (j - 1) / 2));
                if (!(lhs[static_cast<std::size_t>(j)] == rhs))
                    return "coefficient mismatch at n=" + to_string(n) + " j=" + to_string(j);
            }
        }
        return std::string();
    }});
    return c;
}

inline std::vector<Check> polyalg_checks()
{
    using std::to_string;
    std::vector<Check> c;
    c.push_back({"polyalg", "Dickson functional identity i <= 12", [] {
        std::mt19937_64 rng(21);
        for (unsigned i = 0; i <= 12; ++i)
            for (int s = 0; s < 20; ++s) {
                Rational x = detail::random_rational(rng, 50), cc = detail::random_rational(rng, 50);
                if (x == 0) x = 1;
                if (cc == 0) cc = -1;
                const Rational y = x + cc / x;
                Rational lhs = poly::eval_poly(poly::dickson(i, cc), y);
                Rational xi = 1, ci = 1;
                for (unsigned t = 0; t < i; ++t) {
                    xi *= x;
                    ci *= cc / x;
                }
                if (lhs != xi + ci) return "identity fails at i=" + to_string(i);
            }
        return std::string();
    }});
    c.push_back({"polyalg", "Dickson polynomials monic of degree i with integer coefficients", [] {
        for (unsigned i = 1; i <= 12; ++i)
            for (long cc : {-7L, -1L, 1L, 2L, 128L}) {
                const auto d = poly::dickson(i, Integer(cc));
                if (d.degree() != static_cast<long>(i) || !d.is_monic())
                    return "bad shape at i=" + to_string(i) + " c=" + to_string(cc);
                const auto dr = poly::dickson(i, Rational(cc));
                for (std::size_t t = 0; t <= i; ++t)
                    if (dr[t] != Rational(d[t])) return "rational/integer mismatch at i=" + to_string(i);
            }
        return std::string();
    }});
    c.push_back({"polyalg", "expand_product is permutation invariant", [] {
        std::mt19937_64 rng(22);
        std::uniform_int_distribution<long> d(-20, 20);
        for (int s = 0; s < 100; ++s) {
            std::vector<poly::IntPoly> f;
            for (int t = 0; t < 4; ++t) f.push_back(poly::IntPoly{Integer(d(rng)), Integer(d(rng)), Integer(1)});
            const auto base = poly::expand_product(f);
            std::shuffle(f.begin(), f.end(), rng);
            if (!(poly::expand_product(f) == base)) return "order dependence in sample " + to_string(s);
        }
        return std::string();
    }});
    c.push_back({"polyalg", "palindromic polynomials are closed under products", [] {
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<long> d(-9, 9);
        std::uniform_int_distribution<int> deg(0, 8);
        auto pal = [&] {
            const int n = deg(rng);
            std::vector<Integer> v(static_cast<std::size_t>(n + 1));
            for (int i = 0; i <= n / 2; ++i) v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(n - i)] = d(rng);
            v.front() = v.back() = 1 + std::abs(d(rng));
            return poly::IntPoly(std::move(v));
        };
        for (int s = 0; s < 200; ++s) {
            const auto a = pal(), b = pal();
            if (!poly::is_palindromic(a) || !poly::is_palindromic(a * b)) return "closure fails in sample " + to_string(s);
        }
        return std::string();
    }});
    return c;
}

inline std::vector<Check> modforms_checks()
{
    using std::to_string;
    std::vector<Check> c;
    c.push_back({"modforms", "eta^24 and Eisenstein constructions of Delta agree to N = 1000", [] {
        (void)modforms::delta(1000);  // throws on disagreement
        return std::string();
    }});
    c.push_back({"modforms", "multiplicativity, Hecke relations and Deligne bounds to N = 500", [] {
        for (int w : {12, 16, 18, 20, 22, 26}) {
            const auto f = modforms::eigenform(w, 500);
            if (auto v = modforms::find_violation(f)) return "weight " + to_string(w) + ": " + v->reason;
            for (std::size_t m = 2; m <= 500; ++m)
                for (std::size_t n = 2; m * n <= 500; ++n)
                    if (std::gcd(m, n) == 1 && f[m * n] != f[m] * f[n])
                        return "weight " + to_string(w) + ": a(" + to_string(m * n) + ") not multiplicative";
        }
        return std::string();
    }});
    return c;
}

inline std::vector<Check> ikeda_checks()
{
    using std::to_string;
    std::vector<Check> c;
    c.push_back({"ikeda", "three routes agree on random Deligne-admissible inputs, p <= 100", [] {
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(31);
        for (auto [n, k] : desk_params()) {
            const auto prm = lift::IkedaParams::create(n, k);
            for (const auto& p : lift::primes_up_to(100)) {
                const Integer ext = prm.deligne_extreme(p);
                const auto g = lift::build_tilde_gp(prm, p);
                for (int s = 0; s < 50; ++s) {
                    const Integer x = detail::random_in(rng, -ext, ext);
                    const Integer a = lift::route_sum(prm, p, x);
                    if (a != lift::route_factored(prm, p, x) || a != poly::eval_poly(g, x))
                        return "disagreement at n=" + to_string(n) + " k=" + to_string(k) + " p=" + p.get_str();
                }
            }
        }
        return std::string();
    }});
    c.push_back({"ikeda", "positivity at both Deligne extremes, p <= 1000", [] {
        for (auto [n, k] : desk_params()) {
            const auto prm = lift::IkedaParams::create(n, k);
            for (const auto& p : lift::primes_up_to(1000)) {
                const Integer ext = prm.deligne_extreme(p);
                if (lift::route_factored(prm, p, -ext) <= 0 || lift::route_factored(prm, p, ext) <= 0)
                    return "non-positive at n=" + to_string(n) + " k=" + to_string(k) + " p=" + p.get_str();
            }
        }
        return std::string();
    }});
    c.push_back({"ikeda", "bounds and positivity with genuine a_f(p), p <= 1000", [] {
        for (auto [n, k] : desk_params()) {
            const auto prm = lift::IkedaParams::create(n, k);
            const auto f = modforms::eigenform(prm.eigenform_weight(), 1000);
            for (const auto& o : lift::sweep(prm, f, 1000))
                if (!o.ok())
                    return "failure at n=" + to_string(n) + " k=" + to_string(k) + " p=" + o.p.get_str() + " " + o.error;
        }
        return std::string();
    }});
    c.push_back({"ikeda", "n = 2 reduces to x + p^{k-1} + p^{k-2}", [] {
        for (long k = 8; k <= 20; k += 2) {
            const auto prm = lift::IkedaParams::create(2, k);
            for (const auto& p : lift::primes_up_to(100)) {
                const poly::IntPoly expect{num::ipow(p, static_cast<unsigned long>(k - 1)) +
                                               num::ipow(p, static_cast<unsigned long>(k - 2)),
                                           Integer(1)};
                if (!(lift::build_tilde_gp(prm, p) == expect)) return "mismatch at k=" + to_string(k) + " p=" + p.get_str();
            }
        }
        return std::string();
    }});
    c.push_back({"ikeda", "G_p palindromic; exponents non-negative integers (n <= 8, k <= 20)", [] {
        for (const auto& prm : valid_params(8, 20)) {
            (void)lift::term_exponents(prm);  // throws on a bad exponent
            const Rational ce = lift::constant_term_exponent(prm);
            if (!num::is_integer(ce) || ce < 0) return "constant exponent fails at n=" + to_string(prm.n());
            for (long p : {2L, 3L, 5L, 7L})
                if (!poly::is_palindromic(lift::build_G(prm, Integer(p))))
                    return "G_p not palindromic at n=" + to_string(prm.n()) + " k=" + to_string(prm.k());
        }
        return std::string();
    }});
    c.push_back({"ikeda", "G_p factorization n <= 6, p <= 50", [] {
        for (const auto& prm : valid_params(6, 20))
            for (const auto& p : lift::primes_up_to(50))
                if (!lift::factorization_check(prm, p))
                    return "fails at n=" + to_string(prm.n()) + " k=" + to_string(prm.k()) + " p=" + p.get_str();
        return std::string();
    }});
    return c;
}

inline std::vector<Check> all_checks()
{
    std::vector<Check> all;
    for (auto part : {exactnum_checks(), qseries_checks(), polyalg_checks(), modforms_checks(), ikeda_checks()})
        for (auto& ch : part) all.push_back(std::move(ch));
    return all;
}

/// Runs every check, printing one line each; returns the outcomes.
inline std::vector<Outcome> run_all(std::ostream& log)
{
    std::vector<Outcome> out;
    for (const auto& ch : all_checks()) {
        std::string failure;
        try {
            failure = ch.run();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        log << (failure.empty() ? "PASS " : "FAIL ") << ch.module << ": " << ch.name;
        if (!failure.empty()) log << " -- " << failure;
        log << '\n';
        out.push_back({ch.module, ch.name, std::move(failure)});
    }
    return out;
}

}  // namespace ikeda::selftest

#endif  // IKEDA_SELFTEST_HPP

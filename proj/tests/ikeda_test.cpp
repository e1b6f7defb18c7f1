#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <random>

#include "ikeda/ikeda.hpp"

namespace {

using ikeda::DomainError;
using ikeda::ValidationError;
using ikeda::num::Integer;
using ikeda::num::QuadExt;
using ikeda::num::Rational;
using ikeda::num::make_rational;
using ikeda::poly::IntPoly;
using namespace ikeda::lift;
using Dec = boost::multiprecision::cpp_dec_float_100;

IntPoly ip(std::initializer_list<const char*> c)
{
    std::vector<Integer> v;
    for (const char* x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

Dec to_dec(const Integer& z) { return Dec(z.get_str()); }
Dec to_dec(const Rational& r) { return to_dec(r.get_num()) / to_dec(r.get_den()); }
Dec to_dec(const QuadExt& x)
{
    return to_dec(x.rational_part()) + to_dec(x.surd_part()) * boost::multiprecision::sqrt(to_dec(x.radicand()));
}

// Gaussian binomial from prod (1 - p^{n-j}) / (1 - p^{j+1}).
Dec gaussian_dec(long n, long m, long p)
{
    Dec r = 1;
    for (long j = 0; j < m; ++j)
        r *= (1 - boost::multiprecision::pow(Dec(p), n - j)) / (1 - boost::multiprecision::pow(Dec(p), j + 1));
    return r;
}

/**
 * lambda through the Satake angle: with cos(theta) = a / (2 p^{(2k-n-1)/2}),
 * lambda = p^{E0} (binom(n,n/2)_p p^{-n^2/8} + sum_{i<n/2} 2 p^{i(i-n)/2} binom(n,i)_p cos((n/2-i) theta)).
 */
Dec satake_oracle(long n, long k, long p, const Integer& a)
{
    using boost::multiprecision::cos;
    using boost::multiprecision::acos;
    using boost::multiprecision::pow;
    const Dec P(p);
    const Dec e0 = Dec(n * k) / 2 - Dec(n * (n + 1)) / 4;
    const Dec theta = acos(to_dec(a) / (2 * pow(P, Dec(2 * k - n - 1) / 2)));
    Dec s = gaussian_dec(n, n / 2, p) * pow(P, -Dec(n * n) / 8);
    for (long i = 0; i < n / 2; ++i)
        s += 2 * pow(P, Dec(i * (i - n)) / 2) * gaussian_dec(n, i, p) * cos(Dec(n / 2 - i) * theta);
    return pow(P, e0) * s;
}

TEST(IkedaParams, Validation)
{
    EXPECT_NO_THROW(IkedaParams::create(4, 8));
    EXPECT_THROW(IkedaParams::create(2, 9), DomainError);   // k odd
    EXPECT_THROW(IkedaParams::create(4, 4), DomainError);   // k <= n + 1
    EXPECT_THROW(IkedaParams::create(3, 10), DomainError);  // n odd
    EXPECT_THROW(IkedaParams::create(0, 10), DomainError);
    EXPECT_THROW(IkedaParams::create(2, 6), DomainError);   // weight 10 has no cusp forms
    const auto prm = IkedaParams::create(2, 10);
    EXPECT_EQ(prm.eigenform_weight(), 18);
    EXPECT_EQ(prm.base_exponent(), make_rational(Integer(17), Integer(2)));
    EXPECT_EQ(IkedaParams::create(4, 8).base_exponent(), Rational(11));
}

TEST(TermExponents, SaitoKurokawaCase)
{
    const auto prm = IkedaParams::create(2, 10);
    const auto t = term_exponents(prm);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].c, make_rational(Integer(-17), Integer(2)));
    EXPECT_EQ(t[0].total, Rational(0));
    EXPECT_EQ(constant_term_exponent(prm), Rational(8));
}

TEST(TermExponents, NonNegativeIntegersAcrossSweep)
{
    for (long n = 2; n <= 8; n += 2)
        for (long k = n + 2; k <= 20; k += 2) {
            if (2 * k - n < 12) continue;
            const auto prm = IkedaParams::create(n, k);
            for (const auto& t : term_exponents(prm)) {
                EXPECT_TRUE(ikeda::num::is_integer(t.total));
                EXPECT_GE(t.total, 0);
            }
            const Rational ce = constant_term_exponent(prm);
            EXPECT_TRUE(ikeda::num::is_integer(ce) && ce >= 0) << n << " " << k;
        }
}

TEST(DicksonCoefficient, SignedIntegers)
{
    EXPECT_EQ(dickson_coefficient(1, 0), 1);
    EXPECT_EQ(dickson_coefficient(2, 1), -2);
    EXPECT_EQ(dickson_coefficient(3, 1), -3);
    EXPECT_EQ(dickson_coefficient(4, 1), -4);
    EXPECT_EQ(dickson_coefficient(4, 2), 2);
    EXPECT_EQ(dickson_coefficient(6, 3), -2);
}

TEST(RouteSum, Examples)
{
    const auto sk = IkedaParams::create(2, 10);
    EXPECT_EQ(route_sum(sk, Integer(2), Integer(0)), 256 + 512);
    EXPECT_EQ(route_sum(sk, Integer(2), Integer(-528)), 240);
    const auto prm = IkedaParams::create(4, 8);
    EXPECT_EQ(route_sum(prm, Integer(2), Integer(-24)), 8640);
    EXPECT_EQ(route_sum(prm, Integer(2), Integer(0)), 13824);
    EXPECT_THROW(route_sum(prm, Integer(4), Integer(0)), DomainError);
}

TEST(RouteFactored, Examples)
{
    EXPECT_EQ(route_factored(IkedaParams::create(2, 10), Integer(2), Integer(-528)), 240);
    EXPECT_EQ(route_factored(IkedaParams::create(4, 8), Integer(2), Integer(-24)), 120 * 72);
    for (long k : {10L, 12L, 14L})
        for (long p : {2L, 3L, 97L}) {
            const Integer pp(p);
            EXPECT_EQ(route_factored(IkedaParams::create(2, k), pp, Integer(5)),
                      5 + ikeda::num::ipow(pp, static_cast<unsigned long>(k - 1)) +
                          ikeda::num::ipow(pp, static_cast<unsigned long>(k - 2)));
        }
}

TEST(BuildG, Examples)
{
    const auto g = build_G(IkedaParams::create(2, 10), Integer(2));
    ASSERT_EQ(g.degree(), 2);
    EXPECT_EQ(g[0], QuadExt(Rational(0), Rational(256), Integer(2)));
    EXPECT_EQ(g[1], QuadExt::rational(Rational(768), Integer(2)));  // 2^{17/2} 2^{-1/2} (1 + 2)
    EXPECT_EQ(g[2], g[0]);

    const auto g4 = build_G(IkedaParams::create(4, 8), Integer(2));
    ASSERT_EQ(g4.degree(), 4);
    EXPECT_EQ(g4[2], QuadExt::rational(Rational(17920), Integer(2)));
    for (std::size_t i = 0; i <= 4; ++i) EXPECT_EQ(g4[i], g4[4 - i]);
}

TEST(BuildTildeGp, FrozenOracleValues)
{
    // expanded independently with sympy
    EXPECT_EQ(build_tilde_gp(IkedaParams::create(4, 8), Integer(2)), ip({"13824", "240", "1"}));
    EXPECT_EQ(build_tilde_gp(IkedaParams::create(4, 10), Integer(5)), ip({"922851562500", "2437500", "1"}));
    EXPECT_EQ(build_tilde_gp(IkedaParams::create(6, 14), Integer(3)),
              ip({"208392328069724736", "1390581275184", "2388204", "1"}));
}

TEST(BuildTildeGp, SaitoKurokawaReduction)
{
    for (long k = 8; k <= 20; k += 2)
        for (long p : {2L, 3L, 5L, 101L}) {
            const Integer pp(p);
            const IntPoly expect{ikeda::num::ipow(pp, static_cast<unsigned long>(k - 1)) +
                                     ikeda::num::ipow(pp, static_cast<unsigned long>(k - 2)),
                                 Integer(1)};
            EXPECT_EQ(build_tilde_gp(IkedaParams::create(2, k), pp), expect);
        }
}

TEST(BuildTildeGp, MonicOfHalfDegree)
{
    for (long n = 2; n <= 8; n += 2)
        for (long k = n + 2; k <= 20; k += 2) {
            if (2 * k - n < 12) continue;
            const auto g = build_tilde_gp(IkedaParams::create(n, k), Integer(7));
            EXPECT_EQ(g.degree(), n / 2);
            EXPECT_TRUE(g.is_monic());
        }
}

TEST(RouteReciprocal, Examples)
{
    EXPECT_EQ(route_reciprocal(IkedaParams::create(2, 10), Integer(2), Integer(-528)), 240);
    EXPECT_EQ(route_reciprocal(IkedaParams::create(4, 8), Integer(2), Integer(-24)), 8640);
    EXPECT_EQ(route_reciprocal(IkedaParams::create(4, 8), Integer(2), Integer(0)), 13824);
}

TEST(FactorizationCheck, Examples)
{
    EXPECT_TRUE(factorization_check(IkedaParams::create(2, 10), Integer(3)));
    EXPECT_TRUE(factorization_check(IkedaParams::create(4, 8), Integer(2)));
    EXPECT_TRUE(factorization_check(IkedaParams::create(6, 14), Integer(2)));
    EXPECT_TRUE(factorization_check(IkedaParams::create(8, 20), Integer(5)));
}

TEST(Bounds, SaitoKurokawaExact)
{
    const auto b = bounds(IkedaParams::create(2, 10), Integer(2));
    EXPECT_EQ(b.lower, QuadExt(Rational(768), Rational(-512), Integer(2)));
    EXPECT_EQ(b.upper, QuadExt(Rational(768), Rational(512), Integer(2)));
}

TEST(Bounds, MatchDecimalEvaluation)
{
    using boost::multiprecision::pow;
    for (auto [n, k] : {std::pair{4L, 8L}, std::pair{6L, 14L}, std::pair{2L, 12L}})
        for (long p : {2L, 3L, 11L}) {
            const auto b = bounds(IkedaParams::create(n, k), Integer(p));
            const Dec P(p);
            Dec lo = pow(P, Dec(n * k) / 2 - Dec(n * (n + 1)) / 4 + Dec(n * n) / 8), hi = lo;
            for (long i = 1; i <= n / 2; ++i) {
                const Dec t = pow(P, -(Dec(i) - Dec(1) / 2));
                lo *= (1 - t) * (1 - t);
                hi *= (1 + t) * (1 + t);
            }
            EXPECT_LT(abs(to_dec(b.lower) - lo) / lo, Dec("1e-80"));
            EXPECT_LT(abs(to_dec(b.upper) - hi) / hi, Dec("1e-80"));
        }
    const auto b = bounds(IkedaParams::create(4, 8), Integer(2));
    EXPECT_EQ(b.lower.to_decimal(6), "293.68");
    EXPECT_EQ(b.upper.to_decimal(8), "43738.32");
}

TEST(Routes, AgreeWithSatakeOracle)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(17);
    for (auto [n, k] : {std::pair{2L, 10L}, std::pair{4L, 8L}, std::pair{4L, 12L}, std::pair{6L, 16L}})
        for (long p : {2L, 3L, 5L, 13L}) {
            const auto prm = IkedaParams::create(n, k);
            const Integer ext = prm.deligne_extreme(Integer(p));
            for (int s = 0; s < 5; ++s) {
                const Integer a = rng.get_z_range(2 * ext + 1) - ext;
                const Integer lam = route_factored(prm, Integer(p), a);
                EXPECT_LT(abs(satake_oracle(n, k, p, a) - to_dec(lam)), Dec("0.001"))
                    << "n=" << n << " k=" << k << " p=" << p << " a=" << a;
            }
        }
}

TEST(Routes, AgreeOnRandomAdmissibleInputs)
{
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(3);
    for (long n = 2; n <= 8; n += 2)
        for (long k = n + 2; k <= 20; k += 2) {
            if (2 * k - n < 12) continue;
            const auto prm = IkedaParams::create(n, k);
            for (long p : {2L, 7L, 31L}) {
                const Integer ext = prm.deligne_extreme(Integer(p));
                for (int s = 0; s < 10; ++s) {
                    const Integer a = rng.get_z_range(2 * ext + 1) - ext;
                    const Integer f = route_factored(prm, Integer(p), a);
                    ASSERT_EQ(route_sum(prm, Integer(p), a), f);
                    ASSERT_EQ(route_reciprocal(prm, Integer(p), a), f);
                }
            }
        }
}

TEST(Positivity, EveryIntegerInSmallDeligneIntervals)
{
    for (auto [n, k] : {std::pair{4L, 8L}, std::pair{2L, 10L}})
        for (long p : {2L, 3L}) {
            const auto prm = IkedaParams::create(n, k);
            const Integer ext = prm.deligne_extreme(Integer(p));
            for (Integer a = -ext; a <= ext; ++a) ASSERT_GT(route_factored(prm, Integer(p), a), 0) << a;
        }
}

TEST(VerifyPrime, Examples)
{
    const auto sk = verify_prime(IkedaParams::create(2, 10), Integer(2), Integer(-528));
    EXPECT_EQ(sk.lambda, 240);
    EXPECT_TRUE(sk.positive && sk.within_bounds && sk.routes_agree);

    const auto r = verify_prime(IkedaParams::create(4, 8), Integer(2), Integer(-24));
    EXPECT_EQ(r.lambda, 8640);
    EXPECT_TRUE(r.ok());

    // 724^2 = 524176 <= 4 * 2^17 = 524288 < 725^2
    const auto edge = verify_prime(IkedaParams::create(2, 10), Integer(2), Integer(724));
    EXPECT_EQ(edge.lambda, 724 + 768);
    EXPECT_TRUE(edge.positive && edge.within_bounds);
    EXPECT_TRUE(verify_prime(IkedaParams::create(2, 10), Integer(2), Integer(-724)).ok());
    EXPECT_THROW(verify_prime(IkedaParams::create(2, 10), Integer(2), Integer(725)), ValidationError);
    EXPECT_THROW(verify_prime(IkedaParams::create(2, 10), Integer(2), Integer(-725)), ValidationError);
}

TEST(Sweep, DeterministicAcrossWorkerCounts)
{
    const auto prm = IkedaParams::create(4, 12);
    const auto f = ikeda::modforms::eigenform(prm.eigenform_weight(), 200);
    const auto one = sweep(prm, f, 200, 1);
    const auto many = sweep(prm, f, 200, 7);
    ASSERT_EQ(one.size(), 46u);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        ASSERT_EQ(one[i].p, many[i].p);
        ASSERT_TRUE(one[i].ok() && many[i].ok());
        ASSERT_EQ(one[i].report->lambda, many[i].report->lambda);
        if (i) ASSERT_LT(one[i - 1].p, one[i].p);
    }
}

TEST(Sweep, WeightMismatchAndTruncation)
{
    const auto prm = IkedaParams::create(4, 8);
    EXPECT_THROW(sweep(prm, ikeda::modforms::eigenform(16, 20), 20), DomainError);
    const auto short_form = ikeda::modforms::eigenform(12, 10);
    const auto out = sweep(prm, short_form, 13);
    EXPECT_FALSE(out.back().ok());
    EXPECT_FALSE(out.back().error.empty());
}

}  // namespace

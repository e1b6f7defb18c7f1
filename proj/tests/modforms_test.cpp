#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ikeda/modforms.hpp"

namespace {

using ikeda::DomainError;
using ikeda::ValidationError;
using ikeda::num::Integer;
using ikeda::num::Rational;
using ikeda::num::make_rational;
using namespace ikeda::modforms;

// q prod_{m=1}^{N} (1 - q^m)^24 by multiplying in each factor 24 times.
std::vector<Integer> delta_by_factors(std::size_t n)
{
    std::vector<Integer> s(n, Integer(0));
    s[0] = 1;
    for (std::size_t m = 1; m < n; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (std::size_t i = n - 1; i >= m; --i) s[i] -= s[i - m];
    std::vector<Integer> out(n + 1, Integer(0));
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = s[i];
    return out;
}

std::vector<long> head(const FourierSeries& f, std::size_t upto)
{
    std::vector<long> v;
    for (std::size_t m = 0; m <= upto; ++m) v.push_back(f[m].get_si());
    return v;
}

TEST(Bernoulli, Examples)
{
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), make_rational(Integer(-1), Integer(2)));
    EXPECT_EQ(bernoulli(2), make_rational(Integer(1), Integer(6)));
    EXPECT_EQ(bernoulli(4), make_rational(Integer(-1), Integer(30)));
    EXPECT_EQ(bernoulli(12), make_rational(Integer(-691), Integer(2730)));
    EXPECT_EQ(bernoulli(7), Rational(0));
}

TEST(Eisenstein, WeightFourAndSix)
{
    const auto e4 = eisenstein(4, 5);
    EXPECT_EQ(head(e4, 3), (std::vector<long>{1, 240, 2160, 6720}));
    EXPECT_EQ(head(eisenstein(6, 3), 3), (std::vector<long>{1, -504, -16632, -122976}));
    EXPECT_THROW(eisenstein(3, 5), DomainError);
    EXPECT_THROW(eisenstein(2, 5), DomainError);
}

TEST(Delta, SpotValues)
{
    const auto d = delta(12);
    EXPECT_EQ(head(d, 12), (std::vector<long>{0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
                                              534612, -370944}));
}

TEST(Delta, MatchesFactorProductOracle)
{
    const auto d = delta(300);
    const auto oracle = delta_by_factors(300);
    for (std::size_t m = 0; m <= 300; ++m) ASSERT_EQ(d[m], oracle[m]) << m;
}

TEST(Delta, DualConstructionHoldsToThousand)
{
    EXPECT_NO_THROW(delta(1000));
}

TEST(Eigenform, ProductsOfDeltaAndEisenstein)
{
    EXPECT_EQ(head(eigenform(16, 7), 7), (std::vector<long>{0, 1, 216, -3348, 13888, 52110, -723168, 2822456}));
    EXPECT_EQ(head(eigenform(18, 7), 7), (std::vector<long>{0, 1, -528, -4284, 147712, -1025850, 2261952, 3225992}));
    EXPECT_EQ(head(eigenform(20, 7), 7), (std::vector<long>{0, 1, 456, 50652, -316352, -2377410, 23097312, -16917544}));
    EXPECT_EQ(head(eigenform(22, 7), 7),
              (std::vector<long>{0, 1, -288, -128844, -2014208, 21640950, 37107072, -768078808}));
    EXPECT_EQ(head(eigenform(26, 7), 7),
              (std::vector<long>{0, 1, -48, -195804, -33552128, -741989850, 9398592, 39080597192}));
    EXPECT_EQ(eigenform(12, 2)[2], -24);
}

TEST(Eigenform, UnsupportedWeight)
{
    EXPECT_THROW(eigenform(14, 10), DomainError);
    EXPECT_THROW(eigenform(24, 10), DomainError);
    EXPECT_FALSE(has_builtin_eigenform(24));
}

class BuiltinWeights : public ::testing::TestWithParam<int> {};

TEST_P(BuiltinWeights, HeckeStructureToFiveHundred)
{
    const int w = GetParam();
    const auto f = eigenform(w, 500);
    EXPECT_FALSE(find_violation(f).has_value());
    EXPECT_EQ(f[0], 0);
    EXPECT_EQ(f[1], 1);
    const auto spf = smallest_prime_factors(500);
    for (std::size_t m = 2; m <= 500; ++m)
        for (std::size_t n = 2; m * n <= 500; ++n)
            if (std::gcd(m, n) == 1) ASSERT_EQ(f[m * n], f[m] * f[n]) << m << "*" << n;
    for (std::size_t p = 2; p <= 500; ++p) {
        if (spf[p] != p) continue;
        const Integer pp(static_cast<unsigned long>(p));
        ASSERT_LE(f[p] * f[p], 4 * ikeda::num::ipow(pp, static_cast<unsigned long>(w - 1))) << p;
        const Integer c = ikeda::num::ipow(pp, static_cast<unsigned long>(w - 1));
        for (std::size_t q = p; q * p <= 500; q *= p) {
            ASSERT_EQ(f[q * p], f[p] * f[q] - c * f[q / p]) << "p^r = " << q * p;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(AllWeights, BuiltinWeights, ::testing::Values(12, 16, 18, 20, 22, 26));

TEST(HeckeEigenvaluePrime, Examples)
{
    const auto d = delta(20);
    EXPECT_EQ(hecke_eigenvalue_prime(d, Integer(2)), -24);
    EXPECT_EQ(hecke_eigenvalue_prime(eigenform(18, 5), Integer(2)), -528);
    EXPECT_TRUE(satisfies_deligne(Integer(-24), Integer(2), 12));  // 576 <= 8192
    EXPECT_THROW(hecke_eigenvalue_prime(d, Integer(23)), DomainError);
    EXPECT_THROW(hecke_eigenvalue_prime(d, Integer(4)), DomainError);
}

TEST(HeckeEigenvaluePrime, DeligneViolationIsReported)
{
    const FourierSeries bad(12, {0, 1, 100});
    try {
        hecke_eigenvalue_prime(bad, Integer(2));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

std::size_t rejected_at(const std::string& text, int weight)
{
    std::istringstream in(text);
    try {
        parse_eigenform(in, weight);
    } catch (const ValidationError& e) {
        return e.index();
    }
    return 0;
}

TEST(LoadEigenform, AcceptsDeltaTable)
{
    std::istringstream in("# tau\n1 1\n2 -24\n3 252\n4 -1472\n");
    const auto f = parse_eigenform(in, 12);
    EXPECT_EQ(f.truncation(), 4u);
    EXPECT_EQ(f[4], -1472);
}

TEST(LoadEigenform, RejectsBadTables)
{
    EXPECT_EQ(rejected_at("1 2\n2 -24\n", 12), 1u);                                          // normalization
    EXPECT_EQ(rejected_at("1 1\n2 -24\n3 252\n4 -1472\n5 4830\n6 6048\n", 12), 6u);         // multiplicativity
    EXPECT_EQ(rejected_at("1 1\n2 -24\n3 252\n4 -1471\n", 12), 4u);                           // Hecke at p^2
    EXPECT_EQ(rejected_at("1 1\n2 91\n", 12), 2u);                                            // 91^2 > 8192
    EXPECT_EQ(rejected_at("1 1\n2 -24\n5 4830\n", 12), 3u);                                   // gap below a prime
    EXPECT_EQ(rejected_at("1 1\n3 252\n2 -24\n", 12), 2u);                                    // order
    EXPECT_EQ(rejected_at("2 -24\n", 12), 1u);                                                // must start at 1
    EXPECT_EQ(rejected_at("1 1\n2 x\n", 12), 2u);                                             // parse
    EXPECT_EQ(rejected_at("1 1 1\n", 12), 1u);
    EXPECT_EQ(rejected_at("# nothing\n", 12), 1u);
}

TEST(LoadEigenform, GapAfterLastPrimeTruncates)
{
    // 8 and 9 are above the largest listed prime 7; the gap at 9 ends the series.
    std::istringstream in("1 1\n2 -24\n3 252\n4 -1472\n5 4830\n6 -6048\n7 -16744\n8 84480\n10 -115920\n");
    const auto f = parse_eigenform(in, 12);
    EXPECT_EQ(f.truncation(), 8u);
}

TEST(LoadEigenform, ReadsFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "ikeda_delta_table.txt";
    {
        std::ofstream out(path);
        const auto d = delta(30);
        for (std::size_t m = 1; m <= 30; ++m) out << m << "  " << d[m].get_str() << "\n";
    }
    const auto f = load_eigenform(path.string(), 12);
    EXPECT_EQ(f.truncation(), 30u);
    EXPECT_EQ(f[29], delta(30)[29]);
    std::filesystem::remove(path);
    EXPECT_THROW(load_eigenform(path.string(), 12), DomainError);
}

}  // namespace

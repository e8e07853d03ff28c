#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kts/basis.hpp"
#include "oracles.hpp"

using namespace kts;

namespace {

double uni(Basis b, std::vector<double> c, double t) { return eval(UniPoly<double>(b, std::move(c)), t); }

Vec2 random_point(std::mt19937_64& rng, Basis b)
{
    const Domain d = canonical_domain(b);
    std::uniform_real_distribution<double> u(d.lo, d.hi);
    return {u(rng), u(rng)};
}

} // namespace

TEST(BasisId, CanonicalDomains)
{
    EXPECT_EQ(canonical_domain(Basis::power).lo, -1.0);
    EXPECT_EQ(canonical_domain(Basis::power).hi, 1.0);
    EXPECT_EQ(canonical_domain(Basis::bernstein).lo, 0.0);
    EXPECT_EQ(canonical_domain(Basis::bernstein).hi, 1.0);
    EXPECT_EQ(canonical_domain(Basis::chebyshev).lo, -1.0);
    EXPECT_EQ(canonical_domain(Basis::chebyshev).hi, 1.0);
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) EXPECT_EQ(parse_basis(to_string(b)), b);
    EXPECT_FALSE(parse_basis("legendre"));
}

TEST(Polynomials, RejectBadShapes)
{
    EXPECT_THROW(UniPoly<double>(Basis::power, {}), Error);
    EXPECT_THROW(BivariateSystem(Basis::power, 1, 1, std::vector<Vec2>(3)), Error);
    EXPECT_THROW(BivariateSystem(Basis::power, -1, 0, {}), Error);
}

TEST(EvalUni, Examples)
{
    EXPECT_DOUBLE_EQ(uni(Basis::chebyshev, {0, 0, 1}, 1.0), 1.0);
    EXPECT_NEAR(uni(Basis::chebyshev, {0, 0, 1}, 0.5), -0.5, 1e-15);
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.99, 1.0}) EXPECT_NEAR(uni(Basis::bernstein, {1, 1, 1}, t), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(uni(Basis::power, {1, 2, 3}, 2.0), 17.0);
}

TEST(EvalUni, MatchesClosedFormIncludingOutsideDomain)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(-2.0, 2.0);
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) {
        for (int k = 0; k < 200; ++k) {
            const auto c = oracle::random_coeffs(rng, k % 9);
            const double x = t(rng);
            const double expect = oracle::eval_uni(b, c, x);
            EXPECT_NEAR(uni(b, c, x), expect, 1e-11 * (1.0 + std::abs(expect)) * std::pow(3.0, c.size()));
        }
    }
}

TEST(EvalBi, Examples)
{
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) {
        BivariateSystem f(b, 0, 0, {{3, -1}});
        EXPECT_EQ(eval(f, 0.3, 0.8), (Vec2{3, -1}));
    }
    auto p = BivariateSystem::zero(Basis::power, 1, 1);
    p(1, 0) = {1, 0};
    p(0, 1) = {0, 1};
    EXPECT_EQ(eval(p, 0.25, 0.75), (Vec2{0.25, 0.75}));
    auto c = BivariateSystem::zero(Basis::chebyshev, 1, 1);
    c(1, 1) = {1, 1};
    const Vec2 v = eval(c, 0.5, 0.5);
    EXPECT_NEAR(v.x, 0.25, 1e-15);
    EXPECT_NEAR(v.y, 0.25, 1e-15);
}

TEST(EvalBi, MatchesClosedForm)
{
    std::mt19937_64 rng(12);
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) {
        for (int k = 0; k < 100; ++k) {
            const auto f = oracle::random_system(rng, b, 5, 5);
            const Vec2 x = random_point(rng, b);
            EXPECT_LE(inf_norm(eval(f, x) - oracle::eval_bi(f, x.x, x.y)), 1e-11 * (1.0 + oracle::coeff_scale(f)));
        }
    }
}

TEST(Derivative, Examples)
{
    EXPECT_EQ(derivative(UniPoly<double>(Basis::power, {1, 2, 3})).coeffs(), (std::vector<double>{2, 6}));
    const auto dc = derivative(UniPoly<double>(Basis::chebyshev, {0, 0, 1}));
    ASSERT_EQ(dc.degree(), 1);
    EXPECT_NEAR(dc[0], 0.0, 1e-15);
    EXPECT_NEAR(dc[1], 4.0, 1e-15);
    const auto db = derivative(UniPoly<double>(Basis::bernstein, {0, 0, 1}));
    EXPECT_EQ(db.coeffs(), (std::vector<double>{0, 2}));
    // finite-difference cross-check of the last two
    for (double t : {0.2, 0.7}) {
        const double h = 1e-6;
        EXPECT_NEAR(eval(dc, t), (uni(Basis::chebyshev, {0, 0, 1}, t + h) - uni(Basis::chebyshev, {0, 0, 1}, t - h)) / (2 * h), 1e-8);
        EXPECT_NEAR(eval(db, t), (uni(Basis::bernstein, {0, 0, 1}, t + h) - uni(Basis::bernstein, {0, 0, 1}, t - h)) / (2 * h), 1e-8);
    }
}

TEST(Derivative, DegreeZeroGivesZero)
{
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) {
        BivariateSystem f(b, 0, 2, {{1, 2}, {3, 4}, {5, 6}});
        const auto du = derivative(f, Axis::u);
        EXPECT_EQ(du.m(), 0);
        for (const auto& c : du.coeffs()) EXPECT_EQ(c, (Vec2{0, 0}));
    }
}

TEST(Derivative, AgreesWithFiniteDifferences)
{
    std::mt19937_64 rng(13);
    const double h = 1e-6;
    for (Basis b : {Basis::power, Basis::bernstein, Basis::chebyshev}) {
        for (int k = 0; k < 60; ++k) {
            const auto f = oracle::random_system(rng, b, 6, 6);
            const auto fu = derivative(f, Axis::u);
            const auto fv = derivative(f, Axis::v);
            const Vec2 x = random_point(rng, b);
            const Vec2 du = (oracle::eval_bi(f, x.x + h, x.y) - oracle::eval_bi(f, x.x - h, x.y)) / (2 * h);
            const Vec2 dv = (oracle::eval_bi(f, x.x, x.y + h) - oracle::eval_bi(f, x.x, x.y - h)) / (2 * h);
            const double scale = 1.0 + std::max(inf_norm(du), inf_norm(dv));
            EXPECT_LE(inf_norm(eval(fu, x) - du), 1e-5 * scale);
            EXPECT_LE(inf_norm(eval(fv, x) - dv), 1e-5 * scale);
        }
    }
}

TEST(MonomialToChebyshev, Examples)
{
    EXPECT_EQ(monomial_to_chebyshev(0), (std::vector<double>{1}));
    const auto d2 = monomial_to_chebyshev(2);
    ASSERT_EQ(d2.size(), 3u);
    EXPECT_NEAR(d2[0], 0.5, 1e-15);
    EXPECT_NEAR(d2[1], 0.0, 1e-15);
    EXPECT_NEAR(d2[2], 0.5, 1e-15);
    const auto d3 = monomial_to_chebyshev(3);
    ASSERT_EQ(d3.size(), 4u);
    EXPECT_NEAR(d3[0], 0.0, 1e-15);
    EXPECT_NEAR(d3[1], 0.75, 1e-15);
    EXPECT_NEAR(d3[2], 0.0, 1e-15);
    EXPECT_NEAR(d3[3], 0.25, 1e-15);
}

TEST(MonomialToChebyshev, RowsNonnegativeSumToOneAndExpandPowers)
{
    for (int k = 0; k <= 20; ++k) {
        const auto d = monomial_to_chebyshev(k);
        ASSERT_EQ(static_cast<int>(d.size()), k + 1);
        double sum = 0.0;
        for (double e : d) {
            EXPECT_GE(e, -1e-15);
            sum += e;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        for (double t : {-0.9, -0.3, 0.4, 0.8}) EXPECT_NEAR(oracle::eval_uni(Basis::chebyshev, d, t), std::pow(t, k), 1e-12);
    }
}

TEST(Convert, Examples)
{
    const auto c = convert(UniPoly<double>(Basis::power, {-1, 0, 2}), Basis::chebyshev);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(c[i], (i == 2 ? 1.0 : 0.0), 1e-15);
    const auto p = convert(UniPoly<double>(Basis::chebyshev, {0, 0, 1}), Basis::power);
    EXPECT_NEAR(p[0], -1.0, 1e-15);
    EXPECT_NEAR(p[1], 0.0, 1e-15);
    EXPECT_NEAR(p[2], 2.0, 1e-15);

    std::mt19937_64 rng(14);
    for (int k = 0; k < 50; ++k) {
        UniPoly<double> a(Basis::power, oracle::random_coeffs(rng, 6));
        const auto back = convert(convert(a, Basis::chebyshev), Basis::power);
        for (int i = 0; i <= 6; ++i) EXPECT_NEAR(back[i], a[i], 1e-10);
    }
}

TEST(Convert, PreservesValuesCanonicalFrame)
{
    std::mt19937_64 rng(15);
    const std::array<Basis, 3> bases{Basis::power, Basis::bernstein, Basis::chebyshev};
    for (Basis from : bases) {
        for (Basis to : bases) {
            if (from == to) continue;
            const auto f = oracle::random_system(rng, from, 6, 6);
            const auto g = convert(f, to);
            EXPECT_EQ(g.basis(), to);
            EXPECT_EQ(g.m(), f.m());
            EXPECT_EQ(g.n(), f.n());
            const double scale = oracle::coeff_scale(f);
            for (int k = 0; k < 100; ++k) {
                const Vec2 x = random_point(rng, from);
                const Vec2 y{map_between_domains(x.x, from, to), map_between_domains(x.y, from, to)};
                EXPECT_LE(inf_norm(oracle::eval_bi(f, x.x, x.y) - oracle::eval_bi(g, y.x, y.y)), 1e-9 * scale)
                    << to_string(from) << " -> " << to_string(to);
            }
        }
    }
}

TEST(Convert, SharedVariableFrameKeepsThePointFixed)
{
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::array<Basis, 3> bases{Basis::power, Basis::bernstein, Basis::chebyshev};
    for (Basis from : bases) {
        for (Basis to : bases) {
            const auto f = oracle::random_system(rng, from, 5, 5);
            const auto g = convert(f, to, ConversionFrame::shared_variable);
            for (int k = 0; k < 50; ++k) {
                const double u = unit(rng), v = unit(rng);
                EXPECT_LE(inf_norm(oracle::eval_bi(f, u, v) - oracle::eval_bi(g, u, v)),
                          1e-9 * oracle::coeff_scale(f));
            }
        }
    }
}

TEST(Convert, BernsteinDegreeLimit)
{
    UniPoly<double> p(Basis::power, std::vector<double>(22, 1.0));
    EXPECT_THROW(convert(p, Basis::bernstein), DegreeLimitError);
    EXPECT_NO_THROW(convert(p, Basis::chebyshev));
    UniPoly<double> q(Basis::power, std::vector<double>(21, 1.0));
    EXPECT_NO_THROW(convert(q, Basis::bernstein));
}

TEST(BernsteinProduct, Examples)
{
    const auto r = bernstein_product(UniPoly<double>(Basis::bernstein, {1, 0}), UniPoly<double>(Basis::bernstein, {0, 1}));
    ASSERT_EQ(r.degree(), 2);
    EXPECT_NEAR(r[0], 0.0, 1e-15);
    EXPECT_NEAR(r[1], 0.5, 1e-15);
    EXPECT_NEAR(r[2], 0.0, 1e-15);

    UniPoly<double> q(Basis::bernstein, {0.3, -1.2, 2.0});
    const auto raised = bernstein_product(UniPoly<double>(Basis::bernstein, {1, 1}), q);
    EXPECT_EQ(raised.degree(), 3);
    for (double t = 0.0; t <= 1.0; t += 0.05) EXPECT_NEAR(eval(raised, t), eval(q, t), 1e-14);

    std::mt19937_64 rng(17);
    for (int k = 0; k < 20; ++k) {
        UniPoly<double> a(Basis::bernstein, oracle::random_coeffs(rng, 3));
        UniPoly<double> b(Basis::bernstein, oracle::random_coeffs(rng, 3));
        const auto ab = bernstein_product(a, b);
        for (int j = 0; j < 20; ++j) {
            const double t = j / 19.0;
            EXPECT_NEAR(oracle::eval_uni(Basis::bernstein, ab.coeffs(), t),
                        oracle::eval_uni(Basis::bernstein, a.coeffs(), t) * oracle::eval_uni(Basis::bernstein, b.coeffs(), t),
                        1e-12);
        }
    }
}

TEST(BernsteinProduct, CoefficientBound)
{
    std::mt19937_64 rng(18);
    std::uniform_int_distribution<int> deg(0, 8);
    for (int k = 0; k < 500; ++k) {
        UniPoly<double> a(Basis::bernstein, oracle::random_coeffs(rng, deg(rng)));
        UniPoly<double> b(Basis::bernstein, oracle::random_coeffs(rng, deg(rng)));
        const auto ab = bernstein_product(a, b);
        EXPECT_LE(max_coeff_norm(ab.coeffs()), max_coeff_norm(a.coeffs()) * max_coeff_norm(b.coeffs()) + 1e-12);
    }
}

TEST(BernsteinProduct, RejectsOtherBases)
{
    EXPECT_THROW(bernstein_product(UniPoly<double>(Basis::power, {1}), UniPoly<double>(Basis::bernstein, {1})), Error);
}

TEST(ChebyshevNodes, Examples)
{
    EXPECT_NEAR(chebyshev_nodes(1).at(0), 0.0, 1e-15);
    const auto n2 = chebyshev_nodes(2);
    EXPECT_NEAR(n2.at(0), std::sqrt(2.0) / 2, 1e-15);
    EXPECT_NEAR(n2.at(1), -std::sqrt(2.0) / 2, 1e-15);
    const auto n3 = chebyshev_nodes(3);
    EXPECT_NEAR(n3.at(0), std::sqrt(3.0) / 2, 1e-15);
    EXPECT_NEAR(n3.at(1), 0.0, 1e-15);
    EXPECT_NEAR(n3.at(2), -std::sqrt(3.0) / 2, 1e-15);
}

TEST(ChebyshevNodes, AreDescendingZerosOfTn)
{
    for (int n = 1; n <= 12; ++n) {
        const auto t = chebyshev_nodes(n);
        ASSERT_EQ(static_cast<int>(t.size()), n);
        for (int k = 0; k < n; ++k) {
            EXPECT_GT(t[k], -1.0);
            EXPECT_LT(t[k], 1.0);
            if (k > 0) EXPECT_LT(t[k], t[k - 1]);
            std::vector<double> tn(static_cast<std::size_t>(n) + 1, 0.0);
            tn[n] = 1.0;
            EXPECT_LE(std::abs(uni(Basis::chebyshev, tn, t[k])), 1e-12);
        }
    }
}

TEST(ChebyshevNodes, DiscreteOrthogonality)
{
    for (int n = 1; n <= 10; ++n) {
        const auto t = chebyshev_nodes(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (double x : t) s += oracle::chebyshev_t(i, x) * oracle::chebyshev_t(j, x);
                const double expect = i != j ? 0.0 : (i == 0 ? n : n / 2.0);
                EXPECT_NEAR(s, expect, 1e-10) << "n=" << n << " i=" << i << " j=" << j;
            }
        }
    }
}

TEST(BasisProperties, PartitionOfUnityAndChebyshevBound)
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double t = unit(rng);
        for (int n = 0; n <= 8; ++n) EXPECT_NEAR(uni(Basis::bernstein, std::vector<double>(n + 1, 1.0), t), 1.0, 1e-12);
        const double s = sym(rng);
        for (int j = 0; j <= 12; ++j) {
            std::vector<double> e(static_cast<std::size_t>(j) + 1, 0.0);
            e[j] = 1.0;
            EXPECT_LE(std::abs(uni(Basis::chebyshev, e, s)), 1.0 + 1e-12);
        }
    }
}

#ifndef KTS_EXPERIMENTS_HPP
#define KTS_EXPERIMENTS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kts/basis.hpp"
#include "kts/bounding.hpp"
#include "kts/solver.hpp"

namespace kts {

// ---------------------------------------------------------------------------
// Univariate test families

enum class FamilyTag { rand, sin, sin_l, sinw, sinw_l };

inline constexpr std::array<FamilyTag, 5> all_families{FamilyTag::rand, FamilyTag::sin, FamilyTag::sin_l,
                                                       FamilyTag::sinw, FamilyTag::sinw_l};

constexpr std::string_view to_string(FamilyTag t)
{
    switch (t) {
    case FamilyTag::rand: return "rand";
    case FamilyTag::sin: return "sin";
    case FamilyTag::sin_l: return "sin-L";
    case FamilyTag::sinw: return "sinw";
    case FamilyTag::sinw_l: return "sinw-L";
    }
    return "?";
}

inline std::optional<FamilyTag> parse_family(std::string_view s)
{
    for (auto t : all_families)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

constexpr bool least_squares(FamilyTag t) { return t == FamilyTag::sin_l || t == FamilyTag::sinw_l; }

struct ExperimentFamily {
    FamilyTag tag;
    int degree = 6;
    int count = 1;
    std::uint64_t rng_seed = 0;
};

/// One generated polynomial: its Chebyshev form on [-1,1] and the Bernstein
/// form of the same function carried onto [0,1].
struct FamilyMember {
    UniPoly<double> chebyshev;
    UniPoly<double> bernstein;
    std::vector<double> sample_x;
    std::vector<double> sample_y;
};

// Evenly spaced points over [-1, 1], endpoints included.
inline std::vector<double> even_points(int count)
{
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        x[j] = count == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(j) / (count - 1);
    }
    return x;
}

/// Chebyshev coefficients of the degree-`degree` polynomial through (x, y),
/// exact when there are degree+1 samples and least squares otherwise.
inline std::vector<double> chebyshev_fit(const std::vector<double>& x, const std::vector<double>& y, int degree)
{
    const auto rows = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(rows, degree + 1);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
        // T_i(x_j) by the three-term recurrence
        a(j, 0) = 1.0;
        if (degree >= 1) a(j, 1) = x[j];
        for (int i = 2; i <= degree; ++i) a(j, i) = 2.0 * x[j] * a(j, i - 1) - a(j, i - 2);
        rhs(j) = y[j];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(rhs);
    return {c.data(), c.data() + c.size()};
}

inline std::vector<FamilyMember> generate_family(const ExperimentFamily& fam)
{
    if (fam.count < 1) throw Error("family count must be >= 1");
    std::mt19937_64 rng(fam.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int samples = least_squares(fam.tag) ? 2 * fam.degree + 1 : fam.degree + 1;
    const auto x = even_points(samples);

    std::vector<FamilyMember> out;
    out.reserve(static_cast<std::size_t>(fam.count));
    for (int k = 0; k < fam.count; ++k) {
        std::vector<double> y(x.size());
        if (fam.tag == FamilyTag::rand) {
            for (auto& v : y) v = normal(rng);
        } else {
            const double a = normal(rng);
            const double b = normal(rng);
            const double freq = (fam.tag == FamilyTag::sinw || fam.tag == FamilyTag::sinw_l) ? 6.0 * a : a;
            for (std::size_t j = 0; j < x.size(); ++j) y[j] = std::sin(freq * x[j] + b);
        }
        UniPoly<double> cheb(Basis::chebyshev, chebyshev_fit(x, y, fam.degree));
        auto bern = convert(cheb, Basis::bernstein);
        out.push_back({std::move(cheb), std::move(bern), x, std::move(y)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounding-interval comparison

inline constexpr int range_grid_points = 2001;
inline constexpr double exact_endpoint_tolerance = 1e-9;

struct IntervalComparison {
    BoundInterval chebyshev;
    BoundInterval bernstein;
    BoundInterval range; // grid estimate of the true range
    int tighter = 0;     // -1 Bernstein, +1 Chebyshev, 0 tie
    bool bernstein_exact = false;
    bool chebyshev_exact = false;
};

inline BoundInterval grid_range(const UniPoly<double>& p, Domain d, int points = range_grid_points)
{
    BoundInterval r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int k = 0; k < points; ++k) {
        const double t = d.lo + d.width() * static_cast<double>(k) / (points - 1);
        const double v = eval(p, t);
        r.lo = std::min(r.lo, v);
        r.hi = std::max(r.hi, v);
    }
    return r;
}

inline IntervalComparison compare_intervals(const FamilyMember& m)
{
    IntervalComparison c;
    c.chebyshev = bounding_interval(m.chebyshev);
    c.bernstein = bounding_interval(m.bernstein);
    c.range = grid_range(m.chebyshev, canonical_domain(Basis::chebyshev));
    if (c.bernstein.length() < c.chebyshev.length()) {
        c.tighter = -1;
    } else if (c.chebyshev.length() < c.bernstein.length()) {
        c.tighter = 1;
    }
    auto exact = [&](const BoundInterval& b) {
        return std::abs(b.lo - c.range.lo) <= exact_endpoint_tolerance ||
               std::abs(b.hi - c.range.hi) <= exact_endpoint_tolerance;
    };
    c.bernstein_exact = exact(c.bernstein);
    c.chebyshev_exact = exact(c.chebyshev);
    return c;
}

struct IntervalTally {
    FamilyTag family;
    int count = 0;
    int bernstein_tighter = 0;
    int chebyshev_tighter = 0;
    int ties = 0;
    int bernstein_exact = 0;
    int chebyshev_exact = 0;
};

// Each family draws from its own stream derived from (seed, family index).
inline std::uint64_t family_seed(std::uint64_t seed, FamilyTag tag)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag)};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

inline std::vector<IntervalTally> interval_experiment(int count, std::uint64_t seed, int degree = 6)
{
    std::vector<IntervalTally> out;
    for (auto tag : all_families) {
        IntervalTally t{tag};
        for (const auto& m : generate_family({tag, degree, count, family_seed(seed, tag)})) {
            const auto c = compare_intervals(m);
            ++t.count;
            if (c.tighter < 0) ++t.bernstein_tighter;
            else if (c.tighter > 0) ++t.chebyshev_tighter;
            else ++t.ties;
            t.bernstein_exact += c.bernstein_exact ? 1 : 0;
            t.chebyshev_exact += c.chebyshev_exact ? 1 : 0;
        }
        out.push_back(t);
    }
    return out;
}

inline std::string tightness_csv(const std::vector<IntervalTally>& rows)
{
    std::string s = "family,bernstein_tighter,chebyshev_tighter,ties\n";
    for (const auto& r : rows) {
        s += std::string(to_string(r.family)) + "," + std::to_string(r.bernstein_tighter) + "," +
             std::to_string(r.chebyshev_tighter) + "," + std::to_string(r.ties) + "\n";
    }
    return s;
}

inline std::string exact_endpoint_csv(const std::vector<IntervalTally>& rows)
{
    std::string s = "family,bernstein_exact,chebyshev_exact\n";
    for (const auto& r : rows) {
        s += std::string(to_string(r.family)) + "," + std::to_string(r.bernstein_exact) + "," +
             std::to_string(r.chebyshev_exact) + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Basis comparison on bivariate systems

inline constexpr std::array<Basis, 3> all_bases{Basis::power, Basis::bernstein, Basis::chebyshev};

/// Random system with standard-normal Chebyshev coefficients; degrees drawn
/// uniformly from [min_degree, max_degree].
inline BivariateSystem random_chebyshev_system(std::uint64_t seed, int min_degree, int max_degree)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(min_degree, max_degree);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int m = deg(rng);
    const int n = deg(rng);
    std::vector<Vec2> c(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1));
    for (auto& v : c) {
        v.x = normal(rng);
        v.y = normal(rng);
    }
    return BivariateSystem(Basis::chebyshev, m, n, std::move(c));
}

struct BenchRow {
    std::uint64_t seed;
    int m;
    int n;
    std::optional<double> cond_estimate;
    std::array<SolveReport, 3> reports; // power, bernstein, chebyshev
};

/// Solves one system in all three bases. The conversions keep the variables
/// shared so every version searches the same map over [0,1]^2.
inline BenchRow bench_system(const BivariateSystem& chebyshev_system, std::uint64_t seed,
                             const SolverConfig& cfg = {})
{
    BenchRow row{seed, chebyshev_system.m(), chebyshev_system.n(), std::nullopt, {}};
    for (std::size_t k = 0; k < all_bases.size(); ++k) {
        const auto f = convert(chebyshev_system, all_bases[k], ConversionFrame::shared_variable);
        row.reports[k] = kts_solve(f, cfg);
    }
    const auto& cheb = row.reports[2];
    row.cond_estimate = condition_estimate(chebyshev_system, cheb.zeros, cfg);
    row.reports[2].cond_estimate = row.cond_estimate;
    return row;
}

inline std::vector<BenchRow> bench_bases(int count, int min_degree, int max_degree, std::uint64_t seed,
                                         const SolverConfig& cfg = {})
{
    if (count < 1 || min_degree < 0 || max_degree < min_degree) throw Error("invalid bench parameters");
    std::vector<BenchRow> rows;
    for (int k = 0; k < count; ++k) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        rows.push_back(bench_system(random_chebyshev_system(s, min_degree, max_degree), s, cfg));
    }
    return rows;
}

inline std::string format_double(double v, const char* spec = "%.17g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows)
{
    std::string s = "seed,m,n,cond_estimate,power_patches,power_width,bernstein_patches,bernstein_width,"
                    "chebyshev_patches,chebyshev_width\n";
    for (const auto& r : rows) {
        s += std::to_string(r.seed) + "," + std::to_string(r.m) + "," + std::to_string(r.n) + ",";
        s += r.cond_estimate ? format_double(*r.cond_estimate, "%.6e") : std::string("nan");
        for (const auto& rep : r.reports) {
            s += "," + std::to_string(rep.patches_examined) + "," + format_double(rep.smallest_width);
        }
        s += "\n";
    }
    return s;
}

} // namespace kts

#endif // KTS_EXPERIMENTS_HPP

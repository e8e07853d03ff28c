#ifndef KTS_BOUNDING_HPP
#define KTS_BOUNDING_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "kts/basis.hpp"
#include "kts/vec2.hpp"

namespace kts {

/// Convex hull of Bernstein control points, counterclockwise. Degenerate
/// hulls keep two vertices (segment) or one (point).
struct ControlHull {
    std::vector<Vec2> vertices;
};

/// center + sum_k s_k g_k with s_k in [-1, 1].
struct Zonotope {
    Vec2 center;
    std::vector<Vec2> generators;
};

struct BoundingPolytope {
    Basis basis;
    std::variant<ControlHull, Zonotope> shape;
};

struct BoundInterval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
    double magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }
};

inline constexpr double hull_dedup_tolerance = 1e-12;

/// Andrew's monotone chain. Points closer than 1e-12 (inf-norm) to an
/// already kept point are dropped, and collinear boundary points removed.
inline ControlHull convex_hull(std::vector<Vec2> pts)
{
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Vec2> uniq;
    for (const auto& p : pts) {
        const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const Vec2& q) {
            return inf_norm(p - q) <= hull_dedup_tolerance;
        });
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() <= 2) return {uniq};

    std::vector<Vec2> hull(2 * uniq.size());
    std::size_t k = 0;
    for (const auto& p : uniq) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = uniq.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], uniq[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = uniq[i];
    }
    hull.resize(k - 1);
    return {hull};
}

inline BoundingPolytope bounding_polytope(const BivariateSystem& f)
{
    if (f.basis() == Basis::bernstein) {
        return {f.basis(), convex_hull(f.coeffs())};
    }
    Zonotope z{f(0, 0), {}};
    for (std::size_t k = 1; k < f.coeffs().size(); ++k) {
        const Vec2& g = f.coeffs()[k];
        if (g.x != 0.0 || g.y != 0.0) z.generators.push_back(g);
    }
    return {f.basis(), std::move(z)};
}

namespace detail {

inline bool contains_origin(const ControlHull& h, double slack)
{
    const auto& v = h.vertices;
    if (v.empty()) return false;
    if (v.size() == 1) return inf_norm(v[0]) <= slack;
    if (v.size() == 2) {
        const Vec2 e = v[1] - v[0];
        const double len = std::sqrt(dot(e, e));
        const Vec2 o = -v[0];
        if (std::abs(cross(e, o)) > slack * len) return false;
        const double t = dot(o, e);
        return t >= -slack * len && t <= dot(e, e) + slack * len;
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Vec2& a = v[k];
        const Vec2& b = v[(k + 1) % v.size()];
        const Vec2 e = b - a;
        if (cross(e, -a) < -slack * std::sqrt(dot(e, e))) return false;
    }
    return true;
}

// A planar zonotope's facet normals are the generator perpendiculars, so the
// support criterion over those directions (plus the axes, which settle the
// all-parallel and generator-free cases) decides membership exactly.
inline bool contains_origin(const Zonotope& z, double slack)
{
    auto separated = [&](Vec2 dir) {
        const double len = std::sqrt(dot(dir, dir));
        if (len == 0.0) return false;
        dir /= len;
        double reach = 0.0;
        for (const auto& g : z.generators) reach += std::abs(dot(dir, g));
        return std::abs(dot(dir, z.center)) > reach + slack;
    };
    if (separated({1.0, 0.0}) || separated({0.0, 1.0})) return false;
    for (const auto& g : z.generators) {
        if (separated(perp(g))) return false;
    }
    return true;
}

} // namespace detail

/// Whether (0,0) lies in the polytope. `slack` widens the set by an absolute
/// distance; the default 0 is the exact test.
inline bool contains_origin(const BoundingPolytope& p, double slack = 0.0)
{
    return std::visit([&](const auto& s) { return detail::contains_origin(s, slack); }, p.shape);
}

/// Support function max_{x in P} <direction, x>.
inline double support(const BoundingPolytope& p, const Vec2& direction)
{
    if (direction.x == 0.0 && direction.y == 0.0) {
        throw Error("support direction must be nonzero");
    }
    if (const auto* h = std::get_if<ControlHull>(&p.shape)) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : h->vertices) best = std::max(best, dot(direction, v));
        return best;
    }
    const auto& z = std::get<Zonotope>(p.shape);
    double s = dot(direction, z.center);
    for (const auto& g : z.generators) s += std::abs(dot(direction, g));
    return s;
}

namespace detail {

inline BoundInterval bounding_interval(Basis basis, const std::vector<double>& c)
{
    if (basis == Basis::bernstein) {
        const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
        return {*lo, *hi};
    }
    double spread = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) spread += std::abs(c[i]);
    return {c[0] - spread, c[0] + spread};
}

} // namespace detail

/// Interval containing the range of p over its canonical domain.
inline BoundInterval bounding_interval(const UniPoly<double>& p)
{
    return detail::bounding_interval(p.basis(), p.coeffs());
}

/// Bivariate analogue; coefficient (0,0) plays the role of b_0.
inline BoundInterval bounding_interval(const BiPoly<double>& f)
{
    return detail::bounding_interval(f.basis(), f.coeffs());
}

// ---------------------------------------------------------------------------
// Tightness constants

/// sum_i prod_{j != i} max(n - j, j) / |i - j|
inline double xi_bernstein(int n)
{
    if (n < 0) throw Error("xi_bernstein needs n >= 0");
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        double prod = 1.0;
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            prod *= static_cast<double>(std::max(n - j, j)) / std::abs(i - j);
        }
        total += prod;
    }
    return total;
}

inline double theta(Basis basis, int m, int n)
{
    if (m < 0 || n < 0) throw Error("theta needs nonnegative degrees");
    const double mp1 = m + 1.0;
    const double np1 = n + 1.0;
    switch (basis) {
    case Basis::bernstein:
        return xi_bernstein(m) * xi_bernstein(n);
    case Basis::chebyshev:
        return 2.0 * mp1 * np1;
    case Basis::power:
        return mp1 * np1 * (std::pow(3.0, mp1) - 1.0) * (std::pow(3.0, np1) - 1.0) / 2.0;
    }
    return 0.0;
}

/// 1 / (4 sqrt(theta (4 theta + 1)) - 8 theta), rationalized so large theta
/// does not cancel.
inline double gamma(double theta_value)
{
    if (!(theta_value >= 1.0)) throw Error("gamma needs theta >= 1");
    const double root = std::sqrt(theta_value * (4.0 * theta_value + 1.0));
    return (root + 2.0 * theta_value) / (4.0 * theta_value);
}

} // namespace kts

#endif // KTS_BOUNDING_HPP

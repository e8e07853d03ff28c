#ifndef KTS_REPARAM_HPP
#define KTS_REPARAM_HPP

#include <span>
#include <vector>

#include "kts/basis.hpp"
#include "kts/vec2.hpp"

namespace kts {

/// Closed infinity-norm ball [cx - r, cx + r] x [cy - r, cy + r] in the
/// system's own (u, v) variables.
struct Patch {
    Vec2 center;
    double half_width;

    double width() const { return 2.0 * half_width; }

    // True when this ball lies inside `outer`.
    bool inside(const Patch& outer) const
    {
        return inf_norm(center - outer.center) + half_width <= outer.half_width;
    }

    bool contains(const Vec2& p) const { return inf_norm(p - center) <= half_width; }

    friend bool operator==(const Patch&, const Patch&) = default;
};

inline constexpr Patch unit_square{{0.5, 0.5}, 0.5};

/// lambda with T_i(a t + b) = sum_k lambda_{ik} T_k(t), rows 0..degree.
struct ChebAffineMatrix {
    double a;
    double b;
    TriangularMatrix rows;
};

inline ChebAffineMatrix cheb_affine(double a, double b, int degree)
{
    if (degree < 0) throw Error("cheb_affine needs degree >= 0");
    ChebAffineMatrix out{a, b, {}};
    auto& lam = out.rows;
    lam.push_back({1.0});
    if (degree >= 1) lam.push_back({b, a});
    for (int i = 1; i < degree; ++i) {
        std::vector<double> next(static_cast<std::size_t>(i) + 2, 0.0);
        const auto& cur = lam[i];
        const auto& prev = lam[i - 1];
        next[1] += 2.0 * a * cur[0];
        for (int k = 1; k <= i; ++k) next[k + 1] += a * cur[k];
        for (int k = 0; k <= i - 1; ++k) next[k] += a * cur[k + 1];
        for (int k = 0; k <= i; ++k) next[k] += 2.0 * b * cur[k];
        for (int k = 0; k <= i - 1; ++k) next[k] -= prev[k];
        lam.push_back(std::move(next));
    }
    return out;
}

namespace detail {

// Coefficients of p(center + half_width * s) in the same basis, where s runs
// over the canonical domain.
template <class T>
std::vector<T> reparam_coeffs(Basis basis, std::span<const T> c, double center, double half_width)
{
    const int n = static_cast<int>(c.size()) - 1;
    switch (basis) {
    case Basis::power:
        // u = r s + u0 maps [-1,1] onto [u0 - r, u0 + r]
        return power_affine_substitute<T>(c, half_width, center);
    case Basis::chebyshev: {
        const auto lam = cheb_affine(half_width, center, n);
        std::vector<T> out(c.size());
        for (int i = 0; i <= n; ++i)
            for (int k = 0; k <= i; ++k) out[k] += c[i] * lam.rows[i][k];
        return out;
    }
    case Basis::bernstein: {
        // u = (u0 + r) s + (u0 - r)(1 - s) and 1 - u likewise; after s = y/(y+1)
        // each factor becomes a linear form p y + q, and the numerator
        // sum_i C(n,i) c_i L1^i L2^(n-i) is accumulated by homogeneous Horner.
        const double p1 = center + half_width, q1 = center - half_width;
        const double p2 = 1.0 - center - half_width, q2 = 1.0 - center + half_width;
        const auto binom = binomial_row(n);
        std::vector<T> acc(c.size());
        std::vector<double> l1_pow(c.size(), 0.0); // L1^i
        l1_pow[0] = 1.0;
        acc[0] = c[0];
        for (int i = 1; i <= n; ++i) {
            // acc <- acc * L2
            for (int k = i; k >= 1; --k) acc[k] = acc[k] * q2 + acc[k - 1] * p2;
            acc[0] = acc[0] * q2;
            // l1_pow <- l1_pow * L1
            for (int k = i; k >= 1; --k) l1_pow[k] = l1_pow[k] * q1 + l1_pow[k - 1] * p1;
            l1_pow[0] *= q1;
            const T scaled = c[i] * binom[i];
            for (int k = 0; k <= i; ++k) acc[k] += scaled * l1_pow[k];
        }
        for (int k = 0; k <= n; ++k) acc[k] = acc[k] / binom[k];
        return acc;
    }
    }
    return {c.begin(), c.end()};
}

} // namespace detail

// The affine map taking the patch's canonical parametrization back to (u, v).
inline Vec2 patch_point(Basis basis, const Patch& x, const Vec2& canonical)
{
    const Domain d = canonical_domain(basis);
    const double scale = 2.0 * x.half_width / d.width();
    return {x.center.x + scale * (canonical.x - (d.lo + d.hi) / 2.0),
            x.center.y + scale * (canonical.y - (d.lo + d.hi) / 2.0)};
}

/// Same-basis polynomial g on the canonical square with g(s) = f(phi(s)),
/// phi the affine map of the canonical square onto the patch. Patches must
/// lie in [0,1]^2 unless allow_outside is set.
template <class T>
BiPoly<T> reparametrize(const BiPoly<T>& f, const Patch& x, bool allow_outside = false)
{
    if (!(x.half_width > 0.0)) throw Error("patch half-width must be positive");
    if (!allow_outside) {
        constexpr double slack = 1e-12;
        const bool inside = x.center.x - x.half_width >= -slack && x.center.x + x.half_width <= 1.0 + slack &&
                            x.center.y - x.half_width >= -slack && x.center.y + x.half_width <= 1.0 + slack;
        if (!inside) throw Error("patch leaves [0,1]^2");
    }
    const Basis b = f.basis();
    auto along_u = map_along(f, Axis::u, b, [&](std::span<const T> c) {
        return detail::reparam_coeffs<T>(b, c, x.center.x, x.half_width);
    });
    return map_along(along_u, Axis::v, b, [&](std::span<const T> c) {
        return detail::reparam_coeffs<T>(b, c, x.center.y, x.half_width);
    });
}

} // namespace kts

#endif // KTS_REPARAM_HPP

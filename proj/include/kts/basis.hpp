#ifndef KTS_BASIS_HPP
#define KTS_BASIS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kts/vec2.hpp"

namespace kts {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by conversions involving the Bernstein basis above degree 20.
class DegreeLimitError : public Error {
public:
    using Error::Error;
};

enum class Basis { power, bernstein, chebyshev };

struct Domain {
    double lo;
    double hi;
    constexpr double width() const { return hi - lo; }
};

constexpr Domain canonical_domain(Basis b)
{
    return b == Basis::bernstein ? Domain{0.0, 1.0} : Domain{-1.0, 1.0};
}

constexpr std::string_view to_string(Basis b)
{
    switch (b) {
    case Basis::power: return "power";
    case Basis::bernstein: return "bernstein";
    case Basis::chebyshev: return "chebyshev";
    }
    return "?";
}

inline std::optional<Basis> parse_basis(std::string_view tag)
{
    if (tag == "power") return Basis::power;
    if (tag == "bernstein") return Basis::bernstein;
    if (tag == "chebyshev") return Basis::chebyshev;
    return std::nullopt;
}

inline constexpr int max_bernstein_conversion_degree = 20;

// Dense lower-triangular matrix stored as ragged rows (row k has k+1 entries).
using TriangularMatrix = std::vector<std::vector<double>>;

/// Univariate polynomial sum_i b_i phi_i(t) in one of the three bases.
/// T is double for scalar polynomials and Vec2 for planar curves.
template <class T>
class UniPoly {
public:
    UniPoly(Basis basis, std::vector<T> coeffs) : basis_(basis), coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw Error("polynomial needs at least one coefficient");
        }
    }

    Basis basis() const { return basis_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& operator[](std::size_t i) const { return coeffs_[i]; }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

private:
    Basis basis_;
    std::vector<T> coeffs_;
};

/// Tensor-product polynomial sum_ij c_ij phi_i(u) phi_j(v); coefficients are
/// stored row-major with i (the u index) as the slow index.
template <class T>
class BiPoly {
public:
    BiPoly(Basis basis, int m, int n, std::vector<T> coeffs)
        : basis_(basis), m_(m), n_(n), coeffs_(std::move(coeffs))
    {
        if (m < 0 || n < 0) {
            throw Error("negative degree");
        }
        const auto expected = static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1);
        if (coeffs_.size() != expected) {
            throw Error("coefficient grid has " + std::to_string(coeffs_.size()) +
                        " entries, expected " + std::to_string(expected));
        }
    }

    // Zero polynomial of the given degrees.
    static BiPoly zero(Basis basis, int m, int n)
    {
        return BiPoly(basis, m, n,
                      std::vector<T>(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1)));
    }

    Basis basis() const { return basis_; }
    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& operator()(int i, int j) const { return coeffs_[index(i, j)]; }
    T& operator()(int i, int j) { return coeffs_[index(i, j)]; }

    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(j);
    }

    Basis basis_;
    int m_;
    int n_;
    std::vector<T> coeffs_;
};

using BivariateSystem = BiPoly<Vec2>;

enum class Axis { u, v };

// ---------------------------------------------------------------------------
// Small helpers

inline double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

// Row n of Pascal's triangle.
inline std::vector<double> binomial_row(int n)
{
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    for (int r = 1; r <= n; ++r) {
        for (int k = r; k >= 1; --k) {
            row[k] += row[k - 1];
        }
    }
    return row;
}

template <class T>
double max_coeff_norm(const std::vector<T>& coeffs)
{
    double s = 0.0;
    for (const auto& c : coeffs) s = std::max(s, inf_norm(c));
    return s;
}

template <class T>
double max_coeff_norm(const BiPoly<T>& f) { return max_coeff_norm(f.coeffs()); }

// Scalar component k (0 or 1) of a planar system.
inline BiPoly<double> component(const BivariateSystem& f, int k)
{
    std::vector<double> c;
    c.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) c.push_back(k == 0 ? v.x : v.y);
    return BiPoly<double>(f.basis(), f.m(), f.n(), std::move(c));
}

// Applies a univariate coefficient transform to every u-column (fixed j) or
// v-row (fixed i). The transform may change the length.
template <class T, class Fn>
BiPoly<T> map_along(const BiPoly<T>& f, Axis axis, Basis out_basis, Fn&& fn)
{
    if (axis == Axis::u) {
        std::vector<std::vector<T>> cols;
        cols.reserve(static_cast<std::size_t>(f.n()) + 1);
        std::vector<T> col(static_cast<std::size_t>(f.m()) + 1);
        for (int j = 0; j <= f.n(); ++j) {
            for (int i = 0; i <= f.m(); ++i) col[i] = f(i, j);
            cols.push_back(fn(std::span<const T>(col)));
        }
        const int new_m = static_cast<int>(cols.front().size()) - 1;
        auto out = BiPoly<T>::zero(out_basis, new_m, f.n());
        for (int j = 0; j <= f.n(); ++j)
            for (int i = 0; i <= new_m; ++i) out(i, j) = cols[j][i];
        return out;
    }
    std::vector<std::vector<T>> rows;
    rows.reserve(static_cast<std::size_t>(f.m()) + 1);
    for (int i = 0; i <= f.m(); ++i) {
        auto first = f.coeffs().begin() + static_cast<std::ptrdiff_t>(i) * (f.n() + 1);
        rows.push_back(fn(std::span<const T>(&*first, static_cast<std::size_t>(f.n()) + 1)));
    }
    const int new_n = static_cast<int>(rows.front().size()) - 1;
    auto out = BiPoly<T>::zero(out_basis, f.m(), new_n);
    for (int i = 0; i <= f.m(); ++i)
        for (int j = 0; j <= new_n; ++j) out(i, j) = rows[i][j];
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

template <class T>
T eval_coeffs(Basis basis, std::span<const T> c, double t)
{
    const int n = static_cast<int>(c.size()) - 1;
    switch (basis) {
    case Basis::power: {
        T acc = c[n];
        for (int i = n - 1; i >= 0; --i) acc = acc * t + c[i];
        return acc;
    }
    case Basis::bernstein: {
        // de Casteljau
        std::vector<T> b(c.begin(), c.end());
        const double s = 1.0 - t;
        for (int r = 1; r <= n; ++r)
            for (int i = 0; i <= n - r; ++i) b[i] = b[i] * s + b[i + 1] * t;
        return b[0];
    }
    case Basis::chebyshev: {
        // Clenshaw: b_k = c_k + 2t b_{k+1} - b_{k+2}
        T b1{}, b2{};
        for (int k = n; k >= 1; --k) {
            T b0 = c[k] + b1 * (2.0 * t) - b2;
            b2 = b1;
            b1 = b0;
        }
        return c[0] + b1 * t - b2;
    }
    }
    return T{};
}

template <class T>
T eval(const UniPoly<T>& p, double t)
{
    return eval_coeffs<T>(p.basis(), p.coeffs(), t);
}

template <class T>
T eval(const BiPoly<T>& f, double u, double v)
{
    std::vector<T> along_u(static_cast<std::size_t>(f.m()) + 1);
    for (int i = 0; i <= f.m(); ++i) {
        auto first = f.coeffs().begin() + static_cast<std::ptrdiff_t>(i) * (f.n() + 1);
        along_u[i] = eval_coeffs<T>(f.basis(), std::span<const T>(&*first, static_cast<std::size_t>(f.n()) + 1), v);
    }
    return eval_coeffs<T>(f.basis(), std::span<const T>(along_u), u);
}

template <class T>
T eval(const BiPoly<T>& f, const Vec2& x) { return eval(f, x.x, x.y); }

// ---------------------------------------------------------------------------
// Differentiation

template <class T>
std::vector<T> derivative_coeffs(Basis basis, std::span<const T> c)
{
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return {T{}};
    std::vector<T> d(static_cast<std::size_t>(n));
    switch (basis) {
    case Basis::power:
        for (int i = 0; i < n; ++i) d[i] = c[i + 1] * static_cast<double>(i + 1);
        break;
    case Basis::bernstein:
        for (int i = 0; i < n; ++i) d[i] = (c[i + 1] - c[i]) * static_cast<double>(n);
        break;
    case Basis::chebyshev: {
        // c'_{k-1} = c'_{k+1} + 2k c_k, with c'_n = c'_{n+1} = 0
        T next{}, next2{};
        for (int k = n; k >= 1; --k) {
            T cur = next2 + c[k] * (2.0 * k);
            d[k - 1] = cur;
            next2 = next;
            next = cur;
        }
        d[0] = d[0] * 0.5;
        break;
    }
    }
    return d;
}

template <class T>
UniPoly<T> derivative(const UniPoly<T>& p)
{
    return UniPoly<T>(p.basis(), derivative_coeffs<T>(p.basis(), p.coeffs()));
}

template <class T>
BiPoly<T> derivative(const BiPoly<T>& f, Axis axis)
{
    return map_along(f, axis, f.basis(),
                     [&](std::span<const T> c) { return derivative_coeffs<T>(f.basis(), c); });
}

// ---------------------------------------------------------------------------
// Chebyshev machinery

/// Coefficients d_{k0..kk} with t^k = sum_i d_{ki} T_i(t), built with the
/// three-term update that keeps every entry nonnegative.
inline std::vector<double> monomial_to_chebyshev(int k)
{
    if (k < 0) throw Error("monomial degree must be nonnegative");
    std::vector<double> d{1.0};
    if (k == 0) return d;
    d = {0.0, 1.0};
    for (int cur = 1; cur < k; ++cur) {
        auto at = [&](int i) { return (i >= 0 && i <= cur) ? d[i] : 0.0; };
        std::vector<double> next(static_cast<std::size_t>(cur) + 2, 0.0);
        for (int i = 0; i <= cur + 1; ++i) {
            if (i == 0) {
                next[i] = at(1) / 2.0;
            } else if (i == 1) {
                next[i] = at(2) / 2.0 + at(0);
            } else if (i >= cur) {
                next[i] = at(i - 1) / 2.0;
            } else {
                next[i] = (at(i - 1) + at(i + 1)) / 2.0;
            }
        }
        d = std::move(next);
    }
    return d;
}

// Rows d_0..d_n of the monomial-to-Chebyshev conversion matrix.
inline TriangularMatrix monomial_to_chebyshev_matrix(int n)
{
    TriangularMatrix rows;
    for (int k = 0; k <= n; ++k) rows.push_back(monomial_to_chebyshev(k));
    return rows;
}

// Row i holds the power-basis coefficients of T_i.
inline TriangularMatrix chebyshev_to_monomial_matrix(int n)
{
    TriangularMatrix rows;
    rows.push_back({1.0});
    if (n >= 1) rows.push_back({0.0, 1.0});
    for (int k = 2; k <= n; ++k) {
        std::vector<double> r(static_cast<std::size_t>(k) + 1, 0.0);
        for (int i = 0; i < k; ++i) r[i + 1] += 2.0 * rows[k - 1][i];
        for (int i = 0; i < k - 1; ++i) r[i] -= rows[k - 2][i];
        rows.push_back(std::move(r));
    }
    return rows;
}

/// The n zeros of T_n in descending order.
inline std::vector<double> chebyshev_nodes(int n)
{
    if (n < 1) throw Error("chebyshev_nodes needs n >= 1");
    std::vector<double> t(static_cast<std::size_t>(n));
    // cos((2k-1)pi/(2n)) written as a sine so the node set is exactly symmetric
    for (int k = 1; k <= n; ++k) {
        t[k - 1] = std::sin(static_cast<double>(n - 2 * k + 1) * std::numbers::pi / (2.0 * n));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Basis conversion

/// Coefficients of p(scale * s + shift) as a power series in s.
template <class T>
std::vector<T> power_affine_substitute(std::span<const T> a, double scale, double shift)
{
    // Horner in polynomial arithmetic: acc <- acc * (scale s + shift) + a_i
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<T> acc(a.size());
    acc[0] = a[n];
    for (int i = n - 1; i >= 0; --i) {
        const int deg = n - 1 - i; // current degree of acc
        for (int k = deg + 1; k >= 1; --k) acc[k] = acc[k] * shift + acc[k - 1] * scale;
        acc[0] = acc[0] * shift + a[i];
    }
    return acc;
}

namespace detail {

template <class T>
std::vector<T> to_power(Basis from, std::span<const T> c)
{
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<T> a(c.size());
    switch (from) {
    case Basis::power:
        a.assign(c.begin(), c.end());
        break;
    case Basis::chebyshev: {
        const auto rows = chebyshev_to_monomial_matrix(n);
        for (int i = 0; i <= n; ++i)
            for (int k = 0; k <= i; ++k) a[k] += c[i] * rows[i][k];
        break;
    }
    case Basis::bernstein: {
        // Z_{k,n}(t) = sum_{i>=k} (-1)^{i-k} C(n,i) C(i,k) t^i
        for (int i = 0; i <= n; ++i) {
            const double cni = binomial(n, i);
            for (int k = 0; k <= i; ++k) {
                const double sign = ((i - k) % 2 == 0) ? 1.0 : -1.0;
                a[i] += c[k] * (sign * cni * binomial(i, k));
            }
        }
        break;
    }
    }
    return a;
}

template <class T>
std::vector<T> from_power(Basis to, std::span<const T> a)
{
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<T> c(a.size());
    switch (to) {
    case Basis::power:
        c.assign(a.begin(), a.end());
        break;
    case Basis::chebyshev:
        for (int k = 0; k <= n; ++k) {
            const auto d = monomial_to_chebyshev(k);
            for (int i = 0; i <= k; ++i) c[i] += a[k] * d[i];
        }
        break;
    case Basis::bernstein:
        // b_k = sum_{i<=k} C(k,i)/C(n,i) a_i
        for (int k = 0; k <= n; ++k)
            for (int i = 0; i <= k; ++i) c[k] += a[i] * (binomial(k, i) / binomial(n, i));
        break;
    }
    return c;
}

} // namespace detail

/// How a conversion relates the source and target variables.
///   canonical: the function on the source's canonical domain is carried onto
///              the target's canonical domain through the affine map between
///              them (t_t = (t_s - l_s)/(h_s - l_s) (h_t - l_t) + l_t).
///   shared_variable: both representations denote the same function of the
///              same variable; no domain map is applied.
enum class ConversionFrame { canonical, shared_variable };

template <class T>
std::vector<T> convert_coeffs(Basis from, Basis to, std::span<const T> c,
                              ConversionFrame frame = ConversionFrame::canonical)
{
    const int n = static_cast<int>(c.size()) - 1;
    if ((from == Basis::bernstein || to == Basis::bernstein) && from != to &&
        n > max_bernstein_conversion_degree) {
        throw DegreeLimitError("Bernstein conversion supports degree <= " +
                               std::to_string(max_bernstein_conversion_degree) + ", got " +
                               std::to_string(n));
    }
    if (from == to) return {c.begin(), c.end()};
    auto a = detail::to_power<T>(from, c);
    const Domain ds = canonical_domain(from);
    const Domain dt = canonical_domain(to);
    if (frame == ConversionFrame::canonical && (ds.lo != dt.lo || ds.hi != dt.hi)) {
        const double scale = ds.width() / dt.width();
        const double shift = ds.lo - dt.lo * scale;
        a = power_affine_substitute<T>(a, scale, shift);
    }
    return detail::from_power<T>(to, a);
}

template <class T>
UniPoly<T> convert(const UniPoly<T>& p, Basis target, ConversionFrame frame = ConversionFrame::canonical)
{
    return UniPoly<T>(target, convert_coeffs<T>(p.basis(), target, p.coeffs(), frame));
}

/// Re-expresses f in the target basis, one tensor axis at a time.
template <class T>
BiPoly<T> convert(const BiPoly<T>& f, Basis target, ConversionFrame frame = ConversionFrame::canonical)
{
    if (f.basis() == target) return f;
    auto step = [&](std::span<const T> c) { return convert_coeffs<T>(f.basis(), target, c, frame); };
    return map_along(map_along(f, Axis::u, target, step), Axis::v, target, step);
}

// Maps a point between the variables of two bases in the canonical frame.
inline double map_between_domains(double t, Basis from, Basis to)
{
    const Domain ds = canonical_domain(from);
    const Domain dt = canonical_domain(to);
    return (t - ds.lo) / ds.width() * dt.width() + dt.lo;
}

// ---------------------------------------------------------------------------
// Bernstein products

/// Product of two scalar Bernstein polynomials, expressed at degree n + n'.
inline UniPoly<double> bernstein_product(const UniPoly<double>& p, const UniPoly<double>& q)
{
    if (p.basis() != Basis::bernstein || q.basis() != Basis::bernstein) {
        throw Error("bernstein_product expects Bernstein inputs");
    }
    const int n = p.degree();
    const int np = q.degree();
    std::vector<double> b(static_cast<std::size_t>(n + np) + 1, 0.0);
    for (int i = 0; i <= n + np; ++i) {
        const double denom = binomial(n + np, i);
        for (int k = std::max(0, i - np); k <= std::min(n, i); ++k) {
            b[i] += binomial(n, k) * binomial(np, i - k) / denom * p[k] * q[i - k];
        }
    }
    return UniPoly<double>(Basis::bernstein, std::move(b));
}

} // namespace kts

#endif // KTS_BASIS_HPP

#ifndef KTS_SOLVER_HPP
#define KTS_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kts/basis.hpp"
#include "kts/bounding.hpp"
#include "kts/reparam.hpp"
#include "kts/vec2.hpp"

namespace kts {

struct SolverConfig {
    double newton_tol = 1e-12;
    int newton_max_iters = 50;
    double min_half_width = std::ldexp(1.0, -40);
    int rho_search_iters = 60;
    int grid_density = 33;

    void validate() const
    {
        if (!(newton_tol > 0.0) || newton_max_iters <= 0 || !(min_half_width > 0.0) ||
            !(min_half_width < 1.0) || rho_search_iters <= 0 || grid_density <= 0) {
            throw Error("invalid solver configuration");
        }
    }
};

inline constexpr double rho_cap = 4.0;
// Slack used when deciding whether a certified zero lies in [0,1]^2.
inline constexpr double domain_slack = 1e-10;
inline constexpr double dedup_fallback = 1e-9;

/// First and second partial derivatives of a planar system, computed once
/// and shared by the tests below.
struct SystemDerivatives {
    explicit SystemDerivatives(const BivariateSystem& f)
        : f(f),
          fu(derivative(f, Axis::u)),
          fv(derivative(f, Axis::v)),
          fuu(derivative(fu, Axis::u)),
          fuv(derivative(fu, Axis::v)),
          fvv(derivative(fv, Axis::v))
    {
    }

    Mat2 jacobian(const Vec2& x) const { return Mat2::from_columns(eval(fu, x), eval(fv, x)); }

    BivariateSystem f;
    BivariateSystem fu, fv;
    BivariateSystem fuu, fuv, fvv;
};

namespace detail {

// Scalar polynomial w.x * p.x + w.y * p.y.
inline BiPoly<double> combine_rows(const BivariateSystem& p, const Vec2& w)
{
    std::vector<double> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(w.x * v.x + w.y * v.y);
    return BiPoly<double>(p.basis(), p.m(), p.n(), std::move(c));
}

} // namespace detail

/// Upper bound on the infinity-norm Lipschitz constant of
/// x -> jac_inv * f'(x) over `ball`, by the mean value theorem applied to
/// bounding intervals of the reparametrized second partials.
inline double lipschitz_bound(const SystemDerivatives& d, const Mat2& jac_inv, const Patch& ball)
{
    double omega = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Vec2 w = jac_inv.row(i);
        auto mag = [&](const BivariateSystem& second) {
            const auto h = detail::combine_rows(second, w);
            return bounding_interval(reparametrize(h, ball, true)).magnitude();
        };
        // d/du and d/dv of row i of jac_inv * f', summed over both columns
        const double row = mag(d.fuu) + 2.0 * mag(d.fuv) + mag(d.fvv);
        omega = std::max(omega, row);
    }
    return omega;
}

inline double lipschitz_bound(const BivariateSystem& f, const Mat2& jac_inv, const Patch& ball)
{
    return lipschitz_bound(SystemDerivatives(f), jac_inv, ball);
}

/// True when the bounding polytope of f restricted to x misses the origin,
/// which certifies that x holds no zero.
inline bool exclusion_test(const BivariateSystem& f, const Patch& x)
{
    return !contains_origin(bounding_polytope(reparametrize(f, x)));
}

struct KantorovichOutcome {
    double eta = std::numeric_limits<double>::infinity();
    double omega = 0.0;
    double rho_minus = std::numeric_limits<double>::infinity();
    bool passed = false;
    bool ball_in_dprime = false;
};

// Smaller Kantorovich radius; equals eta when omega = 0 and is infinite when
// eta * omega > 1/2.
inline double kantorovich_rho_minus(double eta, double omega)
{
    const double h = eta * omega;
    if (h > 0.5) return std::numeric_limits<double>::infinity();
    // (1 - sqrt(1 - 2h)) / omega, rationalized
    return 2.0 * eta / (1.0 + std::sqrt(1.0 - 2.0 * h));
}

inline bool singular(const Mat2& j)
{
    const double scale = j.max_abs();
    return scale == 0.0 || !std::isfinite(j.det()) || std::abs(j.det()) < 1e-14 * scale * scale;
}

inline KantorovichOutcome kantorovich_test(const SystemDerivatives& d, const Patch& x, double theta_value)
{
    KantorovichOutcome out;
    const Mat2 j = d.jacobian(x.center);
    if (singular(j)) return out;
    const Mat2 jinv = *j.inverse();
    const double g = gamma(theta_value);
    out.eta = inf_norm(jinv * eval(d.f, x.center));
    const double domain_radius = 2.0 * g * x.half_width;
    out.omega = lipschitz_bound(d, jinv, Patch{x.center, domain_radius});
    out.rho_minus = kantorovich_rho_minus(out.eta, out.omega);
    // D' = [-gamma, 1 + gamma]^2
    out.ball_in_dprime = out.rho_minus <= 0.5 + g - inf_norm(x.center - Vec2{0.5, 0.5});
    out.passed = out.eta * out.omega <= 0.25 && out.ball_in_dprime && out.rho_minus <= domain_radius;
    return out;
}

inline KantorovichOutcome kantorovich_test(const BivariateSystem& f, const Patch& x, double theta_value)
{
    return kantorovich_test(SystemDerivatives(f), x, theta_value);
}

enum class NewtonStatus { converged, iteration_cap, non_finite, singular_jacobian };

struct NewtonResult {
    NewtonStatus status;
    Vec2 x;
    int iterations;

    bool converged() const { return status == NewtonStatus::converged; }
};

inline NewtonResult newton(const SystemDerivatives& d, Vec2 x, const SolverConfig& cfg)
{
    const double tol = cfg.newton_tol * (1.0 + max_coeff_norm(d.f));
    for (int it = 0;; ++it) {
        const Vec2 fx = eval(d.f, x);
        if (!is_finite(fx) || !is_finite(x)) return {NewtonStatus::non_finite, x, it};
        if (inf_norm(fx) <= tol) return {NewtonStatus::converged, x, it};
        if (it == cfg.newton_max_iters) return {NewtonStatus::iteration_cap, x, it};
        const auto jinv = d.jacobian(x).inverse();
        if (!jinv) return {NewtonStatus::singular_jacobian, x, it};
        x -= *jinv * fx;
    }
}

inline NewtonResult newton(const BivariateSystem& f, const Vec2& x0, const SolverConfig& cfg)
{
    return newton(SystemDerivatives(f), x0, cfg);
}

struct RhoStar {
    double rho;
    double omega;
};

/// Fixed point of rho = 2 / omega(rho) by bisection, omega(rho) being the
/// Lipschitz bound for f'(x*)^{-1} f' on the ball of radius rho about x*.
inline RhoStar rho_star(const SystemDerivatives& d, const Vec2& xstar, const SolverConfig& cfg)
{
    const auto jinv = d.jacobian(xstar).inverse();
    if (!jinv) return {0.0, std::numeric_limits<double>::infinity()};
    auto omega_at = [&](double rho) { return lipschitz_bound(d, *jinv, Patch{xstar, rho}); };
    const double omega_cap = omega_at(rho_cap);
    if (omega_cap == 0.0 || rho_cap * omega_cap <= 2.0) return {rho_cap, omega_cap};
    double lo = 0.0;
    double hi = rho_cap;
    for (int it = 0; it < cfg.rho_search_iters; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid * omega_at(mid) <= 2.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (lo == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
    return {lo, omega_at(lo)};
}

inline RhoStar rho_star(const BivariateSystem& f, const Vec2& xstar, const SolverConfig& cfg)
{
    return rho_star(SystemDerivatives(f), xstar, cfg);
}

struct ZeroRecord {
    Vec2 location;
    double rho_star;
    double omega_star;
    int newton_iterations;
};

struct SolveReport {
    std::vector<ZeroRecord> zeros;
    long patches_examined = 0;
    double smallest_width = std::numeric_limits<double>::infinity();
    long exclusion_passes = 0;
    long kantorovich_passes = 0;
    long skipped_subsumed = 0;
    std::vector<Patch> unresolved_patches;
    std::optional<double> cond_estimate;

    bool warning() const { return !unresolved_patches.empty(); }
};

enum class PatchOutcome { subsumed, excluded, subdivided, unresolved };

struct PatchEvent {
    Patch patch;
    PatchOutcome outcome;
    std::optional<KantorovichOutcome> kantorovich;
};

using PatchObserver = std::function<void(const PatchEvent&)>;

/// Kantorovich-test subdivision over [0,1]^2: a FIFO quadtree sweep that
/// discards patches by the exclusion test, certifies Newton starts by the
/// Kantorovich test, and stores a ball B(x*, rho*) around every new zero so
/// later patches inside it are skipped.
inline SolveReport kts_solve(const BivariateSystem& f, const SolverConfig& cfg = {},
                             const PatchObserver& observer = {})
{
    cfg.validate();
    const SystemDerivatives d(f);
    const double th = theta(f.basis(), f.m(), f.n());

    struct Ball {
        Vec2 center;
        double radius;
    };
    std::vector<Ball> balls;
    auto known = [&](const Vec2& p) {
        return std::any_of(balls.begin(), balls.end(), [&](const Ball& b) {
            const double dist = inf_norm(p - b.center);
            return dist <= b.radius || dist <= dedup_fallback;
        });
    };

    SolveReport report;
    std::deque<Patch> queue{unit_square};
    while (!queue.empty()) {
        const Patch x = queue.front();
        queue.pop_front();
        ++report.patches_examined;
        report.smallest_width = std::min(report.smallest_width, x.width());
        auto notify = [&](PatchOutcome o, std::optional<KantorovichOutcome> k = std::nullopt) {
            if (observer) observer(PatchEvent{x, o, k});
        };

        const bool subsumed = std::any_of(balls.begin(), balls.end(), [&](const Ball& b) {
            return x.inside(Patch{b.center, b.radius});
        });
        if (subsumed) {
            ++report.skipped_subsumed;
            notify(PatchOutcome::subsumed);
            continue;
        }
        if (exclusion_test(f, x)) {
            ++report.exclusion_passes;
            notify(PatchOutcome::excluded);
            continue;
        }
        const auto k = kantorovich_test(d, x, th);
        if (k.passed) {
            ++report.kantorovich_passes;
            const auto nr = newton(d, x.center, cfg);
            if (nr.converged() && !known(nr.x)) {
                const auto rs = rho_star(d, nr.x, cfg);
                balls.push_back({nr.x, rs.rho});
                const bool in_domain = nr.x.x >= -domain_slack && nr.x.x <= 1.0 + domain_slack &&
                                       nr.x.y >= -domain_slack && nr.x.y <= 1.0 + domain_slack;
                if (in_domain) {
                    report.zeros.push_back({nr.x, rs.rho, rs.omega, nr.iterations});
                }
            }
        }
        const double h = 0.5 * x.half_width;
        if (h < cfg.min_half_width) {
            report.unresolved_patches.push_back(x);
            notify(PatchOutcome::unresolved, k);
            continue;
        }
        notify(PatchOutcome::subdivided, k);
        for (const Vec2 off : {Vec2{-h, -h}, Vec2{h, -h}, Vec2{-h, h}, Vec2{h, h}}) {
            queue.push_back(Patch{x.center + off, h});
        }
    }
    return report;
}

/// Real-zero estimate of cond(f): for each zero, the largest of omega_*,
/// the Lipschitz bound over D' and the grid maximum of
/// ||f'(x*)^{-1} f'(y)|| over y in [0,1]^2. Complex zeros are not
/// considered, so this can understate the true condition number.
inline std::optional<double> condition_estimate(const BivariateSystem& f, const std::vector<ZeroRecord>& zeros,
                                                const SolverConfig& cfg = {})
{
    if (zeros.empty()) return std::nullopt;
    const SystemDerivatives d(f);
    const double g = gamma(theta(f.basis(), f.m(), f.n()));
    const Patch dprime{{0.5, 0.5}, 0.5 + g};
    const int n = cfg.grid_density;
    std::vector<Mat2> grid_jac;
    grid_jac.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double u = n == 1 ? 0.5 : static_cast<double>(a) / (n - 1);
            const double v = n == 1 ? 0.5 : static_cast<double>(b) / (n - 1);
            grid_jac.push_back(d.jacobian({u, v}));
        }
    }
    double cond = 0.0;
    for (const auto& z : zeros) {
        const auto jinv = d.jacobian(z.location).inverse();
        if (!jinv) return std::numeric_limits<double>::infinity();
        double est = std::max(z.omega_star, lipschitz_bound(d, *jinv, dprime));
        for (const auto& j : grid_jac) est = std::max(est, (*jinv * j).inf_norm());
        cond = std::max(cond, est);
    }
    return cond;
}

} // namespace kts

#endif // KTS_SOLVER_HPP

#include "amfsi/stability.hpp"
#include "amfsi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace amfsi {

namespace {

AmplificationReport make_report(std::vector<cplx> roots) {
    AmplificationReport rep;
    rep.roots = std::move(roots);
    for (const cplx& a : rep.roots)
        rep.max_modulus = std::max(rep.max_modulus, std::abs(a));
    rep.stable = rep.max_modulus <= 1.0 + 1e-12;
    return rep;
}

// Roots of a2 x^2 + a1 x + a0, smaller modulus first.
CharacteristicRoots quadratic_roots(cplx a2, cplx a1, cplx a0) {
    CharacteristicRoots out;
    const double scale = std::abs(a1) + std::abs(a0);
    if (std::abs(a2) <= 1e-14 * scale) {
        out.degenerate = true;
        out.count = 1;
        out.r[0] = -a0 / a1;
    } else {
        cplx s = std::sqrt(a1 * a1 - 4.0 * a2 * a0);
        if (std::real(std::conj(a1) * s) < 0.0)
            s = -s;
        const cplx q = -0.5 * (a1 + s);
        out.r[0] = q / a2;
        out.r[1] = q != 0.0 ? a0 / q : cplx(0.0);
        if (std::abs(out.r[1]) < std::abs(out.r[0]))
            std::swap(out.r[0], out.r[1]);
    }
    for (int k = 0; k < out.count; ++k)
        out.inside[k] = std::abs(out.r[k]) < 1.0;
    return out;
}

// Root of modulus below one of the forward (right domain) or reversed (left domain) polynomial.
cplx decaying_root(double nu, cplx A, bool reversed) {
    const cplx c2 = 0.5 * (nu + nu * nu), c1 = 1.0 - A - nu * nu, c0 = 0.5 * (nu * nu - nu);
    const CharacteristicRoots r = reversed ? quadratic_roots(c0, c1, c2) : quadratic_roots(c2, c1, c0);
    return r.r[0];
}

} // namespace

void StabilityQuery::validate() const {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw ValidationError("lambda must lie in (0, 1]");
    if (!(dt > 0.0))
        throw ValidationError("time step must be positive");
    if (!(z > 0.0))
        throw ValidationError("impedance must be positive");
    if (!(mass >= 0.0))
        throw ValidationError("mass must be non-negative");
    if (!(alpha >= 0.0))
        throw ValidationError("coupling weight must be non-negative");
}

AmplificationReport roots_first_order_traditional(const StabilityQuery& q) {
    q.validate();
    if (q.mass == 0.0) {
        AmplificationReport rep;
        rep.stable = false;
        rep.unbounded = true;
        return rep;
    }
    const double lam = q.lambda, xi = q.dt / q.mass;
    const double b = 1.0 - 0.25 * lam - 0.5 * q.z * xi * lam;
    const cplx s = std::sqrt(cplx(b * b - 1.0 + 0.5 * lam));
    return make_report({cplx(1.0 - 0.5 * lam), b + s, b - s});
}

AmplificationReport roots_first_order_projection(const StabilityQuery& q) {
    q.validate();
    return make_report({cplx(q.mass / (q.mass + 2.0 * q.dt * q.z))});
}

AmplificationReport roots_second_order_projection(const StabilityQuery& q) {
    q.validate();
    return make_report({cplx((q.mass - q.dt * q.z) / (q.mass + q.dt * q.z))});
}

double max_stable_dt_traditional(double mass, double z, double lambda) {
    if (!(z > 0.0) || !(lambda > 0.0 && lambda <= 1.0) || !(mass >= 0.0))
        throw ValidationError("bound needs z > 0, lambda in (0, 1], mass >= 0");
    return mass * (4.0 - lambda) / (z * lambda);
}

CharacteristicRoots lw_characteristic_roots(double nu, cplx A) {
    if (!(std::abs(nu) <= 1.0))
        throw ValidationError("|nu| must not exceed 1");
    return quadratic_roots(0.5 * (nu + nu * nu), 1.0 - A - nu * nu, 0.5 * (nu * nu - nu));
}

cplx second_order_mode_determinant(const StabilityQuery& q, cplx A) {
    q.validate();
    // Left modes decay as i -> -infinity, so they are written with the reciprocal root.
    const cplx qa = decaying_root(-q.lambda, A, true);
    const cplx qb = decaying_root(q.lambda, A, true);
    const cplx ra = decaying_root(-q.lambda, A, false);
    const cplx rb = decaying_root(q.lambda, A, false);
    const auto ext = [](cplx r) { return 1.5 * r - 0.5 * r * r; };
    const double k = q.alpha / q.z;
    // A massless body has no inertial term, which also avoids 0 * inf at A = -1.
    const cplx inertia = q.mass == 0.0 ? cplx(0.0) : (A - 1.0) / (A + 1.0) * (2.0 * q.mass / (q.dt * q.z));

    Eigen::Matrix<cplx, 5, 5> M;
    M << 1.0 + qa, -(1.0 + qb), 0.0, 0.0, 2.0,
         0.0, 0.0, 1.0 + ra, -(1.0 + rb), 2.0,
         1.0 + qa - 2.0 * (k + 1.0) * ext(qa), 1.0 + qb + 2.0 * (k - 1.0) * ext(qb), 0.0, 0.0, -2.0 * k,
         0.0, 0.0, 1.0 + ra + 2.0 * (k - 1.0) * ext(ra), 1.0 + rb - 2.0 * (k + 1.0) * ext(rb), 2.0 * k,
         (k + 1.0) * ext(qa), (1.0 - k) * ext(qb), -(1.0 - k) * ext(ra), -(1.0 + k) * ext(rb),
         inertia + 2.0 * k;
    return M.determinant();
}

int count_unstable_modes_second_order(const StabilityQuery& q, double eps, double outer, int samples) {
    const auto winding = [&](double radius) {
        double total = 0.0;
        cplx prev = second_order_mode_determinant(q, radius);
        for (int k = 1; k <= samples; ++k) {
            const double th = 2.0 * std::numbers::pi * k / samples;
            const cplx cur = second_order_mode_determinant(q, std::polar(radius, th));
            total += std::arg(cur / prev);
            prev = cur;
        }
        return total / (2.0 * std::numbers::pi);
    };
    return static_cast<int>(std::lround(winding(outer) - winding(1.0 + eps)));
}

double empirical_growth_rate(const GrowthConfig& cfg, int n_steps) {
    if (n_steps < 4)
        throw ValidationError("growth measurement needs at least 4 steps");
    if (cfg.order != 1 && cfg.order != 2)
        throw ValidationError("scheme order must be 1 or 2");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-cfg.amplitude, cfg.amplitude);
    const auto random_field = [&](const FluidMaterial& mat, Side side) {
        FluidField1D f(Grid1D(cfg.n_cells, mat.c() * cfg.dt / cfg.lambda, side));
        for (int k = 1; k <= cfg.n_cells; ++k) {
            const double v = unif(rng), s = unif(rng);
            f.set(f.grid().sign() * k, {v, s});
        }
        return f;
    };
    State1D state{random_field(cfg.mats.left, Side::Left), random_field(cfg.mats.right, Side::Right),
                  RigidBody1D{cfg.mass, unif(rng), 0.0, 0.0}, 0.0};
    if (cfg.order == 1)
        fill_ghosts_algorithm1(state, cfg.scheme);
    else
        fill_ghosts_algorithm2(state, cfg.scheme);
    const FarFieldSource quiescent = [](Side, double, double) { return Eigen::Vector2d::Zero().eval(); };
    const auto norm = [](const State1D& s) {
        return std::max({s.left.interior_max_norm(), s.right.interior_max_norm(), std::abs(s.body.v_b)});
    };

    std::vector<double> norms{norm(state)};
    for (int n = 0; n < n_steps; ++n) {
        state = cfg.order == 1 ? step_algorithm1(state, cfg.mats, cfg.scheme, cfg.dt, quiescent)
                               : step_algorithm2(state, cfg.mats, cfg.scheme, cfg.dt, quiescent);
        const double nrm = norm(state);
        if (!std::isfinite(nrm))
            break;
        norms.push_back(nrm);
        if (nrm > 1e200 || nrm < 1e-250)
            break;
    }
    const int last = static_cast<int>(norms.size()) - 1;
    if (last < 1)
        return std::numeric_limits<double>::infinity();
    const int first = std::min(last - 1, (3 * last) / 4);
    if (norms[first] == 0.0)
        return 0.0;
    return std::pow(norms[last] / norms[first], 1.0 / (last - first));
}

} // namespace amfsi

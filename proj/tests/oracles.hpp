#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include "amfsi/exact_solution.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace oracle {

namespace odeint = boost::numeric::odeint;

// Pulse data and body forcing written out from the d'Alembert solution.
struct Pulse {
    double rhoL = 1.0, cL = std::sqrt(2.0), rhoR = 1.0, cR = std::sqrt(3.0), beta = 10.0, x0 = -0.5, m = 1.0;

    double zL() const { return rhoL * cL; }
    double zR() const { return rhoR * cR; }
    double e(double x) const { return std::exp(-beta * beta * (x - x0) * (x - x0)); }
    double de(double x) const { return -2.0 * beta * beta * (x - x0) * e(x); }
    double U0p(double x) const { return -0.5 * e(x); }
    double U0pp(double x) const { return -0.5 * de(x); }
    double V0(double x) const { return 0.5 * cL * e(x); }
    double V0p(double x) const { return 0.5 * cL * de(x); }
    double g(double t) const {
        return rhoR * cR * cR * U0p(cR * t) - rhoL * cL * cL * U0p(-cL * t) + zR() * V0(cR * t) + zL() * V0(-cL * t);
    }
    double dg(double t) const {
        return cR * (rhoR * cR * cR * U0pp(cR * t) + zR() * V0p(cR * t)) +
               cL * (rhoL * cL * cL * U0pp(-cL * t) - zL() * V0p(-cL * t));
    }
};

inline amfsi::PulseProblem problem(double mass) {
    amfsi::PulseProblem p;
    p.mass = mass;
    return p;
}

using OdeState = std::array<double, 1>;

struct OdeComparison {
    double max_deviation = 0.0;
    bool all_finite = true;
};

// Exact body velocity against an adaptive Dormand-Prince solve at 151 times on [0, 0.75].
inline OdeComparison compare_with_ode(double mass) {
    Pulse o;
    o.m = mass;
    const amfsi::PulseProblem prob = problem(mass);
    OdeState y{o.V0(0.0)};
    OdeComparison out;
    const auto rhs = [&](const OdeState& x, OdeState& dx, double t) { dx[0] = (o.g(t) - (o.zL() + o.zR()) * x[0]) / o.m; };
    auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<OdeState>());
    std::vector<double> times;
    for (int k = 0; k <= 150; ++k)
        times.push_back(0.005 * k);
    odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-6, [&](const OdeState& s, double t) {
        const double v = amfsi::body_velocity_exact(prob, t);
        out.all_finite = out.all_finite && std::isfinite(v);
        out.max_deviation = std::max(out.max_deviation, std::abs(v - s[0]));
    });
    if (!out.all_finite)
        out.max_deviation = INFINITY;
    return out;
}

} // namespace oracle

#pragma once

#include "amfsi/materials_grid.hpp"

#include <functional>

namespace amfsi {

// Gaussian pulse starting in the left fluid and striking the body.
struct PulseProblem {
    FluidMaterial left{1.0, 1.4142135623730951};
    FluidMaterial right{1.0, 1.7320508075688772};
    double mass = 1.0;
    double beta = 10.0;
    double x0 = -0.5;
    double w_b = 0.0;

    void validate() const;
};

// Initial displacement U0, its slope U0' and the initial velocity V0.
double pulse_displacement(const PulseProblem& prob, double x);
double pulse_slope(const PulseProblem& prob, double x);
double pulse_velocity(const PulseProblem& prob, double x);

// Right-hand side g(t) of m U_b'' + (z_L + z_R) U_b' = g(t).
double body_forcing(const PulseProblem& prob, double t);

// Body velocity; picks the direct closed form for m >= 0.1, the scaled form below,
// and g(t)/(z_L + z_R) for m = 0.
double body_velocity_exact(const PulseProblem& prob, double t);
double body_velocity_closed_form(const PulseProblem& prob, double t);
double body_velocity_scaled(const PulseProblem& prob, double t);

// Body displacement U_b(t) by adaptive quadrature of the velocity.
double body_displacement_exact(const PulseProblem& prob, double t);

// exp(x^2) erfc(x)
double erfcx(double x);

using BodyVelocityFn = std::function<double(double)>;

// (v, sigma) at position x on the given side at time t >= 0.
Eigen::Vector2d field_exact(const PulseProblem& prob, const BodyVelocityFn& v_b, Side side, double x, double t);
Eigen::Vector2d field_exact(const PulseProblem& prob, Side side, double x, double t);

} // namespace amfsi

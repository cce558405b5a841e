#include "amfsi/coupling1d.hpp"
#include "amfsi/errors.hpp"

namespace amfsi {

namespace {

// (3 u_1 - u_2)/2 taken from the cells nearest the body.
double extrapolate(const Eigen::VectorXd& u) {
    return 0.5 * (3.0 * u[1] - u[2]);
}

FarField far_field(const FarFieldSource& far, const FluidField1D& field, double t) {
    if (!far)
        return {};
    const Grid1D& g = field.grid();
    const int i = g.sign() * (g.n_cells + 1);
    return {far(g.side, g.x(i), t)};
}

void check_body(const RigidBody1D& body, const CouplingScheme& scheme) {
    if (!(body.mass >= 0.0))
        throw ValidationError("body mass must be non-negative");
    if (body.mass == 0.0 && scheme.alpha_L + scheme.alpha_R == 0.0)
        throw SingularBodyUpdate();
}

} // namespace

CouplingScheme CouplingScheme::traditional() {
    return {Kind::Traditional, 0.0, 0.0};
}

CouplingScheme CouplingScheme::projection(const FluidMaterial& left, const FluidMaterial& right) {
    return {Kind::Projection, left.z(), right.z()};
}

CouplingScheme CouplingScheme::custom(double alpha_L, double alpha_R) {
    if (!(alpha_L >= 0.0) || !(alpha_R >= 0.0))
        throw ValidationError("coupling weights must be non-negative");
    return {Kind::Custom, alpha_L, alpha_R};
}

InterfaceStress interface_stress_first_order(const FluidField1D& left, const FluidField1D& right,
                                             double v_b, const CouplingScheme& scheme) {
    const double sL = left.sigma(-1) + scheme.alpha_L * (v_b - left.v(-1));
    const double sR = right.sigma(1) + scheme.alpha_R * (right.v(1) - v_b);
    return {sL, sR};
}

InterfaceStress interface_stress_second_order(const FluidField1D& left, const FluidField1D& right,
                                              double v_b, const CouplingScheme& scheme) {
    const double sL = extrapolate(left.sigma()) + scheme.alpha_L * (v_b - extrapolate(left.v()));
    const double sR = extrapolate(right.sigma()) + scheme.alpha_R * (extrapolate(right.v()) - v_b);
    return {sL, sR};
}

double interface_force(const InterfaceStress& s) {
    return s.second - s.first;
}

double solve_body_backward_euler(const RigidBody1D& body, const FluidField1D& left_next,
                                 const FluidField1D& right_next, const CouplingScheme& scheme, double dt) {
    check_body(body, scheme);
    const double aL = scheme.alpha_L, aR = scheme.alpha_R;
    const double rhs = body.mass * body.v_b +
                       dt * (right_next.sigma(1) + aR * right_next.v(1) - (left_next.sigma(-1) - aL * left_next.v(-1)));
    return rhs / (body.mass + dt * (aL + aR));
}

double solve_body_trapezoidal(const RigidBody1D& body, const FluidField1D& left, const FluidField1D& right,
                              const FluidField1D& left_next, const FluidField1D& right_next,
                              const CouplingScheme& scheme, double dt) {
    check_body(body, scheme);
    const double aL = scheme.alpha_L, aR = scheme.alpha_R;
    const double h = 0.5 * dt;
    const double rhs = (body.mass - h * aL - h * aR) * body.v_b +
                       h * (extrapolate(right_next.sigma()) + extrapolate(right.sigma())) -
                       h * (extrapolate(left_next.sigma()) + extrapolate(left.sigma())) +
                       aR * h * (extrapolate(right_next.v()) + extrapolate(right.v())) +
                       aL * h * (extrapolate(left_next.v()) + extrapolate(left.v()));
    return rhs / (body.mass + h * aL + h * aR);
}

void fill_ghost_first_order(FluidField1D& left, FluidField1D& right, double v_b, const InterfaceStress& s) {
    left.set(0, {v_b, s.first});
    right.set(0, {v_b, s.second});
}

void fill_ghost_second_order(FluidField1D& left, FluidField1D& right, double v_b, const InterfaceStress& s) {
    left.set(0, {2.0 * v_b - left.v(-1), 2.0 * s.first - left.sigma(-1)});
    right.set(0, {2.0 * v_b - right.v(1), 2.0 * s.second - right.sigma(1)});
}

void fill_ghosts_algorithm1(State1D& state, const CouplingScheme& scheme) {
    const InterfaceStress s = interface_stress_first_order(state.left, state.right, state.body.v_b, scheme);
    fill_ghost_first_order(state.left, state.right, state.body.v_b, s);
}

void fill_ghosts_algorithm2(State1D& state, const CouplingScheme& scheme) {
    const InterfaceStress s = interface_stress_second_order(state.left, state.right, state.body.v_b, scheme);
    fill_ghost_second_order(state.left, state.right, state.body.v_b, s);
}

State1D step_algorithm1(const State1D& state, const Materials1D& mats, const CouplingScheme& scheme, double dt,
                        const FarFieldSource& far) {
    State1D next{upwind_step(state.left, mats.left, dt, far_field(far, state.left, state.t)),
                 upwind_step(state.right, mats.right, dt, far_field(far, state.right, state.t)),
                 state.body, state.t + dt};
    next.body.v_b = solve_body_backward_euler(state.body, next.left, next.right, scheme, dt);
    next.body.x_b = state.body.x_b + dt * next.body.v_b;
    fill_ghosts_algorithm1(next, scheme);
    return next;
}

State1D step_algorithm2(const State1D& state, const Materials1D& mats, const CouplingScheme& scheme, double dt,
                        const FarFieldSource& far) {
    State1D next{lax_wendroff_step(state.left, mats.left, dt, far_field(far, state.left, state.t)),
                 lax_wendroff_step(state.right, mats.right, dt, far_field(far, state.right, state.t)),
                 state.body, state.t + dt};
    next.body.v_b = solve_body_trapezoidal(state.body, state.left, state.right, next.left, next.right, scheme, dt);
    next.body.x_b = state.body.x_b + 0.5 * dt * (state.body.v_b + next.body.v_b);
    fill_ghosts_algorithm2(next, scheme);
    return next;
}

} // namespace amfsi

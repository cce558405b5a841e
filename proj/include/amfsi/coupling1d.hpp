#pragma once

#include "amfsi/fluid1d.hpp"

#include <functional>
#include <utility>

namespace amfsi {

struct RigidBody1D {
    double mass = 1.0;
    double v_b = 0.0;
    double x_b = 0.0;
    double w_b = 0.0;
};

struct CouplingScheme {
    enum class Kind { Traditional, Projection, Custom };

    Kind kind;
    double alpha_L;
    double alpha_R;

    static CouplingScheme traditional();
    static CouplingScheme projection(const FluidMaterial& left, const FluidMaterial& right);
    static CouplingScheme custom(double alpha_L, double alpha_R);
};

struct Materials1D {
    FluidMaterial left;
    FluidMaterial right;
};

struct State1D {
    FluidField1D left;
    FluidField1D right;
    RigidBody1D body;
    double t = 0.0;
};

// (sigma_IL, sigma_IR)
using InterfaceStress = std::pair<double, double>;

// Supplies the (v, sigma) far-ghost value for a side at position x and time t.
// An empty source selects zeroth-order extrapolation.
using FarFieldSource = std::function<Eigen::Vector2d(Side, double x, double t)>;

InterfaceStress interface_stress_first_order(const FluidField1D& left, const FluidField1D& right,
                                             double v_b, const CouplingScheme& scheme);

InterfaceStress interface_stress_second_order(const FluidField1D& left, const FluidField1D& right,
                                              double v_b, const CouplingScheme& scheme);

// Backward-Euler body velocity from interior values at the new time level.
double solve_body_backward_euler(const RigidBody1D& body, const FluidField1D& left_next,
                                 const FluidField1D& right_next, const CouplingScheme& scheme, double dt);

// Trapezoidal body velocity from extrapolated interface values at both time levels.
double solve_body_trapezoidal(const RigidBody1D& body, const FluidField1D& left, const FluidField1D& right,
                              const FluidField1D& left_next, const FluidField1D& right_next,
                              const CouplingScheme& scheme, double dt);

// Net interface force sigma_IR - sigma_IL.
double interface_force(const InterfaceStress& s);

void fill_ghost_first_order(FluidField1D& left, FluidField1D& right, double v_b, const InterfaceStress& s);
void fill_ghost_second_order(FluidField1D& left, FluidField1D& right, double v_b, const InterfaceStress& s);

// Make the ghosts of a state consistent with its interior and body velocity.
void fill_ghosts_algorithm1(State1D& state, const CouplingScheme& scheme);
void fill_ghosts_algorithm2(State1D& state, const CouplingScheme& scheme);

// Upwind interior, backward-Euler body, first-order ghosts.
State1D step_algorithm1(const State1D& state, const Materials1D& mats, const CouplingScheme& scheme, double dt,
                        const FarFieldSource& far = {});

// Lax-Wendroff interior, trapezoidal body, second-order ghosts.
State1D step_algorithm2(const State1D& state, const Materials1D& mats, const CouplingScheme& scheme, double dt,
                        const FarFieldSource& far = {});

} // namespace amfsi

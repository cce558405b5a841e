#pragma once

#include "amfsi/addedmass.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace amfsi {

using Vector18 = Eigen::Matrix<double, 18, 1>;
using Matrix18 = Eigen::Matrix<double, 18, 18>;

// Position, velocity, angular velocity and principal-axes matrix. Also used for time derivatives.
struct RigidBodyState3D {
    Eigen::Vector3d x_b = Eigen::Vector3d::Zero();
    Eigen::Vector3d v_b = Eigen::Vector3d::Zero();
    Eigen::Vector3d omega = Eigen::Vector3d::Zero();
    Eigen::Matrix3d E = Eigen::Matrix3d::Identity();

    // [x_b, v_b, omega, E column-major]
    Vector18 pack() const;
    static RigidBodyState3D unpack(const Vector18& y);
};

// Mass and principal moments of inertia; the world-frame tensor is E diag(moments) E^T.
struct BodyInertia {
    double mass = 1.0;
    Eigen::Vector3d moments = Eigen::Vector3d::Ones();

    Eigen::Matrix3d tensor(const Eigen::Matrix3d& E) const;
    void validate() const;
};

struct PartialForcing {
    Eigen::Vector3d F_tilde = Eigen::Vector3d::Zero();
    Eigen::Vector3d T_tilde = Eigen::Vector3d::Zero();
    AddedMassTensors tensors;
};

// Surface quadrature point carrying the predicted fluid pressure and velocity.
struct FluidSurfaceSample {
    SurfaceSample surface;
    double p_f = 0.0;
    Eigen::Vector3d v_f = Eigen::Vector3d::Zero();
};

PartialForcing partial_forcing_from_surface(const std::vector<FluidSurfaceSample>& samples,
                                            const Eigen::Vector3d& f_b, const Eigen::Vector3d& g_b,
                                            const RigidBodyState3D& state);

// (F, T) acting on the body.
std::pair<Eigen::Vector3d, Eigen::Vector3d> force_and_torque(const RigidBodyState3D& state,
                                                             const PartialForcing& forcing);

// Velocity of the body surface point r.
Eigen::Vector3d surface_velocity(const RigidBodyState3D& state, const Eigen::Vector3d& r);

// Residual of the added-mass Newton-Euler system for a candidate time derivative.
Vector18 added_mass_rhs_residual(const RigidBodyState3D& state_dot, const RigidBodyState3D& state,
                                 const PartialForcing& forcing, const BodyInertia& inertia);

struct DIRKTableau {
    int stages;
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    int order;

    static DIRKTableau dirk1();
    static DIRKTableau dirk3();

    // Largest violation of the order conditions up to the tableau's order.
    double order_condition_defect() const;
};

using ForcingProvider = std::function<PartialForcing(double t)>;

// One step from t to t + dt. Each stage is solved by Newton's method on all 18 unknowns.
RigidBodyState3D dirk_step(const RigidBodyState3D& state, const BodyInertia& inertia,
                           const ForcingProvider& forcing, const DIRKTableau& tableau, double t, double dt);

// Polar projection of E onto the nearest orthogonal matrix.
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& E);

struct ProjectedSurfaceState {
    double p;
    Eigen::Vector3d v;
    double rho;
};

ProjectedSurfaceState project_surface_state(double p_pred, const Eigen::Vector3d& v_pred, double rho_pred,
                                            double z_pred, const Eigen::Vector3d& n,
                                            const Eigen::Vector3d& v_body_local, double gamma);

} // namespace amfsi

#include "amfsi/rigidbody3d.hpp"
#include "amfsi/errors.hpp"

#include <cmath>
#include <limits>

namespace amfsi {

namespace {

constexpr int max_newton = 25;
constexpr double singular_condition = 1e14;

double inf_norm(const Eigen::MatrixXd& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

// d/dY of the residual at fixed K, plus s times d/dK.
Matrix18 stage_jacobian(const RigidBodyState3D& Y, const RigidBodyState3D& K, const PartialForcing& f,
                        const BodyInertia& inertia, double s) {
    const Eigen::Matrix3d I3 = Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d W = cross_matrix(Y.omega);
    const Eigen::Matrix3d A = inertia.tensor(Y.E);
    const Eigen::Matrix3d Lam = inertia.moments.asDiagonal();
    const AddedMassTensors& t = f.tensors;

    Matrix18 J = Matrix18::Zero();
    J.block<3, 3>(0, 0) = s * I3;
    J.block<3, 3>(0, 3) = -I3;

    J.block<3, 3>(3, 3) = s * inertia.mass * I3 + t.avv;
    J.block<3, 3>(3, 6) = t.avw;

    J.block<3, 3>(6, 3) = t.awv;
    J.block<3, 3>(6, 6) = s * A + t.aww + W * A - cross_matrix(A * Y.omega);
    for (int col = 0; col < 3; ++col)
        for (int row = 0; row < 3; ++row) {
            Eigen::Matrix3d dE = Eigen::Matrix3d::Zero();
            dE(row, col) = 1.0;
            const Eigen::Matrix3d dA = dE * Lam * Y.E.transpose() + Y.E * Lam * dE.transpose();
            J.block<3, 1>(6, 9 + 3 * col + row) = dA * K.omega + W * dA * Y.omega;
        }

    for (int col = 0; col < 3; ++col) {
        J.block<3, 3>(9 + 3 * col, 9 + 3 * col) = s * I3 - W;
        J.block<3, 3>(9 + 3 * col, 6) = cross_matrix(Y.E.col(col));
    }
    return J;
}

void check_stage_matrix(const RigidBodyState3D& y, const PartialForcing& f, const BodyInertia& inertia,
                        double gdt) {
    const Eigen::Matrix3d A = inertia.tensor(y.E);
    const Eigen::Matrix3d W = cross_matrix(y.omega);
    Eigen::Matrix<double, 6, 6> S;
    S << inertia.mass * Eigen::Matrix3d::Identity() + gdt * f.tensors.avv, gdt * f.tensors.avw,
         gdt * f.tensors.awv, A + gdt * (f.tensors.aww + W * A);
    const Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(S);
    const auto& sv = svd.singularValues();
    const double cond = sv[5] > 0.0 ? sv[0] / sv[5] : std::numeric_limits<double>::infinity();
    if (!(cond < singular_condition))
        throw SingularStage(cond);
}

} // namespace

Vector18 RigidBodyState3D::pack() const {
    Vector18 y;
    y << x_b, v_b, omega, E.reshaped();
    return y;
}

RigidBodyState3D RigidBodyState3D::unpack(const Vector18& y) {
    RigidBodyState3D s;
    s.x_b = y.segment<3>(0);
    s.v_b = y.segment<3>(3);
    s.omega = y.segment<3>(6);
    s.E = y.segment<9>(9).reshaped(3, 3);
    return s;
}

Eigen::Matrix3d BodyInertia::tensor(const Eigen::Matrix3d& E) const {
    return E * moments.asDiagonal() * E.transpose();
}

void BodyInertia::validate() const {
    if (!(mass >= 0.0) || !(moments.minCoeff() >= 0.0))
        throw ValidationError("mass and principal moments must be non-negative");
}

PartialForcing partial_forcing_from_surface(const std::vector<FluidSurfaceSample>& samples,
                                            const Eigen::Vector3d& f_b, const Eigen::Vector3d& g_b,
                                            const RigidBodyState3D& state) {
    PartialForcing out;
    std::vector<SurfaceSample> surface;
    surface.reserve(samples.size());
    out.F_tilde = f_b;
    out.T_tilde = g_b;
    for (const auto& s : samples) {
        const SurfaceSample& q = s.surface;
        const Eigen::Vector3d traction = (-s.p_f + q.z_f * q.n.dot(s.v_f)) * q.n;
        out.F_tilde += traction * q.ds;
        out.T_tilde += (q.r - state.x_b).cross(traction) * q.ds;
        surface.push_back(q);
    }
    if (!surface.empty())
        out.tensors = added_mass_tensors(surface, state.x_b);
    return out;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> force_and_torque(const RigidBodyState3D& state,
                                                             const PartialForcing& f) {
    const AddedMassTensors& t = f.tensors;
    return {-t.avv * state.v_b - t.avw * state.omega + f.F_tilde,
            -t.awv * state.v_b - t.aww * state.omega + f.T_tilde};
}

Eigen::Vector3d surface_velocity(const RigidBodyState3D& state, const Eigen::Vector3d& r) {
    return state.v_b + state.omega.cross(r - state.x_b);
}

Vector18 added_mass_rhs_residual(const RigidBodyState3D& yd, const RigidBodyState3D& y, const PartialForcing& f,
                                 const BodyInertia& inertia) {
    const AddedMassTensors& t = f.tensors;
    const Eigen::Matrix3d W = cross_matrix(y.omega);
    const Eigen::Matrix3d A = inertia.tensor(y.E);
    Vector18 r;
    r.segment<3>(0) = yd.x_b - y.v_b;
    r.segment<3>(3) = inertia.mass * yd.v_b + t.avv * y.v_b + t.avw * y.omega - f.F_tilde;
    r.segment<3>(6) = A * yd.omega + t.awv * y.v_b + (t.aww + W * A) * y.omega - f.T_tilde;
    r.segment<9>(9) = (yd.E - W * y.E).reshaped();
    return r;
}

DIRKTableau DIRKTableau::dirk1() {
    DIRKTableau t{1, Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), 1};
    return t;
}

DIRKTableau DIRKTableau::dirk3() {
    const double g = 0.5 + std::sqrt(3.0) / 6.0;
    DIRKTableau t{2, Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd(2), Eigen::VectorXd(2), 3};
    t.a << g, 0.0,
           -std::sqrt(3.0) / 3.0, g;
    t.b << 0.5, 0.5;
    t.c << g, 1.0 - g;
    return t;
}

double DIRKTableau::order_condition_defect() const {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(stages);
    double d = std::abs(b.sum() - 1.0);
    d = std::max(d, inf_norm(a * ones - c));
    if (order >= 2)
        d = std::max(d, std::abs(b.dot(c) - 0.5));
    if (order >= 3) {
        d = std::max(d, std::abs(b.dot(c.cwiseProduct(c)) - 1.0 / 3.0));
        d = std::max(d, std::abs(b.dot(a * c) - 1.0 / 6.0));
    }
    return d;
}

Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& E) {
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(E, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

RigidBodyState3D dirk_step(const RigidBodyState3D& state, const BodyInertia& inertia,
                           const ForcingProvider& forcing, const DIRKTableau& tableau, double t, double dt) {
    inertia.validate();
    if (!(dt > 0.0))
        throw ValidationError("time step must be positive");
    const Vector18 y0 = state.pack();
    std::vector<Vector18> K(tableau.stages);
    for (int i = 0; i < tableau.stages; ++i) {
        const double gdt = tableau.a(i, i) * dt;
        const double s = 1.0 / gdt;
        const PartialForcing f = forcing(t + tableau.c[i] * dt);
        Vector18 base = y0;
        for (int j = 0; j < i; ++j)
            base += dt * tableau.a(i, j) * K[j];
        check_stage_matrix(RigidBodyState3D::unpack(base), f, inertia, gdt);

        const double coeff = std::max({1.0, inertia.mass, inertia.moments.maxCoeff()});
        const double fscale = std::max(f.F_tilde.cwiseAbs().maxCoeff(), f.T_tilde.cwiseAbs().maxCoeff());
        const double tscale = inf_norm(f.tensors.composite());
        Vector18 Y = base;
        bool converged = false;
        double res = 0.0;
        for (int it = 0; it < max_newton && !converged; ++it) {
            const Vector18 k = s * (Y - base);
            const auto Ys = RigidBodyState3D::unpack(Y);
            const auto Ks = RigidBodyState3D::unpack(k);
            const Vector18 G = added_mass_rhs_residual(Ks, Ys, f, inertia);
            res = G.cwiseAbs().maxCoeff();
            const double ymax = 1.0 + Y.cwiseAbs().maxCoeff();
            const double scale = 1.0 + fscale + (s * coeff + tscale + 1.0) * ymax;
            if (!std::isfinite(res))
                break;
            if (res <= 1e-12 * scale) {
                converged = true;
                break;
            }
            const Vector18 delta = stage_jacobian(Ys, Ks, f, inertia, s).partialPivLu().solve(-G);
            Y += delta;
            if (delta.cwiseAbs().maxCoeff() <= 4.0 * std::numeric_limits<double>::epsilon() * ymax)
                converged = true;
        }
        if (!converged)
            throw NewtonDivergence(max_newton, res);
        K[i] = s * (Y - base);
    }
    Vector18 y1 = y0;
    for (int i = 0; i < tableau.stages; ++i)
        y1 += dt * tableau.b[i] * K[i];
    RigidBodyState3D out = RigidBodyState3D::unpack(y1);
    const double drift = (out.E.transpose() * out.E - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (drift > 1e-10)
        out.E = orthonormalize(out.E);
    return out;
}

ProjectedSurfaceState project_surface_state(double p_pred, const Eigen::Vector3d& v_pred, double rho_pred,
                                            double z_pred, const Eigen::Vector3d& n,
                                            const Eigen::Vector3d& v_body_local, double gamma) {
    if (!(p_pred > 0.0) || !(rho_pred > 0.0) || !(gamma > 1.0) || !(z_pred >= 0.0))
        throw ValidationError("projection needs p > 0, rho > 0, z >= 0 and gamma > 1");
    const double p = p_pred - z_pred * n.dot(v_pred - v_body_local);
    if (!(p > 0.0))
        throw NonphysicalPressure(p);
    return {p, v_body_local, rho_pred * std::pow(p / p_pred, 1.0 / gamma)};
}

} // namespace amfsi

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amfsi/errors.hpp"
#include "amfsi/rigidbody3d.hpp"

#include <cmath>
#include <random>

using namespace amfsi;

namespace {

Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
    Eigen::Matrix3d W;
    W << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    return W;
}

Eigen::Matrix3d rot_z(double th) {
    return Eigen::AngleAxisd(th, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

// Newton-Euler equations with added mass, written independently as y' = f(y) in packed form.
Eigen::VectorXd rhs(const Eigen::VectorXd& y, const PartialForcing& f, double mass, const Eigen::Vector3d& moments) {
    const Eigen::Vector3d v = y.segment<3>(3), w = y.segment<3>(6);
    const Eigen::Matrix3d E = y.segment<9>(9).reshaped(3, 3);
    const Eigen::Matrix3d A = E * moments.asDiagonal() * E.transpose();
    const Eigen::Vector3d F = f.F_tilde - f.tensors.avv * v - f.tensors.avw * w;
    const Eigen::Vector3d T = f.T_tilde - f.tensors.awv * v - f.tensors.aww * w - w.cross(A * w);
    Eigen::VectorXd out(18);
    out << v, F / mass, A.lu().solve(T), (skew(w) * E).reshaped();
    return out;
}

// Backward Euler by Newton with a finite-difference Jacobian.
Eigen::VectorXd backward_euler(const Eigen::VectorXd& y0, const PartialForcing& f, double mass,
                               const Eigen::Vector3d& moments, double dt) {
    Eigen::VectorXd y = y0;
    const auto G = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return x - y0 - dt * rhs(x, f, mass, moments); };
    for (int it = 0; it < 30; ++it) {
        const Eigen::VectorXd g = G(y);
        if (g.cwiseAbs().maxCoeff() < 1e-15)
            break;
        Eigen::MatrixXd J(18, 18);
        for (int k = 0; k < 18; ++k) {
            const double h = 1e-7 * std::max(1.0, std::abs(y[k]));
            Eigen::VectorXd yp = y, ym = y;
            yp[k] += h;
            ym[k] -= h;
            J.col(k) = (G(yp) - G(ym)) / (2 * h);
        }
        y -= J.fullPivLu().solve(g);
    }
    return y;
}

AddedMassTensors sample_tensors(const Eigen::Vector3d& about) {
    return added_mass_tensors(sample_surface({Prism{1.0, 0.7, 0.4}}, constant_impedance(0.8), 16), about);
}

AddedMassTensors scaled(AddedMassTensors t, double k) {
    t.avv *= k;
    t.avw *= k;
    t.awv *= k;
    t.aww *= k;
    return t;
}

RigidBodyState3D random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    RigidBodyState3D s;
    s.x_b = Eigen::Vector3d(g(rng), g(rng), g(rng));
    s.v_b = Eigen::Vector3d(g(rng), g(rng), g(rng));
    s.omega = Eigen::Vector3d(g(rng), g(rng), g(rng));
    s.E = Eigen::AngleAxisd(g(rng), Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized()).toRotationMatrix();
    return s;
}

// Stability function R(z) = 1 + z b^T (I - z a)^{-1} 1 of a tableau.
double stability_function(const DIRKTableau& t, double z) {
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(t.stages, t.stages) - z * t.a;
    return 1.0 + z * t.b.dot(M.lu().solve(Eigen::VectorXd::Ones(t.stages)));
}

} // namespace

TEST_CASE("state packing round trip") {
    std::mt19937_64 rng(1);
    const RigidBodyState3D s = random_state(rng);
    const Vector18 y = s.pack();
    CHECK(y.segment<3>(6) == s.omega);
    CHECK(y[9 + 3 * 1 + 2] == s.E(2, 1));
    CHECK(RigidBodyState3D::unpack(y).pack() == y);
}

TEST_CASE("partial forcing from a uniform pressure on a closed surface") {
    // Uniform pressure and zero fluid velocity exert no net force or torque.
    const auto surf = sample_surface({Ellipsoid{1.0, 0.6, 0.4}}, constant_impedance(1.0), 24);
    std::vector<FluidSurfaceSample> samples;
    for (const auto& s : surf)
        samples.push_back({s, 3.0, Eigen::Vector3d::Zero()});
    RigidBodyState3D st;
    const PartialForcing f = partial_forcing_from_surface(samples, Eigen::Vector3d(0, 0, -9.8), Eigen::Vector3d(1, 0, 0), st);
    CHECK((f.F_tilde - Eigen::Vector3d(0, 0, -9.8)).norm() < 1e-10);
    CHECK((f.T_tilde - Eigen::Vector3d(1, 0, 0)).norm() < 1e-10);
    CHECK((f.tensors.composite() - added_mass_tensors(surf).composite()).norm() < 1e-14);
}

TEST_CASE("force and torque match the projected surface traction") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    RigidBodyState3D st = random_state(rng);
    st.x_b = Eigen::Vector3d(0.1, 0.2, -0.1);
    BodyShape shape{Ellipsoid{1.0, 0.8, 0.5}};
    shape.center_of_mass = st.x_b;
    const auto z_var = [](const Eigen::Vector3d& r, const Eigen::Vector2d&) { return 1.0 + 0.3 * r[0]; };
    const auto surf = sample_surface(shape, z_var, 24);
    std::vector<FluidSurfaceSample> samples;
    for (const auto& s : surf)
        samples.push_back({s, 50.0 + g(rng), Eigen::Vector3d(g(rng), g(rng), g(rng))});
    const Eigen::Vector3d f_b(0.3, -1.0, 2.0), g_b(-0.5, 0.1, 0.2);
    const PartialForcing pf = partial_forcing_from_surface(samples, f_b, g_b, st);
    const auto [F, T] = force_and_torque(st, pf);
    Eigen::Vector3d F_ref = f_b, T_ref = g_b;
    for (const auto& s : samples) {
        const ProjectedSurfaceState ps = project_surface_state(s.p_f, s.v_f, 1.0, s.surface.z_f, s.surface.n,
                                                               surface_velocity(st, s.surface.r), 1.4);
        F_ref += -ps.p * s.surface.n * s.surface.ds;
        T_ref += (s.surface.r - st.x_b).cross(-ps.p * s.surface.n) * s.surface.ds;
    }
    CHECK((F - F_ref).norm() < 1e-10 * F_ref.norm());
    CHECK((T - T_ref).norm() < 1e-10 * (1.0 + T_ref.norm()));
}

TEST_CASE("surface velocity") {
    RigidBodyState3D st;
    st.x_b = Eigen::Vector3d(1, 0, 0);
    st.v_b = Eigen::Vector3d(0, 0, 1);
    st.omega = Eigen::Vector3d(0, 0, 2);
    CHECK((surface_velocity(st, Eigen::Vector3d(2, 0, 0)) - Eigen::Vector3d(0, 2, 1)).norm() < 1e-15);
}

TEST_CASE("residual matches a dense reference") {
    std::mt19937_64 rng(3);
    const Eigen::Vector3d moments(1.0, 2.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const RigidBodyState3D y = random_state(rng), yd = random_state(rng);
        PartialForcing f;
        f.tensors = sample_tensors(Eigen::Vector3d(0.05 * k, 0.1, 0.0));
        f.F_tilde = Eigen::Vector3d(1, 2, 3);
        f.T_tilde = Eigen::Vector3d(-1, 0.5, 0.25);
        const BodyInertia inertia{1.5, moments};
        const Vector18 r = added_mass_rhs_residual(yd, y, f, inertia);
        // Scaled by the rows' mass and inertia factors the residual is yd - f(y).
        Eigen::VectorXd yv = y.pack(), ydv = yd.pack();
        const Eigen::VectorXd d = ydv - rhs(yv, f, inertia.mass, moments);
        const Eigen::Matrix3d A = inertia.tensor(y.E);
        CHECK((r.segment<3>(0) - d.segment<3>(0)).norm() < 1e-12);
        CHECK((r.segment<3>(3) - inertia.mass * d.segment<3>(3)).norm() < 1e-12);
        CHECK((r.segment<3>(6) - A * d.segment<3>(6)).norm() < 1e-11);
        CHECK((r.segment<9>(9) - d.segment<9>(9)).norm() < 1e-12);
    }
}

TEST_CASE("tableaux satisfy their order conditions") {
    CHECK(DIRKTableau::dirk1().order_condition_defect() < 1e-15);
    CHECK(DIRKTableau::dirk3().order_condition_defect() < 1e-15);
    const DIRKTableau t = DIRKTableau::dirk3();
    CHECK(t.a(0, 0) == doctest::Approx(0.5 + std::sqrt(3.0) / 6.0).epsilon(1e-15));
    CHECK(t.a(1, 1) == t.a(0, 0));
    CHECK(stability_function(t, -1e12) == doctest::Approx(1.0 - std::sqrt(3.0)).epsilon(1e-9));
    DIRKTableau broken = t;
    broken.b << 0.4, 0.6;
    CHECK(broken.order_condition_defect() > 1e-3);
}

TEST_CASE("first-order DIRK is backward Euler") {
    std::mt19937_64 rng(4);
    const Eigen::Vector3d moments(1.0, 2.0, 3.0);
    for (int k = 0; k < 5; ++k) {
        RigidBodyState3D st = random_state(rng);
        PartialForcing f;
        f.tensors = sample_tensors(Eigen::Vector3d(0.1, 0.0, 0.05 * k));
        f.F_tilde = Eigen::Vector3d(0.5, -1, 2);
        f.T_tilde = Eigen::Vector3d(0.1, 0.2, -0.3);
        const double dt = 0.05;
        const RigidBodyState3D out = dirk_step(st, {2.0, moments}, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, dt);
        const Eigen::VectorXd ref = backward_euler(st.pack(), f, 2.0, moments, dt);
        const Vector18 got = out.pack();
        CHECK((got.head<9>() - ref.head<9>()).cwiseAbs().maxCoeff() < 1e-11);
        const Eigen::Matrix3d E_ref = orthonormalize(ref.segment<9>(9).reshaped(3, 3));
        CHECK((out.E - E_ref).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("scalar decay matches the one-step formula") {
    const double m = 2.0, a = 3.0, dt = 0.1;
    PartialForcing f;
    f.tensors.avv = a * Eigen::Matrix3d::Identity();
    f.tensors.aww = Eigen::Matrix3d::Identity();
    RigidBodyState3D st;
    st.v_b = Eigen::Vector3d(1.0, -2.0, 0.5);
    const RigidBodyState3D out = dirk_step(st, {m, Eigen::Vector3d::Ones()}, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, dt);
    CHECK((out.v_b - st.v_b * m / (m + dt * a)).norm() < 1e-14);
    for (const DIRKTableau& t : {DIRKTableau::dirk1(), DIRKTableau::dirk3()}) {
        const RigidBodyState3D o = dirk_step(st, {m, Eigen::Vector3d::Ones()}, [&](double) { return f; }, t, 0.0, dt);
        CHECK((o.v_b - stability_function(t, -dt * a / m) * st.v_b).norm() < 1e-13);
    }
}

TEST_CASE("rest with no forcing is a fixed point") {
    PartialForcing f;
    f.tensors = sample_tensors(Eigen::Vector3d::Zero());
    RigidBodyState3D st;
    st.x_b = Eigen::Vector3d(1, 2, 3);
    st.E = rot_z(0.4);
    const RigidBodyState3D out = dirk_step(st, {1.0, Eigen::Vector3d(1, 2, 3)}, [&](double) { return f; }, DIRKTableau::dirk3(), 0.0, 0.3);
    CHECK(out.pack() == st.pack());
}

TEST_CASE("principal axes stay orthonormal over a long tumbling run") {
    PartialForcing f;
    f.tensors = sample_tensors(Eigen::Vector3d(0.05, 0.0, 0.0));
    RigidBodyState3D st;
    st.omega = Eigen::Vector3d(0.3, 2.0, 0.1);
    const BodyInertia inertia{1.0, Eigen::Vector3d(1.0, 2.0, 3.0)};
    for (int k = 0; k < 400; ++k)
        st = dirk_step(st, inertia, [&](double) { return f; }, DIRKTableau::dirk3(), 0.05 * k, 0.05);
    CHECK((st.E.transpose() * st.E - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(st.E.determinant() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("stiff added mass stays bounded") {
    // Added-mass to body-mass ratio times dt of 1e6.
    const double m = 1.0, dt = 1e-3, a = 1e6 * m / dt;
    PartialForcing f;
    f.tensors.avv = a * Eigen::Matrix3d::Identity();
    f.tensors.aww = a * Eigen::Matrix3d::Identity();
    RigidBodyState3D st;
    st.v_b = Eigen::Vector3d(1, 1, 1);
    st.omega = Eigen::Vector3d(0, 0, 1);
    for (const DIRKTableau& t : {DIRKTableau::dirk1(), DIRKTableau::dirk3()}) {
        RigidBodyState3D s = st;
        for (int k = 0; k < 50; ++k) {
            s = dirk_step(s, {m, Eigen::Vector3d::Ones()}, [&](double) { return f; }, t, k * dt, dt);
            CHECK(s.v_b.norm() <= st.v_b.norm());
            CHECK(s.omega.norm() <= st.omega.norm());
        }
    }
}

TEST_CASE("third-order DIRK converges at third order") {
    // Manufactured spin about z with a translating body; tensors fixed in time. The stage times are
    // Gauss points, so weakly coupled problems integrate at fourth order; strong added mass exposes
    // the third-order error of the stability function.
    const BodyInertia inertia{1.3, Eigen::Vector3d(1.0, 2.0, 3.0)};
    const AddedMassTensors tens = scaled(sample_tensors(Eigen::Vector3d(0.1, -0.05, 0.0)), 8.0);
    const auto v = [](double t) { return Eigen::Vector3d(std::cos(t), std::sin(2 * t), t * t); };
    const auto vd = [](double t) { return Eigen::Vector3d(-std::sin(t), 2 * std::cos(2 * t), 2 * t); };
    const auto x = [](double t) { return Eigen::Vector3d(std::sin(t), 0.5 - 0.5 * std::cos(2 * t), t * t * t / 3); };
    const auto w = [](double t) { return Eigen::Vector3d(0, 0, 2 + std::sin(t)); };
    const auto wd = [](double t) { return Eigen::Vector3d(0, 0, std::cos(t)); };
    const auto E = [](double t) { return rot_z(2 * t + 1 - std::cos(t)); };
    const ForcingProvider forcing = [&](double t) {
        PartialForcing f;
        f.tensors = tens;
        const Eigen::Matrix3d A = inertia.tensor(E(t));
        f.F_tilde = inertia.mass * vd(t) + tens.avv * v(t) + tens.avw * w(t);
        f.T_tilde = A * wd(t) + tens.awv * v(t) + tens.aww * w(t) + w(t).cross(A * w(t));
        return f;
    };
    std::vector<double> err;
    for (int n : {10, 20, 40, 80}) {
        RigidBodyState3D s;
        s.x_b = x(0);
        s.v_b = v(0);
        s.omega = w(0);
        s.E = E(0);
        const double dt = 1.0 / n;
        for (int k = 0; k < n; ++k)
            s = dirk_step(s, inertia, forcing, DIRKTableau::dirk3(), k * dt, dt);
        err.push_back(std::max({(s.x_b - x(1)).norm(), (s.v_b - v(1)).norm(), (s.omega - w(1)).norm(),
                                (s.E - E(1)).norm()}));
    }
    for (std::size_t k = 1; k < err.size(); ++k) {
        const double rate = std::log2(err[k - 1] / err[k]);
        CHECK(rate > 2.7);
        CHECK(rate < 3.3);
    }
}

TEST_CASE("instantaneous response of a massless body") {
    // With zero mass the velocity is fixed by the applied force at once: v = F / c.
    const double c = 2.5;
    PartialForcing f;
    f.tensors.avv = c * Eigen::Matrix3d::Identity();
    f.tensors.aww = Eigen::Matrix3d::Identity();
    f.F_tilde = Eigen::Vector3d(1.0, -2.0, 4.0);
    const Eigen::Vector3d target = f.F_tilde / c;
    const BodyInertia inertia{0.0, Eigen::Vector3d::Ones()};
    const RigidBodyState3D one = dirk_step({}, inertia, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, 0.1);
    CHECK((one.v_b - target).norm() < 1e-14);
    // The two-stage scheme approaches the same velocity geometrically with ratio 1 - sqrt(3).
    RigidBodyState3D s;
    Eigen::Vector3d prev = s.v_b - target;
    for (int k = 0; k < 6; ++k) {
        s = dirk_step(s, inertia, [&](double) { return f; }, DIRKTableau::dirk3(), 0.1 * k, 0.1);
        const Eigen::Vector3d e = s.v_b - target;
        CHECK((e - (1.0 - std::sqrt(3.0)) * prev).norm() < 1e-12);
        prev = e;
    }
}

TEST_CASE("massless body without added mass is singular") {
    PartialForcing f;
    f.F_tilde = Eigen::Vector3d(1, 0, 0);
    CHECK_THROWS_AS(dirk_step({}, {0.0, Eigen::Vector3d::Zero()}, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, 0.1),
                    SingularStage);
    CHECK_THROWS_AS(dirk_step({}, {-1.0, Eigen::Vector3d::Ones()}, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, 0.1),
                    ValidationError);
    CHECK_THROWS_AS(dirk_step({}, {1.0, Eigen::Vector3d::Ones()}, [&](double) { return f; }, DIRKTableau::dirk1(), 0.0, 0.0),
                    ValidationError);
}

TEST_CASE("surface state projection") {
    const Eigen::Vector3d n = Eigen::Vector3d::UnitX();
    const ProjectedSurfaceState s = project_surface_state(1.0, Eigen::Vector3d(0.5, 0.3, 0), 1.2, 1.0, n,
                                                          Eigen::Vector3d::Zero(), 1.4);
    CHECK(s.p == doctest::Approx(0.5));
    CHECK(s.v.norm() == 0.0);
    // Isentropic density update keeps p / rho^gamma.
    CHECK(s.p / std::pow(s.rho, 1.4) == doctest::Approx(1.0 / std::pow(1.2, 1.4)).epsilon(1e-12));
    CHECK_THROWS_AS(project_surface_state(1.0, Eigen::Vector3d(2, 0, 0), 1.0, 1.0, n, Eigen::Vector3d::Zero(), 1.4),
                    NonphysicalPressure);
    CHECK_THROWS_AS(project_surface_state(0.0, Eigen::Vector3d::Zero(), 1.0, 1.0, n, Eigen::Vector3d::Zero(), 1.4),
                    ValidationError);
    CHECK_THROWS_AS(project_surface_state(1.0, Eigen::Vector3d::Zero(), -1.0, 1.0, n, Eigen::Vector3d::Zero(), 1.4),
                    ValidationError);
    CHECK_THROWS_AS(project_surface_state(1.0, Eigen::Vector3d::Zero(), 1.0, 1.0, n, Eigen::Vector3d::Zero(), 1.0),
                    ValidationError);
}

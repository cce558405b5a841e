#include "amfsi/fluid1d.hpp"
#include "amfsi/errors.hpp"

namespace amfsi {

namespace {

void check_cfl(const FluidMaterial& mat, double dt, double dx) {
    const double lambda = cfl_number(mat, dt, dx);
    if (!(dt > 0.0))
        throw ValidationError("time step must be positive");
    if (lambda > 1.0 + 1e-12)
        throw CflViolation(lambda);
}

// Values at indices 0..sign*(n+1) in storage order, with the far ghost appended.
Eigen::Matrix2Xd extended_states(const FluidField1D& field, const FarField& far) {
    const int n = field.grid().n_cells;
    Eigen::Matrix2Xd u(2, n + 2);
    u.row(0).head(n + 1) = field.v().transpose();
    u.row(1).head(n + 1) = field.sigma().transpose();
    u.col(n + 1) = far.state ? *far.state : u.col(n);
    return u;
}

} // namespace

double cfl_number(const FluidMaterial& mat, double dt, double dx) {
    return mat.c() * dt / dx;
}

FluidField1D upwind_step(const FluidField1D& field, const FluidMaterial& mat, double dt, const FarField& far) {
    const Grid1D& g = field.grid();
    check_cfl(mat, dt, g.dx);
    const Eigen::Matrix2Xd u = extended_states(field, far);
    const Eigen::Matrix2d am = (dt / g.dx) * mat.flux_minus();
    const Eigen::Matrix2d ap = (dt / g.dx) * mat.flux_plus();
    // Slot k is index i = sign*k, so the x-neighbours i-1, i+1 sit at slots k - sign, k + sign.
    const int s = g.sign();
    FluidField1D out(field);
    for (int k = 1; k <= g.n_cells; ++k) {
        const Eigen::Vector2d ui = u.col(k);
        const Eigen::Vector2d um = u.col(k - s);
        const Eigen::Vector2d up = u.col(k + s);
        out.set(s * k, ui + am * (ui - um) + ap * (up - ui));
    }
    return out;
}

FluidField1D lax_wendroff_step(const FluidField1D& field, const FluidMaterial& mat, double dt, const FarField& far) {
    const Grid1D& g = field.grid();
    check_cfl(mat, dt, g.dx);
    const Eigen::Matrix2Xd u = extended_states(field, far);
    const Eigen::Matrix2d C = mat.flux();
    const Eigen::Matrix2d d1 = (0.5 * dt / g.dx) * C;
    const Eigen::Matrix2d d2 = (0.5 * dt * dt / (g.dx * g.dx)) * (C * C);
    const int s = g.sign();
    FluidField1D out(field);
    for (int k = 1; k <= g.n_cells; ++k) {
        const Eigen::Vector2d ui = u.col(k);
        const Eigen::Vector2d um = u.col(k - s);
        const Eigen::Vector2d up = u.col(k + s);
        out.set(s * k, ui + d1 * (up - um) + d2 * (up - 2.0 * ui + um));
    }
    return out;
}

} // namespace amfsi

#include "amfsi/materials_grid.hpp"
#include "amfsi/errors.hpp"

#include <cmath>

namespace amfsi {

FluidMaterial::FluidMaterial(double rho, double c) : rho_(rho), c_(c), z_(rho * c), kappa_(rho * c * c) {
    if (!(rho > 0.0) || !(c > 0.0) || !std::isfinite(rho) || !std::isfinite(c))
        throw ValidationError("fluid material needs rho > 0 and c > 0");
}

Eigen::Matrix2d FluidMaterial::flux() const {
    Eigen::Matrix2d C;
    C << 0.0, 1.0 / rho_,
         kappa_, 0.0;
    return C;
}

Eigen::Matrix2d FluidMaterial::eigenvectors() const {
    Eigen::Matrix2d R;
    R << -c_, c_,
         c_ * z_, c_ * z_;
    return R;
}

Eigen::Matrix2d FluidMaterial::eigenvectors_inverse() const {
    Eigen::Matrix2d Ri;
    Ri << -z_, 1.0,
          z_, 1.0;
    return Ri / (2.0 * c_ * z_);
}

Eigen::Matrix2d FluidMaterial::flux_minus() const {
    return eigenvectors() * Eigen::Vector2d(-c_, 0.0).asDiagonal() * eigenvectors_inverse();
}

Eigen::Matrix2d FluidMaterial::flux_plus() const {
    return eigenvectors() * Eigen::Vector2d(0.0, c_).asDiagonal() * eigenvectors_inverse();
}

Grid1D::Grid1D(int n_cells, double dx, Side side, double body_half_width)
    : n_cells(n_cells), dx(dx), side(side), body_half_width(body_half_width) {
    if (n_cells < 3)
        throw ValidationError("grid needs at least 3 cells");
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw ValidationError("grid spacing must be positive");
    if (!(body_half_width >= 0.0))
        throw ValidationError("body half width must be non-negative");
}

double Grid1D::x(int i) const {
    if (side == Side::Left)
        return -body_half_width + (i + 0.5) * dx;
    return body_half_width + (i - 0.5) * dx;
}

FluidField1D::FluidField1D(const Grid1D& grid)
    : grid_(grid), v_(Eigen::VectorXd::Zero(grid.n_cells + 1)), sigma_(Eigen::VectorXd::Zero(grid.n_cells + 1)) {}

FluidField1D::FluidField1D(const Grid1D& grid, Eigen::VectorXd v, Eigen::VectorXd sigma)
    : grid_(grid), v_(std::move(v)), sigma_(std::move(sigma)) {
    if (v_.size() != grid.n_cells + 1 || sigma_.size() != grid.n_cells + 1)
        throw ValidationError("field arrays must hold n_cells + 1 values");
}

double FluidField1D::interior_max_norm() const {
    const Eigen::Index n = grid_.n_cells;
    return std::max(v_.tail(n).cwiseAbs().maxCoeff(), sigma_.tail(n).cwiseAbs().maxCoeff());
}

} // namespace amfsi

#pragma once

#include <Eigen/Dense>

namespace amfsi {

// Linearized acoustic material for one fluid domain. z and kappa are derived once.
class FluidMaterial {
public:
    FluidMaterial(double rho, double c);

    double rho() const { return rho_; }
    double c() const { return c_; }
    double z() const { return z_; }
    double kappa() const { return kappa_; }

    // u_t - C u_x = 0 with u = (v, sigma)
    Eigen::Matrix2d flux() const;
    // C = R diag(-c, c) R^{-1}
    Eigen::Matrix2d eigenvectors() const;
    Eigen::Matrix2d eigenvectors_inverse() const;
    // R diag(-c, 0) R^{-1} and R diag(0, c) R^{-1}
    Eigen::Matrix2d flux_minus() const;
    Eigen::Matrix2d flux_plus() const;

private:
    double rho_, c_, z_, kappa_;
};

// Columns of u are (v, sigma) pairs; columns of the result are (a, b).
template <typename Derived>
auto to_characteristics(const Eigen::MatrixBase<Derived>& u, const FluidMaterial& mat) {
    const double s = 1.0 / (2.0 * mat.c() * mat.z());
    Eigen::Matrix<double, 2, Derived::ColsAtCompileTime> ab(2, u.cols());
    ab.row(0) = s * (u.row(1) - mat.z() * u.row(0));
    ab.row(1) = s * (u.row(1) + mat.z() * u.row(0));
    return ab;
}

template <typename Derived>
auto from_characteristics(const Eigen::MatrixBase<Derived>& ab, const FluidMaterial& mat) {
    Eigen::Matrix<double, 2, Derived::ColsAtCompileTime> u(2, ab.cols());
    u.row(0) = mat.c() * (ab.row(1) - ab.row(0));
    u.row(1) = (mat.c() * mat.z()) * (ab.row(0) + ab.row(1));
    return u;
}

enum class Side { Left, Right };

// Cells on one side of the body. Index i runs 0 (ghost), -1..-n (left) or 1..n (right).
struct Grid1D {
    Grid1D(int n_cells, double dx, Side side, double body_half_width = 0.0);

    int n_cells;
    double dx;
    Side side;
    double body_half_width;

    double x(int i) const;
    // +1 on the right, -1 on the left: interior index of distance k from the body is sign()*k
    int sign() const { return side == Side::Right ? 1 : -1; }
    int first_interior() const { return sign(); }
    int last_interior() const { return sign() * n_cells; }
};

// Velocity and stress on one domain. Storage slot k holds index i = sign*k; slot 0 is the ghost.
class FluidField1D {
public:
    explicit FluidField1D(const Grid1D& grid);
    FluidField1D(const Grid1D& grid, Eigen::VectorXd v, Eigen::VectorXd sigma);

    const Grid1D& grid() const { return grid_; }
    const Eigen::VectorXd& v() const { return v_; }
    const Eigen::VectorXd& sigma() const { return sigma_; }
    Eigen::VectorXd& v() { return v_; }
    Eigen::VectorXd& sigma() { return sigma_; }

    double v(int i) const { return v_[slot(i)]; }
    double sigma(int i) const { return sigma_[slot(i)]; }
    Eigen::Vector2d u(int i) const { return {v_[slot(i)], sigma_[slot(i)]}; }
    void set(int i, const Eigen::Vector2d& u) {
        v_[slot(i)] = u[0];
        sigma_[slot(i)] = u[1];
    }

    bool all_finite() const { return v_.allFinite() && sigma_.allFinite(); }
    // Max of |v| and |sigma| over interior cells.
    double interior_max_norm() const;

private:
    int slot(int i) const { return grid_.sign() * i; }

    Grid1D grid_;
    Eigen::VectorXd v_, sigma_;
};

} // namespace amfsi

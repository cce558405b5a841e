#pragma once

#include <Eigen/Dense>

#include <functional>
#include <numbers>
#include <variant>
#include <vector>

namespace amfsi {

struct Ellipse { double a, b; };
struct Ellipsoid { double a, b, c; };
struct Rectangle { double lx, ly; };
struct Prism { double lx, ly, lz; };

// Closed curve x(s), s in [0, 1]. Without a derivative, x'(s) is taken by central differences.
struct ParametricCurve2D {
    std::function<Eigen::Vector2d(double)> x;
    std::function<Eigen::Vector2d(double)> dx;
};

// Closed surface x(u, v) with u periodic on [0, 1] and v in [0, 1] running pole to pole.
struct ParametricSurface3D {
    std::function<Eigen::Vector3d(double, double)> x;
};

struct Starfish {
    int arms = 5;
    double ra = 0.4;
    double rb = 0.6;
    double sweep = std::numbers::pi / 5.0;
};

struct BodyShape {
    std::variant<Ellipse, Ellipsoid, Rectangle, Prism, ParametricCurve2D, ParametricSurface3D, Starfish> kind;
    Eigen::Vector3d center_of_mass = Eigen::Vector3d::Zero();

    bool planar() const;
};

struct SurfaceSample {
    Eigen::Vector3d r;
    Eigen::Vector3d n;
    double z_f;
    double ds;
    Eigen::Vector2d param = Eigen::Vector2d::Zero();
};

// Local fluid impedance at a surface point with the given shape parameters.
using ImpedanceField = std::function<double(const Eigen::Vector3d&, const Eigen::Vector2d&)>;

ImpedanceField constant_impedance(double z_f);

struct AddedMassTensors {
    Eigen::Matrix3d avv = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d avw = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d awv = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d aww = Eigen::Matrix3d::Zero();

    Eigen::Matrix<double, 6, 6> composite() const;
};

// Cross-product matrix: cross(y) * w == y.cross(w).
Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& y);

// Outward-normal quadrature of the body surface. 2D shapes lie in the z = 0 plane.
std::vector<SurfaceSample> sample_surface(const BodyShape& shape, const ImpedanceField& z_f, int resolution);

AddedMassTensors added_mass_tensors(const std::vector<SurfaceSample>& samples,
                                    const Eigen::Vector3d& x_b = Eigen::Vector3d::Zero());

// Closed forms for rectangle, prism, circle and sphere with constant impedance.
AddedMassTensors added_mass_analytic(const BodyShape& shape, double z_f);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

} // namespace amfsi

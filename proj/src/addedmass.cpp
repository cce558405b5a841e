#include "amfsi/addedmass.hpp"
#include "amfsi/errors.hpp"

#include <cmath>

namespace amfsi {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct CurvePoint {
    Eigen::Vector2d x;
    Eigen::Vector2d dx;
};

void require_positive(std::initializer_list<double> dims) {
    for (double d : dims)
        if (!(d > 0.0) || !std::isfinite(d))
            throw ValidationError("shape dimensions must be positive");
}

SurfaceSample make_sample(const Eigen::Vector3d& r, const Eigen::Vector3d& normal_times_metric, double weight,
                          const Eigen::Vector2d& param, const Eigen::Vector3d& center, const ImpedanceField& z_f) {
    const double metric = normal_times_metric.norm();
    if (!(metric > 0.0) || !std::isfinite(metric))
        throw DegenerateGeometry("surface metric vanishes at a quadrature point");
    const Eigen::Vector3d pos = center + r;
    return {pos, normal_times_metric / metric, z_f(pos, param), metric * weight, param};
}

// Periodic trapezoid on a closed curve with counterclockwise parametrization.
template <typename Curve>
std::vector<SurfaceSample> sample_curve(const Curve& curve, int n, const Eigen::Vector3d& center,
                                        const ImpedanceField& z_f) {
    std::vector<SurfaceSample> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / n;
        const CurvePoint p = curve(s);
        out.push_back(make_sample({p.x[0], p.x[1], 0.0}, {p.dx[1], -p.dx[0], 0.0}, 1.0 / n, {s, 0.0}, center, z_f));
    }
    return out;
}

// Periodic trapezoid in u and Gauss-Legendre in v on a surface given with its unnormalized normal.
template <typename Surface>
std::vector<SurfaceSample> sample_sphere_like(const Surface& surface, int n, const Eigen::Vector3d& center,
                                              const ImpedanceField& z_f) {
    Eigen::VectorXd nodes, weights;
    gauss_legendre(n, nodes, weights);
    std::vector<SurfaceSample> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double u = static_cast<double>(k) / n;
            const auto [r, N] = surface(u, nodes[j]);
            out.push_back(make_sample(r, N, weights[j] / n, {u, nodes[j]}, center, z_f));
        }
    }
    return out;
}

// Gauss-Legendre samples on a flat rectangular face centred at c with edge vectors e1, e2.
void sample_face(std::vector<SurfaceSample>& out, const Eigen::Vector3d& c, const Eigen::Vector3d& e1,
                 const Eigen::Vector3d& e2, const Eigen::Vector3d& normal, int m1, int m2,
                 const Eigen::Vector3d& center, const ImpedanceField& z_f) {
    Eigen::VectorXd n1, w1, n2, w2;
    gauss_legendre(m1, n1, w1);
    gauss_legendre(m2, n2, w2);
    const double area = e1.norm() * e2.norm();
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j) {
            const Eigen::Vector3d r = c + (n1[i] - 0.5) * e1 + (n2[j] - 0.5) * e2;
            out.push_back(make_sample(r, normal, area * w1[i] * w2[j], {n1[i], n2[j]}, center, z_f));
        }
}

// Samples on a segment from p0 to p1 with outward normal in the plane.
void sample_edge(std::vector<SurfaceSample>& out, const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                 const Eigen::Vector3d& normal, int m, const Eigen::Vector3d& center, const ImpedanceField& z_f) {
    Eigen::VectorXd nodes, weights;
    gauss_legendre(m, nodes, weights);
    const double len = (p1 - p0).norm();
    for (int i = 0; i < m; ++i)
        out.push_back(make_sample(p0 + nodes[i] * (p1 - p0), normal, len * weights[i], {nodes[i], 0.0}, center, z_f));
}

CurvePoint starfish_point(const Starfish& sf, double s) {
    const double th = two_pi * s;
    const double w = 0.5 * (1.0 + std::sin(sf.arms * th));
    const double dw = std::numbers::pi * sf.arms * std::cos(sf.arms * th);
    const double r = w * w, dr = 2.0 * w * dw;
    const double R = sf.ra + sf.rb * r, dR = sf.rb * dr;
    const double th_hat = th + sf.sweep * r * r;
    const double dth_hat = two_pi + 2.0 * sf.sweep * r * dr;
    const Eigen::Vector2d e(std::cos(th_hat), std::sin(th_hat));
    const Eigen::Vector2d et(-e[1], e[0]);
    return {R * e, dR * e + R * dth_hat * et};
}

template <typename F>
auto central_difference(const F& f, double s, double h) {
    return (8.0 * (f(s + h) - f(s - h)) - (f(s + 2.0 * h) - f(s - 2.0 * h))) / (12.0 * h);
}

void orient_outward(std::vector<SurfaceSample>& samples, const Eigen::Vector3d& center) {
    double flux = 0.0;
    for (const auto& s : samples)
        flux += (s.r - center).dot(s.n) * s.ds;
    if (flux < 0.0)
        for (auto& s : samples)
            s.n = -s.n;
}

} // namespace

bool BodyShape::planar() const {
    return std::holds_alternative<Ellipse>(kind) || std::holds_alternative<Rectangle>(kind) ||
           std::holds_alternative<ParametricCurve2D>(kind) || std::holds_alternative<Starfish>(kind);
}

ImpedanceField constant_impedance(double z_f) {
    return [z_f](const Eigen::Vector3d&, const Eigen::Vector2d&) { return z_f; };
}

Eigen::Matrix<double, 6, 6> AddedMassTensors::composite() const {
    Eigen::Matrix<double, 6, 6> A;
    A << avv, avw,
         awv, aww;
    return A;
}

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& y) {
    Eigen::Matrix3d Y;
    Y << 0.0, -y[2], y[1],
         y[2], 0.0, -y[0],
         -y[1], y[0], 0.0;
    return Y;
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = weights[n - 1 - i] = 0.5 * w;
    }
}

std::vector<SurfaceSample> sample_surface(const BodyShape& shape, const ImpedanceField& z_f, int resolution) {
    if (resolution < 8)
        throw ValidationError("surface resolution must be at least 8");
    const Eigen::Vector3d& c0 = shape.center_of_mass;
    return std::visit(
        [&](const auto& s) -> std::vector<SurfaceSample> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Ellipse>) {
                require_positive({s.a, s.b});
                return sample_curve(
                    [&](double u) {
                        const double th = two_pi * u;
                        return CurvePoint{{s.a * std::cos(th), s.b * std::sin(th)},
                                          {-two_pi * s.a * std::sin(th), two_pi * s.b * std::cos(th)}};
                    },
                    resolution, c0, z_f);
            } else if constexpr (std::is_same_v<S, Starfish>) {
                require_positive({s.ra, s.rb});
                if (s.arms < 1)
                    throw ValidationError("starfish needs at least one arm");
                return sample_curve([&](double u) { return starfish_point(s, u); }, resolution, c0, z_f);
            } else if constexpr (std::is_same_v<S, ParametricCurve2D>) {
                if (!s.x)
                    throw ValidationError("parametric curve has no position function");
                const Eigen::Vector2d gap = s.x(0.0) - s.x(1.0);
                if (gap.norm() > 1e-12 * std::max(1.0, s.x(0.0).norm()))
                    throw DegenerateGeometry("parametric curve is not closed");
                auto out = sample_curve(
                    [&](double u) {
                        const Eigen::Vector2d d = s.dx ? s.dx(u) : central_difference(s.x, u, 1e-3).eval();
                        return CurvePoint{s.x(u), d};
                    },
                    resolution, c0, z_f);
                orient_outward(out, c0);
                return out;
            } else if constexpr (std::is_same_v<S, Ellipsoid>) {
                require_positive({s.a, s.b, s.c});
                return sample_sphere_like(
                    [&](double u, double v) {
                        const double th = two_pi * u, ph = std::numbers::pi * v;
                        const double sp = std::sin(ph), cp = std::cos(ph), ct = std::cos(th), st = std::sin(th);
                        const Eigen::Vector3d r(s.a * sp * ct, s.b * sp * st, s.c * cp);
                        // x_phi cross x_theta scaled by the parameter map Jacobian 2 pi^2
                        const Eigen::Vector3d N = two_pi * std::numbers::pi * sp *
                                                  Eigen::Vector3d(s.b * s.c * sp * ct, s.a * s.c * sp * st, s.a * s.b * cp);
                        return std::pair{r, N};
                    },
                    resolution, c0, z_f);
            } else if constexpr (std::is_same_v<S, ParametricSurface3D>) {
                if (!s.x)
                    throw ValidationError("parametric surface has no position function");
                auto out = sample_sphere_like(
                    [&](double u, double v) {
                        const auto fu = [&](double t) { return s.x(t, v); };
                        const auto fv = [&](double t) { return s.x(u, t); };
                        const Eigen::Vector3d xu = central_difference(fu, u, 1e-3);
                        const Eigen::Vector3d xv = central_difference(fv, v, 1e-3);
                        return std::pair{s.x(u, v), Eigen::Vector3d(xu.cross(xv))};
                    },
                    resolution, c0, z_f);
                orient_outward(out, c0);
                return out;
            } else if constexpr (std::is_same_v<S, Rectangle>) {
                require_positive({s.lx, s.ly});
                const int m = std::max(2, resolution / 4);
                const double hx = 0.5 * s.lx, hy = 0.5 * s.ly;
                std::vector<SurfaceSample> out;
                sample_edge(out, {hx, -hy, 0}, {hx, hy, 0}, Eigen::Vector3d::UnitX(), m, c0, z_f);
                sample_edge(out, {hx, hy, 0}, {-hx, hy, 0}, Eigen::Vector3d::UnitY(), m, c0, z_f);
                sample_edge(out, {-hx, hy, 0}, {-hx, -hy, 0}, -Eigen::Vector3d::UnitX(), m, c0, z_f);
                sample_edge(out, {-hx, -hy, 0}, {hx, -hy, 0}, -Eigen::Vector3d::UnitY(), m, c0, z_f);
                return out;
            } else {
                static_assert(std::is_same_v<S, Prism>);
                require_positive({s.lx, s.ly, s.lz});
                const int m = std::max(2, resolution / 4);
                const Eigen::Vector3d L(s.lx, s.ly, s.lz);
                std::vector<SurfaceSample> out;
                for (int d = 0; d < 3; ++d) {
                    const int d1 = (d + 1) % 3, d2 = (d + 2) % 3;
                    const Eigen::Vector3d e1 = L[d1] * Eigen::Vector3d::Unit(d1);
                    const Eigen::Vector3d e2 = L[d2] * Eigen::Vector3d::Unit(d2);
                    for (double sg : {1.0, -1.0}) {
                        const Eigen::Vector3d n = sg * Eigen::Vector3d::Unit(d);
                        sample_face(out, 0.5 * L[d] * n, e1, e2, n, m, m, c0, z_f);
                    }
                }
                return out;
            }
        },
        shape.kind);
}

AddedMassTensors added_mass_tensors(const std::vector<SurfaceSample>& samples, const Eigen::Vector3d& x_b) {
    if (samples.empty())
        throw ValidationError("added-mass quadrature needs samples");
    AddedMassTensors t;
    for (const auto& s : samples) {
        const Eigen::Vector3d yn = (s.r - x_b).cross(s.n);
        const double w = s.z_f * s.ds;
        t.avv += w * s.n * s.n.transpose();
        t.avw += w * s.n * yn.transpose();
        t.awv += w * yn * s.n.transpose();
        t.aww += w * yn * yn.transpose();
    }
    return t;
}

AddedMassTensors added_mass_analytic(const BodyShape& shape, double z_f) {
    AddedMassTensors t;
    if (const auto* r = std::get_if<Rectangle>(&shape.kind)) {
        require_positive({r->lx, r->ly});
        t.avv.diagonal() << 2.0 * r->ly, 2.0 * r->lx, 0.0;
        t.aww(2, 2) = (std::pow(r->lx, 3) + std::pow(r->ly, 3)) / 6.0;
    } else if (const auto* p = std::get_if<Prism>(&shape.kind)) {
        require_positive({p->lx, p->ly, p->lz});
        const double x = p->lx, y = p->ly, z = p->lz;
        t.avv.diagonal() << 2.0 * y * z, 2.0 * x * z, 2.0 * x * y;
        t.aww.diagonal() << x * (y * y * y + z * z * z) / 6.0, y * (x * x * x + z * z * z) / 6.0,
            z * (x * x * x + y * y * y) / 6.0;
    } else if (const auto* e = std::get_if<Ellipse>(&shape.kind); e && e->a == e->b) {
        require_positive({e->a});
        t.avv.diagonal() << std::numbers::pi * e->a, std::numbers::pi * e->a, 0.0;
    } else if (const auto* s = std::get_if<Ellipsoid>(&shape.kind); s && s->a == s->b && s->b == s->c) {
        require_positive({s->a});
        t.avv = (4.0 * std::numbers::pi / 3.0) * s->a * s->a * Eigen::Matrix3d::Identity();
    } else {
        throw UnsupportedShape("no closed form for this shape");
    }
    t.avv *= z_f;
    t.aww *= z_f;
    return t;
}

} // namespace amfsi

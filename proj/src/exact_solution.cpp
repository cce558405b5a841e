#include "amfsi/exact_solution.hpp"
#include "amfsi/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace amfsi {

namespace {

constexpr double small_mass = 0.1;
constexpr double series_start = 10.0;

double gaussian(const PulseProblem& p, double x) {
    const double d = x - p.x0;
    return std::exp(-p.beta * p.beta * d * d);
}

// exp(a) * erfcx(w) without intermediate overflow.
double exp_erfcx(double a, double w) {
    if (w >= 0.0)
        return std::exp(a) * erfcx(w);
    return std::exp(a + w * w) * std::erfc(w);
}

// Integral over [0, t] of exp(-k (t - s)) exp(-beta^2 (c s - x1)^2) ds.
double convolved_gaussian(double k, double beta, double c, double x1, double t) {
    const double p = k / (2.0 * beta * c);
    const double d = c * t - x1;
    const double lead = std::sqrt(std::numbers::pi) / (2.0 * beta * c);
    return lead * (exp_erfcx(-beta * beta * d * d, p - beta * d) -
                   exp_erfcx(-k * t - beta * beta * x1 * x1, p + beta * x1));
}

void check_time(double t) {
    if (!(t >= 0.0))
        throw DomainError("exact solution needs t >= 0");
}

} // namespace

void PulseProblem::validate() const {
    if (!(beta > 0.0))
        throw ValidationError("pulse beta must be positive");
    if (!(x0 < 0.0))
        throw ValidationError("pulse centre must lie in the left domain");
    if (!(mass >= 0.0))
        throw ValidationError("body mass must be non-negative");
    if (!(w_b >= 0.0))
        throw ValidationError("body width must be non-negative");
}

double erfcx(double x) {
    if (x < series_start)
        return std::exp(x * x) * std::erfc(x);
    // 1/(x sqrt(pi)) * sum (-1)^n (2n-1)!! / (2 x^2)^n
    const double inv = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 60; ++n) {
        term *= -(2.0 * n - 1.0) * inv;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum))
            break;
    }
    return sum / (x * std::sqrt(std::numbers::pi));
}

double pulse_displacement(const PulseProblem& p, double x) {
    return -std::sqrt(std::numbers::pi) / (4.0 * p.beta) * std::erf(p.beta * (x - p.x0));
}

double pulse_slope(const PulseProblem& p, double x) {
    return -0.5 * gaussian(p, x);
}

double pulse_velocity(const PulseProblem& p, double x) {
    return 0.5 * p.left.c() * gaussian(p, x);
}

double body_forcing(const PulseProblem& p, double t) {
    const double cL = p.left.c(), cR = p.right.c();
    return p.right.kappa() * pulse_slope(p, cR * t) - p.left.kappa() * pulse_slope(p, -cL * t) +
           p.right.z() * pulse_velocity(p, cR * t) + p.left.z() * pulse_velocity(p, -cL * t);
}

double body_velocity_closed_form(const PulseProblem& p, double t) {
    check_time(t);
    const double m = p.mass, b = p.beta, x0 = p.x0;
    const double cL = p.left.c(), cR = p.right.c();
    const double zL = p.left.z(), zR = p.right.z();
    const double Z = zL + zR;
    const double sqpi = std::sqrt(std::numbers::pi);
    const double t1 = zR * (cR - cL) * sqpi / (4.0 * cR * b * m) *
                      std::exp(Z * (Z - 4.0 * b * b * m * cR * (cR * t - x0)) / (4.0 * cR * cR * m * m * b * b)) *
                      (std::erf((Z - 2.0 * cR * b * b * m * (cR * t - x0)) / (2.0 * cR * m * b)) -
                       std::erf((Z + 2.0 * cR * b * b * m * x0) / (2.0 * cR * m * b)));
    const double t2 = zL * sqpi / (2.0 * b * m) *
                      std::exp(Z * (Z - 4.0 * cL * b * b * m * (cL * t + x0)) / (4.0 * cL * cL * m * m * b * b)) *
                      (std::erf((Z - 2.0 * cL * b * b * m * (cL * t + x0)) / (2.0 * cL * m * b)) -
                       std::erf((Z - 2.0 * cL * b * b * m * x0) / (2.0 * cL * m * b)));
    return t1 - t2 + 0.5 * cL * std::exp(-b * b * x0 * x0 - Z * t / m);
}

double body_velocity_scaled(const PulseProblem& p, double t) {
    check_time(t);
    const double m = p.mass, b = p.beta, x0 = p.x0;
    const double cL = p.left.c(), cR = p.right.c();
    const double zL = p.left.z(), zR = p.right.z();
    const double k = (zL + zR) / m;
    return 0.5 * cL * std::exp(-b * b * x0 * x0 - k * t) +
           zR * (cL - cR) / (2.0 * m) * convolved_gaussian(k, b, cR, x0, t) +
           zL * cL / m * convolved_gaussian(k, b, cL, -x0, t);
}

double body_velocity_exact(const PulseProblem& p, double t) {
    check_time(t);
    if (p.mass == 0.0)
        return body_forcing(p, t) / (p.left.z() + p.right.z());
    if (p.mass < small_mass)
        return body_velocity_scaled(p, t);
    return body_velocity_closed_form(p, t);
}

double body_displacement_exact(const PulseProblem& p, double t) {
    check_time(t);
    const auto v = [&](double s) { return body_velocity_exact(p, s); };
    const double integral =
        t > 0.0 ? boost::math::quadrature::gauss_kronrod<double, 31>::integrate(v, 0.0, t, 15, 1e-10) : 0.0;
    return pulse_displacement(p, 0.0) + integral;
}

Eigen::Vector2d field_exact(const PulseProblem& p, const BodyVelocityFn& v_b, Side side, double x, double t) {
    check_time(t);
    const double h = 0.5 * p.w_b;
    if (side == Side::Left) {
        const double c = p.left.c();
        const auto f = [&](double s) { return 0.5 * (pulse_slope(p, s) - pulse_velocity(p, s) / c); };
        const auto g = [&](double s) {
            if (s <= 0.0)
                return 0.5 * (pulse_slope(p, s) + pulse_velocity(p, s) / c);
            return v_b(s / c) / c + f(-s);
        };
        const double xr = x + h;
        const double fp = f(xr - c * t), gp = g(xr + c * t);
        return {c * (gp - fp), p.left.kappa() * (fp + gp)};
    }
    const double c = p.right.c();
    const auto g = [&](double s) { return 0.5 * (pulse_slope(p, s) + pulse_velocity(p, s) / c); };
    const auto f = [&](double s) {
        if (s >= 0.0)
            return 0.5 * (pulse_slope(p, s) - pulse_velocity(p, s) / c);
        return -v_b(-s / c) / c + g(-s);
    };
    const double xr = x - h;
    const double fp = f(xr - c * t), gp = g(xr + c * t);
    return {c * (gp - fp), p.right.kappa() * (fp + gp)};
}

Eigen::Vector2d field_exact(const PulseProblem& p, Side side, double x, double t) {
    return field_exact(p, [&p](double s) { return body_velocity_exact(p, s); }, side, x, t);
}

} // namespace amfsi

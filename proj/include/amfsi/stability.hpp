#pragma once

#include "amfsi/coupling1d.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace amfsi {

using cplx = std::complex<double>;

struct StabilityQuery {
    double lambda;
    double dt;
    double mass;
    double z;
    double alpha = 0.0;

    void validate() const;
};

// Zero-mass traditional coupling has no bounded root set; that case sets unbounded and clears stable.
struct AmplificationReport {
    std::vector<cplx> roots;
    double max_modulus = 0.0;
    bool stable = true;
    bool unbounded = false;
};

AmplificationReport roots_first_order_traditional(const StabilityQuery& q);
AmplificationReport roots_first_order_projection(const StabilityQuery& q);
AmplificationReport roots_second_order_projection(const StabilityQuery& q);

double max_stable_dt_traditional(double mass, double z, double lambda);

// Roots of (nu + nu^2)/2 r^2 + (1 - A - nu^2) r + (nu^2 - nu)/2 = 0, ordered by modulus.
// A vanishing leading coefficient leaves the single root of the linear equation and sets degenerate.
struct CharacteristicRoots {
    std::array<cplx, 2> r{};
    std::array<bool, 2> inside{};
    int count = 2;
    bool degenerate = false;
};

CharacteristicRoots lw_characteristic_roots(double nu, cplx A);

// Determinant of the five-by-five normal-mode system of the second-order scheme with
// coupling weight q.alpha on both sides. Zeros with |A| > 1 are unstable modes.
cplx second_order_mode_determinant(const StabilityQuery& q, cplx A);

// Zeros of the determinant in 1 + eps < |A| < outer, by the argument principle.
int count_unstable_modes_second_order(const StabilityQuery& q, double eps = 1e-6, double outer = 1e3,
                                      int samples = 4096);

struct GrowthConfig {
    int order = 1;
    Materials1D mats{FluidMaterial(1.0, 1.4142135623730951), FluidMaterial(1.0, 1.4142135623730951)};
    CouplingScheme scheme = CouplingScheme::traditional();
    double mass = 1.0;
    double lambda = 0.9;
    double dt = 1e-3;
    int n_cells = 200;
    std::uint64_t seed = 1;
    double amplitude = 1e-3;
};

// Late-time per-step growth of the max norm (geometric mean over the final quarter of the steps).
// Random initial data; the far ends see a quiescent fluid.
double empirical_growth_rate(const GrowthConfig& cfg, int n_steps);

} // namespace amfsi

#pragma once

#include "amfsi/materials_grid.hpp"

#include <optional>

namespace amfsi {

// Closure at the end of a domain away from the body. An empty state means
// zeroth-order extrapolation; otherwise the (v, sigma) value at the far ghost location.
struct FarField {
    std::optional<Eigen::Vector2d> state;
};

double cfl_number(const FluidMaterial& mat, double dt, double dx);

// First-order upwind update of interior cells. The body ghost is copied unchanged.
FluidField1D upwind_step(const FluidField1D& field, const FluidMaterial& mat, double dt,
                         const FarField& far = {});

// Second-order Lax-Wendroff update of interior cells. The body ghost is copied unchanged.
FluidField1D lax_wendroff_step(const FluidField1D& field, const FluidMaterial& mat, double dt,
                               const FarField& far = {});

} // namespace amfsi

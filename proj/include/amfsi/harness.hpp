#pragma once

#include "amfsi/coupling1d.hpp"
#include "amfsi/exact_solution.hpp"
#include "amfsi/rigidbody3d.hpp"
#include "amfsi/stability.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace amfsi {

struct RunConfig {
    std::string mode = "converge1d";
    int scheme = 1;
    std::string coupling = "projection";
    double alpha_L = 0.0;
    double alpha_R = 0.0;
    double mass = 1.0;
    double cfl = 0.8;
    int cells = 50;
    int levels = 5;
    double t_final = 0.75;
    double domain_length = 1.0;
    double rho_L = 1.0, c_L = 1.4142135623730951;
    double rho_R = 1.0, c_R = 1.7320508075688772;
    double beta = 10.0;
    double x0 = -0.5;
    int resolution = 512;
    int steps = 2000;
    std::uint64_t seed = 1;
    nlohmann::json shapes = nlohmann::json::array();
    std::string out;

    // Unknown keys and out-of-range values raise ValidationError.
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;

    Materials1D materials() const;
    CouplingScheme coupling_scheme() const;
    PulseProblem pulse() const;
};

struct LevelResult {
    int n_cells = 0;
    double dx = 0.0;
    double dt = 0.0;
    int steps = 0;
    // Max-norm errors at t_final over interior cells of both domains.
    double err_v = 0.0;
    double err_sigma = 0.0;
    // Largest body-velocity error over all time levels.
    double err_vb = 0.0;
    // Sum of |error| over interior cells divided by the number of cells.
    double l1_v = 0.0;
    double l1_sigma = 0.0;
    bool diverged = false;
};

struct ConvergenceReport {
    std::vector<LevelResult> levels;
    // Least-squares slopes of log(error) against log(dx).
    double rate_v = 0.0;
    double rate_sigma = 0.0;
    double rate_vb = 0.0;
};

// Fit log e = log C + rate log h.
double least_squares_rate(const std::vector<double>& h, const std::vector<double>& e);

struct BodySample {
    double t;
    double v_b;
    double v_b_exact;
    double x_b;
};

// Pulse problem on n_cells per side, stepped to t_final against the exact far-field.
LevelResult simulate_pulse(const RunConfig& cfg, int n_cells, State1D* final_state = nullptr,
                           std::vector<BodySample>* history = nullptr);

ConvergenceReport run_convergence_study(const RunConfig& cfg);

struct SweepRow {
    std::string label;
    int order;
    double lambda;
    double mass;
    double dt;
    double dt_over_bound;
    bool predicted_stable;
    double predicted_modulus;
    double measured_growth;
    bool measured_stable;
    bool agree;
};

// Growth above this per-step ratio counts as unstable.
inline constexpr double growth_threshold = 1.0 + 1e-6;

std::vector<SweepRow> run_stability_sweep(const RunConfig& cfg);

struct TableRow {
    std::string shape;
    std::string entry;
    double quadrature;
    std::optional<double> reference;
    double abs_diff;
    double rel_diff;
};

struct ShapeChecks {
    std::string shape;
    bool symmetric;
    bool transpose_pair;
    bool psd;
};

struct AddedMassTable {
    std::vector<TableRow> rows;
    std::vector<ShapeChecks> checks;
};

BodyShape shape_from_json(const nlohmann::json& j);
AddedMassTable run_addedmass_table(const RunConfig& cfg);

// Symmetry, transpose pairing and positive semi-definiteness of a tensor set.
ShapeChecks check_tensors(const std::string& name, const AddedMassTensors& t, std::uint64_t seed);

struct DirkStudy {
    std::vector<double> dt;
    std::vector<double> error;
    double rate = 0.0;
};

// Manufactured rigid-body problem with constant tensors and polynomial forcing, solved to t = 1.
DirkStudy run_dirk_study(const DIRKTableau& tableau, double dt0, int levels);

nlohmann::json report_json(const ConvergenceReport& r);
nlohmann::json report_json(const std::vector<SweepRow>& rows);
nlohmann::json report_json(const AddedMassTable& t);

// CSV with the config echoed in a leading comment line. Numbers use round-trip precision.
std::string csv(const ConvergenceReport& r, const RunConfig& cfg);
std::string csv(const std::vector<SweepRow>& rows, const RunConfig& cfg);
std::string csv(const AddedMassTable& t, const RunConfig& cfg);
std::string csv(const std::vector<BodySample>& history, const RunConfig& cfg);
std::string csv(const DirkStudy& study, const RunConfig& cfg);

} // namespace amfsi

#include "amfsi/errors.hpp"
#include "amfsi/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace amfsi;
using nlohmann::json;

namespace {

struct Overrides {
    std::string config, out, coupling;
    std::optional<int> scheme, cells, levels;
    std::optional<double> mass, cfl, tfinal;
    std::optional<std::uint64_t> seed;
};

RunConfig load(const Overrides& o, const std::string& mode) {
    json j = json::object();
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in)
            throw ValidationError("cannot open config file: " + o.config);
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    if (!j.is_object())
        throw ValidationError("config must be a JSON object");
    j["mode"] = mode;
    if (!o.out.empty())
        j["out"] = o.out;
    if (!o.coupling.empty())
        j["coupling"] = o.coupling;
    if (o.scheme)
        j["scheme"] = *o.scheme;
    if (o.cells)
        j["cells"] = *o.cells;
    if (o.levels)
        j["levels"] = *o.levels;
    if (o.mass)
        j["mass"] = *o.mass;
    if (o.cfl)
        j["cfl"] = *o.cfl;
    if (o.tfinal)
        j["t_final"] = *o.tfinal;
    if (o.seed)
        j["seed"] = *o.seed;
    return RunConfig::from_json(j);
}

void emit(const RunConfig& cfg, const json& report, const std::string& table) {
    std::cout << json{{"config", cfg.to_json()}, {"report", report}}.dump(2) << '\n';
    if (cfg.out.empty())
        return;
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write output file: " + cfg.out);
    f << table;
}

int run(const std::string& command, const Overrides& o) {
    if (command == "simulate") {
        const RunConfig cfg = load(o, "simulate1d");
        std::vector<BodySample> history;
        const LevelResult r = simulate_pulse(cfg, cfg.cells, nullptr, &history);
        if (r.diverged)
            throw NumericalFailure("simulation produced non-finite values");
        const json report = {{"n_cells", r.n_cells}, {"dx", r.dx},           {"dt", r.dt},
                             {"steps", r.steps},     {"err_v", r.err_v},     {"err_sigma", r.err_sigma},
                             {"err_vb", r.err_vb},   {"l1_v", r.l1_v},       {"l1_sigma", r.l1_sigma}};
        emit(cfg, report, csv(history, cfg));
    } else if (command == "converge") {
        const RunConfig cfg = load(o, "converge1d");
        const ConvergenceReport r = run_convergence_study(cfg);
        emit(cfg, report_json(r), csv(r, cfg));
    } else if (command == "stability") {
        const RunConfig cfg = load(o, "stability_sweep");
        const auto rows = run_stability_sweep(cfg);
        emit(cfg, report_json(rows), csv(rows, cfg));
    } else if (command == "addedmass") {
        const RunConfig cfg = load(o, "addedmass_table");
        const AddedMassTable t = run_addedmass_table(cfg);
        emit(cfg, report_json(t), csv(t, cfg));
    } else {
        const RunConfig cfg = load(o, "rigidbody3d_demo");
        json report = json::object();
        std::string table;
        for (const auto& [name, tab] : {std::pair{"dirk1", DIRKTableau::dirk1()}, std::pair{"dirk3", DIRKTableau::dirk3()}}) {
            const DirkStudy s = run_dirk_study(tab, 0.1, cfg.levels);
            report[name] = {{"dt", s.dt}, {"error", s.error}, {"rate", s.rate}};
            table += csv(s, cfg);
        }
        emit(cfg, report, table);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Added-mass partitioned FSI model problems"};
    app.require_subcommand(1);
    Overrides o;
    for (const char* name : {"simulate", "converge", "stability", "addedmass", "rb3d"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", o.config, "JSON config file");
        sub->add_option("--out", o.out, "CSV output path");
        sub->add_option("--scheme", o.scheme, "1 or 2");
        sub->add_option("--coupling", o.coupling, "traditional, projection or custom");
        sub->add_option("--mass", o.mass);
        sub->add_option("--cfl", o.cfl);
        sub->add_option("--cells", o.cells);
        sub->add_option("--levels", o.levels);
        sub->add_option("--tfinal", o.tfinal);
        sub->add_option("--seed", o.seed);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}

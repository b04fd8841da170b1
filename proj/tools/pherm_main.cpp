#include "pherm/pherm.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct Options {
    std::string surface = "sphere";
    int n = 1;
    int samples = 12;
    std::uint64_t seed = 7;
    double tol = 1e-6;
    std::string betti;
    std::string out;
    std::string golden;
    std::vector<double> gammas;
    bool timings = false;
    int threads = 0;
    bool dtheta_full = false;
    std::map<std::string, double> tol_overrides;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--surface", o.surface, "registry name or expression in z0..zn")->capture_default_str();
    cmd->add_option("--n", o.n, "CR dimension (1..3)")->capture_default_str();
    cmd->add_option("--samples", o.samples, "sample points (>= 2)")->capture_default_str();
    cmd->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    cmd->add_option("--tol", o.tol, "classification tolerance")->capture_default_str();
    for (const char* key : {"construction", "connection", "parallel", "identity", "phi", "christoffel", "gamma",
                            "perturbation", "golden"})
        cmd->add_option_function<double>(
            std::string("--tol-") + key, [&o, key](double v) { o.tol_overrides[key] = v; },
            std::string(key) + " tolerance");
    cmd->add_option("--betti", o.betti, "Betti numbers b0,b1,...,b_{2n+1} of M");
    cmd->add_option("--gammas", o.gammas, "fibre coordinates to sample")->delimiter(',');
    cmd->add_option("--out", o.out, "write the JSON report here instead of stdout");
    cmd->add_option("--golden", o.golden, "compare against a golden report");
    cmd->add_flag("--timings", o.timings, "include wall-clock timings in the report");
    cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
    cmd->add_flag("--dtheta-full", o.dtheta_full)->group("");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudohermitian geometry of real hypersurfaces: Tanaka-Webster, Fefferman, curvature groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pherm_version());
    Options o;
    for (const char* name : {"analyze", "verify", "groups"}) {
        auto* cmd = app.add_subcommand(name, std::string(name) == "analyze"  ? "full pipeline and report"
                                             : std::string(name) == "verify" ? "residual suites only"
                                                                              : "curvature-group table");
        add_common(cmd, o);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    nlohmann::json cfg = {{"command", app.get_subcommands().front()->get_name()},
                          {"surface", o.surface},
                          {"n", o.n},
                          {"samples", o.samples},
                          {"seed", o.seed},
                          {"timings", o.timings},
                          {"threads", o.threads}};
    nlohmann::json tol = {{"classification", o.tol}};
    for (const auto& [k, v] : o.tol_overrides) tol[k] = v;
    cfg["tol"] = tol;
    if (!o.betti.empty()) cfg["betti"] = o.betti;
    if (!o.golden.empty()) cfg["golden"] = o.golden;
    if (!o.gammas.empty()) cfg["gammas"] = o.gammas;
    if (o.dtheta_full) cfg["d_factor"] = 1.0;

    char* report = nullptr;
    const pherm_status st = pherm_run(cfg.dump().c_str(), &report);
    if (report) {
        if (o.out.empty()) {
            std::fputs(report, stdout);
        } else {
            std::ofstream f(o.out, std::ios::binary);
            f << report;
            if (!f) {
                std::cerr << "pherm: cannot write " << o.out << "\n";
                pherm_free_string(report);
                return 2;
            }
        }
        pherm_free_string(report);
    }
    switch (st) {
        case PHERM_OK:
            return 0;
        case PHERM_SUITE_FAILURE:
            std::cerr << "pherm: " << pherm_last_error() << "\n";
            return 1;
        case PHERM_INPUT_ERROR:
        case PHERM_GEOMETRY_ERROR:
            std::cerr << "pherm: " << pherm_last_error() << "\n";
            return 2;
        default:
            std::cerr << "pherm: internal error: " << pherm_last_error() << "\n";
            return 3;
    }
}

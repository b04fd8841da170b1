#pragma once

#include "curvature_groups.hpp"
#include "lorentz_fields.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pherm {

struct Tolerances {
    double construction = 1e-8;    // frame and axiom residuals
    double classification = 1e-6;  // classify() flags
    double connection = 1e-6;      // Christoffel vs formula, eq3..eq8
    double parallel = 1e-6;        // |nabla X| for the candidate field
    double identity = 1e-7;        // Webster identity, d sigma, W/V identities, conformal system
    double phi = 1e-8;             // two-method phi, trace, V = 0
    double christoffel = 1e-7;     // symmetry and compatibility
    double gamma = 1e-12;          // fibre independence
    double perturbation = 1e-4;    // minimum residual once X_1^ is mixed in
    double golden = 1e-6;          // golden comparator, absolute + relative
};

struct RunConfig {
    std::string command = "analyze";  // analyze | verify | groups
    std::string surface = "sphere";
    int n = 1;
    int samples = 12;
    std::uint64_t seed = 7;
    Tolerances tol;
    std::vector<double> gammas;  // empty: {0, pi/3, pi}
    std::optional<std::string> betti;
    std::optional<std::string> golden;  // path to a golden report
    bool timings = false;
    int threads = 0;  // 0: hardware concurrency
    double d_factor = 0.5;
    double amplitude = 1.0;
    double epsilon = 1e-2;
};

// Throws InputError on unknown keys or invalid values.
RunConfig config_from_json(const nlohmann::json& j);

struct RunResult {
    nlohmann::json report;
    bool pass = true;
};

// Module errors propagate as InputError / GeometryError / ConventionError with
// the stage name prefixed.
RunResult run(const RunConfig& config);

// Every leaf of `golden` must exist in `report` and match; numbers within
// tol (absolute + relative). `timings_ms`, `golden` and `verdict` are ignored.
nlohmann::json compare_golden(const nlohmann::json& report, const nlohmann::json& golden, double tol);

}  // namespace pherm

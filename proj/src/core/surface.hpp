#pragma once

#include "expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pherm {

// Real hypersurface M = {phi = 0} in C^{n+1} with contact form
// theta = (i/2)(dbar - d) phi.
struct Hypersurface {
    std::string name;         // registry spec or the raw expression
    Expr phi;
    int n = 1;                // CR dimension
    bool compact = true;      // whether a Betti vector can be looked up by name
    std::string topology;     // registry topology key ("sphere"), empty if unknown
    double strictness_tol = 1e-10;

    int ambient_dim() const { return n + 1; }
    int real_dim() const { return 2 * (n + 1); }
};

// Resolves a surface spec: a registry name (`sphere`, `ellipsoid:a0,a1,...`,
// `heisenberg`, `perturbed-sphere:eps,k`) or an expression in z0..zn.
Hypersurface make_surface(const std::string& spec, int n);

std::vector<std::string> surface_registry_names();

using Point = std::vector<double>;  // 2n+2 real coordinates

// Newton-projects random ambient seeds onto M. Deterministic for a fixed seed.
std::vector<Point> sample_points(const Hypersurface& surface, int count, std::uint64_t seed);

// Index j maximizing |d phi / d z^j| at p.
int dominant_chart(const Hypersurface& surface, const Point& p);

}  // namespace pherm

#include "surface.hpp"

#include "errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace pherm {

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad number '" + item + "' in " + what);
        }
    }
    return out;
}

Expr abs2(int j) { return Expr::coord(j) * Expr::conj_coord(j); }

}  // namespace

std::vector<std::string> surface_registry_names() {
    return {"sphere", "ellipsoid:a0,a1,...", "heisenberg", "perturbed-sphere:eps,k"};
}

Hypersurface make_surface(const std::string& spec, int n) {
    if (n < 1 || n > 3) throw InputError("CR dimension n must be 1, 2 or 3");
    Hypersurface s;
    s.name = spec;
    s.n = n;
    const std::string head = spec.substr(0, spec.find(':'));
    const std::string args = spec.find(':') == std::string::npos ? "" : spec.substr(spec.find(':') + 1);

    if (head == "sphere" || head == "ellipsoid" || head == "perturbed-sphere") {
        std::vector<double> a(n + 1, 1.0);
        if (head == "ellipsoid") {
            a = parse_numbers(args, "ellipsoid coefficients");
            if (static_cast<int>(a.size()) != n + 1)
                throw InputError("ellipsoid needs n+1 = " + std::to_string(n + 1) + " coefficients");
            for (double v : a)
                if (!(v > 0)) throw InputError("ellipsoid coefficients must be positive");
        } else if (head == "sphere" && !args.empty()) {
            throw InputError("sphere takes no parameters");
        }
        Expr phi = Expr::constant(-1.0);
        for (int j = 0; j <= n; ++j) phi = phi + Expr::constant(a[j]) * abs2(j);
        if (head == "perturbed-sphere") {
            auto p = parse_numbers(args, "perturbed-sphere parameters");
            if (p.size() != 2 || p[1] < 0 || p[1] != std::floor(p[1]))
                throw InputError("perturbed-sphere expects eps,k with integer k >= 0");
            phi = phi + Expr::constant(p[0]) * pow(re(Expr::coord(0)), static_cast<int>(p[1]));
        }
        s.phi = phi;
        s.compact = true;
        s.topology = "sphere";
        return s;
    }
    if (head == "heisenberg") {
        if (!args.empty()) throw InputError("heisenberg takes no parameters");
        // Sign chosen so that the Levi form of (i/2)(dbar - d)phi is positive.
        Expr phi = -im(Expr::coord(0));
        for (int j = 1; j <= n; ++j) phi = phi + abs2(j);
        s.phi = phi;
        s.compact = false;
        return s;
    }

    s.phi = parse_expression(spec);
    if (s.phi.max_coordinate() > n)
        throw InputError("expression uses z" + std::to_string(s.phi.max_coordinate()) +
                         " but n = " + std::to_string(n) + " allows only z0..z" + std::to_string(n));
    s.compact = false;
    return s;
}

namespace {

// Value and real gradient of phi at p.
std::pair<double, std::vector<double>> value_and_gradient(const Hypersurface& s, const Point& p) {
    const Jet j = s.phi.jet(JetSpace::get(s.real_dim(), 1), p);
    std::vector<double> g(s.real_dim());
    for (int r = 0; r < s.real_dim(); ++r) {
        const int idx[] = {r};
        g[r] = j.partial(idx).real();
    }
    return {j.value().real(), g};
}

}  // namespace

int dominant_chart(const Hypersurface& s, const Point& p) {
    auto [v, g] = value_and_gradient(s, p);
    int best = 0;
    double best_mag = -1;
    for (int j = 0; j <= s.n; ++j) {
        const double mag = std::hypot(g[x_index(j)], g[y_index(j)]);
        if (mag > best_mag + 1e-15) {
            best_mag = mag;
            best = j;
        }
    }
    return best;
}

std::vector<Point> sample_points(const Hypersurface& s, int count, std::uint64_t seed) {
    if (count < 1) throw InputError("sample count must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Point> out;
    const int max_attempts = 100 * count + 100;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
        Point p(s.real_dim());
        for (auto& x : p) x = normal(rng);
        bool converged = false;
        for (int it = 0; it < 50; ++it) {
            auto [v, g] = value_and_gradient(s, p);
            double g2 = 0;
            for (double gi : g) g2 += gi * gi;
            if (std::abs(v) < 1e-13) {
                if (g2 < 1e-20) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "surface singular (d phi = 0) at point (";
                    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
                    os << ")";
                    throw GeometryError(os.str());
                }
                converged = true;
                break;
            }
            if (g2 < 1e-20) break;  // stuck at a critical point of phi off M; reseed
            for (std::size_t k = 0; k < p.size(); ++k) p[k] -= v * g[k] / g2;
        }
        if (converged) out.push_back(std::move(p));
    }
    if (static_cast<int>(out.size()) < count)
        throw GeometryError("Newton projection failed to produce " + std::to_string(count) + " points");
    return out;
}

}  // namespace pherm

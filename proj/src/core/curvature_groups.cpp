#include "curvature_groups.hpp"

#include "errors.hpp"

#include <numeric>
#include <sstream>

namespace pherm {

std::vector<std::string> betti_registry_names() { return {"sphere"}; }

BettiVector betti_registry(const std::string& name, int n) {
    if (n < 1) throw InputError("CR dimension n must be positive");
    if (name == "sphere") {
        BettiVector v{n, std::vector<int>(2 * n + 2, 0)};
        v.b.front() = 1;
        v.b.back() = 1;
        return v;
    }
    std::string known;
    for (const auto& k : betti_registry_names()) known += (known.empty() ? "" : ", ") + k;
    throw InputError("no Betti numbers registered for '" + name + "' (registry: " + known + "); pass --betti");
}

BettiVector parse_betti(const std::string& text, int n) {
    BettiVector v{n, {}};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int b = std::stoi(item, &used);
            if (used != item.size() || b < 0) throw std::invalid_argument(item);
            v.b.push_back(b);
        } catch (const std::exception&) {
            throw InputError("bad Betti number '" + item + "'");
        }
    }
    if (static_cast<int>(v.b.size()) != 2 * n + 2)
        throw InputError("Betti vector needs 2n+2 = " + std::to_string(2 * n + 2) + " entries, got " +
                         std::to_string(v.b.size()));
    return v;
}

std::vector<std::string> betti_warnings(const BettiVector& betti) {
    std::vector<std::string> out;
    if (!betti.b.empty() && betti.b.front() < 1) out.push_back("b_0 < 1: M is not connected and nonempty");
    const int top = static_cast<int>(betti.b.size()) - 1;
    for (int k = 0; k <= top / 2; ++k)
        if (betti.b[k] != betti.b[top - k]) {
            out.push_back("Poincare duality fails: b_" + std::to_string(k) + " != b_" + std::to_string(top - k));
            break;
        }
    return out;
}

CurvatureGroupTable curvature_group_dims(const ClassificationReport& report, const BettiVector& betti) {
    const int n = betti.n;
    const int m = 2 * n + 2;
    if (static_cast<int>(betti.b.size()) != m)
        throw InputError("Betti vector length " + std::to_string(betti.b.size()) + " does not match 2n+2 = " +
                         std::to_string(m));
    CurvatureGroupTable t;
    t.n = n;
    t.dims.assign(m, 0);
    t.positive = report.pseudo_einstein && report.rho_constant;
    t.warnings = betti_warnings(betti);
    if (!t.positive) {
        t.reason = !report.pseudo_einstein ? "not pseudo-Einstein" : "pseudohermitian scalar curvature not constant";
        return t;
    }
    for (int k = 1; k <= m; ++k) t.dims[k - 1] = (k < m ? betti.b[k] : 0) + betti.b[k - 1];
    t.reason = "pseudo-Einstein with constant scalar curvature";
    if (!report.torsion_zero) {
        t.tau_ambiguous = true;
        t.warnings.push_back("ambiguous: pseudo-Einstein and constant rho but torsion nonzero");
    }
    return t;
}

int kunneth_total(const BettiVector& betti) {
    return 2 * std::accumulate(betti.b.begin(), betti.b.end(), 0) - betti.b.front();
}

std::optional<int> rumin_rule(const ClassificationReport& report, int n) {
    if (n >= 2 && report.pseudo_einstein && report.rho_constant && report.torsion_zero) return 1;
    return std::nullopt;
}

}  // namespace pherm

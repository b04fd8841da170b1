#include "pherm/pherm.h"

#include "curvature_groups.hpp"
#include "lorentz_fields.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace pherm;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::vector<std::pair<std::string, std::vector<int>>> kRegistry = {
    {"sphere", {1, 2}},
    {"ellipsoid", {1, 2}},
    {"heisenberg", {1, 2}},
    {"perturbed-sphere:0.1,3", {1, 2}},
};

std::string resolve(const std::string& name, int n) {
    if (name != "ellipsoid") return name;
    std::string s = "ellipsoid:";
    for (int j = 0; j <= n; ++j) s += (j ? "," : "") + std::to_string(1 + j);
    return s;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

template <class D>
double max_abs(const Eigen::MatrixBase<D>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

// Runs a configuration through the shared library, as the CLI does.
json run_capi(const json& cfg, pherm_status& st) {
    char* out = nullptr;
    st = pherm_run(cfg.dump().c_str(), &out);
    json report = out ? json::parse(out) : json();
    pherm_free_string(out);
    return report;
}

std::vector<int> groups_dims(const std::string& surface, int n) {
    pherm_status st;
    const json r = run_capi({{"command", "groups"}, {"surface", surface}, {"n", n}, {"samples", 8}, {"threads", 1}}, st);
    if (st != PHERM_OK || r["curvature_groups"].is_null()) return {};
    return r["curvature_groups"]["dims"].get<std::vector<int>>();
}

std::string show(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

Outcome criterion1() {
    Outcome o;
    for (int n : {1, 2}) {
        std::vector<int> expect(2 * n + 2, 0);
        expect[0] = expect[2 * n] = expect[2 * n + 1] = 1;
        const auto got = groups_dims("sphere", n);
        o.pass = o.pass && got == expect;
        o.detail += "n=" + std::to_string(n) + " " + show(got) + " ";
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (int n : {1, 2}) {
        const auto pert = groups_dims("perturbed-sphere:0.1,3", n);
        const auto flat = groups_dims("perturbed-sphere:0,3", n);
        std::vector<int> sphere(2 * n + 2, 0);
        sphere[0] = sphere[2 * n] = sphere[2 * n + 1] = 1;
        o.pass = o.pass && pert == std::vector<int>(2 * n + 2, 0) && flat == sphere;
        o.detail += "n=" + std::to_string(n) + " eps=0.1 " + show(pert) + " eps=0 " + show(flat) + " ";
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    double worst = 0;
    for (int n : {1, 2}) {
        for (const auto& [name, count] : {std::pair<std::string, int>{"sphere", 100}, {"ellipsoid", 50}}) {
            const auto surface = make_surface(resolve(name, n), n);
            for (const auto& p : sample_points(surface, count, 11)) {
                const LocalStructure local(surface, p);
                const auto tw = local.tw_snapshot();
                const FeffermanStructure fs(local, 0.7);
                const auto fd = fs.snapshot(tw);
                const LeviCivita lc(fs);
                const auto r = lifted_connection_residuals(lc, fs, fd, 1e-6);
                worst = std::max(worst, r.max());
                o.pass = o.pass && r.pass() && r.residuals.size() == 6;
            }
        }
    }
    o.detail = "max eq3..eq8 residual " + fmt(worst);
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst = 0, perturbed_min = 1e300;
    for (int n : {1, 2}) {
        const auto surface = make_surface("sphere", n);
        for (const auto& p : sample_points(surface, 100, 13)) {
            const LocalStructure local(surface, p);
            for (double gamma : {0.0, M_PI / 3, M_PI}) {
                const FeffermanStructure fs(local, gamma);
                const LeviCivita lc(fs);
                const auto exact = parallel_check(lc, fs, {1.0, 0.0});
                const auto moved = parallel_check(lc, fs, {1.0, 1e-2});
                worst = std::max(worst, exact.residual);
                perturbed_min = std::min(perturbed_min, moved.residual);
            }
        }
    }
    o.pass = worst < 1e-6 && perturbed_min > 1e-4;
    o.detail = "max |nabla X| " + fmt(worst) + ", perturbed min " + fmt(perturbed_min);
    return o;
}

Outcome criterion5() {
    Outcome o;
    double rel = 0, trace = 0, literal = 0;
    for (const auto& [name, ns] : kRegistry) {
        for (int n : ns) {
            const auto surface = make_surface(resolve(name, n), n);
            for (const auto& p : sample_points(surface, 10, 17)) {
                const LocalStructure local(surface, p);
                const auto tw = local.tw_snapshot();
                const auto fd = FeffermanStructure(local).snapshot(tw);
                const CMatrix formula = phi_from_curvature(tw);
                rel = std::max(rel, max_abs(fd.phi - formula) / std::max(1.0, max_abs(formula)));
                const cplx expect = cplx(0, 1) * tw.rho / (4.0 * (n + 1));
                trace = std::max(trace, std::abs(fd.phi.trace() - expect));
                if (max_abs(formula) > 1e-6) literal = std::max(literal, max_abs(2.0 * fd.phi) / max_abs(formula));
            }
        }
    }
    o.pass = rel < 1e-8 && trace < 1e-8;
    o.detail = "relative " + fmt(rel) + ", trace " + fmt(trace) + "; literal 2 dsigma reading is " +
               fmt(literal) + "x the formula";
    return o;
}

Outcome criterion6() {
    Outcome o;
    double v_zero = 0, identity = 0, closed = 0;
    int applicable = 0;
    for (const auto& [name, ns] : kRegistry) {
        for (int n : ns) {
            const auto surface = make_surface(resolve(name, n), n);
            std::vector<TWData> tws;
            std::vector<CMatrix> levis;
            std::vector<FeffermanPointData> fds;
            for (const auto& p : sample_points(surface, 10, 19)) {
                const LocalStructure local(surface, p);
                tws.push_back(local.tw_snapshot());
                levis.push_back(tws.back().levi);
                fds.push_back(FeffermanStructure(local).snapshot(tws.back()));
            }
            const auto cls = classify(tws, levis, 1e-6);
            for (std::size_t i = 0; i < tws.size(); ++i) {
                if (cls.rho_constant) v_zero = std::max(v_zero, max_abs(fds[i].v));
                if (cls.pseudo_einstein && n >= 2) {
                    identity = std::max(identity, pseudo_einstein_w_identity(tws[i], cls));
                    closed = std::max(closed, max_abs(fds[i].v_pairing - v_closed_form(tws[i], cls)));
                    ++applicable;
                }
            }
        }
    }
    o.pass = v_zero < 1e-8 && identity < 1e-7 && closed < 1e-7 && applicable > 0;
    o.detail = "max |V| " + fmt(v_zero) + ", W identity " + fmt(identity) + ", V formula " + fmt(closed) + " at " +
               std::to_string(applicable) + " points";
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst = 0;
    for (const auto& [name, ns] : kRegistry)
        for (int n : ns) {
            const auto surface = make_surface(resolve(name, n), n);
            for (const auto& p : sample_points(surface, 10, 23)) {
                const auto a = axiom_residuals(LocalStructure(surface, p));
                worst = std::max({worst, a.purity_holo, a.purity_mixed, a.metric, a.tau_j, a.tau_type});
            }
        }
    o.pass = worst < 1e-8;
    o.detail = "max axiom residual " + fmt(worst);
    return o;
}

Outcome criterion8() {
    Outcome o;
    int points = 0, bad = 0;
    for (const auto& [name, ns] : kRegistry)
        for (int n : ns) {
            const auto surface = make_surface(resolve(name, n), n);
            for (const auto& p : sample_points(surface, 10, 29)) {
                const LocalStructure local(surface, p);
                const auto tw = local.tw_snapshot();
                for (double gamma : {0.0, 2.0}) {
                    const FeffermanStructure fs(local, gamma);
                    Eigen::SelfAdjointEigenSolver<RMatrix> es(fs.snapshot(tw).metric);
                    int neg = 0;
                    for (double e : es.eigenvalues()) neg += e < 0;
                    bad += neg != 1;
                    ++points;
                }
            }
        }
    o.pass = bad == 0;
    o.detail = std::to_string(points - bad) + "/" + std::to_string(points) + " samples with one negative eigenvalue";
    return o;
}

Outcome criterion9() {
    Outcome o;
    double worst = 0;
    int shared = 0;
    for (int n : {1, 2}) {
        const auto surface = make_surface("sphere", n);
        for (const auto& p : sample_points(surface, 200, 31)) {
            std::vector<int> charts;
            for (int j = 0; j <= n; ++j)
                if (std::hypot(p[2 * j], p[2 * j + 1]) > 0.3) charts.push_back(j);
            if (charts.size() < 2) continue;
            std::vector<double> rho;
            std::vector<Eigen::VectorXd> eig;
            for (int j : charts) {
                const auto tw = LocalStructure(surface, p, j).tw_snapshot();
                rho.push_back(tw.rho);
                Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(tw.ricci, tw.levi);
                eig.push_back(es.eigenvalues());
            }
            for (std::size_t k = 1; k < charts.size(); ++k)
                worst = std::max({worst, std::abs(rho[k] - rho[0]), max_abs(eig[k] - eig[0])});
            if (++shared == 20) break;
        }
        o.pass = o.pass && shared == 20;
        shared = 0;
    }
    o.pass = o.pass && worst < 1e-8;
    o.detail = "20 shared points per n, max chart difference " + fmt(worst);
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::mt19937 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const int m = 2 * n + 2;
        std::uniform_int_distribution<int> pick(0, 5);
        std::vector<int> b(m);
        b[0] = 1 + pick(rng) % 3;
        for (int k = 1; k <= n; ++k) b[k] = pick(rng);
        for (int k = 0; k <= n; ++k) b[m - 1 - k] = b[k];
        // Poincare polynomial of M times that of the circle.
        std::vector<int> product(m + 1, 0);
        for (int k = 0; k < m; ++k) {
            product[k] += b[k];
            product[k + 1] += b[k];
        }
        ClassificationReport cls;
        cls.pseudo_einstein = cls.rho_constant = cls.torsion_zero = true;
        const BettiVector bv{n, b};
        const auto table = curvature_group_dims(cls, bv);
        int sum = 0;
        bool ok = true;
        for (int k = 1; k <= m; ++k) {
            ok = ok && table.dims[k - 1] == product[k];
            sum += table.dims[k - 1];
        }
        int total = 0;
        for (int v : b) total += v;
        ok = ok && sum == 2 * total - b[0] && sum == kunneth_total(bv);
        std::vector<int> capi(m);
        ok = ok && pherm_curvature_groups(n, 1, 1, 1, b.data(), capi.data()) == PHERM_OK && capi == table.dims;
        checked += ok;
    }
    o.pass = checked == 100;
    o.detail = std::to_string(checked) + "/100 Betti vectors";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"sphere curvature-group table", criterion1},
        {"dichotomy on the perturbed sphere", criterion2},
        {"Levi-Civita vs lifted formulas", criterion3},
        {"parallel field on the sphere", criterion4},
        {"two-method phi and trace", criterion5},
        {"V = 0 and pseudo-Einstein identities", criterion6},
        {"Tanaka-Webster axioms", criterion7},
        {"Lorentz signature", criterion8},
        {"gauge invariance across charts", criterion9},
        {"Kunneth self-consistency", criterion10},
    };
    const double budget[] = {10, 60, 300, 300, 300, 300, 300, 300, 300, 10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > budget[i]) {
            o.pass = false;
            o.detail += " (over time budget)";
        }
        failed += !o.pass;
        std::printf("criterion %2zu %s: %s -- %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}

#include "pipeline.hpp"

#include "errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

namespace pherm {

using nlohmann::json;

namespace {

json cjson(cplx c) { return json::array({c.real(), c.imag()}); }

json to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json to_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(cjson(v(i)));
    return out;
}

json to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cjson(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json to_json(const RMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

std::string format_point(const Point& p) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
    os << ")";
    return os.str();
}

template <class D>
double max_abs(const Eigen::MatrixBase<D>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

struct GammaCheck {
    double lambda = 0;
    double conformal = 0;
};

struct SampleResult {
    Point point;
    int chart = 0;
    TWData tw;
    AxiomResiduals axioms;
    double webster = 0;

    std::vector<FeffermanPointData> fefferman;  // one per gamma
    ResidualReport connection;
    ResidualReport conformal;
    double symmetry = 0;
    double compatibility = 0;
    double parallel = 0;
    double perturbed = std::numeric_limits<double>::infinity();
    std::vector<GammaCheck> fits;
    double dsigma = 0;
    double phi_two_methods = 0;
    double phi_trace = 0;
    double phi_pure = 0;
    double phi_antisymmetry = 0;
    double phi_literal_ratio = 0;
    double v_norm = 0;
    double gamma_spread = 0;
    double negative_eigenvalue = -std::numeric_limits<double>::infinity();
    double positive_eigenvalue = std::numeric_limits<double>::infinity();
};

template <class E>
[[noreturn]] void rethrow_with_stage(const E& e, const std::string& stage, const Point* p) {
    std::string msg = "stage " + stage;
    if (p) msg += " at " + format_point(*p);
    throw E(msg + ": " + e.what());
}

SampleResult evaluate_sample(const Hypersurface& surface, const Point& p, const RunConfig& cfg,
                             const std::vector<double>& gammas, bool full) {
    SampleResult r;
    r.point = p;
    std::string stage = "frame";
    const Point* where = nullptr;
    try {
        LocalStructure L(surface, p, {}, Conventions{cfg.d_factor});
        r.chart = L.chart();
        stage = "tanaka-webster";
        where = &p;
        r.tw = L.tw_snapshot();
        r.axioms = axiom_residuals(L);
        r.webster = webster_identity_residual(L, r.tw);
        if (!full) return r;

        const int n = L.n();
        const CMatrix formula = phi_from_curvature(r.tw);
        const double scale = max_abs(formula);
        const cplx trace_expected{0.0, r.tw.rho / (4.0 * (n + 1))};
        for (double gamma : gammas) {
            stage = "fefferman";
            FeffermanStructure fs(L, gamma);
            FeffermanPointData fd = fs.snapshot(r.tw);
            r.dsigma = std::max(r.dsigma, dsigma_consistency(fs, r.tw));
            r.phi_two_methods = std::max(r.phi_two_methods, max_abs(fd.phi - formula) / std::max(1.0, scale));
            r.phi_trace = std::max(r.phi_trace, std::abs(fd.phi_trace - trace_expected));
            r.phi_pure = std::max(r.phi_pure, max_abs(fd.phi_mixed));
            const RMatrix gram = fd.metric.topLeftCorner(2 * n, 2 * n);
            const RMatrix pairing = fd.phi_real.transpose() * gram;
            r.phi_antisymmetry = std::max(r.phi_antisymmetry, (pairing + pairing.transpose()).cwiseAbs().maxCoeff());
            if (scale > 1e-12) r.phi_literal_ratio = 2.0 * max_abs(fd.phi) / scale;
            r.v_norm = std::max(r.v_norm, max_abs(fd.v));
            for (Eigen::Index i = 0; i < fd.eigenvalues.size(); ++i) {
                const double e = fd.eigenvalues(i);
                if (e < 0) r.negative_eigenvalue = std::max(r.negative_eigenvalue, e);
                else r.positive_eigenvalue = std::min(r.positive_eigenvalue, e);
            }

            stage = "lorentz_fields";
            LeviCivita lc(fs);
            r.connection.merge(lifted_connection_residuals(lc, fs, fd, cfg.tol.connection));
            r.symmetry = std::max(r.symmetry, lc.symmetry_residual());
            r.compatibility = std::max(r.compatibility, lc.compatibility_residual());
            const CandidateField field{cfg.amplitude, 0.0};
            const ParallelCheck pc = parallel_check(lc, fs, field);
            r.parallel = std::max(r.parallel, pc.residual);
            r.fits.push_back({pc.lambda, pc.conformal});
            r.perturbed = std::min(r.perturbed, parallel_check(lc, fs, {cfg.amplitude, cfg.epsilon}).residual);
            r.conformal.merge(conformal_system_residuals(fs, fd, r.tw, field, cfg.tol.identity));

            if (!r.fefferman.empty()) {
                const auto& f0 = r.fefferman.front();
                const double spread = std::max({max_abs(fd.metric - f0.metric), max_abs(fd.dsigma - f0.dsigma),
                                                max_abs(fd.phi - f0.phi), max_abs(fd.v - f0.v)});
                r.gamma_spread = std::max(r.gamma_spread, spread);
            }
            r.fefferman.push_back(std::move(fd));
        }
    } catch (const GeometryError& e) {
        rethrow_with_stage(e, stage, where);
    } catch (const ConventionError& e) {
        rethrow_with_stage(e, stage, where);
    } catch (const InputError& e) {
        rethrow_with_stage(e, stage, where);
    }
    return r;
}

// Runs f(0..count-1) on a small pool; the first failing index wins.
template <class F>
void parallel_for(int count, int threads, F&& f) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::max(1, std::min(threads, count));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

json suite(bool asserted, bool pass, double tol, json residuals) {
    return {{"asserted", asserted}, {"pass", pass}, {"tol", tol}, {"residuals", std::move(residuals)}};
}

json residual_suite(const ResidualReport& r, bool asserted) {
    json res = json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    return suite(asserted, r.pass(), r.tol, res);
}

json tolerances_json(const Tolerances& t) {
    return {{"construction", t.construction}, {"classification", t.classification}, {"connection", t.connection},
            {"parallel", t.parallel},         {"identity", t.identity},             {"phi", t.phi},
            {"christoffel", t.christoffel},   {"gamma", t.gamma},                   {"perturbation", t.perturbation},
            {"golden", t.golden}};
}

const std::set<std::string> kCommands{"analyze", "verify", "groups"};

}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InputError("configuration must be a JSON object");
    RunConfig c;
    static const std::set<std::string> known{"command", "surface", "n",       "samples", "seed",
                                             "tol",     "gammas",  "betti",   "golden",  "timings",
                                             "threads", "d_factor", "amplitude", "epsilon"};
    try {
        for (const auto& [k, v] : j.items())
            if (!known.count(k)) throw InputError("unknown configuration key '" + k + "'");
        c.command = j.value("command", c.command);
        c.surface = j.value("surface", c.surface);
        c.n = j.value("n", c.n);
        c.samples = j.value("samples", c.samples);
        c.seed = j.value("seed", c.seed);
        c.timings = j.value("timings", c.timings);
        c.threads = j.value("threads", c.threads);
        c.d_factor = j.value("d_factor", c.d_factor);
        c.amplitude = j.value("amplitude", c.amplitude);
        c.epsilon = j.value("epsilon", c.epsilon);
        if (j.contains("gammas")) c.gammas = j.at("gammas").get<std::vector<double>>();
        if (j.contains("betti") && !j.at("betti").is_null()) c.betti = j.at("betti").get<std::string>();
        if (j.contains("golden") && !j.at("golden").is_null()) c.golden = j.at("golden").get<std::string>();
        if (j.contains("tol")) {
            const json& t = j.at("tol");
            if (t.is_number()) {
                c.tol.classification = t.get<double>();
            } else {
                const json defaults = tolerances_json(c.tol);
                for (const auto& [k, v] : t.items())
                    if (!defaults.contains(k)) throw InputError("unknown tolerance '" + k + "'");
                auto& tt = c.tol;
                tt.construction = t.value("construction", tt.construction);
                tt.classification = t.value("classification", tt.classification);
                tt.connection = t.value("connection", tt.connection);
                tt.parallel = t.value("parallel", tt.parallel);
                tt.identity = t.value("identity", tt.identity);
                tt.phi = t.value("phi", tt.phi);
                tt.christoffel = t.value("christoffel", tt.christoffel);
                tt.gamma = t.value("gamma", tt.gamma);
                tt.perturbation = t.value("perturbation", tt.perturbation);
                tt.golden = t.value("golden", tt.golden);
            }
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad configuration value: ") + e.what());
    }
    if (!kCommands.count(c.command)) throw InputError("unknown command '" + c.command + "'");
    if (c.n < 1 || c.n > 3) throw InputError("n must be 1, 2 or 3");
    if (c.samples < 2) throw InputError("classification needs at least 2 samples");
    if (c.d_factor <= 0) throw InputError("d_factor must be positive");
    for (double t : {c.tol.construction, c.tol.classification, c.tol.connection, c.tol.parallel, c.tol.identity,
                     c.tol.phi, c.tol.christoffel, c.tol.gamma, c.tol.perturbation, c.tol.golden})
        if (!(t > 0)) throw InputError("tolerances must be positive");
    return c;
}

RunResult run(const RunConfig& cfg) {
    using clock = std::chrono::steady_clock;
    json timings = json::object();
    auto lap = [&, start = clock::now()](const char* name) mutable {
        const auto now = clock::now();
        timings[name] = std::chrono::duration<double, std::milli>(now - start).count();
        start = now;
    };

    const Hypersurface surface = make_surface(cfg.surface, cfg.n);
    const std::vector<double> gammas =
        cfg.gammas.empty() ? std::vector<double>{0.0, std::numbers::pi / 3, std::numbers::pi} : cfg.gammas;
    const bool full = cfg.command != "groups";
    const bool with_table = cfg.command != "verify";

    std::vector<Point> points;
    try {
        points = sample_points(surface, cfg.samples, cfg.seed);
    } catch (const GeometryError& e) {
        rethrow_with_stage(e, "sample", nullptr);
    }
    lap("sample");

    std::vector<SampleResult> results(points.size());
    parallel_for(static_cast<int>(points.size()), cfg.threads,
                 [&](int i) { results[i] = evaluate_sample(surface, points[i], cfg, gammas, full); });
    lap("sweep");

    std::vector<TWData> tws;
    std::vector<CMatrix> levis;
    for (const auto& r : results) {
        tws.push_back(r.tw);
        levis.push_back(r.tw.levi);
    }
    const ClassificationReport cls = classify(tws, levis, cfg.tol.classification);
    const bool flags_hold = cls.pseudo_einstein && cls.rho_constant && cls.torsion_zero;
    const bool ambiguous = cls.pseudo_einstein && cls.rho_constant && !cls.torsion_zero;
    lap("classify");

    json report;
    report["schema"] = 1;
    report["command"] = cfg.command;
    report["config"] = {{"surface", cfg.surface},
                        {"n", cfg.n},
                        {"samples", cfg.samples},
                        {"seed", cfg.seed},
                        {"gammas", gammas},
                        {"d_factor", cfg.d_factor},
                        {"amplitude", cfg.amplitude},
                        {"epsilon", cfg.epsilon},
                        {"betti", cfg.betti ? json(*cfg.betti) : json(nullptr)},
                        {"tolerances", tolerances_json(cfg.tol)}};
    report["surface"] = {{"name", surface.name},
                         {"phi", surface.phi.to_string()},
                         {"compact", surface.compact},
                         {"topology", surface.topology}};
    report["classification"] = {{"pseudo_einstein", cls.pseudo_einstein},
                                {"rho_constant", cls.rho_constant},
                                {"torsion_zero", cls.torsion_zero},
                                {"torsion_ambiguous", ambiguous},
                                {"pseudo_einstein_residual", cls.pseudo_einstein_residual},
                                {"rho_deviation", cls.rho_deviation},
                                {"torsion_max", cls.torsion_max},
                                {"rho_mean", cls.rho_mean},
                                {"rho_min", cls.rho_min},
                                {"rho_max", cls.rho_max},
                                {"tol", cls.tol},
                                {"samples", cls.samples}};

    json samples = json::array();
    for (const auto& r : results) {
        json s = {{"point", r.point}, {"chart", r.chart}, {"rho", r.tw.rho}, {"ricci", to_json(r.tw.ricci)},
                  {"torsion", to_json(r.tw.torsion)}};
        if (full) {
            const auto& fd = r.fefferman.front();
            s["fefferman_metric"] = to_json(fd.metric);
            s["eigenvalues"] = to_json(fd.eigenvalues);
            s["phi"] = to_json(fd.phi);
            s["v"] = to_json(fd.v);
            s["sigma"] = to_json(fd.sigma);
        }
        samples.push_back(std::move(s));
    }
    report["samples"] = std::move(samples);

    std::vector<std::string> failed;
    json suites = json::object();
    auto add = [&](const std::string& name, json s) {
        if (s["asserted"].get<bool>() && !s["pass"].get<bool>()) failed.push_back(name);
        suites[name] = std::move(s);
    };

    if (full) {
        AxiomResiduals ax;
        double webster = 0, dsig = 0, sym = 0, compat = 0, parallel = 0, spread = 0;
        double perturbed = std::numeric_limits<double>::infinity();
        double phi2 = 0, phitr = 0, phipure = 0, phianti = 0, ratio = 0, vnorm = 0;
        double wid = 0, vclosed = 0, neg = -std::numeric_limits<double>::infinity();
        double pos = std::numeric_limits<double>::infinity();
        double lambda_max = 0;
        int candidates = 0;
        ResidualReport connection, conformal;
        connection.tol = cfg.tol.connection;
        conformal.tol = cfg.tol.identity;
        const bool closed_applicable = cls.pseudo_einstein && cfg.n >= 2;
        for (const auto& r : results) {
            ax.purity_holo = std::max(ax.purity_holo, r.axioms.purity_holo);
            ax.purity_mixed = std::max(ax.purity_mixed, r.axioms.purity_mixed);
            ax.metric = std::max(ax.metric, r.axioms.metric);
            ax.tau_j = std::max(ax.tau_j, r.axioms.tau_j);
            ax.tau_type = std::max(ax.tau_type, r.axioms.tau_type);
            ax.torsion_symmetry = std::max(ax.torsion_symmetry, r.axioms.torsion_symmetry);
            ax.ricci_hermitian = std::max(ax.ricci_hermitian, r.axioms.ricci_hermitian);
            ax.frame = std::max(ax.frame, r.axioms.frame);
            webster = std::max(webster, r.webster);
            dsig = std::max(dsig, r.dsigma);
            sym = std::max(sym, r.symmetry);
            compat = std::max(compat, r.compatibility);
            parallel = std::max(parallel, r.parallel);
            perturbed = std::min(perturbed, r.perturbed);
            spread = std::max(spread, r.gamma_spread);
            phi2 = std::max(phi2, r.phi_two_methods);
            phitr = std::max(phitr, r.phi_trace);
            phipure = std::max(phipure, r.phi_pure);
            phianti = std::max(phianti, r.phi_antisymmetry);
            ratio = std::max(ratio, r.phi_literal_ratio);
            vnorm = std::max(vnorm, r.v_norm);
            neg = std::max(neg, r.negative_eigenvalue);
            pos = std::min(pos, r.positive_eigenvalue);
            connection.merge(r.connection);
            conformal.merge(r.conformal);
            for (const auto& f : r.fits)
                if (f.conformal < cfg.tol.identity) {
                    ++candidates;
                    lambda_max = std::max(lambda_max, std::abs(f.lambda));
                }
            if (closed_applicable) {
                wid = std::max(wid, pseudo_einstein_w_identity(r.tw, cls));
                const Eigen::VectorXcd closed = v_closed_form(r.tw, cls);
                vclosed = std::max(vclosed, max_abs(r.fefferman.front().v_pairing - closed));
            }
        }
        const auto& t = cfg.tol;
        add("axioms", suite(true, ax.max() < t.construction, t.construction,
                            {{"purity_holo", ax.purity_holo},
                             {"purity_mixed", ax.purity_mixed},
                             {"metric", ax.metric},
                             {"tau_j", ax.tau_j},
                             {"tau_type", ax.tau_type},
                             {"torsion_symmetry", ax.torsion_symmetry},
                             {"ricci_hermitian", ax.ricci_hermitian},
                             {"frame", ax.frame}}));
        add("webster_identity", suite(true, webster < t.identity, t.identity, {{"max", webster}}));
        json signature = suite(true, neg < 0 && pos > 0, 0.0,
                               {{"largest_negative_eigenvalue", neg}, {"smallest_positive_eigenvalue", pos}});
        signature["tol"] = nullptr;
        add("lorentz_signature", std::move(signature));
        add("christoffel", suite(true, sym < t.christoffel && compat < t.christoffel, t.christoffel,
                                 {{"symmetry", sym}, {"compatibility", compat}}));
        add("lifted_connection", residual_suite(connection, true));
        json l2 = suite(true, std::max({phi2, phitr, phipure, phianti}) < t.phi, t.phi,
                        {{"two_methods_relative", phi2},
                         {"trace", phitr},
                         {"pure_part", phipure},
                         {"antisymmetry", phianti}});
        l2["literal_2dsigma_ratio"] = ratio;
        add("phi_two_methods", std::move(l2));
        add("dsigma_consistency", suite(true, dsig < t.identity, t.identity, {{"max", dsig}}));
        add("gamma_independence", suite(true, spread < t.gamma, t.gamma, {{"max", spread}}));
        add("v_zero", suite(cls.rho_constant, vnorm < t.phi, t.phi, {{"v_max", vnorm}}));
        json closed = suite(closed_applicable, wid < t.identity && vclosed < t.identity, t.identity,
                            closed_applicable ? json{{"w_identity", wid}, {"v_closed_form", vclosed}} : json::object());
        if (!closed_applicable)
            closed["note"] = cls.pseudo_einstein ? "not applicable for n = 1" : "not pseudo-Einstein";
        add("v_closed_form", std::move(closed));
        json par = suite(flags_hold, parallel < t.parallel && perturbed > t.perturbation, t.parallel,
                         {{"parallel", parallel}, {"perturbed_min", perturbed}});
        par["perturbation_floor"] = t.perturbation;
        if (ambiguous) par["note"] = "ambiguous: pseudo-Einstein, constant rho, torsion nonzero";
        add("parallel_field", std::move(par));
        add("conformal_lambda", suite(true, lambda_max < t.identity, t.identity,
                                     {{"lambda_max", lambda_max}, {"conformal_candidates", candidates}}));
        add("conformal_system", residual_suite(conformal, flags_hold));
        report["suites"] = std::move(suites);
    }

    if (with_table) {
        std::optional<BettiVector> betti;
        std::string source;
        if (cfg.betti) {
            betti = parse_betti(*cfg.betti, cfg.n);
            source = "user";
        } else if (!surface.topology.empty()) {
            betti = betti_registry(surface.topology, cfg.n);
            source = "registry:" + surface.topology;
        }
        const bool positive = cls.pseudo_einstein && cls.rho_constant;
        if (!betti && positive && cfg.command == "groups")
            throw InputError("missing Betti data: surface '" + surface.name +
                             "' has no registered topology; pass --betti b0,b1,...");
        if (betti || !positive) {
            CurvatureGroupTable table;
            if (betti) {
                table = curvature_group_dims(cls, *betti);
            } else {
                table = curvature_group_dims(cls, BettiVector{cfg.n, std::vector<int>(2 * cfg.n + 2, 0)});
                table.warnings.clear();
                source = "not needed";
            }
            json k = json::array();
            for (int i = 1; i <= 2 * cfg.n + 2; ++i) k.push_back(i);
            report["curvature_groups"] = {{"k", k},
                                          {"dims", table.dims},
                                          {"positive", table.positive},
                                          {"tau_ambiguous", table.tau_ambiguous},
                                          {"reason", table.reason},
                                          {"warnings", table.warnings},
                                          {"betti", {{"source", source}, {"b", betti ? json(betti->b) : json(nullptr)}}}};
            const auto rumin = rumin_rule(cls, cfg.n);
            json rj = {{"fires", rumin.has_value()}, {"h1", rumin ? json(*rumin) : json(nullptr)}};
            if (rumin) rj["consistent"] = betti && betti->b[1] == 0 ? json(table.dims[0] == *rumin) : json(nullptr);
            report["rumin"] = std::move(rj);
        } else {
            report["curvature_groups"] = nullptr;
            report["curvature_groups_note"] = surface.name == "heisenberg"
                                                  ? "registry declines: noncompact surface; pass --betti"
                                                  : "registry declines: unknown topology; pass --betti";
        }
    }

    RunResult out;
    if (cfg.golden) {
        std::ifstream in(*cfg.golden);
        if (!in) throw InputError("cannot read golden file " + *cfg.golden);
        json golden;
        try {
            golden = json::parse(in);
        } catch (const json::exception& e) {
            throw InputError("golden file " + *cfg.golden + " is not JSON: " + e.what());
        }
        json cmp = compare_golden(report, golden, cfg.tol.golden);
        cmp["file"] = *cfg.golden;
        if (!cmp["pass"].get<bool>()) failed.push_back("golden");
        report["golden"] = std::move(cmp);
    }
    lap("report");

    out.pass = failed.empty();
    report["verdict"] = {{"pass", out.pass}, {"failed", failed}};
    if (cfg.timings) report["timings_ms"] = std::move(timings);
    out.report = std::move(report);
    return out;
}

json compare_golden(const json& report, const json& golden, double tol) {
    json mismatches = json::array();
    std::function<void(const json&, const json&, const std::string&)> walk = [&](const json& g, const json& r,
                                                                                const std::string& path) {
        if (g.is_object()) {
            if (!r.is_object()) {
                mismatches.push_back({{"path", path}, {"expected", "object"}, {"actual", r}});
                return;
            }
            for (const auto& [k, v] : g.items()) {
                if (k == "timings_ms" || k == "golden" || k == "verdict") continue;
                const std::string p = path + "/" + k;
                if (!r.contains(k)) mismatches.push_back({{"path", p}, {"expected", v}, {"actual", nullptr}});
                else walk(v, r.at(k), p);
            }
        } else if (g.is_array()) {
            if (!r.is_array() || r.size() != g.size()) {
                mismatches.push_back({{"path", path}, {"expected", g}, {"actual", r}});
                return;
            }
            for (std::size_t i = 0; i < g.size(); ++i) walk(g[i], r[i], path + "/" + std::to_string(i));
        } else if (g.is_number() && !g.is_boolean()) {
            const double a = g.get<double>();
            if (!r.is_number() || std::abs(r.get<double>() - a) > tol * (1.0 + std::abs(a)))
                mismatches.push_back({{"path", path}, {"expected", g}, {"actual", r}});
        } else if (g != r) {
            mismatches.push_back({{"path", path}, {"expected", g}, {"actual", r}});
        }
    };
    walk(golden, report, "");
    const bool pass = mismatches.empty();
    if (mismatches.size() > 20) mismatches.erase(mismatches.begin() + 20, mismatches.end());
    return {{"pass", pass}, {"tol", tol}, {"mismatches", mismatches}};
}

}  // namespace pherm

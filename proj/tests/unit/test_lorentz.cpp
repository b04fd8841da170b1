#include <doctest.h>

#include "lorentz_fields.hpp"
#include "support.hpp"

#include <cmath>

using namespace pherm;

TEST_CASE("Christoffel symbols: symmetry and metric compatibility") {
    for (int n = 1; n <= 2; ++n) {
        const auto s = make_surface("sphere", n);
        for (const auto& p : sample_points(s, n == 1 ? 50 : 15, 3)) {
            const LocalStructure local(s, p);
            const FeffermanStructure fs(local, 0.9);
            const LeviCivita lc(fs);
            CHECK(lc.symmetry_residual() == 0.0);
            CHECK(lc.compatibility_residual() < 1e-7);
        }
    }
}

TEST_CASE("lifted-frame formulas against Christoffel symbols") {
    for (int n = 1; n <= 2; ++n)
        for (const auto& name : {std::string("sphere"), test::ellipsoid(n), std::string("perturbed-sphere:0.1,3")}) {
            const auto s = make_surface(name, n);
            for (const auto& p : sample_points(s, 5, 5)) {
                const LocalStructure local(s, p);
                const auto tw = local.tw_snapshot();
                const FeffermanStructure fs(local, 2.0);
                const auto fd = fs.snapshot(tw);
                const LeviCivita lc(fs);
                const auto r = lifted_connection_residuals(lc, fs, fd, 1e-6);
                REQUIRE(r.residuals.size() == 6);
                CHECK_MESSAGE(r.pass(), name, " n=", n, " max ", r.max());
                CHECK(r.residuals.at("eq6") < 1e-7);
                CHECK(r.residuals.at("eq7") < 1e-7);
            }
        }
}

TEST_CASE("S normalized to sigma(S) = 1 is what the formulas need") {
    const auto s = make_surface("sphere", 1);
    const LocalStructure local(s, sample_points(s, 1, 3).front());
    const auto tw = local.tw_snapshot();
    const FeffermanStructure unit(local, 0.0, 1.0);
    const LeviCivita lc(unit);
    CHECK(lifted_connection_residuals(lc, unit, unit.snapshot(tw), 1e-6).residuals.at("eq6") > 1e-3);
}

TEST_CASE("parallel candidate") {
    SUBCASE("sphere") {
        for (int n = 1; n <= 2; ++n) {
            const auto s = make_surface("sphere", n);
            for (const auto& p : sample_points(s, 5, 7)) {
                const LocalStructure local(s, p);
                for (double g : {0.0, M_PI / 3, M_PI}) {
                    const FeffermanStructure fs(local, g);
                    const LeviCivita lc(fs);
                    CHECK(parallel_check(lc, fs, {1.0, 0.0}).residual < 1e-6);
                    CHECK(parallel_check(lc, fs, {-2.5, 0.0}).residual < 1e-6);
                    CHECK(parallel_check(lc, fs, {1.0, 1e-2}).residual > 1e-4);
                    const auto zero = parallel_check(lc, fs, {0.0, 0.0});
                    CHECK(zero.residual == 0.0);
                    CHECK(zero.lambda == 0.0);
                }
            }
        }
    }
    SUBCASE("Heisenberg-type: T lift is parallel") {
        const auto s = make_surface("heisenberg", 2);
        for (const auto& p : sample_points(s, 5, 7)) {
            const LocalStructure local(s, p);
            const FeffermanStructure fs(local);
            const LeviCivita lc(fs);
            CHECK(parallel_check(lc, fs, {1.0, 0.0}).residual < 1e-8);
        }
    }
    SUBCASE("perturbed sphere: not parallel, not conformal") {
        const auto s = make_surface("perturbed-sphere:0.1,3", 2);
        const LocalStructure local(s, sample_points(s, 1, 7).front());
        const FeffermanStructure fs(local);
        const LeviCivita lc(fs);
        const auto c = parallel_check(lc, fs, {1.0, 0.0});
        CHECK(c.residual > 1e-4);
        CHECK(c.conformal > 1e-4);
    }
}

TEST_CASE("conformal system") {
    const auto sphere = make_surface("sphere", 2);
    const LocalStructure local(sphere, sample_points(sphere, 1, 11).front());
    const auto tw = local.tw_snapshot();
    const FeffermanStructure fs(local);
    const auto fd = fs.snapshot(tw);
    const auto r = conformal_system_residuals(fs, fd, tw, {1.0, 0.0}, 1e-7);
    CHECK(r.residuals.size() == 10);
    CHECK(r.pass());

    const auto pert = make_surface("perturbed-sphere:0.1,3", 2);
    const LocalStructure lp(pert, sample_points(pert, 1, 11).front());
    const auto tp = lp.tw_snapshot();
    const FeffermanStructure fp(lp);
    const auto rp = conformal_system_residuals(fp, fp.snapshot(tp), tp, {1.0, 0.0}, 1e-7);
    CHECK(rp.residuals.at("ricci_trace_free") > 1e-7);
    CHECK_FALSE(rp.pass());

    const auto heis = make_surface("heisenberg", 2);
    const LocalStructure lh(heis, sample_points(heis, 1, 11).front());
    const auto th = lh.tw_snapshot();
    const FeffermanStructure fh(lh);
    const auto rh = conformal_system_residuals(fh, fh.snapshot(th), th, {1.0, 0.0}, 1e-7);
    CHECK(rh.residuals.at("f_torsion") < 1e-12);
    CHECK(rh.residuals.at("f_v") < 1e-12);
}

TEST_CASE("residual reports merge by keywise max") {
    ResidualReport a{{{"eq3", 1e-9}, {"eq4", 2e-7}}, 2, 1e-6};
    ResidualReport b{{{"eq3", 5e-9}, {"eq5", 1e-8}}, 3, 1e-6};
    ResidualReport c{{{"eq4", 3e-6}}, 1, 1e-6};
    ResidualReport ab = a, bc = b;
    ab.merge(b);
    ab.merge(c);
    bc.merge(c);
    ResidualReport a_bc = a;
    a_bc.merge(bc);
    CHECK(ab.residuals == a_bc.residuals);
    CHECK(ab.samples == 6);
    CHECK(ab.residuals.at("eq3") == 5e-9);
    CHECK(ab.max() == 3e-6);
    CHECK_FALSE(ab.pass());
    a.merge(b);
    CHECK(a.pass());
}

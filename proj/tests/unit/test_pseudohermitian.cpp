#include <doctest.h>

#include "errors.hpp"
#include "pseudohermitian.hpp"
#include "support.hpp"

#include <cmath>

using namespace pherm;
using test::max_abs;

namespace {

struct Sweep {
    std::vector<TWData> tw;
    std::vector<CMatrix> levi;
    ClassificationReport report;
};

Sweep sweep(const Hypersurface& s, int count, std::uint64_t seed = 7) {
    Sweep out;
    for (const auto& p : sample_points(s, count, seed)) {
        out.tw.push_back(LocalStructure(s, p).tw_snapshot());
        out.levi.push_back(out.tw.back().levi);
    }
    out.report = classify(out.tw, out.levi, 1e-6);
    return out;
}

// |A| against g: Frobenius norm of L^-1 A L^-T with g = L L^*.
double torsion_norm(const TWData& tw) {
    const CMatrix l = tw.levi.llt().matrixL();
    const CMatrix li = l.inverse();
    return (li * tw.torsion * li.transpose()).norm();
}

}  // namespace

TEST_CASE("sampling lands on the level set deterministically") {
    const auto sphere = make_surface("sphere", 1);
    const auto pts = sample_points(sphere, 10, 7);
    REQUIRE(pts.size() == 10);
    for (const auto& p : pts) {
        double r2 = 0;
        for (double x : p) r2 += x * x;
        CHECK(std::abs(std::sqrt(r2) - 1) < 1e-10);
    }
    CHECK(sample_points(sphere, 10, 7) == pts);
    CHECK(sample_points(sphere, 10, 8) != pts);

    const auto ell = make_surface("ellipsoid:1,2", 1);
    for (const auto& p : sample_points(ell, 10, 7)) CHECK(std::abs(ell.phi.evaluate(p)) < 1e-10);
    for (int n = 1; n <= 3; ++n)
        for (const auto& p : sample_points(make_surface("heisenberg", n), 5, 3))
            CHECK(static_cast<int>(p.size()) == 2 * n + 2);
}

TEST_CASE("surface registry and input errors") {
    CHECK_THROWS_AS(make_surface("sphere", 0), InputError);
    CHECK_THROWS_AS(make_surface("sphere", 4), InputError);
    CHECK_THROWS_AS(make_surface("ellipsoid:1", 1), InputError);
    CHECK_THROWS_AS(make_surface("ellipsoid:1,-2", 1), InputError);
    CHECK_THROWS_AS(make_surface("perturbed-sphere:0.1", 1), InputError);
    CHECK_THROWS_AS(make_surface("z0*conj(z0)+z2*conj(z2)-1", 1), InputError);
    CHECK(make_surface("sphere", 2).topology == "sphere");
    CHECK(make_surface("heisenberg", 2).topology.empty());
}

TEST_CASE("adapted frame on the sphere") {
    const auto s = make_surface("sphere", 2);
    SUBCASE("at (1, 0, 0)") {
        const auto f = adapted_frame(s, {1, 0, 0, 0, 0, 0});
        CHECK(f.chart == 0);
        CHECK(max_abs(f.levi - 0.5 * CMatrix::Identity(2, 2)) < 1e-14);
        // T_a = d/dz^a: real parts (1/2, -i/2) on x^a, y^a.
        CHECK(std::abs(f.holo_frame[0](2) - 0.5) < 1e-14);
        CHECK(std::abs(f.holo_frame[0](3) - cplx(0, -0.5)) < 1e-14);
    }
    SUBCASE("T = x d/dy - y d/dx at every sample") {
        for (const auto& p : sample_points(s, 20, 3)) {
            const auto f = adapted_frame(s, p);
            for (int j = 0; j <= 2; ++j) {
                CHECK(std::abs(f.reeb(2 * j) + p[2 * j + 1]) < 1e-9);
                CHECK(std::abs(f.reeb(2 * j + 1) - p[2 * j]) < 1e-9);
            }
            for (const auto& x : f.real_frame) CHECK(std::abs(f.theta.dot(x)) < 1e-12);
        }
    }
}

TEST_CASE("geometry errors") {
    const auto hyperbolic = make_surface("z0*conj(z0) - z1*conj(z1) - 1", 1);
    const auto p = sample_points(hyperbolic, 1, 2).front();
    CHECK_THROWS_AS(LocalStructure(hyperbolic, p), GeometryError);

    const auto sphere = make_surface("sphere", 1);
    CHECK_THROWS_AS(LocalStructure(sphere, {1, 0, 0, 0}, 1), GeometryError);  // d phi/dz^1 = 0 there
    const auto cone = make_surface("z0*conj(z0) + z1*conj(z1)", 1);
    CHECK_THROWS_AS(LocalStructure(cone, {0, 0, 0, 0}), GeometryError);
}

TEST_CASE("sphere: constant rho, zero torsion, pseudo-Einstein") {
    for (int n = 1; n <= 2; ++n) {
        const auto sw = sweep(make_surface("sphere", n), n == 1 ? 100 : 30);
        for (const auto& tw : sw.tw) {
            CHECK(max_abs(tw.torsion) < 1e-9);
            CHECK(tw.rho == doctest::Approx(2.0 * n * (n + 1)).epsilon(1e-10));
        }
        CHECK(sw.report.rho_deviation < 1e-8 * std::abs(sw.report.rho_mean));
        CHECK(sw.report.pseudo_einstein);
        CHECK(sw.report.rho_constant);
        CHECK(sw.report.torsion_zero);
    }
}

TEST_CASE("diagonal ellipsoids carry the sphere's scalar curvature and torsion") {
    const auto sw = sweep(make_surface("ellipsoid:1,2,3", 2), 12);
    CHECK(sw.report.pseudo_einstein);
    CHECK(sw.report.rho_constant);
    for (const auto& tw : sw.tw) {
        CHECK(tw.rho == doctest::Approx(12.0).epsilon(1e-10));
        CHECK(max_abs(tw.torsion) < 1e-9);
    }
}

TEST_CASE("Heisenberg-type surface is flat") {
    const auto sw = sweep(make_surface("heisenberg", 2), 12);
    for (const auto& tw : sw.tw) {
        CHECK(max_abs(tw.ricci) < 1e-10);
        CHECK(std::abs(tw.rho) < 1e-10);
        CHECK(max_abs(tw.torsion) < 1e-10);
    }
    CHECK(sw.report.pseudo_einstein);
    CHECK(sw.report.rho_constant);
    CHECK(sw.report.torsion_zero);
    CHECK(pseudo_einstein_w_identity(sw.tw.front(), sw.report) < 1e-9);
}

TEST_CASE("perturbed sphere is not pseudo-Einstein for n = 2") {
    const auto sw = sweep(make_surface("z0*conj(z0)+z1*conj(z1)+z2*conj(z2)-1+0.1*re(z0)^3", 2), 12);
    CHECK_FALSE(sw.report.pseudo_einstein);
    CHECK(sw.report.pseudo_einstein_residual > 1e-3);
    CHECK_THROWS_AS(pseudo_einstein_w_identity(sw.tw.front(), sw.report), std::invalid_argument);
}

TEST_CASE("W identity needs n >= 2") {
    const auto sw = sweep(make_surface("sphere", 1), 4);
    CHECK(sw.report.pseudo_einstein);
    CHECK_THROWS_AS(pseudo_einstein_w_identity(sw.tw.front(), sw.report), std::invalid_argument);
    const auto sw2 = sweep(make_surface("sphere", 2), 4);
    for (const auto& tw : sw2.tw) CHECK(pseudo_einstein_w_identity(tw, sw2.report) < 1e-9);
}

TEST_CASE("axioms, Hermitian Ricci and the Webster identity on registry surfaces") {
    for (const std::string& name : {std::string("sphere"), std::string("heisenberg"),
                                    std::string("perturbed-sphere:0.1,3"), std::string("ellipsoid")})
        for (int n = 1; n <= 2; ++n) {
            const auto s = make_surface(name == "ellipsoid" ? test::ellipsoid(n) : name, n);
            for (const auto& p : sample_points(s, 6, 21)) {
                const LocalStructure local(s, p);
                const auto a = axiom_residuals(local);
                CHECK_MESSAGE(a.max() < 1e-8, name, " n=", n);
                CHECK(a.ricci_hermitian < 1e-10);
                CHECK(webster_identity_residual(local, local.tw_snapshot()) < 1e-7);
            }
        }
}

TEST_CASE("gauge invariance across charts") {
    std::vector<Hypersurface> surfaces{make_surface("sphere", 2), make_surface("ellipsoid:1,2,3", 2),
                                       make_surface("perturbed-sphere:0.1,3", 2)};
    int shared = 0;
    double torsion_seen = 0;
    for (const auto& surface : surfaces)
        for (const auto& p : sample_points(surface, 60, 4)) {
            if (std::hypot(p[0], p[1]) < 0.3 || std::hypot(p[2], p[3]) < 0.3) continue;
            const auto a = LocalStructure(surface, p, 0).tw_snapshot();
            const auto b = LocalStructure(surface, p, 1).tw_snapshot();
            CHECK(std::abs(a.rho - b.rho) < 1e-8);
            Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ea(a.ricci, a.levi), eb(b.ricci, b.levi);
            CHECK(max_abs(ea.eigenvalues() - eb.eigenvalues()) < 1e-8);
            CHECK(std::abs(torsion_norm(a) - torsion_norm(b)) < 1e-8);
            torsion_seen = std::max(torsion_seen, torsion_norm(a));
            ++shared;
        }
    CHECK(shared >= 20);
    CHECK(torsion_seen > 1e-3);
}

TEST_CASE("half-factor convention breaks torsion purity") {
    const auto s = make_surface("sphere", 1);
    const LocalStructure local(s, sample_points(s, 1, 1).front(), {}, Conventions{1.0});
    CHECK(axiom_residuals(local).purity_mixed > 1e-3);
}

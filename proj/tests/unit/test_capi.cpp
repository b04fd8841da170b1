#include <doctest.h>

#include "pherm/pherm.h"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

json run(const json& cfg, pherm_status& st) {
    char* out = nullptr;
    st = pherm_run(cfg.dump().c_str(), &out);
    json r = out ? json::parse(out) : json();
    pherm_free_string(out);
    return r;
}

}  // namespace

TEST_CASE("version and error string") {
    CHECK(std::string(pherm_version()) == "1.0.0");
    CHECK(pherm_last_error() != nullptr);
}

TEST_CASE("surface and point handles") {
    pherm_surface* s = nullptr;
    REQUIRE(pherm_surface_create("sphere", 2, &s) == PHERM_OK);
    REQUIRE(s);
    const int dim = pherm_surface_real_dim(s);
    CHECK(dim == 6);

    std::vector<double> pts(3 * dim);
    REQUIRE(pherm_surface_sample(s, 3, 7, pts.data()) == PHERM_OK);
    std::vector<double> again(3 * dim);
    pherm_surface_sample(s, 3, 7, again.data());
    CHECK(pts == again);

    pherm_point* p = nullptr;
    REQUIRE(pherm_point_create(s, pts.data(), -1, &p) == PHERM_OK);
    int chart = -1;
    CHECK(pherm_point_chart(p, &chart) == PHERM_OK);
    CHECK(chart >= 0);
    CHECK(chart <= 2);
    double rho = 0;
    CHECK(pherm_point_scalar_curvature(p, &rho) == PHERM_OK);
    CHECK(rho == doctest::Approx(12.0));

    std::vector<double> levi(8), ricci(8);
    CHECK(pherm_point_levi(p, levi.data()) == PHERM_OK);
    CHECK(pherm_point_ricci(p, ricci.data()) == PHERM_OK);
    // Pseudo-Einstein: R = (rho/n) g entrywise.
    for (int i = 0; i < 8; ++i) CHECK(std::abs(ricci[i] - rho / 2 * levi[i]) < 1e-10);
    CHECK(std::abs(levi[2] - levi[4]) < 1e-12);  // g_{0 1bar} = conj g_{1 0bar}
    CHECK(std::abs(levi[3] + levi[5]) < 1e-12);

    std::vector<double> f(36);
    CHECK(pherm_point_fefferman_metric(p, 0.5, f.data()) == PHERM_OK);
    CHECK(f[5 * 6 + 5] == doctest::Approx(0.0));
    CHECK(f[4 * 6 + 5] == doctest::Approx(1.0));
    CHECK(f[5 * 6 + 4] == doctest::Approx(1.0));
    pherm_point_destroy(p);

    const double bad[6] = {0.5, 0, 0, 0, 0, 0};
    CHECK(pherm_point_create(s, bad, -1, &p) == PHERM_INPUT_ERROR);
    CHECK(p == nullptr);
    pherm_surface_destroy(s);
}

TEST_CASE("error codes") {
    pherm_surface* s = nullptr;
    CHECK(pherm_surface_create("klein-bottle", 1, &s) == PHERM_INPUT_ERROR);
    CHECK(std::strlen(pherm_last_error()) > 0);
    CHECK(pherm_surface_create("sphere", 7, &s) == PHERM_INPUT_ERROR);
    CHECK(pherm_surface_create("z0*", 1, &s) == PHERM_INPUT_ERROR);
    CHECK(pherm_surface_create(nullptr, 1, &s) == PHERM_INPUT_ERROR);

    REQUIRE(pherm_surface_create("z0*conj(z0) - z1*conj(z1) - 1", 1, &s) == PHERM_OK);
    std::vector<double> pt(4);
    REQUIRE(pherm_surface_sample(s, 1, 1, pt.data()) == PHERM_OK);
    pherm_point* p = nullptr;
    CHECK(pherm_point_create(s, pt.data(), -1, &p) == PHERM_GEOMETRY_ERROR);
    CHECK(std::string(pherm_last_error()).find("pseudoconvex") != std::string::npos);
    pherm_surface_destroy(s);

    CHECK(pherm_point_chart(nullptr, nullptr) == PHERM_INPUT_ERROR);
    pherm_surface_destroy(nullptr);
    pherm_point_destroy(nullptr);
    pherm_free_string(nullptr);
}

TEST_CASE("curvature groups through the C API") {
    const int b[4] = {1, 2, 2, 1};
    int dims[4] = {};
    CHECK(pherm_curvature_groups(1, 1, 1, 1, b, dims) == PHERM_OK);
    CHECK(std::vector<int>(dims, dims + 4) == std::vector<int>{3, 4, 3, 1});
    CHECK(pherm_curvature_groups(1, 0, 1, 1, b, dims) == PHERM_OK);
    CHECK(std::vector<int>(dims, dims + 4) == std::vector<int>{0, 0, 0, 0});
    const int neg[4] = {1, -1, 0, 1};
    CHECK(pherm_curvature_groups(1, 1, 1, 1, neg, dims) == PHERM_INPUT_ERROR);
    CHECK(pherm_curvature_groups(0, 1, 1, 1, b, dims) == PHERM_INPUT_ERROR);
}

TEST_CASE("run") {
    pherm_status st;
    const json r = run({{"command", "groups"}, {"surface", "sphere"}, {"n", 1}, {"samples", 4}}, st);
    CHECK(st == PHERM_OK);
    CHECK(r["schema"] == 1);
    CHECK(r["curvature_groups"]["dims"] == json({1, 0, 1, 1}));

    run({{"command", "analyze"}, {"surface", "sphere"}, {"n", 1}, {"samples", 1}}, st);
    CHECK(st == PHERM_INPUT_ERROR);
    run({{"command", "analyze"}, {"surface", "sphere"}, {"bogus", 1}}, st);
    CHECK(st == PHERM_INPUT_ERROR);
    run({{"command", "groups"}, {"surface", "heisenberg"}, {"n", 2}, {"samples", 4}}, st);
    CHECK(st == PHERM_INPUT_ERROR);
    CHECK(std::string(pherm_last_error()).find("Betti") != std::string::npos);

    run({{"command", "verify"}, {"surface", "sphere"}, {"n", 1}, {"samples", 3}, {"d_factor", 1.0}}, st);
    CHECK(st == PHERM_SUITE_FAILURE);

    char* out = reinterpret_cast<char*>(1);
    CHECK(pherm_run("{not json", &out) == PHERM_INPUT_ERROR);
    CHECK(out == nullptr);
}

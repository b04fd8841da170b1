#include "pherm/pherm.h"

#include "errors.hpp"
#include "fefferman.hpp"
#include "pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct pherm_surface {
    pherm::Hypersurface surface;
};

struct pherm_point {
    std::unique_ptr<pherm::LocalStructure> local;
    pherm::TWData tw;
};

namespace {

thread_local std::string last_error;

pherm_status fail(pherm_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

// Maps exceptions escaping the core onto status codes.
template <class F>
pherm_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const pherm::InputError& e) {
        return fail(PHERM_INPUT_ERROR, e.what());
    } catch (const pherm::GeometryError& e) {
        return fail(PHERM_GEOMETRY_ERROR, e.what());
    } catch (const pherm::ConventionError& e) {
        return fail(PHERM_SUITE_FAILURE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PHERM_INPUT_ERROR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PHERM_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(PHERM_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(PHERM_INTERNAL_ERROR, "unknown error");
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void write_complex(const pherm::CMatrix& m, double* out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            *out++ = m(i, j).real();
            *out++ = m(i, j).imag();
        }
}

}  // namespace

extern "C" {

const char* pherm_last_error(void) { return last_error.c_str(); }

const char* pherm_version(void) { return "1.0.0"; }

pherm_status pherm_surface_create(const char* spec, int n, pherm_surface** out) {
    if (!spec || !out) return fail(PHERM_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new pherm_surface{pherm::make_surface(spec, n)};
        return PHERM_OK;
    });
}

void pherm_surface_destroy(pherm_surface* surface) { delete surface; }

int pherm_surface_real_dim(const pherm_surface* surface) { return surface ? surface->surface.real_dim() : 0; }

pherm_status pherm_surface_sample(const pherm_surface* surface, int count, uint64_t seed, double* points) {
    if (!surface || !points) return fail(PHERM_INPUT_ERROR, "null argument");
    return guarded([&] {
        const auto pts = pherm::sample_points(surface->surface, count, seed);
        for (const auto& p : pts) points = std::copy(p.begin(), p.end(), points);
        return PHERM_OK;
    });
}

pherm_status pherm_point_create(const pherm_surface* surface, const double* coords, int chart, pherm_point** out) {
    if (!surface || !coords || !out) return fail(PHERM_INPUT_ERROR, "null argument");
    *out = nullptr;
    return guarded([&] {
        const int dim = surface->surface.real_dim();
        pherm::Point p(coords, coords + dim);
        std::optional<int> ch;
        if (chart >= 0) ch = chart;
        auto point = std::make_unique<pherm_point>();
        point->local = std::make_unique<pherm::LocalStructure>(surface->surface, p, ch);
        point->tw = point->local->tw_snapshot();
        *out = point.release();
        return PHERM_OK;
    });
}

void pherm_point_destroy(pherm_point* point) { delete point; }

pherm_status pherm_point_chart(const pherm_point* point, int* chart) {
    if (!point || !chart) return fail(PHERM_INPUT_ERROR, "null argument");
    *chart = point->local->chart();
    return PHERM_OK;
}

pherm_status pherm_point_scalar_curvature(const pherm_point* point, double* rho) {
    if (!point || !rho) return fail(PHERM_INPUT_ERROR, "null argument");
    *rho = point->tw.rho;
    return PHERM_OK;
}

pherm_status pherm_point_levi(const pherm_point* point, double* out) {
    if (!point || !out) return fail(PHERM_INPUT_ERROR, "null argument");
    write_complex(point->tw.levi, out);
    return PHERM_OK;
}

pherm_status pherm_point_ricci(const pherm_point* point, double* out) {
    if (!point || !out) return fail(PHERM_INPUT_ERROR, "null argument");
    write_complex(point->tw.ricci, out);
    return PHERM_OK;
}

pherm_status pherm_point_fefferman_metric(const pherm_point* point, double gamma, double* out) {
    if (!point || !out) return fail(PHERM_INPUT_ERROR, "null argument");
    return guarded([&] {
        const pherm::FeffermanStructure fs(*point->local, gamma);
        const auto fd = fs.snapshot(point->tw);
        const int m = fs.size();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out[i * m + j] = fd.metric(i, j);
        return PHERM_OK;
    });
}

pherm_status pherm_curvature_groups(int n, int pseudo_einstein, int rho_constant, int torsion_zero,
                                    const int* betti, int* dims) {
    if (!betti || !dims) return fail(PHERM_INPUT_ERROR, "null argument");
    if (n < 1) return fail(PHERM_INPUT_ERROR, "n must be positive");
    return guarded([&] {
        pherm::ClassificationReport r;
        r.pseudo_einstein = pseudo_einstein != 0;
        r.rho_constant = rho_constant != 0;
        r.torsion_zero = torsion_zero != 0;
        pherm::BettiVector b{n, std::vector<int>(betti, betti + 2 * n + 2)};
        for (int v : b.b)
            if (v < 0) throw pherm::InputError("Betti numbers must be nonnegative");
        const auto table = pherm::curvature_group_dims(r, b);
        std::copy(table.dims.begin(), table.dims.end(), dims);
        return PHERM_OK;
    });
}

pherm_status pherm_run(const char* config_json, char** report) {
    if (!config_json || !report) return fail(PHERM_INPUT_ERROR, "null argument");
    *report = nullptr;
    return guarded([&] {
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::exception& e) {
            throw pherm::InputError(std::string("configuration is not JSON: ") + e.what());
        }
        const auto result = pherm::run(pherm::config_from_json(cfg));
        *report = copy_string(result.report.dump(2) + "\n");
        if (!result.pass) {
            last_error = "verification suites failed";
            return PHERM_SUITE_FAILURE;
        }
        return PHERM_OK;
    });
}

void pherm_free_string(char* s) { std::free(s); }

}  // extern "C"

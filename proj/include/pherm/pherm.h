#ifndef PHERM_PHERM_H
#define PHERM_PHERM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PHERM_API __declspec(dllexport)
#else
#define PHERM_API __attribute__((visibility("default")))
#endif

typedef enum pherm_status {
    PHERM_OK = 0,
    PHERM_SUITE_FAILURE = 1, /* report produced, a verified suite failed; or a convention guard tripped */
    PHERM_INPUT_ERROR = 2,   /* bad spec, expression, configuration or argument */
    PHERM_GEOMETRY_ERROR = 3, /* singular point, not strictly pseudoconvex, no admissible chart */
    PHERM_INTERNAL_ERROR = 4
} pherm_status;

typedef struct pherm_surface pherm_surface;
typedef struct pherm_point pherm_point;

/* Message of the last failing call on this thread; never NULL. */
PHERM_API const char* pherm_last_error(void);
PHERM_API const char* pherm_version(void);

/* spec: registry name (sphere, ellipsoid:a0,..., heisenberg,
   perturbed-sphere:eps,k) or an expression in z0..zn. 1 <= n <= 3. */
PHERM_API pherm_status pherm_surface_create(const char* spec, int n, pherm_surface** out);
PHERM_API void pherm_surface_destroy(pherm_surface* surface);
PHERM_API int pherm_surface_real_dim(const pherm_surface* surface);

/* points: count * (2n+2) doubles, row-major. */
PHERM_API pherm_status pherm_surface_sample(const pherm_surface* surface, int count, uint64_t seed, double* points);

/* chart: holomorphic coordinate index, or -1 for the dominant one.
   The point keeps a reference to the surface, which must outlive it. */
PHERM_API pherm_status pherm_point_create(const pherm_surface* surface, const double* coords, int chart,
                                          pherm_point** out);
PHERM_API void pherm_point_destroy(pherm_point* point);
PHERM_API pherm_status pherm_point_chart(const pherm_point* point, int* chart);
PHERM_API pherm_status pherm_point_scalar_curvature(const pherm_point* point, double* rho);
/* n*n complex entries g_{a bbar} as interleaved (re, im), row-major. */
PHERM_API pherm_status pherm_point_levi(const pherm_point* point, double* out);
/* n*n complex entries R_{a bbar}, same layout. */
PHERM_API pherm_status pherm_point_ricci(const pherm_point* point, double* out);
/* (2n+2)^2 entries of F in the basis {X_a lift, T lift, S}, row-major. */
PHERM_API pherm_status pherm_point_fefferman_metric(const pherm_point* point, double gamma, double* out);

/* betti: 2n+2 entries b_0..b_{2n+1}; dims: 2n+2 entries h_1..h_{2n+2}. */
PHERM_API pherm_status pherm_curvature_groups(int n, int pseudo_einstein, int rho_constant, int torsion_zero,
                                              const int* betti, int* dims);

/* config_json: {"command": "analyze"|"verify"|"groups", "surface": ..., "n": ...,
   "samples": ..., "seed": ..., "tol": ..., "gammas": [...], "betti": "1,0,...",
   "golden": path, "timings": bool, "threads": int}. On PHERM_OK and
   PHERM_SUITE_FAILURE *report is a JSON document to release with
   pherm_free_string; otherwise *report is NULL. */
PHERM_API pherm_status pherm_run(const char* config_json, char** report);
PHERM_API void pherm_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif

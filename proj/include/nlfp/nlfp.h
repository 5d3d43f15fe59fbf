/* nlfp - numerical laboratory for the nonlocal Fokker-Planck equation
 *
 *     du/dt = eps^-2 (J_eps * u - u) + div(x u)
 *
 * C interface to the solver library: opaque handles, integer status codes,
 * thread-local error messages.  All functions returning nlfp_status leave
 * outputs untouched on failure; call nlfp_last_error() for the message.
 */
#ifndef NLFP_H
#define NLFP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlfp_status {
  NLFP_OK = 0,
  NLFP_ERR_INVALID_ARGUMENT = 1, /* bad parameters, unknown names, bad config */
  NLFP_ERR_DOMAIN = 2,           /* precondition violated (domain too small, ...) */
  NLFP_ERR_IO = 3,               /* file system failures */
  NLFP_ERR_NUMERIC = 4,          /* resolution / convergence failures */
  NLFP_ERR_INTERNAL = 5
} nlfp_status;

const char* nlfp_version(void);
/* Message for the most recent failure on this thread; empty string if none. */
const char* nlfp_last_error(void);

/* ---- kernels ----------------------------------------------------------- */

typedef struct nlfp_kernel nlfp_kernel;

/* name in {uniform, triangular, gaussian, skew_step}; params are optional
 * (keys/values arrays of length n_params, e.g. "skew" = 2.0). */
nlfp_status nlfp_kernel_create(const char* name, int dim, const char* const* param_keys,
                               const double* param_values, int n_params, nlfp_kernel** out);
void nlfp_kernel_free(nlfp_kernel* kernel);

/* m_alpha(J_eps); alpha has one entry per dimension. */
nlfp_status nlfp_kernel_moment(const nlfp_kernel* kernel, const int* alpha, int alpha_len,
                               double eps, double* out);
nlfp_status nlfp_kernel_fourier(const nlfp_kernel* kernel, const double* xi, int xi_len,
                                double* out_re, double* out_im);
/* n samples of J written to out (n * dim doubles); reproducible per seed. */
nlfp_status nlfp_kernel_sample(const nlfp_kernel* kernel, uint64_t seed, size_t n, double* out);

/* ---- densities --------------------------------------------------------- */

typedef struct nlfp_density nlfp_density;

void nlfp_density_free(nlfp_density* density);
nlfp_status nlfp_density_info(const nlfp_density* density, int* dim, int* points,
                              double* half_width);
nlfp_status nlfp_density_mass(const nlfp_density* density, double* out);
/* Copies the cell values (points^dim doubles) into buf. */
nlfp_status nlfp_density_values(const nlfp_density* density, double* buf, size_t buflen);

/* Initial data: name in {gaussian, box, point, mixture} with the same
 * parameter keys as the configuration file (mean, var, center, half, ...). */
nlfp_status nlfp_solve_spectral(const nlfp_kernel* kernel, double eps, const char* initial_name,
                                const char* const* param_keys, const double* param_values,
                                int n_params, double t, double half_width, int points,
                                nlfp_density** out);
/* t = INFINITY solves for the equilibrium; also reachable directly: */
nlfp_status nlfp_equilibrium(const nlfp_kernel* kernel, double eps, double half_width, int points,
                             nlfp_density** out);

/* kappa_alpha of the equilibrium: m_alpha(J_eps) / (|alpha| eps^2). */
nlfp_status nlfp_equilibrium_cumulant(const nlfp_kernel* kernel, double eps, const int* alpha,
                                      int alpha_len, double* out);

/* ---- small numeric utilities ------------------------------------------ */

/* e^-m sum_{n=m}^{2m} m^n/n!; overflow-safe up to m ~ 1e6. */
nlfp_status nlfp_poisson_partial_sum(uint64_t m, double* out);

/* ---- experiment runner -------------------------------------------------- */

typedef struct nlfp_config nlfp_config;

nlfp_status nlfp_config_create(nlfp_config** out);
nlfp_status nlfp_config_load(const char* path, nlfp_config** out);
/* Same keys as the file format, e.g. nlfp_config_set(c, "kernel.name", "uniform"). */
nlfp_status nlfp_config_set(nlfp_config* config, const char* key, const char* value);
void nlfp_config_free(nlfp_config* config);

/* Runs the configured experiment; writes manifest, CSV tables and optional
 * SVG plots under the configured output directory. */
nlfp_status nlfp_run_experiment(const nlfp_config* config, int overwrite);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NLFP_H */

#include "nlfp/nlfp.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <ios>
#include <string>

#include "nlfp/clt.hpp"
#include "nlfp/cumulant.hpp"
#include "nlfp/experiment.hpp"
#include "nlfp/grid.hpp"
#include "nlfp/initial.hpp"
#include "nlfp/kernel.hpp"
#include "nlfp/spectral.hpp"

struct nlfp_kernel {
  nlfp::Kernel impl;
};

struct nlfp_density {
  nlfp::GridDensity impl;
};

struct nlfp_config {
  nlfp::ExperimentConfig impl;
};

namespace {

thread_local std::string g_last_error;

nlfp_status set_error(nlfp_status code, const char* what) {
  g_last_error = what != nullptr ? what : "";
  return code;
}

// Maps C++ exceptions onto status codes at the API boundary.
template <class F>
nlfp_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NLFP_OK;
  } catch (const std::invalid_argument& e) {
    return set_error(NLFP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return set_error(NLFP_ERR_DOMAIN, e.what());
  } catch (const std::ios_base::failure& e) {
    return set_error(NLFP_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return set_error(NLFP_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return set_error(NLFP_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return set_error(NLFP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(NLFP_ERR_INTERNAL, "unknown error");
  }
}

std::map<std::string, double> collect_params(const char* const* keys, const double* values,
                                             int n) {
  std::map<std::string, double> params;
  for (int i = 0; i < n; ++i) {
    if (keys == nullptr || values == nullptr)
      throw std::invalid_argument("parameter arrays must not be null when n_params > 0");
    params[keys[i]] = values[i];
  }
  return params;
}

nlfp::MultiIndex collect_alpha(const int* alpha, int len) {
  if (alpha == nullptr || len < 1) throw std::invalid_argument("alpha must not be empty");
  return nlfp::MultiIndex(alpha, alpha + len);
}

}  // namespace

extern "C" {

const char* nlfp_version(void) { return nlfp::library_version(); }

const char* nlfp_last_error(void) { return g_last_error.c_str(); }

nlfp_status nlfp_kernel_create(const char* name, int dim, const char* const* param_keys,
                               const double* param_values, int n_params, nlfp_kernel** out) {
  return guarded([&] {
    if (name == nullptr || out == nullptr)
      throw std::invalid_argument("name and out must not be null");
    auto params = collect_params(param_keys, param_values, n_params);
    *out = new nlfp_kernel{nlfp::Kernel::make(name, dim, params)};
  });
}

void nlfp_kernel_free(nlfp_kernel* kernel) { delete kernel; }

nlfp_status nlfp_kernel_moment(const nlfp_kernel* kernel, const int* alpha, int alpha_len,
                               double eps, double* out) {
  return guarded([&] {
    if (kernel == nullptr || out == nullptr)
      throw std::invalid_argument("kernel and out must not be null");
    *out = kernel->impl.moment(collect_alpha(alpha, alpha_len), eps);
  });
}

nlfp_status nlfp_kernel_fourier(const nlfp_kernel* kernel, const double* xi, int xi_len,
                                double* out_re, double* out_im) {
  return guarded([&] {
    if (kernel == nullptr || xi == nullptr || out_re == nullptr || out_im == nullptr)
      throw std::invalid_argument("arguments must not be null");
    if (xi_len != kernel->impl.dim())
      throw std::invalid_argument("xi length must equal the kernel dimension");
    const auto v = kernel->impl.fourier(std::span<const double>(xi, xi_len));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

nlfp_status nlfp_kernel_sample(const nlfp_kernel* kernel, uint64_t seed, size_t n, double* out) {
  return guarded([&] {
    if (kernel == nullptr || out == nullptr)
      throw std::invalid_argument("kernel and out must not be null");
    const int d = kernel->impl.dim();
    for (size_t i = 0; i < n; ++i) {
      nlfp::RngStream rng(seed, i);
      kernel->impl.sample(rng, std::span<double>(out + i * d, d));
    }
  });
}

void nlfp_density_free(nlfp_density* density) { delete density; }

nlfp_status nlfp_density_info(const nlfp_density* density, int* dim, int* points,
                              double* half_width) {
  return guarded([&] {
    if (density == nullptr) throw std::invalid_argument("density must not be null");
    if (dim != nullptr) *dim = density->impl.spec().dim;
    if (points != nullptr) *points = density->impl.spec().points;
    if (half_width != nullptr) *half_width = density->impl.spec().half_width;
  });
}

nlfp_status nlfp_density_mass(const nlfp_density* density, double* out) {
  return guarded([&] {
    if (density == nullptr || out == nullptr)
      throw std::invalid_argument("density and out must not be null");
    *out = nlfp::mass(density->impl);
  });
}

nlfp_status nlfp_density_values(const nlfp_density* density, double* buf, size_t buflen) {
  return guarded([&] {
    if (density == nullptr || buf == nullptr)
      throw std::invalid_argument("density and buf must not be null");
    const auto vals = density->impl.values();
    if (buflen < vals.size()) throw std::invalid_argument("buffer too small");
    std::memcpy(buf, vals.data(), vals.size() * sizeof(double));
  });
}

nlfp_status nlfp_solve_spectral(const nlfp_kernel* kernel, double eps, const char* initial_name,
                                const char* const* param_keys, const double* param_values,
                                int n_params, double t, double half_width, int points,
                                nlfp_density** out) {
  return guarded([&] {
    if (kernel == nullptr || initial_name == nullptr || out == nullptr)
      throw std::invalid_argument("kernel, initial_name and out must not be null");
    const auto u0 = nlfp::InitialData::make(initial_name, kernel->impl.dim(),
                                            collect_params(param_keys, param_values, n_params));
    const nlfp::GridSpec grid{kernel->impl.dim(), half_width, points};
    *out = new nlfp_density{nlfp::solve_density(u0, kernel->impl, eps, t, grid)};
  });
}

nlfp_status nlfp_equilibrium(const nlfp_kernel* kernel, double eps, double half_width, int points,
                             nlfp_density** out) {
  return guarded([&] {
    if (kernel == nullptr || out == nullptr)
      throw std::invalid_argument("kernel and out must not be null");
    const nlfp::GridSpec grid{kernel->impl.dim(), half_width, points};
    *out = new nlfp_density{nlfp::equilibrium_density(kernel->impl, eps, grid)};
  });
}

nlfp_status nlfp_equilibrium_cumulant(const nlfp_kernel* kernel, double eps, const int* alpha,
                                      int alpha_len, double* out) {
  return guarded([&] {
    if (kernel == nullptr || out == nullptr)
      throw std::invalid_argument("kernel and out must not be null");
    const auto a = collect_alpha(alpha, alpha_len);
    nlfp::CumulantTable empty;
    empty.dim = kernel->impl.dim();
    empty.max_order = nlfp::order(a);
    *out = nlfp::evolve_cumulant(kernel->impl, eps, empty, nlfp::kTimeInfinity, a);
  });
}

nlfp_status nlfp_poisson_partial_sum(uint64_t m, double* out) {
  return guarded([&] {
    if (out == nullptr) throw std::invalid_argument("out must not be null");
    *out = nlfp::poisson_partial_sum(m);
  });
}

nlfp_status nlfp_config_create(nlfp_config** out) {
  return guarded([&] {
    if (out == nullptr) throw std::invalid_argument("out must not be null");
    *out = new nlfp_config{};
  });
}

nlfp_status nlfp_config_load(const char* path, nlfp_config** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr)
      throw std::invalid_argument("path and out must not be null");
    *out = new nlfp_config{nlfp::parse_config_file(path)};
  });
}

nlfp_status nlfp_config_set(nlfp_config* config, const char* key, const char* value) {
  return guarded([&] {
    if (config == nullptr || key == nullptr || value == nullptr)
      throw std::invalid_argument("config, key and value must not be null");
    nlfp::apply_config_entry(config->impl, key, value, "override");
  });
}

void nlfp_config_free(nlfp_config* config) { delete config; }

nlfp_status nlfp_run_experiment(const nlfp_config* config, int overwrite) {
  return guarded([&] {
    if (config == nullptr) throw std::invalid_argument("config must not be null");
    nlfp::run_experiment(config->impl, overwrite != 0);
  });
}

}  // extern "C"

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nlfp {

struct Panel {
  double a = 0.0;
  double b = 0.0;
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n = 32);

double integrate_panels(const std::function<double(double)>& f, std::span<const Panel> panels,
                        int n = 32);

// Adaptive bisection with a GL(16)/GL(32) error estimate.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 1e-300);

}  // namespace nlfp

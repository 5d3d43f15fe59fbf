#include "nlfp/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nlfp {
namespace {

struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the Legendre polynomial P_n; standard construction.
GlRule build_rule(int n) {
  GlRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GlRule& rule_for(int n) {
  static std::mutex mtx;
  static std::map<int, GlRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return rule_for(n).nodes; }
const std::vector<double>& gl_weights(int n) { return rule_for(n).weights; }

double gl_integrate(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& xs = gl_nodes(n);
  const auto& ws = gl_weights(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += ws[i] * f(mid + half * xs[i]);
  return acc * half;
}

double integrate_panels(const std::function<double(double)>& f, std::span<const Panel> panels,
                        int n) {
  double acc = 0.0;
  for (const auto& p : panels) acc += gl_integrate(f, p.a, p.b, n);
  return acc;
}

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double rel_tol, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_integrate(f, a, mid, 16);
  const double right = gl_integrate(f, mid, b, 16);
  const double err = std::abs(left + right - whole);
  if (depth <= 0 || err <= abs_tol || err <= rel_tol * std::abs(left + right)) {
    return left + right;
  }
  return adapt(f, a, mid, left, rel_tol, abs_tol, depth - 1) +
         adapt(f, mid, b, right, rel_tol, abs_tol, depth - 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
  if (!(a <= b)) throw std::invalid_argument("adaptive_integrate: empty interval");
  return adapt(f, a, b, gl_integrate(f, a, b, 16), rel_tol, abs_tol, 48);
}

}  // namespace nlfp

#pragma once

#include <span>
#include <vector>

namespace nlfp {

// Least-squares fit used for every convergence-rate claim.  Fits are done on
// transformed coordinates (log-log or semilog); ordinates at or below the
// noise floor are excluded.  A fit is degenerate when fewer than 3 usable
// points remain or when all ordinates sit below the declared floor.
struct RateFit {
  std::vector<double> abscissae;
  std::vector<double> ordinates;
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int points_used = 0;
  bool degenerate = false;
};

RateFit loglog_fit(std::span<const double> xs, std::span<const double> ys,
                   double floor = 1e-13);

RateFit semilog_fit(std::span<const double> ts, std::span<const double> ys,
                    double floor = 1e-12);

}  // namespace nlfp

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace skewq {

struct NelderMeadOptions {
  double initial_step = 0.5;
  // Converged when the spread of simplex values drops below f_tol and a
  // fresh simplex around the best vertex does not improve it by more than f_tol.
  double f_tol = 1e-10;
  int max_iters = 5000;
  int max_rebuilds = 4;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts = {});

}  // namespace skewq

#include "skewq/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skewq {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

// One simplex run from x0; returns when the value spread is below f_tol or the
// iteration budget is exhausted.
NelderMeadResult run_simplex(const Objective& f, const std::vector<double>& x0, double step,
                             double f_tol, int max_iters) {
  const std::size_t n = x0.size();
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, f(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += step;
    simplex.push_back({x, f(x)});
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  auto affine = [n](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  NelderMeadResult res;
  int it = 0;
  for (; it < max_iters; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().f - simplex.front().f <= f_tol) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);

    Vertex& worst = simplex.back();
    auto xr = affine(centroid, worst.x, -1.0);
    double fr = f(xr);
    if (fr < simplex.front().f) {
      auto xe = affine(centroid, worst.x, -2.0);
      double fe = f(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
      continue;
    }
    bool outside = fr < worst.f;
    auto xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, worst.x, 0.5);
    double fc = f(xc);
    if (fc < (outside ? fr : worst.f)) {
      worst = {xc, fc};
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      simplex[v].x = affine(simplex.front().x, simplex[v].x, 0.5);
      simplex[v].f = f(simplex[v].x);
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  res.x = simplex.front().x;
  res.value = simplex.front().f;
  res.iterations = it;
  return res;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
  NelderMeadResult best = run_simplex(f, x0, opts.initial_step, opts.f_tol, opts.max_iters);
  int total_iters = best.iterations;
  double step = opts.initial_step;
  for (int rebuild = 0; rebuild < opts.max_rebuilds && best.converged; ++rebuild) {
    step *= 0.1;
    NelderMeadResult again = run_simplex(f, best.x, step, opts.f_tol, opts.max_iters);
    total_iters += again.iterations;
    bool improved = again.value < best.value - opts.f_tol;
    if (again.value < best.value) best = again;
    if (!improved) break;
  }
  best.iterations = total_iters;
  return best;
}

}  // namespace skewq

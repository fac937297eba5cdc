#pragma once

// Independent reference computations used to check the library: grid
// search, finite differences and brute-force maxima. Nothing here calls a
// solver or estimator from the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "omdlab/geometry.hpp"

namespace oracle {

using omdlab::Vector;

using Objective = std::function<double(const Vector&)>;

struct GridResult {
  Vector point;
  double value = std::numeric_limits<double>::infinity();
};

namespace detail {

// Scans the lattice lo + k*h (per free coordinate), last point clamped to hi.
// `lift` maps free coordinates to a full point, or returns false if the
// point is outside the set.
inline void scan(const Vector& lo, const Vector& hi, double h,
                 const std::function<bool(const Vector&, Vector&)>& lift, const Objective& f,
                 GridResult& best) {
  const int k = static_cast<int>(lo.size());
  std::vector<int> counts(k);
  for (int i = 0; i < k; ++i) {
    counts[i] = static_cast<int>(std::ceil((hi[i] - lo[i]) / h - 1e-9)) + 1;
  }
  std::vector<int> idx(k, 0);
  Vector free(k), full;
  while (true) {
    for (int i = 0; i < k; ++i) free[i] = std::min(lo[i] + idx[i] * h, hi[i]);
    if (lift(free, full)) {
      const double v = f(full);
      if (v < best.value) {
        best.value = v;
        best.point = full;
      }
    }
    int i = 0;
    while (i < k && ++idx[i] == counts[i]) idx[i++] = 0;
    if (i == k) break;
  }
}

// Coarse grid of about 100 steps per side, then local grids five times finer
// around the incumbent until the spacing reaches `fine`.
inline GridResult refine(const Vector& lo, const Vector& hi, double fine,
                         const std::function<bool(const Vector&, Vector&)>& lift,
                         const std::function<Vector(const Vector&)>& project_free,
                         const Objective& f) {
  GridResult best;
  double h = std::max((hi - lo).maxCoeff() / 100.0, fine);
  scan(lo, hi, h, lift, f, best);
  while (h > fine * (1 + 1e-9)) {
    const Vector centre = project_free(best.point);
    const double next = std::max(h / 5.0, fine);
    Vector l = (centre.array() - 3 * h).cwiseMax(lo.array()).matrix();
    Vector u = (centre.array() + 3 * h).cwiseMin(hi.array()).matrix();
    scan(l, u, next, lift, f, best);
    h = next;
  }
  return best;
}

}  // namespace detail

/// Minimum of f over {z : sum z = 1, z_i >= eps} in dimension 2 or 3,
/// parameterised by the first d - 1 coordinates.
inline GridResult simplex_argmin(int d, double eps, const Objective& f, double fine = 1e-4) {
  const Vector lo = Vector::Constant(d - 1, eps);
  const Vector hi = Vector::Constant(d - 1, 1.0 - (d - 1) * eps);
  auto lift = [d, eps](const Vector& free, Vector& full) {
    full.resize(d);
    full.head(d - 1) = free;
    full[d - 1] = 1.0 - free.sum();
    return full[d - 1] >= eps - 1e-15;
  };
  auto project_free = [d](const Vector& full) -> Vector { return full.head(d - 1); };
  return detail::refine(lo, hi, fine, lift, project_free, f);
}

/// Minimum of f over the box [lo, hi].
inline GridResult box_argmin(const Vector& lo, const Vector& hi, const Objective& f,
                             double fine = 1e-4) {
  auto lift = [](const Vector& free, Vector& full) {
    full = free;
    return true;
  };
  auto project_free = [](const Vector& full) -> Vector { return full; };
  return detail::refine(lo, hi, fine, lift, project_free, f);
}

/// Central-difference gradient with per-coordinate step rel * |x_i|.
inline Vector fd_gradient(const Objective& f, const Vector& x, double rel = 1e-6) {
  Vector g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double h = rel * std::max(std::abs(x[i]), 1e-3);
    Vector a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

/// Central difference of t -> <grad(x + t v), v> at t = 0.
inline double fd_directional_second(const std::function<Vector(const Vector&)>& grad,
                                    const Vector& x, const Vector& v, double h) {
  return (grad(x + h * v).dot(v) - grad(x - h * v).dot(v)) / (2 * h);
}

/// max_i |a_i - b_i| / max(max_i |b_i|, floor).
inline double rel_error(const Vector& a, const Vector& b, double floor = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), floor);
}

inline double rel_error(double a, double b, double floor = 1e-12) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

/// max over the listed points of f.
inline double brute_max(const std::vector<Vector>& points, const Objective& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::max(best, f(p));
  return best;
}

/// Every point of a regular grid on the 2- or 3-d simplex with spacing h.
inline std::vector<Vector> simplex_grid(int d, double h) {
  std::vector<Vector> out;
  const int n = static_cast<int>(std::round(1.0 / h));
  if (d == 2) {
    for (int i = 0; i <= n; ++i) out.push_back((Vector(2) << i * h, 1.0 - i * h).finished());
  } else {
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        out.push_back((Vector(3) << i * h, j * h, 1.0 - (i + j) * h).finished());
  }
  return out;
}

}  // namespace oracle

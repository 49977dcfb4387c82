// Copyright 2026 The Sharpmark Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHARPMARK_STATS_HPP_
#define SHARPMARK_STATS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sharpmark/image.hpp"

namespace sharpmark {

namespace detail {

inline void require_same_length(const std::vector<double>& x, const std::vector<double>& y,
                                std::size_t min_n, const char* who) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(who) + ": length mismatch");
  }
  if (x.size() < min_n) {
    throw std::invalid_argument(std::string(who) + ": need at least " +
                                std::to_string(min_n) + " samples");
  }
}

inline double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Population standard deviation (1/N).
inline double std_pop(const std::vector<double>& v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double t : v) acc += (t - m) * (t - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Average ranks (1-based): tied values share the mean of the rank positions
/// they would occupy.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

/// Pearson linear correlation coefficient.
inline double plcc(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require_same_length(x, y, 3, "plcc");
  const double mx = detail::mean_of(x), my = detail::mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("plcc: zero variance input");
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Spearman rank-order correlation: Pearson over average ranks.
inline double srocc(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require_same_length(x, y, 3, "srocc");
  return plcc(average_ranks(x), average_ranks(y));
}

/// Kendall rank correlation, tau-b (tie-adjusted).
inline double krocc(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require_same_length(x, y, 3, "krocc");
  const std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double denom =
      std::sqrt((n0 - static_cast<double>(ties_x)) * (n0 - static_cast<double>(ties_y)));
  if (denom == 0.0) {
    throw std::invalid_argument("krocc: all pairs tied in one input");
  }
  return static_cast<double>(concordant - discordant) / denom;
}

/// Root mean squared elementwise difference.
inline double rmse(const std::vector<double>& x, const std::vector<double>& y) {
  detail::require_same_length(x, y, 1, "rmse");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(x.size()));
}

struct LogisticParams {
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0, b5 = 0.0;
};

/// f(x) = b1 * (1/2 - 1/(1+exp(b2*(x-b3)))) + b4*x + b5.
inline double logistic5(const LogisticParams& p, double x) {
  return p.b1 * (0.5 - 1.0 / (1.0 + std::exp(p.b2 * (x - p.b3)))) + p.b4 * x + p.b5;
}

struct LogisticFit {
  LogisticParams params;
  bool converged = false;  // best-so-far is still returned when false
  int iterations = 0;
};

namespace detail {

using Vec5 = std::array<double, 5>;

inline double logistic5_sse(const Vec5& b, const std::vector<double>& x,
                            const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = 0.5 - 1.0 / (1.0 + std::exp(b[1] * (x[i] - b[2])));
    const double r = b[0] * g + b[3] * x[i] + b[4] - y[i];
    acc += r * r;
  }
  // Wild vertices can push the objective to inf/NaN; map those to a huge
  // finite value so the vertex ordering stays well defined.
  return std::isfinite(acc) ? acc : std::numeric_limits<double>::max();
}

// Exact least squares over (b1, b4, b5) with (b2, b3) held fixed, solved via
// 3x3 normal equations. Returns false when the system is singular.
inline bool polish_linear(Vec5& b, const std::vector<double>& x, const std::vector<double>& y) {
  double m[3][4] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a[3] = {0.5 - 1.0 / (1.0 + std::exp(b[1] * (x[i] - b[2]))), x[i], 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += a[r] * a[c];
      m[r][3] += a[r] * y[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (!(std::abs(m[pivot][col]) > 1e-300)) return false;
    if (pivot != col) std::swap(m[pivot], m[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  double sol[3];
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * sol[c];
    sol[r] = acc / m[r][r];
    if (!std::isfinite(sol[r])) return false;
  }
  b[0] = sol[0];
  b[3] = sol[1];
  b[4] = sol[2];
  return true;
}

struct NmOutcome {
  Vec5 best;
  double fbest = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead with the classic fminsearch coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5) and a right-angle start simplex (5% per-coordinate
// perturbation, 0.00025 for zero coordinates).
template <typename F>
NmOutcome nelder_mead5(const F& f, const Vec5& x0, int max_iter) {
  constexpr int kDim = 5;
  std::array<Vec5, kDim + 1> verts;
  std::array<double, kDim + 1> fv;
  verts[0] = x0;
  for (int i = 0; i < kDim; ++i) {
    Vec5 v = x0;
    v[i] = v[i] != 0.0 ? v[i] * 1.05 : 0.00025;
    verts[i + 1] = v;
  }
  for (int i = 0; i <= kDim; ++i) fv[i] = f(verts[i]);

  const auto sort_verts = [&verts, &fv]() {
    std::array<int, kDim + 1> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&fv](int a, int b) { return fv[a] < fv[b]; });
    std::array<Vec5, kDim + 1> v2;
    std::array<double, kDim + 1> f2;
    for (int i = 0; i <= kDim; ++i) {
      v2[i] = verts[order[i]];
      f2[i] = fv[order[i]];
    }
    verts = v2;
    fv = f2;
  };

  NmOutcome out;
  int it = 0;
  while (it < max_iter) {
    sort_verts();
    double diam = 0.0, scale = 0.0;
    for (int c = 0; c < kDim; ++c) scale = std::max(scale, std::abs(verts[0][c]));
    for (int i = 1; i <= kDim; ++i) {
      for (int c = 0; c < kDim; ++c) {
        diam = std::max(diam, std::abs(verts[i][c] - verts[0][c]));
      }
    }
    if (diam < 1e-9 * (1.0 + scale)) {
      out.best = verts[0];
      out.fbest = fv[0];
      out.iterations = it;
      out.converged = true;
      return out;
    }
    ++it;

    Vec5 centroid = {};
    for (int i = 0; i < kDim; ++i) {
      for (int c = 0; c < kDim; ++c) centroid[c] += verts[i][c];
    }
    for (int c = 0; c < kDim; ++c) centroid[c] /= kDim;

    const auto blend = [&centroid](const Vec5& v, double t) {
      Vec5 r;
      for (int c = 0; c < kDim; ++c) r[c] = centroid[c] + t * (v[c] - centroid[c]);
      return r;
    };
    const auto shrink = [&verts, &fv, &f]() {
      for (int i = 1; i <= kDim; ++i) {
        for (int c = 0; c < kDim; ++c) verts[i][c] = verts[0][c] + 0.5 * (verts[i][c] - verts[0][c]);
        fv[i] = f(verts[i]);
      }
    };

    const Vec5 reflected = blend(verts[kDim], -1.0);
    const double fr = f(reflected);
    if (fr < fv[0]) {
      const Vec5 expanded = blend(verts[kDim], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        verts[kDim] = expanded;
        fv[kDim] = fe;
      } else {
        verts[kDim] = reflected;
        fv[kDim] = fr;
      }
    } else if (fr < fv[kDim - 1]) {
      verts[kDim] = reflected;
      fv[kDim] = fr;
    } else if (fr < fv[kDim]) {
      const Vec5 outside = blend(reflected, 0.5);
      const double fc = f(outside);
      if (fc <= fr) {
        verts[kDim] = outside;
        fv[kDim] = fc;
      } else {
        shrink();
      }
    } else {
      const Vec5 inside = blend(verts[kDim], 0.5);
      const double fc = f(inside);
      if (fc < fv[kDim]) {
        verts[kDim] = inside;
        fv[kDim] = fc;
      } else {
        shrink();
      }
    }
  }
  sort_verts();
  out.best = verts[0];
  out.fbest = fv[0];
  out.iterations = it;
  out.converged = false;
  return out;
}

}  // namespace detail

/// Least-squares fit of the 5-parameter logistic to (objective, subjective)
/// pairs. Deterministic: fixed initialization, simplex descent interleaved
/// with an exact linear solve over the three linear parameters, 20000
/// iteration budget. Objective with zero spread is rejected.
inline LogisticFit fit_logistic5(const std::vector<double>& objective,
                                 const std::vector<double>& subjective) {
  detail::require_same_length(objective, subjective, 5, "fit_logistic5");
  const double sx = detail::std_pop(objective);
  if (sx == 0.0) {
    throw std::invalid_argument("fit_logistic5: objective scores have zero variance");
  }
  const double mx = detail::mean_of(objective), my = detail::mean_of(subjective);
  double cov = 0.0;
  for (std::size_t i = 0; i < objective.size(); ++i) {
    cov += (objective[i] - mx) * (subjective[i] - my);
  }
  const double sign = cov >= 0.0 ? 1.0 : -1.0;
  const auto [lo, hi] = std::minmax_element(subjective.begin(), subjective.end());

  detail::Vec5 best = {(*hi - *lo) * sign, 4.0 / sx, detail::median_of(objective), 0.0, my};
  const auto f = [&objective, &subjective](const detail::Vec5& b) {
    return detail::logistic5_sse(b, objective, subjective);
  };
  double fbest = f(best);

  const auto try_polish = [&]() {
    detail::Vec5 cand = best;
    if (!detail::polish_linear(cand, objective, subjective)) return false;
    const double fc = f(cand);
    if (fc < fbest) {
      best = cand;
      fbest = fc;
      return true;
    }
    return false;
  };
  try_polish();

  constexpr int kBudget = 20000;
  constexpr int kCycleBudget = 4000;
  int total = 0;
  bool converged = false;
  while (total < kBudget) {
    const detail::NmOutcome nm =
        detail::nelder_mead5(f, best, std::min(kCycleBudget, kBudget - total));
    total += std::max(nm.iterations, 1);
    const double cycle_f = nm.fbest;
    if (nm.fbest < fbest) {
      best = nm.best;
      fbest = nm.fbest;
    }
    try_polish();
    converged = nm.converged;
    if (nm.converged) {
      // Run another cycle only if the polish moved the optimum meaningfully
      // past what the simplex settled on.
      if (!(fbest < cycle_f - 1e-15 * (1.0 + std::abs(cycle_f)))) break;
    }
  }

  LogisticFit fit;
  fit.params = {best[0], best[1], best[2], best[3], best[4]};
  fit.converged = converged;
  fit.iterations = total;
  return fit;
}

/// PSNR in dB over all channels jointly, samples in [0,1]. Identical inputs
/// report the 99.0 dB cap.
inline double psnr(const std::vector<ImagePlane>& ref, const std::vector<ImagePlane>& test) {
  if (ref.empty() || ref.size() != test.size()) {
    throw std::invalid_argument("psnr: channel count mismatch");
  }
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < ref.size(); ++c) {
    if (!ref[c].same_shape(test[c])) {
      throw std::invalid_argument("psnr: dimension mismatch");
    }
    for (std::size_t k = 0; k < ref[c].size(); ++k) {
      const double d = ref[c].samples()[k] - test[c].samples()[k];
      acc += d * d;
    }
    count += ref[c].size();
  }
  const double mse = acc / static_cast<double>(count);
  if (mse == 0.0) return 99.0;
  return 10.0 * std::log10(1.0 / mse);
}

inline double psnr(const InputImage& ref, const InputImage& test) {
  return psnr(ref.planes, test.planes);
}

}  // namespace sharpmark

#endif  // SHARPMARK_STATS_HPP_

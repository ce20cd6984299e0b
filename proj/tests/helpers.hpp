#pragma once

#include "maximin/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace testing_helpers {

using maximin::Index;
using maximin::Matrix;
using maximin::Vector;

inline Vector random_vector(std::mt19937_64& gen, Index p, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vector v(p);
  for (Index i = 0; i < p; ++i) v(i) = nd(gen);
  return v;
}

// Random SPD matrix with eigenvalues in [0.2, 3].
inline Matrix random_spd(std::mt19937_64& gen, Index p) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.2, 3.0);
  Matrix Z(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) Z(i, j) = nd(gen);
  Eigen::HouseholderQR<Matrix> qr(Z);
  const Matrix Q = qr.householderQ();
  Vector ev(p);
  for (Index i = 0; i < p; ++i) ev(i) = ud(gen);
  Matrix S = Q * ev.asDiagonal() * Q.transpose();
  return 0.5 * (S + S.transpose());
}

inline maximin::SupportSet random_support(std::mt19937_64& gen, Index p, Index d, double shift = 0.0) {
  maximin::SupportSet s;
  s.sigma = random_spd(gen, p);
  for (Index j = 0; j < d; ++j) {
    Vector b = random_vector(gen, p);
    b(0) += shift;
    s.points.push_back(b);
  }
  return s;
}

// Visits every weight vector on the simplex with d entries that are
// multiples of 1/steps.
inline void for_each_simplex_point(Index d, int steps, const std::function<void(const Vector&)>& visit) {
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  std::function<void(Index, int)> rec = [&](Index pos, int left) {
    if (pos == d - 1) {
      k[static_cast<std::size_t>(pos)] = left;
      Vector w(d);
      for (Index i = 0; i < d; ++i) w(i) = static_cast<double>(k[static_cast<std::size_t>(i)]) / steps;
      visit(w);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, steps);
}

// Brute-force min of gamma' Sigma gamma over the hull: a coarse simplex grid,
// then a fine local grid around the best coarse weights.
inline Vector grid_maximin(const maximin::SupportSet& s, int coarse = 100, double fine_step = 1e-3,
                           double radius = 0.02) {
  const Matrix B = s.point_matrix();
  const Index d = s.d();
  auto value = [&](const Vector& w) {
    const Vector g = B * w;
    return g.dot(s.sigma * g);
  };
  Vector best_w = Vector::Constant(d, 1.0 / static_cast<double>(d));
  double best = value(best_w);
  for_each_simplex_point(d, coarse, [&](const Vector& w) {
    const double v = value(w);
    if (v < best) {
      best = v;
      best_w = w;
    }
  });
  if (d == 1) return B * best_w;
  // Local refinement over the first d-1 coordinates; the last one closes the simplex.
  const int half = static_cast<int>(std::lround(radius / fine_step));
  const Vector center = best_w;
  std::vector<int> off(static_cast<std::size_t>(d - 1), -half);
  while (true) {
    Vector w(d);
    double rest = 1.0;
    bool ok = true;
    for (Index i = 0; i + 1 < d; ++i) {
      w(i) = center(i) + off[static_cast<std::size_t>(i)] * fine_step;
      if (w(i) < -1e-12) ok = false;
      rest -= w(i);
    }
    w(d - 1) = rest;
    if (ok && rest >= -1e-12) {
      w = w.cwiseMax(0.0);
      const double v = value(w);
      if (v < best) {
        best = v;
        best_w = w;
      }
    }
    Index i = 0;
    while (i + 1 < d && off[static_cast<std::size_t>(i)] == half) {
      off[static_cast<std::size_t>(i)] = -half;
      ++i;
    }
    if (i + 1 >= d) break;
    ++off[static_cast<std::size_t>(i)];
  }
  return B * best_w;
}

inline double sigma_norm(const Vector& v, const Matrix& sigma) { return std::sqrt(std::max(0.0, v.dot(sigma * v))); }

}  // namespace testing_helpers

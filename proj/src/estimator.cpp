#include "maximin/estimator.hpp"

#include "maximin/error.hpp"
#include "maximin/lp.hpp"
#include "maximin/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace maximin {
namespace {

constexpr double kInnerTol = 1e-13;
constexpr int kCoordinateSweeps = 100000;
constexpr int kRefineIterations = 20000;

struct WeightedMoments {
  Matrix A;
  Vector c;
};

WeightedMoments combine(const std::vector<GroupMoments>& moments, const Vector& w) {
  const Index p = moments.front().cross.size();
  WeightedMoments out{Matrix::Zero(p, p), Vector::Zero(p)};
  for (std::size_t g = 0; g < moments.size(); ++g) {
    const double wg = w(static_cast<Index>(g));
    if (wg == 0.0) continue;
    out.A.noalias() += wg * moments[g].gram;
    out.c.noalias() += wg * moments[g].cross;
  }
  return out;
}

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

Vector solve_direct(const Matrix& A, const Vector& c) {
  Eigen::LDLT<Matrix> ldlt(A);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.rcond() > 1e-12) return ldlt.solve(c);
  return Eigen::CompleteOrthogonalDecomposition<Matrix>(A).solve(c);
}

Vector solve_lasso(const Matrix& A, const Vector& c, double lambda, const Vector& warm, double tol) {
  const Index p = c.size();
  Vector beta = warm.size() == p ? warm : Vector::Zero(p);
  Vector Ab = A * beta;
  const double half = 0.5 * lambda;
  for (int sweep = 0; sweep < kCoordinateSweeps; ++sweep) {
    double max_change = 0.0;
    for (Index j = 0; j < p; ++j) {
      const double ajj = A(j, j);
      double next = 0.0;
      if (ajj > 0.0) {
        const double z = c(j) - (Ab(j) - ajj * beta(j));
        next = soft_threshold(z, half) / ajj;
      }
      const double delta = next - beta(j);
      if (delta != 0.0) {
        Ab.noalias() += delta * A.col(j);
        beta(j) = next;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change < tol * (1.0 + beta.lpNorm<Eigen::Infinity>())) break;
  }
  return beta;
}

// Non-squared ridge: (A + mu I) beta = c with 2 mu ||beta|| = lambda.
Vector solve_ridge(const Matrix& A, const Vector& c, double lambda) {
  const Index p = c.size();
  if (c.norm() <= 0.5 * lambda) return Vector::Zero(p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  const Vector e = es.eigenvalues().cwiseMax(0.0);
  const Vector a = es.eigenvectors().transpose() * c;
  const double target = 0.5 * lambda;
  auto shrunk_norm = [&](double mu) {
    double s = 0.0;
    for (Index k = 0; k < p; ++k) {
      const double v = a(k) * mu / (e(k) + mu);
      s += v * v;
    }
    return std::sqrt(s);
  };
  double lo = 1e-300;
  double hi = 1.0;
  while (shrunk_norm(hi) < target && hi < 1e300) hi *= 2.0;
  while (shrunk_norm(lo * 1e10) > target && lo < 1e-30) lo *= 1e10;
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    if (shrunk_norm(mid) < target) lo = mid;
    else hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  const double mu = 0.5 * (lo + hi);
  Vector scaled(p);
  for (Index k = 0; k < p; ++k) scaled(k) = a(k) / (e(k) + mu);
  return es.eigenvectors() * scaled;
}

// log of ((1/G) sum_g V_g^zeta)^(1/zeta) for positive V.
double log_power_mean(const Vector& V, double zeta) {
  const double G = static_cast<double>(V.size());
  double s = 0.0;
  for (Index g = 0; g < V.size(); ++g) s += std::exp(zeta * std::log(V(g)));
  return std::log(s / G) / zeta;
}

double clamp_floor(const Vector& V) { return 1e-6 * std::max(1.0, V.maxCoeff()); }

void check_moments(const std::vector<GroupMoments>& moments) {
  if (moments.empty()) throw Error(ErrorCode::EmptyGroup, "no groups");
  const Index p = moments.front().cross.size();
  for (const auto& m : moments) {
    if (m.cross.size() != p || m.gram.rows() != p || m.gram.cols() != p) {
      throw Error(ErrorCode::DimensionMismatch, "group moments have inconsistent dimensions");
    }
  }
}

}  // namespace

Vector WeightState::observation_weights(const GroupSpec& spec, Index n) const {
  Vector w = Vector::Zero(n);
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    const auto& group = spec.groups[g];
    const double share = group_weights(static_cast<Index>(g)) / static_cast<double>(group.size());
    for (Index i : group) w(i) += share;
  }
  return w;
}

WeightState update_weights(const Vector& group_V, double zeta, double floor) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw Error(ErrorCode::InvalidArgument, "zeta must lie in (0,1)");
  if (!(floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "floor must be positive");
  WeightState state;
  state.group_weights.resize(group_V.size());
  // Work relative to the smallest clamped value so the powers cannot overflow.
  const Vector clamped = group_V.cwiseMax(floor);
  const double base = clamped.minCoeff();
  for (Index g = 0; g < clamped.size(); ++g) {
    state.group_weights(g) = std::pow(clamped(g) / base, zeta - 1.0);
  }
  state.group_weights /= state.group_weights.sum();
  return state;
}

Vector solve_weighted(const Matrix& A, const Vector& c, double lambda, Norm q, const Vector& warm, double tol) {
  if (A.rows() != c.size() || A.cols() != c.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weighted problem: A must be p x p with p = len(c)");
  }
  if (lambda == 0.0) return solve_direct(A, c);
  if (q == Norm::L2) return solve_ridge(A, c, lambda);
  return solve_lasso(A, c, lambda, warm, tol);
}

double lambda_upper(const std::vector<GroupMoments>& moments, Norm q) {
  check_moments(moments);
  Vector total = Vector::Zero(moments.front().cross.size());
  double n = 0.0;
  for (const auto& m : moments) {
    total += static_cast<double>(m.size) * m.cross;
    n += static_cast<double>(m.size);
  }
  return 2.0 * dual_norm(total / n, q);
}

double maximin_lambda_max(const std::vector<Vector>& cross_products, Norm q) {
  const MaximalDirection dir = maximal_penalty_direction(cross_products, q);
  return 2.0 / norm(dir.beta, q);
}

PowerMeanPath power_mean_reweighting(const std::vector<GroupMoments>& moments, Norm q, double lambda, double zeta,
                                     int max_iter, double tol) {
  check_moments(moments);
  const Index G = static_cast<Index>(moments.size());
  PowerMeanPath path;
  path.group_weights = Vector::Constant(G, 1.0 / static_cast<double>(G));
  WeightedMoments wm = combine(moments, path.group_weights);
  path.beta = solve_weighted(wm.A, wm.c, lambda, q, Vector(), kInnerTol);
  Vector V = emp_explained_variances(moments, path.beta);

  auto objective = [&](const Vector& values, const Vector& beta) {
    return std::exp(log_power_mean(values.cwiseMax(clamp_floor(values)), zeta)) - lambda * norm(beta, q);
  };
  path.objective.push_back(objective(V, path.beta));

  for (int it = 1; it <= max_iter; ++it) {
    const double floor = clamp_floor(V);
    const WeightState state = update_weights(V, zeta, floor);
    // Gradient weights of the power mean are (1/G) M^(1-zeta) V_g^(zeta-1);
    // their total rescales lambda for the normalized weights.
    const Vector clamped = V.cwiseMax(floor);
    const double log_m = log_power_mean(clamped, zeta);
    double total = 0.0;
    for (Index g = 0; g < G; ++g) {
      total += std::exp((1.0 - zeta) * log_m + (zeta - 1.0) * std::log(clamped(g))) / static_cast<double>(G);
    }
    wm = combine(moments, state.group_weights);
    // Curvature of the power mean beyond the weighted Gram matrix over the
    // unclamped groups, with d_g = c_g - Sigma_g beta. Keeps A PSD.
    const Index p = path.beta.size();
    Matrix extra = Matrix::Zero(p, p);
    Vector mean_d = Vector::Zero(p);
    for (Index g = 0; g < G; ++g) {
      if (!(V(g) > floor)) continue;
      const auto& m = moments[static_cast<std::size_t>(g)];
      const Vector d = m.cross - m.gram * path.beta;
      const double w = state.group_weights(g);
      extra.noalias() += (w / clamped(g)) * d * d.transpose();
      mean_d.noalias() += w * d;
    }
    extra.noalias() -= (total / std::exp(log_m)) * mean_d * mean_d.transpose();
    const Matrix A = wm.A + 2.0 * (1.0 - zeta) * 0.5 * (extra + extra.transpose());
    const Vector c = wm.c + (A - wm.A) * path.beta;
    const Vector proposal = solve_weighted(A, c, lambda / total, q, path.beta, kInnerTol);

    const double proposal_change =
        (emp_explained_variances(moments, proposal) - V).lpNorm<Eigen::Infinity>();
    const double current = path.objective.back();
    double step = 1.0;
    bool accepted = false;
    Vector candidate;
    Vector candidate_V;
    double candidate_obj = 0.0;
    for (int k = 0; k < 40; ++k) {
      candidate = path.beta + step * (proposal - path.beta);
      candidate_V = emp_explained_variances(moments, candidate);
      candidate_obj = objective(candidate_V, candidate);
      if (candidate_obj >= current - 1e-12 * std::max(1.0, std::abs(current))) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    path.iterations = it;
    if (!accepted) {
      // No ascent along the proposal: stationary up to rounding.
      path.converged = proposal_change < std::sqrt(tol);
      break;
    }
    path.beta = candidate;
    V = candidate_V;
    path.group_weights = state.group_weights;
    path.objective.push_back(candidate_obj);
    if (proposal_change < tol) {
      path.converged = true;
      break;
    }
  }
  return path;
}

WorstGroupSolution solve_worst_group(const std::vector<GroupMoments>& moments, Norm q, double lambda,
                                     const Vector& start_weights, double tol, int max_iter) {
  check_moments(moments);
  const Index G = static_cast<Index>(moments.size());
  if (start_weights.size() != G) throw Error(ErrorCode::DimensionMismatch, "start weights must have length G");

  WorstGroupSolution sol;
  Vector w = start_weights.cwiseMax(0.0);
  w /= w.sum();
  WeightedMoments wm = combine(moments, w);
  Vector beta = solve_weighted(wm.A, wm.c, lambda, q, Vector(), kInnerTol);
  Vector V = emp_explained_variances(moments, beta);

  struct Eval {
    Vector beta;
    Vector V;
    double slope;
  };
  // Along w + t d the dual objective is convex with derivative d'V(beta(t)).
  auto evaluate = [&](const Vector& dir, double t, const Vector& warm) {
    Vector wt = (w + t * dir).cwiseMax(0.0);
    WeightedMoments m = combine(moments, wt);
    Eval e;
    e.beta = solve_weighted(m.A, m.c, lambda, q, warm, kInnerTol);
    e.V = emp_explained_variances(moments, e.beta);
    e.slope = dir.dot(e.V);
    return e;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    const double wv = w.dot(V);
    Index s = 0;
    const double vs = V.minCoeff(&s);
    Index a = -1;
    double va = -std::numeric_limits<double>::infinity();
    for (Index g = 0; g < G; ++g) {
      if (w(g) > 0.0 && V(g) > va) {
        va = V(g);
        a = g;
      }
    }
    sol.gap = wv - vs;
    const double tol_abs = tol * std::max(1.0, V.cwiseAbs().maxCoeff());
    if (sol.gap <= tol_abs) {
      sol.converged = true;
      break;
    }
    const bool forward = (wv - vs) >= (va - wv) || w(a) >= 1.0;
    Vector dir;
    double max_step = 1.0;
    if (forward) {
      dir = -w;
      dir(s) += 1.0;
    } else {
      dir = w;
      dir(a) -= 1.0;
      max_step = w(a) / (1.0 - w(a));
    }
    const double slope0 = dir.dot(V);
    if (!(slope0 < 0.0)) break;

    Eval best = evaluate(dir, max_step, beta);
    double t = max_step;
    if (best.slope > 0.0) {
      // Regula falsi with the Illinois modification on the derivative.
      double lo = 0.0;
      double f_lo = slope0;
      double hi = max_step;
      double f_hi = best.slope;
      int side = 0;
      for (int k = 0; k < 80; ++k) {
        t = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
        best = evaluate(dir, t, best.beta);
        if (std::abs(best.slope) <= 1e-6 * std::abs(slope0)) break;
        if (best.slope < 0.0) {
          lo = t;
          f_lo = best.slope;
          if (side == -1) f_hi *= 0.5;
          side = -1;
        } else {
          hi = t;
          f_hi = best.slope;
          if (side == 1) f_lo *= 0.5;
          side = 1;
        }
        if (hi - lo <= 1e-15 * max_step) break;
      }
    }
    w += t * dir;
    if (!forward && t == max_step) w(a) = 0.0;
    w = w.cwiseMax(0.0);
    w /= w.sum();
    beta = std::move(best.beta);
    V = std::move(best.V);
  }
  sol.iterations = it;
  if (!sol.converged) {
    sol.gap = w.dot(V) - V.minCoeff();
    sol.converged = sol.gap <= tol * std::max(1.0, V.cwiseAbs().maxCoeff());
  }
  sol.beta = std::move(beta);
  sol.group_V = std::move(V);
  sol.group_weights = std::move(w);
  return sol;
}

MaximinFit fit_reweighted(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config) {
  validate(dataset, spec);
  return fit_reweighted(group_moments(dataset, spec), config);
}

MaximinFit fit_reweighted(const std::vector<GroupMoments>& moments, const PenaltyConfig& config) {
  config.validate();
  check_moments(moments);
  if (std::holds_alternative<Maximal>(config.mode)) {
    throw Error(ErrorCode::InvalidArgument, "fit_reweighted needs a penalized or constrained mode");
  }
  const Norm q = config.q;
  int phase_one_iterations = 0;

  auto solve_at = [&](double lambda, const Vector* warm) {
    Vector start;
    if (warm == nullptr || !config.refine) {
      const PowerMeanPath path =
          power_mean_reweighting(moments, q, lambda, config.zeta, config.max_iter, config.tol);
      phase_one_iterations += path.iterations;
      if (!config.refine) {
        WorstGroupSolution sol;
        sol.beta = path.beta;
        sol.group_weights = path.group_weights;
        sol.group_V = emp_explained_variances(moments, path.beta);
        sol.gap = path.group_weights.dot(sol.group_V) - sol.group_V.minCoeff();
        sol.converged = path.converged;
        return sol;
      }
      start = path.group_weights;
    } else {
      start = *warm;
    }
    return solve_worst_group(moments, q, lambda, start, config.tol, kRefineIterations);
  };

  WorstGroupSolution sol;
  double lambda = 0.0;
  int refine_iterations = 0;
  if (const auto* pen = std::get_if<Penalized>(&config.mode)) {
    lambda = pen->lambda;
    sol = solve_at(lambda, nullptr);
    refine_iterations = sol.iterations;
  } else {
    const double kappa = std::get<Constrained>(config.mode).kappa;
    sol = solve_at(0.0, nullptr);
    refine_iterations = sol.iterations;
    if (norm(sol.beta, q) > kappa) {
      // ||beta(lambda)|| is nonincreasing in lambda and zero at the upper end.
      double lo = 0.0;
      double hi = lambda_upper(moments, q);
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const Vector warm = sol.group_weights;
        sol = solve_at(mid, &warm);
        refine_iterations += sol.iterations;
        lambda = mid;
        const double nrm = norm(sol.beta, q);
        if (std::abs(nrm - kappa) <= 1e-7 * kappa) break;
        if (nrm > kappa) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
      }
    }
  }

  if (lambda == 0.0 && !config.refine && sol.group_V.minCoeff() <= 0.0) {
    const Vector uniform = Vector::Constant(static_cast<Index>(moments.size()), 1.0 / static_cast<double>(moments.size()));
    const WorstGroupSolution exact = solve_worst_group(moments, q, 0.0, uniform, config.tol, kRefineIterations);
    if (exact.converged && exact.group_V.maxCoeff() <= config.tol * 10.0) {
      throw Error(ErrorCode::AllGroupsNonpositive,
                  "the worst-case explained variance is zero at the optimum; the maximin effect vanishes");
    }
  }
  if (lambda == 0.0 && sol.converged && sol.group_V.maxCoeff() <= config.tol * 10.0) {
    throw Error(ErrorCode::AllGroupsNonpositive,
                "the worst-case explained variance is zero at the optimum; the maximin effect vanishes");
  }

  MaximinFit fit;
  fit.beta = sol.beta;
  fit.scale = 1.0;
  fit.group_V = sol.group_V;
  fit.iterations = phase_one_iterations + refine_iterations;
  fit.converged = sol.converged;
  fit.lambda = lambda;
  fit.duality_gap = sol.gap;
  return fit;
}

MaximalDirection maximal_penalty_direction(const std::vector<Vector>& cross_products, Norm q) {
  if (cross_products.empty()) throw Error(ErrorCode::InvalidSize, "need at least one group");
  const Index p = cross_products.front().size();
  const Index G = static_cast<Index>(cross_products.size());
  double scale = 0.0;
  for (const auto& c : cross_products) {
    if (c.size() != p) throw Error(ErrorCode::DimensionMismatch, "cross-products have different lengths");
    if (!c.allFinite()) throw Error(ErrorCode::NonFiniteData, "cross-products are not finite");
    scale = std::max(scale, c.lpNorm<Eigen::Infinity>());
  }
  if (scale == 0.0) throw Error(ErrorCode::Infeasible, "all cross-products are zero");

  MaximalDirection out;
  if (q == Norm::L2) {
    // min ||beta||_2 s.t. C beta >= 1 is h / ||h||^2 with h the projection of
    // the origin onto the hull of the (scaled) cross-products.
    Matrix C(p, G);
    for (Index g = 0; g < G; ++g) C.col(g) = cross_products[static_cast<std::size_t>(g)] / scale;
    const Matrix K = C.transpose() * C;
    const SimplexQpResult qp = minimize_on_simplex(K, Vector::Zero(G), 1e-14 * std::max(1.0, K.diagonal().maxCoeff()),
                                                   200000);
    const Vector h = C * qp.weights;
    const double hh = h.squaredNorm();
    if (hh <= 1e-10 * K.diagonal().maxCoeff()) {
      throw Error(ErrorCode::Infeasible, "the origin lies in the hull of the cross-products");
    }
    out.beta = h / hh / scale;
    out.iterations = qp.iterations;
    return out;
  }

  // Variables (u, v) >= 0 with beta = u - v; one >= row per group.
  LinearProgram lp(G, 2 * p);
  for (Index g = 0; g < G; ++g) {
    const Vector& c = cross_products[static_cast<std::size_t>(g)];
    double* row = lp.a.data() + static_cast<std::size_t>(g * 2 * p);
    for (Index j = 0; j < p; ++j) {
      row[j] = c(j) / scale;
      row[p + j] = -c(j) / scale;
    }
    lp.rhs[static_cast<std::size_t>(g)] = 1.0;
    lp.sense[static_cast<std::size_t>(g)] = RowSense::greater_equal;
  }
  std::fill(lp.cost.begin(), lp.cost.end(), 1.0);
  const LpResult res = solve_lp(std::move(lp));
  if (res.status == LpStatus::infeasible) {
    throw Error(ErrorCode::Infeasible, "no direction aligns positively with every group's cross-product");
  }
  if (res.status != LpStatus::optimal) {
    throw NonConvergedError("maximal-penalty LP did not reach an optimal vertex", res.objective);
  }
  out.beta.resize(p);
  for (Index j = 0; j < p; ++j) {
    out.beta(j) = (res.x[static_cast<std::size_t>(j)] - res.x[static_cast<std::size_t>(p + j)]) / scale;
  }
  out.iterations = res.iterations;
  return out;
}

Vector fit_maximal_penalty(const std::vector<Vector>& cross_products, const PenaltyConfig& config) {
  return maximal_penalty_direction(cross_products, config.q).beta;
}

double rescale(std::span<const double> a, std::span<const double> q) {
  if (a.size() != q.size() || a.empty()) {
    throw Error(ErrorCode::LengthMismatch, "rescale needs equally long, nonempty a and q");
  }
  // Any group with a_g <= 0 makes the minimum nonpositive for every s > 0.
  if (std::any_of(a.begin(), a.end(), [](double v) { return v <= 0.0; })) return 0.0;
  double upper = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) {
    if (q[g] > 0.0) upper = std::max(upper, 2.0 * a[g] / q[g]);
  }
  if (upper == 0.0) upper = 1.0;
  auto objective = [&](double s) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < a.size(); ++g) m = std::min(m, 2.0 * s * a[g] - s * s * q[g]);
    return m;
  };
  double lo = 0.0;
  double hi = upper;
  for (int it = 0; it < 300 && hi - lo > 1e-15 * upper; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) < objective(m2)) lo = m1;
    else hi = m2;
  }
  // Polish: the maximizer is a vertex a_g/q_g or a crossing of two active curves.
  double best_s = 0.5 * (lo + hi);
  double best = objective(best_s);
  const double floor_value = best - 1e-6 * (1.0 + std::abs(best));
  std::vector<std::size_t> active;
  for (std::size_t g = 0; g < a.size() && active.size() < 64; ++g) {
    if (2.0 * best_s * a[g] - best_s * best_s * q[g] <= floor_value + 2e-6 * (1.0 + std::abs(best))) {
      active.push_back(g);
    }
  }
  auto consider = [&](double s) {
    if (!(s > 0.0) || !std::isfinite(s)) return;
    const double v = objective(s);
    if (v >= best) {
      best = v;
      best_s = s;
    }
  };
  for (std::size_t i = 0; i < active.size(); ++i) {
    const std::size_t g = active[i];
    if (q[g] > 0.0) consider(a[g] / q[g]);
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      const std::size_t h = active[j];
      if (q[g] != q[h]) consider(2.0 * (a[g] - a[h]) / (q[g] - q[h]));
    }
  }
  return best_s;
}

double rescale(const Vector& beta, const std::vector<GroupMoments>& moments) {
  std::vector<double> a;
  std::vector<double> q;
  for (const auto& m : moments) {
    a.push_back(beta.dot(m.cross));
    q.push_back(beta.dot(m.gram * beta));
  }
  return rescale(a, q);
}

double rescale(const Vector& beta, const Dataset& dataset, const GroupSpec& spec) {
  validate(dataset, spec);
  return rescale(beta, group_moments(dataset, spec));
}

MaximinFit fit_maximal(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config) {
  validate(dataset, spec);
  return fit_maximal(group_moments(dataset, spec), config);
}

MaximinFit fit_maximal(const std::vector<GroupMoments>& moments, const PenaltyConfig& config) {
  check_moments(moments);
  std::vector<Vector> cross;
  cross.reserve(moments.size());
  for (const auto& m : moments) cross.push_back(m.cross);
  const MaximalDirection dir = maximal_penalty_direction(cross, config.q);
  MaximinFit fit;
  fit.beta = dir.beta;
  fit.scale = rescale(dir.beta, moments);
  fit.group_V = emp_explained_variances(moments, fit.scale * fit.beta);
  fit.iterations = dir.iterations;
  fit.converged = true;
  fit.lambda = 2.0 / norm(dir.beta, config.q);
  return fit;
}

MaximinFit fit(const Dataset& dataset, const GroupSpec& spec, const PenaltyConfig& config) {
  validate(dataset, spec);
  return fit(group_moments(dataset, spec), config);
}

MaximinFit fit(const std::vector<GroupMoments>& moments, const PenaltyConfig& config) {
  if (std::holds_alternative<Maximal>(config.mode)) return fit_maximal(moments, config);
  return fit_reweighted(moments, config);
}

}  // namespace maximin

#include "maximin/error.hpp"
#include "maximin/estimator.hpp"
#include "maximin/grouping.hpp"
#include "maximin/io.hpp"
#include "maximin/oracle.hpp"
#include "maximin/parallel.hpp"
#include "maximin/rng.hpp"
#include "maximin/select.hpp"
#include "maximin/simulate.hpp"
#include "maximin/variance.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace maximin;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, what + ": not a number: '" + s + "'");
}

Index to_index(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return static_cast<Index>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, what + ": not an integer: '" + s + "'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string vec_str(const Vector& v) {
  std::string s = "[";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
  return s + "]";
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const Matrix& m) {
  json a = json::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
  return a;
}

Norm parse_penalty(const std::string& s) {
  if (s == "l1") return Norm::L1;
  if (s == "l2") return Norm::L2;
  throw Error(ErrorCode::InvalidArgument, "--penalty must be l1 or l2, got '" + s + "'");
}

PenaltyMode parse_mode(const std::string& s) {
  if (s == "maximal") return Maximal{};
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string kind = s.substr(0, colon);
    const double v = to_real(s.substr(colon + 1), "--mode");
    if (kind == "lambda") return Penalized{v};
    if (kind == "kappa") return Constrained{v};
  }
  throw Error(ErrorCode::InvalidArgument, "--mode must be lambda:<v>, kappa:<v> or maximal, got '" + s + "'");
}

struct GroupsArg {
  std::string kind;
  std::string column;
  Index G = 0;
  Index m = 0;
  bool replacement = false;
};

GroupsArg parse_groups(const std::string& s) {
  GroupsArg g;
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--groups: expected kind:value, got '" + s + "'");
  g.kind = s.substr(0, colon);
  const std::string rest = s.substr(colon + 1);
  if (g.kind == "labels") {
    g.column = rest;
  } else if (g.kind == "blocks") {
    g.G = to_index(rest, "--groups blocks");
  } else if (g.kind == "random") {
    const auto parts = split(rest, ',');
    if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] != "replacement")) {
      throw Error(ErrorCode::InvalidArgument, "--groups random:<G>,<m>[,replacement], got '" + s + "'");
    }
    g.G = to_index(parts[0], "--groups random G");
    g.m = to_index(parts[1], "--groups random m");
    g.replacement = parts.size() == 3;
  } else {
    throw Error(ErrorCode::InvalidArgument, "--groups kind must be labels, blocks or random, got '" + g.kind + "'");
  }
  return g;
}

struct Loaded {
  CsvData csv;
  GroupSpec spec;
};

Loaded load_grouped(const std::string& data, const std::string& y_col, const std::string& groups, std::uint64_t seed,
                    bool standardize) {
  const GroupsArg g = parse_groups(groups);
  Loaded out;
  out.csv = read_csv(data, true, y_col, g.kind == "labels" ? std::optional<std::string>(g.column) : std::nullopt,
                     standardize);
  const Index n = out.csv.dataset.n();
  if (g.kind == "labels") out.spec = *out.csv.groups;
  else if (g.kind == "blocks") out.spec = consecutive_blocks(n, g.G);
  else out.spec = sample_groups(n, g.G, g.m, g.replacement, seed);
  return out;
}

SupportSet scenario_support(Index p, std::uint64_t seed, Index d) {
  CounterRng rng = CounterRng(seed).split(0x5u);
  SupportSet s;
  s.sigma = Matrix::Identity(p, p);
  for (Index j = 0; j < d; ++j) {
    Vector b(p);
    for (Index k = 0; k < p; ++k) b(k) = rng.normal();
    s.points.push_back(b);
  }
  return s;
}

int run_simulate(const std::string& scenario, Index n, Index p, std::uint64_t seed, const std::string& out,
                 const std::string& truth_out, double delta, double epsilon, double sigma_noise, Index points) {
  SimOutput sim;
  json truth = json::object();
  truth["scenario"] = scenario;
  truth["seed"] = seed;
  if (scenario == "figure2") {
    if (p != 2) throw Error(ErrorCode::InvalidArgument, "figure2 has p = 2");
    sim = gen_figure2(n, seed, sigma_noise);
  } else {
    if (p < 1) throw Error(ErrorCode::InvalidArgument, "--p must be positive");
    if (points < 1) throw Error(ErrorCode::InvalidArgument, "--points must be positive");
    const SupportSet support = scenario_support(p, seed, points);
    if (scenario == "mixture") {
      const Vector w = Vector::Constant(points, 1.0 / static_cast<double>(points));
      sim = gen_finite_mixture(n, support, w, sigma_noise, seed);
      truth["weights"] = vec_json(w);
      truth["pooled"] = vec_json(pooled_effect(sim.support, w));
    } else if (scenario == "jump") {
      sim = gen_jump_process(n, support, delta, sigma_noise, seed);
      truth["delta"] = delta;
    } else if (scenario == "contaminated") {
      SupportSet contaminants;
      contaminants.sigma = support.sigma;
      contaminants.points = {2.0 * support.points.front()};
      sim = gen_contaminated(n, support.points.front(), contaminants, epsilon, sigma_noise, seed);
      truth["epsilon"] = epsilon;
      truth["aligned"] = sim.aligned;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "--scenario must be mixture, jump, contaminated or figure2, got '" + scenario + "'");
    }
  }
  json pts = json::array();
  for (const auto& b : sim.support.points) pts.push_back(vec_json(b));
  truth["points"] = pts;
  truth["sigma"] = mat_json(sim.sigma_true);
  truth["sigma_noise"] = sigma_noise;
  truth["maximin"] = vec_json(maximin_effect(sim.support));
  write_csv(sim.dataset, out);
  if (!truth_out.empty()) write_text(truth_out, canonical_json(truth) + "\n");
  std::cout << "wrote " << sim.dataset.n() << " rows x " << sim.dataset.p() << " predictors to " << out << "\n";
  return 0;
}

PenaltyConfig make_config(const std::string& penalty, const std::string& mode, double zeta, int max_iter, double tol,
                          bool exact) {
  PenaltyConfig cfg;
  cfg.q = parse_penalty(penalty);
  cfg.mode = parse_mode(mode);
  cfg.zeta = zeta;
  cfg.max_iter = max_iter;
  cfg.tol = tol;
  cfg.refine = exact;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximin regression across heterogeneous groups"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: all cores)");

  std::string scenario, out, truth_out;
  Index n = 1000, p = 2, points = 3;
  std::uint64_t seed = 1;
  double delta = 0.001, epsilon = 0.1, sigma_noise = 0.1;
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic dataset");
  sim->add_option("--scenario", scenario, "mixture | jump | contaminated | figure2")->required();
  sim->add_option("--n", n, "Observations");
  sim->add_option("--p", p, "Predictors");
  sim->add_option("--points", points, "Support points for mixture and jump");
  sim->add_option("--seed", seed);
  sim->add_option("--out", out, "Data CSV")->required();
  sim->add_option("--truth-out", truth_out, "Truth JSON");
  sim->add_option("--delta", delta, "Jump probability");
  sim->add_option("--epsilon", epsilon, "Contamination probability");
  sim->add_option("--sigma-noise", sigma_noise, "Noise standard deviation");

  std::string data, y_col = "y", groups, penalty = "l1", mode = "lambda:0";
  double zeta = 0.01, tol = 1e-8;
  int max_iter = 50;
  bool exact = false, standardize = false;
  auto* fitc = app.add_subcommand("fit", "Fit the maximin estimator");
  fitc->add_option("--data", data)->required();
  fitc->add_option("--y-col", y_col);
  fitc->add_option("--groups", groups, "labels:<col> | blocks:<G> | random:<G>,<m>[,replacement]")->required();
  fitc->add_option("--penalty", penalty, "l1 | l2");
  fitc->add_option("--mode", mode, "lambda:<v> | kappa:<v> | maximal");
  fitc->add_option("--zeta", zeta);
  fitc->add_option("--max-iter", max_iter);
  fitc->add_option("--tol", tol);
  fitc->add_flag("--exact", exact, "Solve the worst-group problem exactly after reweighting");
  fitc->add_flag("--standardize", standardize, "Center and scale predictors");
  fitc->add_option("--seed", seed);
  fitc->add_option("--out", out)->required();

  std::string candidates = "2,3,5,10,20";
  int splits = 100;
  Index g_test = 5, min_block = 200;
  bool time_ordered = false;
  auto* cv = app.add_subcommand("cv-groups", "Cross-validate the number of groups");
  cv->add_option("--data", data)->required();
  cv->add_option("--y-col", y_col);
  cv->add_option("--candidates", candidates);
  cv->add_option("--splits", splits);
  cv->add_option("--g-test", g_test);
  cv->add_option("--min-block", min_block);
  cv->add_option("--penalty", penalty);
  cv->add_option("--mode", mode);
  cv->add_option("--zeta", zeta);
  cv->add_flag("--time-ordered", time_ordered, "Rows are in time order");
  cv->add_flag("--exact", exact);
  cv->add_option("--seed", seed);

  std::string fit_path, series;
  auto* ev = app.add_subcommand("evaluate", "Per-group explained variance of a stored fit");
  ev->add_option("--data", data)->required();
  ev->add_option("--fit", fit_path)->required();
  ev->add_option("--emit-series", series, "Cumulative cross-product CSV");

  std::string support_path, sigma_path, which;
  auto* orc = app.add_subcommand("oracle", "Population effects of a finite support");
  orc->add_option("--support", support_path)->required();
  orc->add_option("--sigma", sigma_path)->required();
  orc->add_option("--which", which, "pooled | maximin | pred-maximin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(threads);
    if (*sim) {
      return run_simulate(scenario, n, p, seed, out, truth_out, delta, epsilon, sigma_noise, points);
    }
    if (*fitc) {
      const PenaltyConfig cfg = make_config(penalty, mode, zeta, max_iter, tol, exact);
      const Loaded in = load_grouped(data, y_col, groups, seed, standardize);
      const MaximinFit f = fit(in.csv.dataset, in.spec, cfg);
      json meta = json::object();
      meta["exact"] = exact;
      meta["groups"] = groups;
      meta["max_iter"] = max_iter;
      meta["mode"] = mode;
      meta["penalty"] = penalty;
      meta["predictors"] = in.csv.x_names;
      meta["seed"] = seed;
      meta["standardize"] = standardize;
      meta["tol"] = tol;
      meta["y_col"] = y_col;
      meta["zeta"] = zeta;
      write_fit(f, out, meta);
      std::cout << "coefficients " << vec_str(f.coefficients()) << "\n";
      std::cout << "worst group V " << fmt(f.group_V.minCoeff()) << " over " << in.spec.size() << " groups\n";
      std::cout << "iterations " << f.iterations << (f.converged ? ", converged" : ", NOT converged") << "\n";
      return f.converged ? 0 : 3;
    }
    if (*cv) {
      const PenaltyConfig cfg = make_config(penalty, mode, zeta, max_iter, tol, exact);
      CsvData in = read_csv(data, true, y_col);
      in.dataset.time_ordered = time_ordered;
      std::vector<Index> cand;
      for (const auto& c : split(candidates, ',')) cand.push_back(to_index(c, "--candidates"));
      CvOptions opts;
      opts.splits = splits;
      opts.g_test = g_test;
      opts.min_block = min_block;
      const GroupCountSelection sel = cv_group_count(in.dataset, cand, cfg, seed, opts);
      std::cout << "G,mean_worst_V,standard_error\n";
      for (const auto& s : sel.scores) {
        std::cout << s.G << "," << fmt(s.mean) << "," << fmt(s.standard_error) << "\n";
      }
      std::cout << "chosen G " << sel.G << "\n";
      return 0;
    }
    if (*ev) {
      json meta;
      const MaximinFit f = read_fit(fit_path, &meta);
      const std::string y = meta.value("y_col", std::string("y"));
      const std::string g = meta.value("groups", std::string());
      const auto fit_seed = meta.value("seed", std::uint64_t{1});
      const bool stdz = meta.value("standardize", false);
      const Vector coef = f.coefficients();
      Loaded in;
      if (g.empty()) {
        in.csv = read_csv(data, true, y, std::nullopt, stdz);
        in.spec = consecutive_blocks(in.csv.dataset.n(), 1);
      } else {
        in = load_grouped(data, y, g, fit_seed, stdz);
      }
      if (coef.size() != in.csv.dataset.p()) {
        throw Error(ErrorCode::DimensionMismatch, "fit has " + std::to_string(coef.size()) +
                                                      " coefficients, data has " +
                                                      std::to_string(in.csv.dataset.p()) + " predictors");
      }
      const Vector V = emp_explained_variances(group_moments(in.csv.dataset, in.spec), coef);
      for (Index k = 0; k < V.size(); ++k) std::cout << "group " << k + 1 << " V " << fmt(V(k)) << "\n";
      std::cout << "worst group V " << fmt(V.minCoeff()) << "\n";
      const Vector yhat = in.csv.dataset.X * coef;
      const SeriesReport rep = cumulative_cross_product(in.csv.dataset.Y, yhat, true);
      std::cout << "standardized cross-product " << fmt(rep.cumsum.empty() ? 0.0 : rep.cumsum.back()) << "\n";
      if (!series.empty()) write_series(rep, series);
      return 0;
    }
    if (*orc) {
      const SupportFile sf = read_support_json(support_path);
      SupportSet support;
      support.points = sf.points;
      support.sigma = read_matrix_csv(sigma_path);
      Vector effect;
      if (which == "pooled") {
        const Vector w = sf.weights.value_or(Vector::Constant(support.d(), 1.0 / static_cast<double>(support.d())));
        effect = pooled_effect(support, w);
      } else if (which == "maximin") {
        effect = maximin_effect(support);
      } else if (which == "pred-maximin") {
        effect = pred_maximin_effect(support);
      } else {
        throw Error(ErrorCode::InvalidArgument, "--which must be pooled, maximin or pred-maximin");
      }
      json o = json::object();
      o["which"] = which;
      o["effect"] = vec_json(effect);
      std::cout << canonical_json(o) << "\n";
      return 0;
    }
  } catch (const NonConvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

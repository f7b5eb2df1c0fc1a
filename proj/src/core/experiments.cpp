#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "errors.hpp"

namespace accompany {

void parallel_for_cells(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("ACCOMPANY_LAB_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 1) workers = static_cast<std::size_t>(v);
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Approximant approximant_from_string(const std::string& name) {
  if (name == "D") return Approximant::D;
  if (name == "Dstar") return Approximant::DStar;
  if (name == "Dstarstar") return Approximant::DStarStar;
  if (name == "Dbar") return Approximant::DBar;
  throw Error(ErrorCode::InvalidArgument, "unknown approximant " + name);
}

const char* approximant_name(Approximant a) {
  switch (a) {
    case Approximant::D: return "D";
    case Approximant::DStar: return "Dstar";
    case Approximant::DStarStar: return "Dstarstar";
    case Approximant::DBar: return "Dbar";
  }
  return "?";
}

ConvolutionLaw build_approximant(const Scheme& s, Approximant a) {
  switch (a) {
    case Approximant::D: return accompany_law(s, false);
    case Approximant::DBar: return accompany_law(s, true);
    case Approximant::DStar: return build_dstar(s);
    case Approximant::DStarStar: return build_dstarstar(s, d0_mixed(s));
  }
  throw Error(ErrorCode::InvalidArgument, "bad approximant");
}

double bound_envelope(double p, double tau) {
  if (tau <= 0.0) return p;
  return p + tau * (std::abs(std::log(tau)) + 1.0);
}

double bernstein_tail(const std::vector<double>& weights, double lambda) {
  double v = 0.0, w = 0.0;
  for (double x : weights) {
    v += x * x;
    w = std::max(w, std::abs(x));
  }
  double denom = 2.0 * (v + w * lambda / 3.0);
  if (denom <= 0.0) return 1.0;  // degenerate Delta: clamp, true tail is 0
  return std::min(2.0 * std::exp(-lambda * lambda / denom), 1.0);
}

// ---- sweep ----------------------------------------------------------------

namespace {

template <typename T>
void read_grid(const json& j, const char* key, std::vector<T>& out) {
  if (j.contains(key)) out = j.at(key).get<std::vector<T>>();
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, std::string("empty grid ") + key);
}

json manifest_shell(const std::string& command, const json& config, std::uint64_t seed) {
  char hash_hex[20];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(fnv1a_hash(config.dump())));
  return json{{"command", command}, {"config", config},    {"config_hash", hash_hex},
              {"seed", seed},       {"version", kLibraryVersion}, {"cells", json::array()}};
}

}  // namespace

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig cfg;
  read_grid(j, "p_grid", cfg.p_grid);
  read_grid(j, "tau_grid", cfg.tau_grid);
  read_grid(j, "n_grid", cfg.n_grid);
  if (j.contains("d_grid")) read_grid(j, "d_grid", cfg.d_grid);
  if (j.contains("m_grid")) read_grid(j, "m_grid", cfg.m_grid);
  if (j.contains("lambda_grid")) read_grid(j, "lambda_grid", cfg.lambda_grid);
  if (j.contains("approximant"))
    cfg.approximant = approximant_from_string(j.at("approximant").get<std::string>());
  if (j.contains("generator")) cfg.generator = j.at("generator").get<std::string>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
  if (j.contains("family_count")) cfg.family_count = j.at("family_count").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tail_eps")) cfg.tail_eps = j.at("tail_eps").get<double>();
  if (cfg.samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  return cfg;
}

Scheme make_grid_scheme(const std::string& generator, std::size_t n, std::size_t d, double p,
                        double tau) {
  Scheme s;
  s.dimension = d;
  s.tau = tau;
  Vec e1(d, 0.0);
  e1[0] = 1.0;
  FiniteLaw v = FiniteLaw::point_mass(e1);
  FiniteLaw u = FiniteLaw::point_mass(Vec(d, 0.0));
  if (generator == "lattice" && tau > 0.0) {
    Vec lo(d, 0.0), hi(d, 0.0);
    lo[0] = -tau;
    hi[0] = tau;
    u = FiniteLaw(d, {lo, hi}, {0.5, 0.5});
  } else if (generator != "bernoulli" && generator != "lattice") {
    throw Error(ErrorCode::InvalidArgument, "unknown generator " + generator);
  }
  for (std::size_t i = 0; i < n; ++i) s.factors.push_back({p, u, v});
  return s;
}

namespace {

struct SweepCell {
  double p, tau;
  std::size_t n, d, m;
  std::string csv_rows;
  double ratio = 0.0;
  bool exact = false;
  json cell_json;
};

void append_row(std::string& csv, const SweepConfig& cfg, const SweepCell& cell,
                const std::string& kind, double lambda, double estimate, double conf,
                double bound) {
  double ratio = bound > 0.0 ? estimate / bound : 0.0;
  csv += cfg.generator + "," + approximant_name(cfg.approximant) + "," +
         format_double(cell.p) + "," + format_double(cell.tau) + "," + std::to_string(cell.n) +
         "," + std::to_string(cell.d) + "," + std::to_string(cell.m) + "," + kind + "," +
         format_double(lambda) + "," + format_double(estimate) + "," + format_double(conf) +
         "," + format_double(bound) + "," + format_double(ratio) + "\n";
}

}  // namespace

RunResult run_bound_sweep(const SweepConfig& cfg) {
  std::vector<SweepCell> cells;
  for (std::size_t n : cfg.n_grid)
    for (std::size_t d : cfg.d_grid)
      for (std::size_t m : cfg.m_grid)
        for (double tau : cfg.tau_grid)
          for (double p : cfg.p_grid) cells.push_back({p, tau, n, d, m, "", 0.0, false, {}});

  parallel_for_cells(cells.size(), [&](std::size_t ci) {
    SweepCell& cell = cells[ci];
    Scheme s = make_grid_scheme(cfg.generator, cell.n, cell.d, cell.p, cell.tau);
    ConvolutionLaw approx = build_approximant(s, cfg.approximant);
    double bound = bound_envelope(cell.p, cell.tau);
    cell.exact = cell.d == 1 && cell.m == 1;

    double metric = 0.0, conf = 0.0;
    std::vector<std::pair<double, double>> profile;
    if (cell.exact) {
      ConvolutionLaw f_law(1);
      for (const MixtureFactor& fac : s.factors) f_law.push(factor_law(fac));
      ExactDirectionalComparison cmp(f_law, approx, {{1.0}, {-1.0}}, cfg.tail_eps);
      metric = cmp.metric(1e-9);
      for (double lambda : cfg.lambda_grid) profile.emplace_back(lambda, cmp.profile(lambda));
    } else {
      RngStream rng_f(cfg.seed, ci * 16 + 1);
      RngStream rng_h(cfg.seed, ci * 16 + 2);
      RngStream rng_fam(cfg.seed, ci * 16 + 3);
      EmpiricalMeasure gf{sample_scheme(s, rng_f, cfg.samples), "F"};
      LawSampler sampler(approx);
      EmpiricalMeasure gh{{}, approximant_name(cfg.approximant)};
      gh.samples.reserve(cfg.samples);
      for (std::size_t i = 0; i < cfg.samples; ++i) gh.samples.push_back(sampler.draw(rng_h));
      auto family = random_family(cell.m, cell.d, cfg.family_count, rng_fam,
                                  OffsetMode::Quantiles, &gf.samples);
      Measure mf{gf}, mh{gh};
      metric = metric_from_discrepancy(mf, mh, family, DiscrepancyKind::Inflate, 1e-4);
      conf = confidence_radius(cfg.samples, family.size(), 0.05);
      for (double lambda : cfg.lambda_grid)
        profile.emplace_back(
            lambda, discrepancy(mf, mh, family, lambda, DiscrepancyKind::Inflate).value);
    }
    cell.ratio = bound > 0.0 ? metric / bound : 0.0;
    append_row(cell.csv_rows, cfg, cell, "metric", metric, metric, conf, bound);
    for (const auto& [lambda, value] : profile)
      append_row(cell.csv_rows, cfg, cell, "profile", lambda, value, conf, bound);
    cell.cell_json = json{{"p", cell.p},       {"tau", cell.tau}, {"n", cell.n},
                          {"d", cell.d},       {"m", cell.m},     {"metric", metric},
                          {"conf", conf},      {"bound", bound},  {"ratio", cell.ratio},
                          {"exact", cell.exact}};
  });

  RunResult out;
  out.csv = "generator,approximant,p,tau,n,d,m,kind,lambda,estimate,conf_radius,bound_value,ratio\n";
  json config{{"p_grid", cfg.p_grid},   {"tau_grid", cfg.tau_grid},
              {"n_grid", cfg.n_grid},   {"d_grid", cfg.d_grid},
              {"m_grid", cfg.m_grid},   {"lambda_grid", cfg.lambda_grid},
              {"approximant", approximant_name(cfg.approximant)},
              {"generator", cfg.generator}, {"samples", cfg.samples},
              {"family_count", cfg.family_count}, {"seed", cfg.seed},
              {"tail_eps", cfg.tail_eps}};
  out.manifest = manifest_shell("sweep", config, cfg.seed);
  out.manifest["bernstein_form"] =
      "2*exp(-lambda^2 / (2*(sum w_i^2 + max|w_i|*lambda/3)))";
  for (const SweepCell& cell : cells) {
    out.csv += cell.csv_rows;
    out.manifest["cells"].push_back(cell.cell_json);
  }

  // ratio spread across each p decade at fixed (n, d, m, tau): ordering
  // check with unknown constants, flag spreads beyond 25x
  json flags = json::array();
  for (std::size_t n : cfg.n_grid)
    for (std::size_t d : cfg.d_grid)
      for (std::size_t m : cfg.m_grid)
        for (double tau : cfg.tau_grid) {
          double rmin = 1e300, rmax = 0.0;
          for (const SweepCell& cell : cells) {
            if (cell.n != n || cell.d != d || cell.m != m || cell.tau != tau) continue;
            if (cell.ratio <= 0.0) continue;
            rmin = std::min(rmin, cell.ratio);
            rmax = std::max(rmax, cell.ratio);
          }
          if (rmax > 0.0 && rmax / rmin > 25.0)
            flags.push_back(json{{"n", n}, {"d", d}, {"m", m}, {"tau", tau},
                                 {"spread", rmax / rmin}});
        }
  out.manifest["ratio_spread_flags"] = flags;
  out.log_line = "sweep: " + std::to_string(cells.size()) + " cells";
  return out;
}

// ---- Le Cam ---------------------------------------------------------------

LecamConfig lecam_config_from_json(const json& j) {
  LecamConfig cfg;
  read_grid(j, "n_grid", cfg.n_grid);
  read_grid(j, "p_grid", cfg.p_grid);
  if (j.contains("tail_eps")) cfg.tail_eps = j.at("tail_eps").get<double>();
  return cfg;
}

RunResult lecam_experiment(const LecamConfig& cfg) {
  struct Cell {
    std::size_t n;
    double p, tv, bound;
    bool ok;
  };
  std::vector<Cell> cells;
  for (std::size_t n : cfg.n_grid)
    for (double p : cfg.p_grid) cells.push_back({n, p, 0.0, 0.0, false});

  parallel_for_cells(cells.size(), [&](std::size_t ci) {
    Cell& cell = cells[ci];
    Scheme s = make_grid_scheme("bernoulli", cell.n, 1, cell.p, 0.0);
    FiniteLaw f = FiniteLaw::point_mass(Vec{0.0});
    for (const MixtureFactor& fac : s.factors)
      f = convolve(f, factor_law(fac), kDefaultAtomCap);  // Binomial(n, p), exact
    FiniteLaw d = exact_pmf(accompany_law(s, false), cfg.tail_eps);
    cell.tv = tv_exact(f, d);
    cell.bound = static_cast<double>(cell.n) * cell.p * cell.p;
    cell.ok = cell.tv <= cell.bound + 2.0 * cfg.tail_eps;
  });

  RunResult out;
  out.csv = "n,p,tv,bound,ok\n";
  json config{{"n_grid", cfg.n_grid}, {"p_grid", cfg.p_grid}, {"tail_eps", cfg.tail_eps}};
  out.manifest = manifest_shell("lecam", config, 0);
  bool all_ok = true;
  for (const Cell& cell : cells) {
    out.csv += std::to_string(cell.n) + "," + format_double(cell.p) + "," +
               format_double(cell.tv) + "," + format_double(cell.bound) + "," +
               (cell.ok ? "1" : "0") + "\n";
    out.manifest["cells"].push_back(json{{"n", cell.n}, {"p", cell.p}, {"tv", cell.tv},
                                         {"bound", cell.bound}, {"ok", cell.ok}});
    all_ok = all_ok && cell.ok;
  }
  out.manifest["all_ok"] = all_ok;
  out.log_line = std::string("lecam: ") + (all_ok ? "all cells ok" : "violations found");
  return out;
}

// ---- Poissonization -------------------------------------------------------

PoissonizationInstance poissonization_instance_from_json(const json& j) {
  PoissonizationInstance inst;
  inst.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& fj : j.at("factors"))
    inst.factor_laws.push_back(finite_law_from_json(fj, inst.dimension));
  for (const auto& aj : j.at("shifts")) inst.shifts.push_back(aj.get<Vec>());
  for (const auto& tj : j.at("directions")) {
    Vec t = tj.get<Vec>();
    double len = norm(t);
    if (len < 1e-300) throw Error(ErrorCode::ZeroNormal, "zero direction");
    inst.directions.push_back(scale(t, 1.0 / len));
  }
  inst.offsets = j.at("offsets").get<std::vector<double>>();
  if (j.contains("lambda_grid"))
    inst.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
  if (inst.shifts.size() != inst.factor_laws.size())
    throw Error(ErrorCode::InvalidArgument, "shifts/factors length mismatch");
  if (inst.offsets.size() != inst.directions.size())
    throw Error(ErrorCode::InvalidArgument, "offsets/directions length mismatch");
  return inst;
}

json to_json(const PoissonizationInstance& inst) {
  json factors = json::array();
  for (const FiniteLaw& f : inst.factor_laws) factors.push_back(to_json(f));
  json shifts = json::array();
  for (const Vec& a : inst.shifts) shifts.push_back(a);
  json dirs = json::array();
  for (const Vec& t : inst.directions) dirs.push_back(t);
  return json{{"dimension", inst.dimension}, {"factors", factors}, {"shifts", shifts},
              {"directions", dirs}, {"offsets", inst.offsets},
              {"lambda_grid", inst.lambda_grid}};
}

RunResult poissonization_experiment(const PoissonizationInstance& inst, std::size_t samples,
                                    std::uint64_t seed) {
  std::size_t m = inst.directions.size();
  std::size_t n = inst.factor_laws.size();

  // coupled draws: T and T* share the Poisson counts and jumps
  std::vector<Vec> s_draws, t_draws, delta_draws;
  s_draws.reserve(samples);
  t_draws.reserve(samples);
  delta_draws.reserve(samples);
  RngStream rng(seed, 1);
  for (std::size_t k = 0; k < samples; ++k) {
    Vec s(inst.dimension, 0.0), t(inst.dimension, 0.0), delta(inst.dimension, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      axpy(1.0, inst.factor_laws[i].sample(rng), s);
      std::uint64_t nu = rng.poisson(1.0);
      for (std::uint64_t jj = 0; jj < nu; ++jj)
        axpy(1.0, inst.factor_laws[i].sample(rng), t);
      axpy(static_cast<double>(nu) - 1.0, inst.shifts[i], delta);
    }
    s_draws.push_back(std::move(s));
    t_draws.push_back(std::move(t));
    delta_draws.push_back(std::move(delta));
  }

  Polyhedron probe = make_polyhedron(inst.directions, inst.offsets);
  auto frac_in = [&](const std::vector<Vec>& pts, const Polyhedron& p) {
    std::size_t hits = 0;
    for (const Vec& x : pts)
      if (contains(p, x)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(pts.size());
  };

  double mc_sigma = std::sqrt(0.25 / static_cast<double>(samples));
  RunResult out;
  out.csv =
      "lambda,f_p,d_p,d_p2l,dbar_pl,delta_tail_emp,delta_tail_bernstein,"
      "sandwich1_ok,sandwich2_ok,bernstein_ok\n";
  json config = to_json(inst);
  config["samples"] = samples;
  out.manifest = manifest_shell("poissonize", config, seed);
  bool all_ok = true;

  double f_p = frac_in(s_draws, probe);
  double d_p = frac_in(t_draws, probe);

  for (double lambda : inst.lambda_grid) {
    Polyhedron p_l = inflate(probe, lambda);
    Polyhedron p_2l = inflate(probe, 2.0 * lambda);
    double d_p2l = frac_in(t_draws, p_2l);
    // T* = T - Delta, evaluated pathwise from the coupled draws
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k)
      if (contains(p_l, sub(t_draws[k], delta_draws[k]))) ++hits;
    double dbar_pl = static_cast<double>(hits) / static_cast<double>(samples);

    double tail_emp_sum = 0.0, tail_bern_sum = 0.0;
    bool bern_ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t exceed = 0;
      for (const Vec& delta : delta_draws)
        if (std::abs(dot(delta, inst.directions[j])) >= lambda) ++exceed;
      double emp = static_cast<double>(exceed) / static_cast<double>(samples);
      std::vector<double> w(n);
      for (std::size_t i = 0; i < n; ++i) w[i] = dot(inst.shifts[i], inst.directions[j]);
      double bern = bernstein_tail(w, lambda);
      tail_emp_sum += emp;
      tail_bern_sum += bern;
      double sigma_hat = std::sqrt(std::max(emp * (1.0 - emp), 1e-12) /
                                   static_cast<double>(samples));
      if (emp > bern + 4.0 * sigma_hat + 1e-9) bern_ok = false;
    }

    double conf = static_cast<double>(2 + m) * 4.0 * mc_sigma;
    bool s1 = d_p <= dbar_pl + tail_emp_sum + conf;
    bool s2 = dbar_pl <= d_p2l + tail_emp_sum + conf;
    all_ok = all_ok && s1 && s2 && bern_ok;

    out.csv += format_double(lambda) + "," + format_double(f_p) + "," + format_double(d_p) +
               "," + format_double(d_p2l) + "," + format_double(dbar_pl) + "," +
               format_double(tail_emp_sum) + "," + format_double(tail_bern_sum) + "," +
               (s1 ? "1" : "0") + "," + (s2 ? "1" : "0") + "," + (bern_ok ? "1" : "0") + "\n";
    out.manifest["cells"].push_back(json{
        {"lambda", lambda}, {"f_p", f_p}, {"d_p", d_p}, {"d_p2l", d_p2l},
        {"dbar_pl", dbar_pl}, {"delta_tail_emp", tail_emp_sum},
        {"delta_tail_bernstein", tail_bern_sum}, {"sandwich1_ok", s1},
        {"sandwich2_ok", s2}, {"bernstein_ok", bern_ok}});
  }
  out.manifest["all_ok"] = all_ok;
  out.log_line = std::string("poissonize: ") + (all_ok ? "sandwich holds" : "violation");
  return out;
}

// ---- distance -------------------------------------------------------------

DistanceConfig distance_config_from_json(const json& j) {
  DistanceConfig cfg{scheme_from_json(j.at("scheme"))};
  if (j.contains("approximant"))
    cfg.approximant = approximant_from_string(j.at("approximant").get<std::string>());
  if (j.contains("metric")) cfg.metric = j.at("metric").get<std::string>();
  if (j.contains("m")) cfg.m = j.at("m").get<std::size_t>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
  if (j.contains("family_count")) cfg.family_count = j.at("family_count").get<std::size_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("exact")) cfg.exact = j.at("exact").get<bool>();
  if (j.contains("tail_eps")) cfg.tail_eps = j.at("tail_eps").get<double>();
  if (cfg.metric != "lm" && cfg.metric != "pim" && cfg.metric != "rhom")
    throw Error(ErrorCode::InvalidArgument, "metric must be lm, pim or rhom");
  return cfg;
}

RunResult run_distance(const DistanceConfig& cfg) {
  require_valid(cfg.scheme);
  ConvolutionLaw approx = build_approximant(cfg.scheme, cfg.approximant);
  double value = 0.0, conf = 0.0;

  if (cfg.exact) {
    if (cfg.scheme.dimension != 1 || cfg.m != 1)
      throw Error(ErrorCode::UnsupportedDimension, "exact path needs d = 1 and m = 1");
    ConvolutionLaw f_law(1);
    for (const MixtureFactor& fac : cfg.scheme.factors) f_law.push(factor_law(fac));
    std::vector<Vec> dirs{{1.0}, {-1.0}};
    if (cfg.metric == "rhom")
      value = exact_discrepancy_profile(f_law, approx, dirs, 0.0, cfg.tail_eps);
    else
      value = exact_directional_metric(f_law, approx, dirs, 1e-9, cfg.tail_eps);
  } else {
    RngStream rng_f(cfg.seed, 1), rng_h(cfg.seed, 2), rng_fam(cfg.seed, 3);
    EmpiricalMeasure gf{sample_scheme(cfg.scheme, rng_f, cfg.samples), "F"};
    LawSampler sampler(approx);
    EmpiricalMeasure gh{{}, approximant_name(cfg.approximant)};
    gh.samples.reserve(cfg.samples);
    for (std::size_t i = 0; i < cfg.samples; ++i) gh.samples.push_back(sampler.draw(rng_h));
    auto family = random_family(cfg.m, cfg.scheme.dimension, cfg.family_count, rng_fam,
                                OffsetMode::Quantiles, &gf.samples);
    Measure mf{gf}, mh{gh};
    conf = confidence_radius(cfg.samples, family.size(), 0.05);
    if (cfg.metric == "rhom")
      value = rho_m(mf, mh, family).value;
    else
      value = metric_from_discrepancy(
          mf, mh, family,
          cfg.metric == "lm" ? DiscrepancyKind::Inflate : DiscrepancyKind::Neighborhood, 1e-4);
  }

  RunResult out;
  out.csv = "metric,approximant,m,value,conf_radius,exact\n";
  out.csv += cfg.metric + std::string(",") + approximant_name(cfg.approximant) + "," +
             std::to_string(cfg.m) + "," + format_double(value) + "," + format_double(conf) +
             "," + (cfg.exact ? "1" : "0") + "\n";
  json config{{"scheme", to_json(cfg.scheme)}, {"approximant", approximant_name(cfg.approximant)},
              {"metric", cfg.metric}, {"m", cfg.m}, {"samples", cfg.samples},
              {"family_count", cfg.family_count}, {"seed", cfg.seed}, {"exact", cfg.exact}};
  out.manifest = manifest_shell("distance", config, cfg.seed);
  out.manifest["cells"].push_back(json{{"metric", cfg.metric}, {"value", value}, {"conf", conf}});
  out.log_line = "distance: " + cfg.metric + " = " + format_double(value);
  return out;
}

// ---- cuts demo ------------------------------------------------------------

RunResult run_cuts(const Polyhedron& p, double epsilon) {
  AugmentedPolyhedron aug = augment_cuts(p, epsilon);
  RunResult out;
  out.csv = "lambda,max_dist_ratio\n";
  json config{{"polyhedron", to_json(p)}, {"epsilon", epsilon}};
  out.manifest = manifest_shell("cuts", config, 0);
  json cuts = json::array();
  for (const HalfSpace& h : aug.cuts)
    cuts.push_back(json{{"normal", h.normal}, {"offset", h.offset}});
  out.manifest["cuts"] = cuts;

  double worst = 0.0;
  for (double lambda : {0.01, 0.0316, 0.1, 0.316, 1.0, 3.16, 10.0}) {
    Polyhedron inflated = inflate(aug, lambda);
    double ratio = 0.0;
    for (const Vec& v : vertices_2d(inflated))
      ratio = std::max(ratio, distance_to(p, v) / lambda);
    worst = std::max(worst, ratio);
    out.csv += format_double(lambda) + "," + format_double(ratio) + "\n";
    out.manifest["cells"].push_back(json{{"lambda", lambda}, {"max_dist_ratio", ratio}});
  }
  out.manifest["max_ratio"] = worst;
  out.manifest["guarantee_ok"] = worst <= 1.0 + epsilon + 1e-6;
  out.log_line = "cuts: " + std::to_string(aug.cuts.size()) +
                 " cuts, max ratio " + format_double(worst);
  return out;
}

}  // namespace accompany

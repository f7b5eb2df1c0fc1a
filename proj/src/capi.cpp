#include "accompany/accompany.h"

#include <cstring>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/metrics.hpp"
#include "core/scheme.hpp"
#include "core/serialize.hpp"

using namespace accompany;

struct acc_scheme {
  Scheme s;
};
struct acc_law {
  ConvolutionLaw l;
};
struct acc_polyhedron {
  Polyhedron p;
};

namespace {

thread_local std::string g_last_error;

acc_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ZeroNormal:
    case ErrorCode::ZeroDirection:
    case ErrorCode::NegativeLambda:
    case ErrorCode::EmptyMeasure:
    case ErrorCode::EmptyFamily:
      return ACC_EINVAL;
    case ErrorCode::SupportViolation:
    case ErrorCode::MeanViolation:
    case ErrorCode::WeightViolation:
    case ErrorCode::SpectralSupportViolation:
    case ErrorCode::MomentMismatch:
    case ErrorCode::NonPSDCovariance:
    case ErrorCode::GaussianNotExact:
    case ErrorCode::InvalidScheme:
    case ErrorCode::DegenerateInput:
      return ACC_EVALIDATION;
    case ErrorCode::Infeasible:
      return ACC_EINFEASIBLE;
    case ErrorCode::NonConvergence:
    case ErrorCode::NonMonotoneDetected:
      return ACC_ENOCONVERGE;
    case ErrorCode::UnsupportedDimension:
      return ACC_EUNSUPPORTED;
    case ErrorCode::SupportExplosion:
      return ACC_EOVERFLOW;
    default:
      return ACC_EINTERNAL;
  }
}

template <typename Fn>
acc_status guarded(Fn&& fn) {
  try {
    fn();
    return ACC_OK;
  } catch (const Error& e) {
    g_last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return status_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return ACC_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ACC_EINTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

acc_status copy_samples(const std::vector<Vec>& rows, double** out, size_t* out_rows) {
  std::size_t dim = rows.empty() ? 0 : rows.front().size();
  double* buf = new double[rows.size() * dim];
  for (std::size_t i = 0; i < rows.size(); ++i)
    std::memcpy(buf + i * dim, rows[i].data(), dim * sizeof(double));
  *out = buf;
  *out_rows = rows.size();
  return ACC_OK;
}

}  // namespace

extern "C" {

const char* acc_version(void) { return kLibraryVersion; }

const char* acc_last_error(void) { return g_last_error.c_str(); }

void acc_string_free(char* s) { delete[] s; }
void acc_buffer_free(double* buf) { delete[] buf; }

acc_status acc_scheme_parse(const char* json_text, acc_scheme** out) {
  if (!json_text || !out) return ACC_EINVAL;
  return guarded([&] {
    Scheme s = scheme_from_string(json_text);
    require_valid(s);
    *out = new acc_scheme{std::move(s)};
  });
}

void acc_scheme_free(acc_scheme* s) { delete s; }

acc_status acc_scheme_dimension(const acc_scheme* s, size_t* out) {
  if (!s || !out) return ACC_EINVAL;
  *out = s->s.dimension;
  return ACC_OK;
}

acc_status acc_scheme_p_max(const acc_scheme* s, double* out) {
  if (!s || !out) return ACC_EINVAL;
  *out = s->s.max_p();
  return ACC_OK;
}

acc_status acc_scheme_sample(const acc_scheme* s, uint64_t seed, size_t count,
                             double** out, size_t* out_rows) {
  if (!s || !out || !out_rows) return ACC_EINVAL;
  return guarded([&] {
    RngStream rng(seed, 0);
    copy_samples(sample_scheme(s->s, rng, count), out, out_rows);
  });
}

acc_status acc_law_build(const acc_scheme* s, const char* approximant, acc_law** out) {
  if (!s || !approximant || !out) return ACC_EINVAL;
  return guarded([&] {
    *out = new acc_law{build_approximant(s->s, approximant_from_string(approximant))};
  });
}

acc_status acc_law_parse(const char* json_text, acc_law** out) {
  if (!json_text || !out) return ACC_EINVAL;
  return guarded([&] { *out = new acc_law{law_from_json(json::parse(json_text))}; });
}

void acc_law_free(acc_law* l) { delete l; }

acc_status acc_law_to_json(const acc_law* l, char** out) {
  if (!l || !out) return ACC_EINVAL;
  return guarded([&] { *out = dup_string(to_json(l->l).dump()); });
}

acc_status acc_law_moments(const acc_law* l, double* mean, double* cov) {
  if (!l || !mean || !cov) return ACC_EINVAL;
  return guarded([&] {
    Moments m = moments(l->l);
    std::memcpy(mean, m.mean.data(), m.mean.size() * sizeof(double));
    std::memcpy(cov, m.cov.data(), m.cov.size() * sizeof(double));
  });
}

acc_status acc_law_sample(const acc_law* l, uint64_t seed, size_t count, double** out,
                          size_t* out_rows) {
  if (!l || !out || !out_rows) return ACC_EINVAL;
  return guarded([&] {
    LawSampler sampler(l->l);
    RngStream rng(seed, 0);
    std::vector<Vec> rows;
    rows.reserve(count);
    for (size_t i = 0; i < count; ++i) rows.push_back(sampler.draw(rng));
    copy_samples(rows, out, out_rows);
  });
}

acc_status acc_law_exact_pmf(const acc_law* l, double tail_eps, char** out) {
  if (!l || !out) return ACC_EINVAL;
  return guarded([&] { *out = dup_string(to_json(exact_pmf(l->l, tail_eps)).dump()); });
}

acc_status acc_tv_exact(const acc_law* a, const acc_law* b, double tail_eps, double* out) {
  if (!a || !b || !out) return ACC_EINVAL;
  return guarded([&] { *out = tv_exact(exact_pmf(a->l, tail_eps), exact_pmf(b->l, tail_eps)); });
}

acc_status acc_levy_exact(const acc_law* a, const acc_law* b, double tail_eps, double* out) {
  if (!a || !b || !out) return ACC_EINVAL;
  return guarded([&] {
    *out = levy_1d_exact(exact_pmf(a->l, tail_eps), exact_pmf(b->l, tail_eps));
  });
}

acc_status acc_polyhedron_parse(const char* json_text, acc_polyhedron** out) {
  if (!json_text || !out) return ACC_EINVAL;
  return guarded([&] {
    *out = new acc_polyhedron{polyhedron_from_json(json::parse(json_text))};
  });
}

void acc_polyhedron_free(acc_polyhedron* p) { delete p; }

acc_status acc_polyhedron_contains(const acc_polyhedron* p, const double* x, size_t dim,
                                   int* out) {
  if (!p || !x || !out) return ACC_EINVAL;
  return guarded([&] { *out = contains(p->p, Vec(x, x + dim)) ? 1 : 0; });
}

acc_status acc_polyhedron_distance(const acc_polyhedron* p, const double* x, size_t dim,
                                   double* out) {
  if (!p || !x || !out) return ACC_EINVAL;
  return guarded([&] { *out = distance_to(p->p, Vec(x, x + dim)); });
}

acc_status acc_run_json(const char* command, const char* config_json, char** csv_out,
                        char** manifest_out) {
  if (!command || !config_json || !csv_out || !manifest_out) return ACC_EINVAL;
  return guarded([&] {
    json cfg = json::parse(config_json);
    std::string cmd = command;
    RunResult r;
    if (cmd == "sweep") {
      r = run_bound_sweep(sweep_config_from_json(cfg));
    } else if (cmd == "lecam") {
      r = lecam_experiment(lecam_config_from_json(cfg));
    } else if (cmd == "poissonize") {
      PoissonizationInstance inst = poissonization_instance_from_json(cfg);
      std::size_t samples = cfg.value("samples", std::size_t{100000});
      std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
      r = poissonization_experiment(inst, samples, seed);
    } else if (cmd == "distance") {
      r = run_distance(distance_config_from_json(cfg));
    } else if (cmd == "cuts") {
      Polyhedron p = polyhedron_from_json(cfg.at("polyhedron"));
      r = run_cuts(p, cfg.value("epsilon", 0.09));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown command " + cmd);
    }
    *csv_out = dup_string(r.csv);
    *manifest_out = dup_string(r.manifest.dump(2) + "\n");
  });
}

}  // end extern "C"

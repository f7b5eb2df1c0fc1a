// accompany command line front end. Thin shell over the C API: reads JSON
// configs, forwards them to the library, writes the CSV/manifest pair.
//
// Exit codes: 0 success, 1 runtime/validation failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "accompany/accompany.h"

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_base;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(1);
  }
}

int run_command(const std::string& command, const Options& opt) {
  json cfg;
  try {
    cfg = json::parse(slurp(opt.config_path));
  } catch (const json::exception& e) {
    std::cerr << "error: bad config JSON: " << e.what() << "\n";
    return 1;
  }
  if (opt.seed_set) cfg["seed"] = opt.seed;

  char* csv = nullptr;
  char* manifest = nullptr;
  acc_status st = acc_run_json(command.c_str(), cfg.dump().c_str(), &csv, &manifest);
  if (st != ACC_OK) {
    std::cerr << "error: " << acc_last_error() << "\n";
    return 1;
  }
  if (!opt.out_base.empty()) {
    write_file(opt.out_base + ".csv", csv);
    write_file(opt.out_base + ".manifest.json", manifest);
  } else if (opt.format == "json") {
    std::cout << manifest;
  } else {
    std::cout << csv;
  }
  acc_string_free(csv);
  acc_string_free(manifest);
  return 0;
}

int run_validate(const Options& opt) {
  std::string text;
  try {
    text = slurp(opt.config_path);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  acc_scheme* s = nullptr;
  acc_status st = acc_scheme_parse(text.c_str(), &s);
  if (st != ACC_OK) {
    std::cerr << "invalid: " << acc_last_error() << "\n";
    return 1;
  }
  size_t dim = 0;
  double p = 0.0;
  acc_scheme_dimension(s, &dim);
  acc_scheme_p_max(s, &p);
  if (opt.format == "json") {
    std::cout << json{{"ok", true}, {"dimension", dim}, {"p_max", p}}.dump() << "\n";
  } else {
    std::cout << "ok dimension=" << dim << " p_max=" << p << "\n";
  }
  acc_scheme_free(s);
  return 0;
}

int run_sample(const Options& opt, const std::string& law_name, std::size_t count) {
  std::string text = slurp(opt.config_path);
  acc_scheme* s = nullptr;
  if (acc_scheme_parse(text.c_str(), &s) != ACC_OK) {
    std::cerr << "error: " << acc_last_error() << "\n";
    return 1;
  }
  size_t dim = 0;
  acc_scheme_dimension(s, &dim);
  double* buf = nullptr;
  size_t rows = 0;
  acc_status st;
  if (law_name == "F") {
    st = acc_scheme_sample(s, opt.seed, count, &buf, &rows);
  } else {
    acc_law* l = nullptr;
    st = acc_law_build(s, law_name.c_str(), &l);
    if (st == ACC_OK) {
      st = acc_law_sample(l, opt.seed, count, &buf, &rows);
      acc_law_free(l);
    }
  }
  acc_scheme_free(s);
  if (st != ACC_OK) {
    std::cerr << "error: " << acc_last_error() << "\n";
    return 1;
  }
  std::ostringstream out;
  for (size_t i = 0; i < rows; ++i) {
    for (size_t k = 0; k < dim; ++k) {
      char cell[32];
      std::snprintf(cell, sizeof(cell), "%.12g", buf[i * dim + k]);
      out << (k ? "," : "") << cell;
    }
    out << "\n";
  }
  acc_buffer_free(buf);
  if (!opt.out_base.empty())
    write_file(opt.out_base + ".csv", out.str());
  else
    std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accompanying compound Poisson laws: build, compare, experiment"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file ('-' for stdin)");
  app.add_option("--out", opt.out_base, "output base path (writes .csv and .manifest.json)");
  app.add_option("--format", opt.format, "stdout format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", opt.seed, "RNG seed override")
      ->each([&](const std::string&) { opt.seed_set = true; });

  auto* validate = app.add_subcommand("validate", "validate a mixture scheme");
  auto* sample = app.add_subcommand("sample", "draw iid samples from F or an approximant");
  std::string law_name = "F";
  std::size_t count = 1000;
  sample->add_option("--law", law_name, "F | D | Dstar | Dstarstar | Dbar");
  sample->add_option("--count", count, "number of samples");
  auto* distance = app.add_subcommand("distance", "distance between F and an approximant");
  auto* sweep = app.add_subcommand("sweep", "bound-ratio sweep over (p, tau, n) grids");
  auto* lecam = app.add_subcommand("lecam", "total variation vs n p^2 on Bernoulli schemes");
  auto* poissonize =
      app.add_subcommand("poissonize", "Poissonized sandwich experiment on one instance");
  auto* cuts = app.add_subcommand("cuts", "polygon cut augmentation demo");
  (void)validate;
  for (CLI::App* sc : {validate, sample, distance, sweep, lecam, poissonize, cuts})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0, any parse failure is a usage error
  }

  if (opt.config_path.empty()) {
    std::cerr << "error: --config is required\n";
    return 2;
  }
  try {
    if (app.got_subcommand("validate")) return run_validate(opt);
    if (app.got_subcommand("sample")) return run_sample(opt, law_name, count);
    if (app.got_subcommand("distance")) return run_command("distance", opt);
    if (app.got_subcommand("sweep")) return run_command("sweep", opt);
    if (app.got_subcommand("lecam")) return run_command("lecam", opt);
    if (app.got_subcommand("poissonize")) return run_command("poissonize", opt);
    if (app.got_subcommand("cuts")) return run_command("cuts", opt);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

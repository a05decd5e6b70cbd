// Command-line front end: parses flags, loads the instance, prints the
// report and exits with the command's code.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "lll/cli/commands.hpp"

namespace {

using lll::cli::Json;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw lll::InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lll::io::Instance load_instance(const std::string& path) {
  return lll::io::instance_from_json(lll::io::parse_text(read_input(path)));
}

struct Common {
  std::uint64_t seed = 1;
  double budget = 1e6;
  double samples = 1e6;
  std::uint64_t repeat = 1;
  unsigned jobs = 1;
  bool exact = false;
  std::string format = "json";
  CLI::Option* seed_opt = nullptr;

  lll::cli::Options options() const {
    if (!(budget >= 1) || budget > 1.8e19) throw lll::InputError("--budget must be a positive count");
    if (!(samples >= 1) || samples > 1.8e19) throw lll::InputError("--samples must be a positive count");
    lll::cli::Options o;
    if (seed_opt && seed_opt->count()) o.seed = seed;
    o.budget = static_cast<std::uint64_t>(budget);
    o.samples = static_cast<std::uint64_t>(samples);
    o.repeat = repeat;
    o.jobs = jobs == 0 ? 1 : jobs;
    o.exact = exact;
    return o;
  }
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

void add_run_flags(CLI::App* app, Common& c) {
  c.seed_opt = app->add_option("--seed", c.seed, "Master seed (default: instance seed, then 1)");
  app->add_option("--budget", c.budget, "Maximum number of resamples before giving up")->capture_default_str();
  app->add_option("--repeat", c.repeat, "Independent runs with seeds derived from --seed")->check(CLI::PositiveNumber);
  app->add_option("--jobs", c.jobs, "Worker threads for repeated runs");
  add_format(app, c);
}

struct Generator {
  int n = 0;
  int t = 1;
  int cap = 1;
  std::uint64_t gen_seed = 0;
  bool proper = false;
};

Json generated_instance(const std::string& kind, const Generator& g, bool with_t) {
  Json gen{{"n", g.n}, {"cap", g.cap}, {"seed", g.gen_seed}};
  if (g.proper) gen["proper"] = true;
  Json j{{"kind", kind}, {"generator", gen}};
  if (with_t) j["t"] = g.t;
  return j;
}

int emit(const lll::cli::Outcome& o, const Common& c) {
  std::cout << lll::cli::render(o.json, c.format == "text");
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic local lemma toolkit: criteria, resampling runs and oracle checks"};
  app.require_subcommand(1);
  Common c;

  std::string criteria_file;
  auto* criteria = app.add_subcommand("criteria", "Evaluate LLL criteria and predicted running-time bounds");
  criteria->add_option("instance", criteria_file, "Instance file, or - for stdin")->required();
  criteria->add_flag("--exact", c.exact, "Recompute verdicts and Shearer quantities in exact rationals");
  add_format(criteria, c);

  std::string run_file;
  auto* run = app.add_subcommand("run", "Run MaximalSetResample on an instance");
  run->add_option("instance", run_file, "Instance file, or - for stdin")->required();
  add_run_flags(run, c);

  // Application shortcuts: either an instance file or generator flags.
  Generator gen;
  std::string app_file;
  bool app_criteria_only = false;
  auto add_app = [&](const char* name, const char* help, bool with_t, bool with_proper) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("instance", app_file, "Instance file; omit to generate one");
    sub->add_option("--n", gen.n, with_proper ? "Number of vertices" : "Matrix order")->check(CLI::Range(1, 4096));
    if (with_t) sub->add_option("--t", gen.t, "Number of disjoint objects")->capture_default_str();
    sub->add_option("--cap", gen.cap, "Maximum multiplicity of a color")->capture_default_str();
    sub->add_option("--gen-seed", gen.gen_seed, "Seed for the random coloring")->capture_default_str();
    if (with_proper) sub->add_flag("--proper", gen.proper, "Use the round-robin proper edge coloring");
    sub->add_flag("--criteria", app_criteria_only, "Only report the criterion check");
    add_run_flags(sub, c);
    return sub;
  };
  auto* latin = add_app("latin", "Disjoint rainbow transversals of a colored matrix", true, false);
  auto* matching = add_app("rainbow-matching", "Rainbow perfect matching of an edge-colored complete graph", false, true);
  auto* tree = add_app("rainbow-tree", "Disjoint rainbow spanning trees of an edge-colored complete graph", true, true);

  lll::cli::VerifyRequest vr;
  auto* verify = app.add_subcommand("verify-oracle", "Statistical (R1)/(R2) checks of a resampling oracle family");
  verify->add_option("--family", vr.family, "permutations|matchings|trees|variables|synth|chain-streak")
      ->capture_default_str();
  verify->add_option("--size", vr.size, "Instance size (0 for the family default)");
  verify->add_option("--event", vr.event, "Event index within the family's event list");
  verify->add_option("--samples", c.samples, "Samples for the R1 test and trials for R2")->capture_default_str();
  c.seed_opt = nullptr;
  auto* verify_seed = verify->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  verify->add_option("--jobs", c.jobs, "Worker threads");
  verify->add_option("--k", vr.k, "chain-streak: number of chains")->capture_default_str();
  verify->add_option("--l", vr.l, "chain-streak: events per chain")->capture_default_str();
  verify->add_option("--runs", vr.runs, "chain-streak: independent runs")->capture_default_str();
  verify->add_option("--budget", c.budget, "chain-streak: resample budget per run")->capture_default_str();
  add_format(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lll::cli::kInputFailure;
  }

  try {
    if (*criteria) return emit(lll::cli::cmd_criteria(load_instance(criteria_file), c.options()), c);
    if (*run) {
      c.seed_opt = run->get_option("--seed");
      return emit(lll::cli::cmd_run(load_instance(run_file), c.options()), c);
    }
    for (auto* sub : {latin, matching, tree}) {
      if (!*sub) continue;
      c.seed_opt = sub->get_option("--seed");
      lll::io::Instance inst;
      if (!app_file.empty()) {
        inst = load_instance(app_file);
        if (inst.kind != sub->get_name()) throw lll::InputError("instance kind '" + inst.kind + "' does not match subcommand");
      } else {
        if (gen.n == 0) throw lll::InputError("give an instance file or --n");
        inst = lll::io::instance_from_json(generated_instance(sub->get_name(), gen, sub != matching));
      }
      if (app_criteria_only) return emit(lll::cli::cmd_criteria(inst, c.options()), c);
      return emit(lll::cli::cmd_run(inst, c.options()), c);
    }
    if (*verify) {
      c.seed_opt = verify_seed;
      return emit(lll::cli::cmd_verify_oracle(vr, c.options()), c);
    }
  } catch (const lll::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lll::cli::kInputFailure;
  } catch (const lll::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lll::cli::kInputFailure;
  } catch (const lll::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lll::cli::kInputFailure;
  }
  return lll::cli::kInputFailure;
}

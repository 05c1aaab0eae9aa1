// Command-line front end: analyze, examples, witness, falsify.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "phaseret/error.hpp"
#include "phaseret/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

struct Flags {
  double tolerance = 1e-9;
  bool exact = false;
  bool floating = false;
  std::size_t max_exact_size = 22;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t samples = 64;
  bool json = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tolerance", f.tolerance, "float comparison tolerance")->capture_default_str();
  auto* ex = cmd->add_flag("--exact", f.exact, "reject non-rational literals");
  auto* fl = cmd->add_flag("--float", f.floating, "convert all input to floating point");
  ex->excludes(fl);
  cmd->add_option("--max-exact-size", f.max_exact_size, "cap on enumerated frame size")
      ->capture_default_str();
  cmd->add_option("--trials", f.trials, "search trial budget")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--samples", f.samples, "samples per partition / random starts")
      ->capture_default_str();
  cmd->add_flag("--json", f.json, "emit JSON");
}

phaseret::AnalysisOptions options(const Flags& f) {
  phaseret::AnalysisOptions o;
  o.cfg.tolerance = f.tolerance;
  o.cfg.max_enumeration = f.max_exact_size;
  o.budget.trials = f.trials;
  o.budget.seed = f.seed;
  o.budget.samples = f.samples;
  o.mode = f.exact ? phaseret::ArithmeticMode::Exact
                   : (f.floating ? phaseret::ArithmeticMode::Float : phaseret::ArithmeticMode::Auto);
  return o;
}

phaseret::Input load(const std::string& path, const phaseret::AnalysisOptions& o) {
  return phaseret::load_input(path, o.mode, o.cfg.tolerance);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase, weak phase and norm retrieval analysis for frames and projections"};
  app.require_subcommand(1);

  Flags flags;
  std::string path;
  std::string property;
  std::string example_id;

  auto* analyze = app.add_subcommand("analyze", "run every applicable decider on an input file");
  analyze->add_option("input", path, "JSON input file")->required();
  add_common(analyze, flags);

  auto* examples = app.add_subcommand("examples", "run the example registry");
  examples->add_option("id", example_id, "run a single example");
  examples->add_flag("--list", "list example ids");
  add_common(examples, flags);

  auto* witness = app.add_subcommand("witness", "produce a witness for a failed property");
  witness->add_option("input", path, "JSON input file")->required();
  witness->add_option("--property", property, "wpr, phase, norm or proj-phase")
      ->required()
      ->check(CLI::IsMember({"wpr", "phase", "norm", "proj-phase"}));
  add_common(witness, flags);

  auto* falsify = app.add_subcommand("falsify", "budgeted counterexample search");
  falsify->add_option("input", path, "JSON input file")->required();
  add_common(falsify, flags);

  CLI11_PARSE(app, argc, argv);

  const phaseret::AnalysisOptions opts = options(flags);
  try {
    opts.budget.validate();
    phaseret::json out;
    if (*analyze) {
      out = phaseret::analyze(load(path, opts), opts);
      if (!flags.json) {
        std::cout << phaseret::render_text(out);
        return kExitOk;
      }
    } else if (*examples) {
      if (examples->count("--list") > 0) {
        for (const auto& ex : phaseret::example_registry())
          std::cout << ex.id << "  " << ex.description << '\n';
        return kExitOk;
      }
      out = phaseret::run_examples(example_id, opts.cfg);
      if (!flags.json) {
        for (const auto& r : out["examples"])
          std::cout << (r["pass"].get<bool>() ? "PASS  " : "FAIL  ") << r["id"].get<std::string>()
                    << '\n';
        return out["pass"].get<bool>() ? kExitOk : kExitError;
      }
    } else if (*witness) {
      out = phaseret::witness_command(load(path, opts), property, opts);
    } else if (*falsify) {
      out = phaseret::falsify_command(load(path, opts), opts);
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  } catch (const phaseret::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const phaseret::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kExitParse;
  } catch (const phaseret::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

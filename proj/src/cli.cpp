#include "mgw/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "mgw/experiments.hpp"

namespace mgw {

namespace {

Family parse_family(const std::string& name) {
  if (name == "sym") return Family::Sym;
  if (name == "unitary") return Family::Unitary;
  if (name == "rank") return Family::Rank;
  throw CLI::ValidationError("--family", "must be one of sym|unitary|rank");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
  file << text;
}

std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("MGW_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw std::runtime_error("MGW_BUDGET must be a positive integer");
  }
  return kDefaultBudget;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mgw - chains, rounding and Sigma_2 convergence experiments in finite "
               "bi-invariant metric groups"};
  app.require_subcommand(1);

  std::string family_text = "sym";
  std::string formula_text;
  std::string n_text = "0";
  std::string epsilon_text = "0";
  std::string beta_text = "1/3";
  std::string map_kind = "pad";
  std::string out_path;
  std::string witness_path;
  std::uint32_t n = 0, l = 1, m = 0, k = 1, r = 0;
  std::uint64_t samples = 0, seed = 0;

  auto* chains = app.add_subcommand("chains", "build a chain witness and verify it");
  chains->add_option("--family", family_text, "sym|unitary|rank")->capture_default_str();
  chains->add_option("--n", n, "ambient degree / dimension")->required();
  chains->add_option("--l", l, "chain length")->required();
  chains->add_option("--epsilon", epsilon_text, "chain slack in [0,1/2)")->capture_default_str();
  chains->add_option("--out", out_path, "CSV output file (default stdout)");
  chains->add_option("--witness-json", witness_path, "also export the witness as JSON");

  auto* round = app.add_subcommand("round", "round random permutations of S_{km} onto an "
                                            "embedded S_m");
  round->add_option("--m", m, "core degree")->required();
  round->add_option("--k", k, "page count")->required();
  round->add_option("--beta", beta_text, "chop exponent in (0,1)")->capture_default_str();
  round->add_option("--samples", samples, "number of random permutations")->required();
  round->add_option("--seed", seed, "root seed")->capture_default_str();
  round->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* uround = app.add_subcommand("uround", "round random unitaries of U_{km+r} through the "
                                              "corner repair");
  uround->add_option("--k", k, "multiplicity")->required();
  uround->add_option("--m", m, "core dimension factor")->required();
  uround->add_option("--r", r, "padding dimension, 0 <= r < m")->capture_default_str();
  uround->add_option("--samples", samples, "number of Haar samples")->required();
  uround->add_option("--seed", seed, "root seed")->capture_default_str();
  uround->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* converge = app.add_subcommand("converge", "evaluate a Sigma_2 sentence across a family");
  converge->add_option("--family", family_text, "sym|unitary|rank")->capture_default_str();
  converge->add_option("--formula", formula_text, "sentence, e.g. \"inf x. sup y. d(x*y, y*x)\"")
      ->required();
  converge->add_option("--n", n_text, "range like 3..5, a list 3,5,9 or one value")->required();
  converge->add_option("--samples", samples, "0 = exhaustive; >0 = sampled quantifiers")
      ->capture_default_str();
  converge->add_option("--seed", seed, "root seed for sampled mode")->capture_default_str();
  converge->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* defect = app.add_subcommand("defect", "measure the embedding defect of pad/diag maps");
  defect->add_option("--map", map_kind, "pad|diag")->capture_default_str();
  defect->add_option("--m", m, "source degree")->required();
  defect->add_option("--k", k, "page count (diag only)")->capture_default_str();
  defect->add_option("--n", n, "target degree")->required();
  defect->add_option("--samples", samples, "0 = exhaustive pairs; >0 = sampled pairs")
      ->capture_default_str();
  defect->add_option("--seed", seed, "root seed for sampled pairs")->capture_default_str();
  defect->add_option("--out", out_path, "CSV output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    EvalOptions options;
    options.budget = budget_from_env();

    ExperimentResult result;
    if (app.got_subcommand(chains)) {
      const Rational epsilon = parse_rational(epsilon_text);
      result = chains_experiment(parse_family(family_text), n, l, epsilon);
      if (!witness_path.empty()) {
        std::ofstream file(witness_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open '" + witness_path + "'");
        file << chains_witness_json(parse_family(family_text), n, l, epsilon) << "\n";
      }
    } else if (app.got_subcommand(round)) {
      result = round_experiment(m, k, parse_rational(beta_text), samples, seed);
    } else if (app.got_subcommand(uround)) {
      result = uround_experiment(k, m, r, samples, seed);
    } else if (app.got_subcommand(converge)) {
      result = converge_experiment(parse_family(family_text), formula_text, parse_n_range(n_text),
                                   samples, seed, options);
    } else if (app.got_subcommand(defect)) {
      result = defect_experiment(map_kind, m, k, n, samples, seed, options);
    }
    emit(result.csv, out_path, out);
    if (!result.ok) {
      err << "verification failed\n";
      return 1;
    }
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const FormulaParseError& e) {
    err << "usage error: bad formula: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mgw

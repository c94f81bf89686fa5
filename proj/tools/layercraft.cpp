#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "layercraft/analyze.hpp"
#include "layercraft/dot.hpp"
#include "layercraft/search.hpp"
#include "layercraft/verify.hpp"

namespace {

using namespace layercraft;

int exit_code_for(errc c) {
  switch (c) {
    case errc::budget_exceeded: return 2;
    case errc::internal_inconsistency: return 3;
    default: return 1;
  }
}

uint64_t default_element_budget() {
  if (const char* env = std::getenv("LAYERCRAFT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed LAYERCRAFT_BUDGET\n";
  }
  return 200000;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_input, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(errc::invalid_input, "cannot write '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layercraft: posets of layers of integral hyperplane and toric arrangements"};
  app.require_subcommand(1);

  std::string input_path, out_path, format = "json", mode;
  bool timing = false, emit_poset = false;
  uint64_t budget = default_element_budget();

  auto add_io = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("input", input_path, "input spec (*.json)")->required();
    cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    cmd->add_option("--budget", budget, "layer/element cap (default 200000 or LAYERCRAFT_BUDGET)");
    if (with_format) {
      cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
      cmd->add_option("--mode", mode, "exhaustive|guided")
          ->check(CLI::IsMember({"exhaustive", "guided"}));
      cmd->add_flag("--timing", timing, "include wall-clock timing in the report");
      cmd->add_flag("--emit-poset", emit_poset, "include the full poset (elements + covers)");
    }
  };

  CLI::App* analyze = app.add_subcommand("analyze", "classify an arrangement, poset or root ideal");
  add_io(analyze, true);

  CLI::App* hasse = app.add_subcommand("hasse", "emit the Hasse diagram as DOT");
  add_io(hasse, false);

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  std::vector<std::string> suites;
  uint64_t seed = 20240801;
  int count = 200, jobs = 1;
  verify->add_option("--suite", suites,
                     "suite name (repeatable); default all: deletion-restriction, sign-alternation, "
                     "inclusions, tm-factor, exponent-sum, predicted");
  verify->add_option("--seed", seed, "random corpus seed");
  verify->add_option("--count", count, "number of random arrangements");
  verify->add_option("--jobs", jobs, "worker threads for the random corpus");
  verify->add_option("--budget", budget, "layer/element cap");

  CLI::App* search = app.add_subcommand("search", "hunt for divisional non-inductive non-lattice posets");
  int max_atoms = 3;
  search->add_option("--max-atoms", max_atoms, "maximum number of characters per arrangement");
  search->add_option("--out", out_path, "write the log to a file");
  search->add_option("--budget", budget, "layer/element cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      InputSpec spec = parse_input_text(slurp(input_path));
      AnalyzeOptions opt;
      opt.max_elements = budget;
      opt.timing = timing;
      opt.emit_poset = emit_poset;
      if (mode == "guided") opt.guided = true;
      else if (mode == "exhaustive") opt.guided = false;
      Json report = run_analyze(spec, opt);
      emit(format == "json" ? report.dump(2) + "\n" : render_text(report), out_path);
      return 0;
    }
    if (*hasse) {
      InputSpec spec = parse_input_text(slurp(input_path));
      emit(hasse_dot(poset_for_input(spec, budget)), out_path);
      return 0;
    }
    if (*verify) {
      for (const auto& s : suites) {
        const auto& names = verify_suite_names();
        if (std::find(names.begin(), names.end(), s) == names.end())
          fail(errc::invalid_input, "unknown suite '" + s + "'");
      }
      VerifyOptions opt;
      opt.suites = suites;
      opt.seed = seed;
      opt.count = count;
      opt.jobs = jobs;
      opt.max_elements = budget;
      auto results = run_verify(opt);
      bool all_ok = true;
      for (const auto& r : results) {
        std::cout << (r.failures == 0 ? "PASS" : "FAIL") << " " << r.name << " (" << r.checked
                  << " checks, " << r.failures << " failures)\n";
        for (const auto& d : r.failure_details) std::cout << "  counterexample: " << d << "\n";
        all_ok &= r.failures == 0;
      }
      return all_ok ? 0 : 1;
    }
    if (*search) {
      SearchOptions opt;
      opt.max_atoms = max_atoms;
      opt.max_elements = budget;
      SearchLog log = run_search(opt);
      std::string text = "examined " + std::to_string(log.examined) + " posets\n";
      for (const auto& e : log.exclusions) text += "excluded " + e + "\n";
      for (const auto& c : log.candidates) text += "CANDIDATE " + c + "\n";
      text += log.candidates.empty() ? "no divisional non-inductive non-lattice candidate found\n"
                                     : "candidates found: " + std::to_string(log.candidates.size()) + "\n";
      emit(text, out_path);
      return 0;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

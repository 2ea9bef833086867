// Command-line front end: engines (quotient / truncation oracle), gadget
// generators and the acceptance selftest.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocmc/acceptance.hpp"
#include "ocmc/errors.hpp"
#include "ocmc/gadgets.hpp"
#include "ocmc/oracle.hpp"
#include "ocmc/quotient.hpp"

namespace {

constexpr int kExitError = 2;       // parse/input errors
constexpr int kExitUnknown = 3;     // oracle verdict still unknown
constexpr int kExitUnsupported = 4; // engine cannot handle the system

std::string read_stream_or_file(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ocmc::InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct StateArg {
  std::string location;
  ocmc::BigInt counter;
};

StateArg parse_state(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
    throw ocmc::InputError("state must look like <location>:<counter>");
  StateArg s;
  s.location = text.substr(0, colon);
  std::string num = text.substr(colon + 1);
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ocmc::InputError("counter must be a nonnegative decimal number");
  s.counter = ocmc::BigInt(num);
  return s;
}

std::uint64_t max_ceiling_default() {
  if (const char* env = std::getenv("OCMC_MAX_CEILING")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ocmc::InputError("OCMC_MAX_CEILING must be a number");
    }
  }
  return ocmc::kDefaultMaxCeiling;
}

ocmc::CtlFormula load_formula(const std::string& text, const std::string& file) {
  if (!text.empty() && !file.empty())
    throw ocmc::InputError("give either --formula or --formula-file, not both");
  if (text.empty() && file.empty())
    throw ocmc::InputError("a formula is required (--formula or --formula-file)");
  if (!text.empty()) return ocmc::parse_formula(text);
  return ocmc::parse_formula(read_stream_or_file(file));
}

nlohmann::ordered_json set_to_json(const ocmc::UltimatelyPeriodicSet& s) {
  nlohmann::ordered_json j;
  j["threshold"] = s.threshold();
  j["period"] = s.period();
  j["prefix"] = nlohmann::json::array();
  for (char c : s.prefix()) j["prefix"].push_back(c ? 1 : 0);
  j["residues"] = nlohmann::json::array();
  for (char c : s.residues()) j["residues"].push_back(c ? 1 : 0);
  return j;
}

int cmd_check(const std::string& system_path, const std::string& formula_text,
              const std::string& formula_file, const std::string& state_text,
              const std::string& engine, std::uint64_t ceiling, std::uint64_t max_ceiling) {
  ocmc::OneCounterProcess ocp = ocmc::parse_ocp(read_stream_or_file(system_path));
  ocmc::CtlFormula f = load_formula(formula_text, formula_file);
  StateArg s = parse_state(state_text);
  std::string chosen = engine;
  if (chosen.empty()) chosen = ocmc::is_unit_step(ocp) ? "quotient" : "oracle";
  if (chosen == "quotient") {
    bool verdict = ocmc::check(ocp, f, s.location, s.counter);
    std::cout << (verdict ? "true" : "false") << "\n";
    return 0;
  }
  if (chosen == "oracle") {
    try {
      bool verdict = ocmc::eval_definite(ocp, ocmc::expand(f), s.location, s.counter, ceiling,
                                         max_ceiling);
      std::cout << (verdict ? "true" : "false") << "\n";
      return 0;
    } catch (const ocmc::IndefiniteError&) {
      std::cout << "unknown\n";
      return kExitUnknown;
    }
  }
  throw ocmc::InputError("engine must be 'quotient' or 'oracle'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTL model checking for one-counter processes"};
  app.require_subcommand(1);

  // check
  std::string system_path, formula_text, formula_file, state_text, engine;
  std::uint64_t ceiling = 64;
  std::optional<std::uint64_t> max_ceiling_opt;
  auto* check = app.add_subcommand("check", "decide state satisfaction");
  check->add_option("--system", system_path, "OCP file ('-' for stdin)")->required();
  check->add_option("--formula", formula_text, "formula text");
  check->add_option("--formula-file", formula_file, "formula file");
  check->add_option("--state", state_text, "state as <location>:<counter>")->required();
  check->add_option("--engine", engine, "quotient | oracle (default: by system)");
  check->add_option("--ceiling", ceiling, "oracle initial ceiling");
  check->add_option("--max-ceiling", max_ceiling_opt, "oracle ceiling cap");

  // oracle
  std::string o_system, o_formula, o_formula_file, o_state;
  std::uint64_t o_ceiling = 64;
  std::optional<std::uint64_t> o_max_ceiling;
  auto* oracle = app.add_subcommand("oracle", "three-valued truncation verdict");
  oracle->add_option("--system", o_system, "OCP file ('-' for stdin)")->required();
  oracle->add_option("--formula", o_formula, "formula text");
  oracle->add_option("--formula-file", o_formula_file, "formula file");
  oracle->add_option("--state", o_state, "state as <location>:<counter>")->required();
  oracle->add_option("--ceiling", o_ceiling, "initial ceiling");
  oracle->add_option("--max-ceiling", o_max_ceiling, "ceiling cap");

  // label
  std::string l_system, l_formula, l_formula_file;
  auto* label_cmd = app.add_subcommand("label", "satisfaction sets per location as JSON");
  label_cmd->add_option("--system", l_system, "OCP file ('-' for stdin)")->required();
  label_cmd->add_option("--formula", l_formula, "formula text");
  label_cmd->add_option("--formula-file", l_formula_file, "formula file");

  // generators
  auto* gen_fixed = app.add_subcommand("gen-fixed-ocn", "print the fixed ten-location net");
  int div_i = 0, bit_i = 0;
  auto* gen_div = app.add_subcommand("gen-divformula", "print the divisibility formula");
  gen_div->add_option("i", div_i, "index (>= 1)")->required();
  auto* gen_bit = app.add_subcommand("gen-bitformula", "print the bit formula");
  gen_bit->add_option("i", bit_i, "index (>= 1)")->required();

  std::string qbf_path;
  auto* qbf2ctl = app.add_subcommand("qbf2ctl", "translate a prenex QBF to a formula");
  qbf2ctl->add_option("file", qbf_path, "QBF file ('-' for stdin)");

  std::string crr_path;
  auto* crr2ocn = app.add_subcommand("crr2ocn", "build the counter-testing net of a formula");
  crr2ocn->add_option("file", crr_path, "CRR formula file ('-' for stdin)");

  std::string cs_nfa, cs_crr, cs_emit = "system";
  auto* compose = app.add_subcommand("compose-serialized", "wire gadget copies along an NFA");
  compose->add_option("--nfa", cs_nfa, "NFA file")->required();
  compose->add_option("--crr", cs_crr, "CRR formula file")->required();
  compose->add_option("--emit", cs_emit, "system | formula | start (default system)");

  std::uint64_t seed = ocmc::acceptance::kDefaultSeed;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suites");
  selftest->add_option("--seed", seed, "seed for the randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    std::uint64_t max_ceiling = max_ceiling_default();
    if (check->parsed()) {
      if (max_ceiling_opt) max_ceiling = *max_ceiling_opt;
      return cmd_check(system_path, formula_text, formula_file, state_text, engine, ceiling,
                       max_ceiling);
    }
    if (oracle->parsed()) {
      if (o_max_ceiling) max_ceiling = *o_max_ceiling;
      ocmc::OneCounterProcess ocp = ocmc::parse_ocp(read_stream_or_file(o_system));
      ocmc::CtlFormula f = load_formula(o_formula, o_formula_file);
      StateArg s = parse_state(o_state);
      try {
        bool verdict =
            ocmc::eval_definite(ocp, ocmc::expand(f), s.location, s.counter, o_ceiling, max_ceiling);
        std::cout << (verdict ? "true" : "false") << "\n";
        return 0;
      } catch (const ocmc::IndefiniteError&) {
        std::cout << "unknown\n";
        return kExitUnknown;
      }
    }
    if (label_cmd->parsed()) {
      ocmc::OneCounterProcess ocp = ocmc::parse_ocp(read_stream_or_file(l_system));
      ocmc::CtlFormula f = load_formula(l_formula, l_formula_file);
      ocmc::BoundParams bp = ocmc::bound_params(ocp, ocmc::expand(f));
      auto sets = ocmc::label(ocp, f);
      nlohmann::ordered_json j;
      j["k"] = bp.k;
      j["K"] = bp.K.str();
      j["K_phi"] = bp.K_phi.str();
      j["B"] = bp.B.str();
      nlohmann::ordered_json labels;
      for (const auto& [loc, s] : sets) labels[loc] = set_to_json(s);
      j["labels"] = labels;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (gen_fixed->parsed()) {
      std::cout << ocmc::format_ocp(ocmc::fixed_ocn());
      return 0;
    }
    if (gen_div->parsed()) {
      std::cout << ocmc::format_formula(ocmc::div_formula(div_i)) << "\n";
      return 0;
    }
    if (gen_bit->parsed()) {
      std::cout << ocmc::format_formula(ocmc::bit_formula(bit_i)) << "\n";
      return 0;
    }
    if (qbf2ctl->parsed()) {
      ocmc::Qbf alpha = ocmc::parse_qbf(read_stream_or_file(qbf_path));
      std::cout << ocmc::format_formula(ocmc::qbf_to_ctl(alpha)) << "\n";
      return 0;
    }
    if (crr2ocn->parsed()) {
      ocmc::CrrFormula f = ocmc::parse_crr_formula(read_stream_or_file(crr_path));
      if (!ocmc::negation_free(f)) f = ocmc::eliminate_negations(f);
      ocmc::CrrGadget g = ocmc::build_ocn_of_formula(f);
      std::cout << "# in " << g.in_location << "\n# out " << g.out_location << "\n"
                << ocmc::format_ocp(g.ocp);
      return 0;
    }
    if (compose->parsed()) {
      ocmc::Nfa a = ocmc::parse_nfa(read_stream_or_file(cs_nfa));
      ocmc::CrrFormula f = ocmc::parse_crr_formula(read_stream_or_file(cs_crr));
      ocmc::SerializedReduction red = ocmc::compose_serialized(f, a);
      if (cs_emit == "system") {
        std::cout << "# start " << red.start_location << "\n" << ocmc::format_ocp(red.ocp);
      } else if (cs_emit == "formula") {
        std::cout << ocmc::format_formula(red.formula) << "\n";
      } else if (cs_emit == "start") {
        std::cout << red.start_location << "\n";
      } else {
        throw ocmc::InputError("--emit must be system, formula or start");
      }
      return 0;
    }
    if (selftest->parsed()) {
      auto results = ocmc::acceptance::run_all(seed);
      return ocmc::acceptance::report(results, std::cout, /*show_timings=*/false) ? 0 : 1;
    }
  } catch (const ocmc::UnsupportedInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ocmc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

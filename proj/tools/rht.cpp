#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rht/commands.hpp"
#include "rht/errors.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw rht::InputError("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int max_degree_from_env() {
  const char* env = std::getenv("RHT_MAX_DEGREE");
  if (env == nullptr) return 8;
  try {
    const int v = std::stoi(env);
    if (v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw rht::InputError("RHT_MAX_DEGREE must be a nonnegative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic models for self-equivalence spaces and symplectic class extension"};
  app.require_subcommand(1);

  std::string input = "-";
  bool text = false;
  int deg = -1, from = -1, to = -1;
  unsigned long seed = 2024;

  const std::vector<std::string> commands = {"check",      "cohomology", "fsmodel",
                                             "kappa",      "extendable", "moduli-dim",
                                             "nil-extendable"};
  const std::vector<std::string> descriptions = {
      "validate differentials, coalgebra laws and model shape",
      "degreewise cohomology of the input model",
      "reduced degree-1 model of the self-equivalence space with its differential",
      "the map from torus H^1 to degree-2 classes of the classifying space",
      "decide extendability of the symplectic class from classifying data",
      "dimension of the extendable classes over the 2-sphere",
      "extendability for a nilmanifold fibre from classifying data"};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("--input,-i", input, "model file, or '-' for stdin");
    sub->add_flag("--text", text, "render a human-readable table instead of JSON");
    sub->add_option("--seed", seed, "seed for the randomized self-checks");
    if (commands[i] == "cohomology") {
      sub->add_option("--deg", deg, "single degree");
      sub->add_option("--from", from, "range start");
      sub->add_option("--to", to, "range end");
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    rht::RunOptions opts;
    opts.text = text;
    opts.seed = seed;
    opts.max_degree = max_degree_from_env();
    if (deg >= 0) opts.deg = deg;
    if (from >= 0) opts.from = from;
    if (to >= 0) opts.to = to;

    const std::string text_in = read_input(input);
    rht::dsl::ParseResult parsed = rht::dsl::parse(text_in);
    if (!parsed.ok()) {
      std::cerr << "error: " << parsed.error->str() << "\n";
      return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    rht::Report report = rht::run(command, *parsed.doc, opts);
    std::cout << (text ? report.render_text() : report.render_json());
    return report.exit_code;
  } catch (const rht::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rht::UnsupportedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rht::Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

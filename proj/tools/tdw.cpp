// tdw: command-line front end.
//
//   tdw milnor -f "x^3+y^3"
//   tdw check-log -f "x+y^2" -vars x,y -log x
//   tdw corpus data/corpus.jsonl -o report.json

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdw/cli.hpp"

namespace {

// Single-dash long options are accepted for the ring declaration.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    for (const char* name : {"-vars", "-log"}) {
      const std::string n = name;
      if (a == n || a.rfind(n + "=", 0) == 0) a = "-" + a;
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology dimensions of Koszul and twisted de Rham complexes", "tdw"};
  tdw::RunConfig config;
  std::string format = "text";
  std::string output_path;
  std::vector<int> weights;
  long degree_bound = 0;
  int pole_bound = 0;
  int max_doublings = 0;

  std::string commands;
  for (const auto& c : tdw::known_commands()) commands += (commands.empty() ? "" : "|") + c;
  app.add_option("command", config.command, commands)->required();
  app.add_option("corpus", config.corpus_path, "corpus file (JSON lines) for the corpus command");
  app.add_option("-f,--f", config.f, "polynomial, e.g. \"x^2*y - 3/2*y + 1\"");
  app.add_option("--vars", config.vars, "declared variables, in order")->delimiter(',');
  app.add_option("--log", config.divisor, "divisor variables")->delimiter(',');
  auto* degree_opt =
      app.add_option("--degree-bound", degree_bound, "initial window degree bound D0");
  auto* pole_opt = app.add_option("--pole-bound", pole_bound, "initial pole bound P0");
  auto* doublings_opt = app.add_option("--max-doublings", max_doublings,
                 "window doublings (overrides TDW_MAX_DOUBLINGS; default 4)");
  app.add_option("--weights", weights, "grading weights for the window")->delimiter(',');
  app.add_option("--order", config.order, "degrevlex | lex | weighted:w1,...,wn");
  app.add_option("--mode", config.mode, "twisted: polynomial | log | meromorphic");
  app.add_option("--u", config.u, "twist parameter u in u*d - df^ (rational)");
  app.add_option("--jobs", config.jobs, "corpus worker threads (0 = all cores)");
  app.add_option("--substitutions", config.substitutions,
                 "corpus: random coordinate changes checked per member");
  app.add_option("--seed", config.seed, "seed for randomized checks");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", output_path, "also write the JSON report to this file");
  app.add_flag("--timing", config.timing, "record wall-clock time in the report");

  auto args = normalize_args(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tdw::exit_code::input_error;
  }

  if (degree_opt->count()) config.degree_bound = degree_bound;
  if (pole_opt->count()) config.pole_bound = pole_bound;
  if (doublings_opt->count()) config.max_doublings = max_doublings;
  if (!weights.empty()) config.weights = weights;
  config.format = format == "json" ? tdw::OutputFormat::json : tdw::OutputFormat::text;

  const auto result = tdw::run_command(config);
  std::cout << result.output;
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    out << result.report.dump(2) << "\n";
    if (!out) {
      std::cerr << "tdw: cannot write " << output_path << "\n";
      return tdw::exit_code::input_error;
    }
  }
  return result.exit_code;
}

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "iepg/json_fwd.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace iepg;
  CLI::App app{"Constructions for the inverse eigenvalue problem of graphs"};
  app.require_subcommand(1, 1);

  cli::RunConfig config;
  std::string out_path;
  std::string csv_path;
  std::string input_path = "-";
  double zero_tol = 0.0, gap_tol = 0.0, spectral_tol = 0.0;

  app.add_option("--seed", config.seed, "Seed for every randomised step")->capture_default_str();
  auto* zt = app.add_option("--zero-tol", zero_tol, "Entries at or below this count as zero");
  auto* gt = app.add_option("--gap-tol", gap_tol, "Eigenvalues closer than this are grouped");
  auto* st = app.add_option("--spectral-tol", spectral_tol,
                            "Spectral residual tolerance relative to the spread");
  app.add_option("--out,-o", out_path, "Write the JSON artifact here instead of stdout");
  app.add_flag("-v,--verbose", config.verbosity, "Report the exit status on stderr");

  for (const std::string& name : cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", input_path, "Input JSON file, '-' for stdin");
    if (name == "scenario")
      sub->add_option("--scenario,-s", config.scenario, "wheel, k2join, diff2 or star");
    if (name == "realize")
      sub->add_option("--csv", csv_path, "Write the decay ratio table as CSV");
  }

  CLI11_PARSE(app, argc, argv);
  if (zt->count() > 0) config.zero_tol = zero_tol;
  if (gt->count() > 0) config.gap_tol = gap_tol;
  if (st->count() > 0) config.spectral_tol = spectral_tol;

  const std::string command_text = app.get_subcommands().front()->get_name();
  const cli::Command command = cli::parse_command(command_text);

  Json input;
  cli::RunResult result;
  const bool scenario_without_input =
      command == cli::Command::scenario && !config.scenario.empty() &&
      app.get_subcommands().front()->get_option("input")->count() == 0;
  try {
    input = scenario_without_input ? Json::object() : Json::parse(slurp(input_path));
    result = cli::run(command, config, input);
  } catch (const std::exception& e) {
    result.exit_code = cli::Exit::input;
    result.artifact = {{"error", {{"kind", "input"}, {"message", e.what()}}}};
  }

  if (!write_text(out_path, result.artifact.dump(2) + "\n")) {
    std::cerr << "iepg: cannot write " << out_path << "\n";
    return cli::Exit::input;
  }
  if (result.csv && !csv_path.empty() && !write_text(csv_path, *result.csv)) {
    std::cerr << "iepg: cannot write " << csv_path << "\n";
    return cli::Exit::input;
  }
  if (result.artifact.contains("error"))
    std::cerr << "iepg " << command_text << ": "
              << result.artifact["error"]["message"].get<std::string>() << "\n";
  else if (config.verbosity > 0)
    std::cerr << "iepg " << command_text << ": exit " << result.exit_code << "\n";
  return result.exit_code;
}

// trimer: parameter sweeps, threshold scans, Husimi grids and phase maps for
// the mixed spin-(1/2, 1, 1/2) Heisenberg trimer.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trimer/sweep.hpp"

#ifndef TRIMER_DEFAULT_RECIPES
#define TRIMER_DEFAULT_RECIPES "recipes/figures.json"
#endif

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string default_recipes() {
  if (const char* env = std::getenv("TRIMER_RECIPES")) return env;
  return TRIMER_DEFAULT_RECIPES;
}

struct Options {
  std::string config_path, preset, out_path, format, units;
  std::string recipes = default_recipes();
  std::optional<long long> workers;
};

int execute(trimer::Command command, const Options& o) {
  using namespace trimer;
  if (o.config_path.empty() == o.preset.empty()) throw ConfigError("give exactly one of --config or --preset");

  const nlohmann::json j = o.preset.empty() ? load_json_file(o.config_path) : load_preset(o.recipes, o.preset);
  std::optional<Units> units;
  if (!o.units.empty()) units = parse_units(o.units);
  SweepConfig c = parse_config(j, units, command);
  if (!o.format.empty()) c.format = parse_format(o.format);
  if (o.workers) {
    if (*o.workers < 1) throw ConfigError("--workers must be >= 1");
    c.workers = static_cast<std::size_t>(*o.workers);
  }

  const Table t = run(c);
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  write_table(buf, t, c.format);
  if (o.out_path.empty()) {
    std::cout << buf.str();
    std::cout.flush();
    if (!std::cout) throw ConfigError("failed writing to stdout");
  } else {
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + o.out_path);
    out << buf.str();
    if (!out.flush()) throw ConfigError("failed writing " + o.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-resource analysis of the mixed spin-(1/2,1,1/2) Heisenberg trimer"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--preset", o.preset, "named recipe from the recipes file (fig1b ... fig6c)");
    sub->add_option("--recipes", o.recipes, "recipes file")->capture_default_str();
    sub->add_option("--out", o.out_path, "output file (default: stdout)");
    sub->add_option("--format", o.format, "csv | json | gnuplot")->check(CLI::IsMember({"csv", "json", "gnuplot"}));
    sub->add_option("--workers", o.workers, "worker threads");
    sub->add_option("--units", o.units, "reduced | physical")->check(CLI::IsMember({"reduced", "physical"}));
  };

  const std::pair<const char*, const char*> commands[] = {
      {"sweep", "evaluate quantities on a (D, field, T) grid"},
      {"threshold", "temperature where a negativity vanishes"},
      {"husimi", "Husimi Q function on a (theta, phi) grid"},
      {"phase", "zero-temperature phase map"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    return execute(trimer::parse_command(sub->get_name()), o);
  } catch (const trimer::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const trimer::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const trimer::LinalgError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

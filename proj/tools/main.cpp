#include "entangledyn/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace es = entangledyn::scenario;

namespace {

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ENTANGLEDYN_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

int emit(const es::Table& table, const std::string& out_path, bool plot) {
  const std::string csv = es::to_csv(table);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 3;
    }
    f << csv;
  }
  if (plot) {
    const std::string csv_name = out_path.empty() ? "out.csv" : out_path;
    const std::string gp_path =
        (out_path.empty() ? std::string("out") : out_path) + ".gp";
    std::ofstream g(gp_path, std::ios::binary);
    if (!g) {
      std::cerr << "error: cannot write '" << gp_path << "'\n";
      return 3;
    }
    g << es::gnuplot_script(table, csv_name);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangledyn: atom-field entanglement dynamics"};
  app.require_subcommand(1);

  std::string config, out_path;
  bool plot = false;
  int workers = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "scenario config file (JSON)")
        ->required();
    sub->add_option("--out", out_path, "write CSV here instead of stdout");
    sub->add_flag("--plot-script", plot, "also emit a gnuplot script");
    sub->add_option("--workers", workers, "worker count for sweeps");
  };
  CLI::App* cmd_run = app.add_subcommand("run", "single time series");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "parameter sweep grid");
  CLI::App* cmd_poles = app.add_subcommand("poles", "pole/weight report");
  add_common(cmd_run);
  add_common(cmd_sweep);
  add_common(cmd_poles);

  CLI11_PARSE(app, argc, argv);

  try {
    const es::Scenario sc = es::parse_file(config);
    es::Table table;
    if (cmd_run->parsed())
      table = es::run(sc);
    else if (cmd_sweep->parsed())
      table = es::sweep(sc, resolve_workers(workers));
    else
      table = es::poles_report(sc);
    return emit(table, out_path, plot);
  } catch (const entangledyn::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const entangledyn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

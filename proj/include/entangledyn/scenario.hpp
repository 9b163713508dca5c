// scenario.hpp -- config-driven scenario runner behind the CLI
#pragma once

#include "types.hpp"

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace entangledyn::scenario {

enum class Model { Jcm, Multimode, Ladder, CavityLongtime, CavityPoles };
enum class Measure { Eoe, Ln, AbsU };

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int samples = 0;
};

struct SweepSpec {
  std::string parameter;            // key inside "params"
  std::vector<double> values;
};

struct Scenario {
  Model model;
  double r = 1.0, theta = 0.0, phi = 0.0; // initial Bloch vector
  nlohmann::json params;                  // model-specific block
  TimeGrid grid;
  std::vector<Measure> measures;
  std::optional<SweepSpec> sweep;
};

// Throws nlohmann::json::exception on malformed JSON structure and
// ValidationError on schema/invariant violations.
Scenario parse(const nlohmann::json& j);
Scenario parse_file(const std::string& path);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows; // pre-formatted cells
};

// canonical float formatting for CSV cells (17 significant digits)
std::string fmt(double x);

Table run(const Scenario& sc);
Table sweep(const Scenario& sc, int workers);
Table poles_report(const Scenario& sc);

std::string to_csv(const Table& table);
std::string gnuplot_script(const Table& table, const std::string& csv_path);

std::string measure_name(Measure m);

} // namespace entangledyn::scenario

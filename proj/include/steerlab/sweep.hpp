#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "steerlab/measures.hpp"
#include "steerlab/steady_state.hpp"

// Parameter sweeps over a one-dimensional grid, with CSV, JSON and SVG
// emission. Sweeps are embarrassingly parallel; results are deterministic
// and independent of the worker count.

namespace steerlab {

enum class SweepAxis { Squeezing, Thermal1 };   // config names "r", "nth1"
enum class Engine { Analytic, Numeric, Both };
enum class OutputFormat { Csv, Json, Svg };

struct SweepSpec {
  SweepAxis axis = SweepAxis::Squeezing;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  double c1 = 0.0;
  double c2 = 0.0;
  double nth1 = 0.0;
  double nth2 = 0.0;
  double r = 0.0;
  double tau = 1.0;
  Engine engine = Engine::Analytic;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // output path; empty or "-" means stdout
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line);
  int line() const { return line_; }

private:
  int line_;
};

// Line-oriented config: optional [sweep] section header, key=value pairs,
// '#' comments. Unknown keys, duplicates, malformed values, a fixed value
// for the swept axis, or missing required keys raise ParseError with the
// offending line number.
SweepSpec parse_config(std::istream& in);
SweepSpec parse_config_file(const std::string& path);

std::vector<std::string> preset_names();

// Bundled parameter presets fig2a..fig2d (squeezing sweeps) and
// fig3a..fig3d (thermal sweeps). Unknown names throw std::invalid_argument.
SweepSpec figure_preset(const std::string& name);

struct OutputRow {
  double axis_value;
  double v1;
  double v2;
  double v12;
  double g_ab;
  double g_ba;
  double g_delta;
  double e2;
  SteeringClass direction;
  Engine engine;
  // Engine::Both only: max relative deviation between the engines.
  double engine_deviation;
};

// workers <= 0 selects STEERLAB_WORKERS from the environment if set,
// otherwise the hardware concurrency.
int resolve_workers(int requested);

// Rows in ascending axis order, one per grid point. Engine::Both reports
// the analytic values and records the cross-engine deviation. A failure at
// any grid point aborts with the offending axis value in the message.
std::vector<OutputRow> run_sweep(const SweepSpec& spec, int workers = 0);

std::string format_csv(const std::vector<OutputRow>& rows);
std::string format_json(const std::vector<OutputRow>& rows);
std::string format_svg(const std::vector<OutputRow>& rows, const SweepSpec& spec);

void emit_csv(const std::vector<OutputRow>& rows, const std::string& path);
void emit_json(const std::vector<OutputRow>& rows, const std::string& path);
void emit_svg(const std::vector<OutputRow>& rows, const SweepSpec& spec,
              const std::string& path);

// Dispatches on spec.format and spec.out.
void emit_output(const std::vector<OutputRow>& rows, const SweepSpec& spec);

const char* to_string(Engine e);
const char* to_string(SweepAxis a);

}  // namespace steerlab

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "steerlab/measures.hpp"
#include "steerlab/steady_state.hpp"
#include "steerlab/sweep.hpp"

namespace {

steerlab::Engine parse_engine(const std::string& name) {
  if (name == "analytic") return steerlab::Engine::Analytic;
  if (name == "numeric") return steerlab::Engine::Numeric;
  if (name == "both") return steerlab::Engine::Both;
  throw std::invalid_argument("engine must be analytic, numeric or both, got '" + name + "'");
}

steerlab::OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return steerlab::OutputFormat::Csv;
  if (name == "json") return steerlab::OutputFormat::Json;
  if (name == "svg") return steerlab::OutputFormat::Svg;
  throw std::invalid_argument("format must be csv, json or svg, got '" + name + "'");
}

int run_compute(const steerlab::ModelPoint& pt, const std::string& engine_name) {
  using namespace steerlab;
  const Engine engine = parse_engine(engine_name);

  TwoModeStandardForm sf;
  double deviation = -1.0;
  if (engine == Engine::Analytic) {
    sf = analytic_mechanical_cm(pt);
  } else if (engine == Engine::Numeric) {
    sf = numeric_mechanical_cm(pt).standard_form;
  } else {
    sf = analytic_mechanical_cm(pt);
    deviation = cross_validate(pt).max_rel_deviation;
  }
  const SteeringReport rep = analyze_state(sf);

  std::printf("point: c1=%.15g c2=%.15g nth1=%.15g nth2=%.15g r=%.15g tau=%.15g\n", pt.c1, pt.c2,
              pt.nth1, pt.nth2, pt.r, pt.tau);
  std::printf("engine: %s\n", to_string(engine));
  std::printf("v1        = %.15g\n", sf.a);
  std::printf("v2        = %.15g\n", sf.b);
  std::printf("v12       = %.15g\n", sf.c_plus);
  std::printf("G(A->B)   = %.15g\n", rep.g_ab);
  std::printf("G(B->A)   = %.15g\n", rep.g_ba);
  std::printf("asymmetry = %.15g\n", rep.asymmetry);
  std::printf("E2        = %.15g\n", rep.e2);
  std::printf("class     = %s\n", to_string(rep.direction));
  std::printf("det_cross = %.15g\n", rep.det_cross);
  if (deviation >= 0.0) std::printf("cross-engine deviation = %.3e\n", deviation);
  return 0;
}

int run_validate(const std::string& preset, int workers) {
  using namespace steerlab;
  std::vector<std::string> targets;
  if (preset == "all") targets = preset_names();
  else targets.push_back(preset);

  bool all_pass = true;
  for (const std::string& name : targets) {
    SweepSpec spec = figure_preset(name);
    spec.engine = Engine::Both;
    double worst = 0.0;
    for (const OutputRow& row : run_sweep(spec, workers))
      worst = std::max(worst, row.engine_deviation);
    const bool pass = worst <= 1e-8;
    all_pass = all_pass && pass;
    std::printf("%s: max cross-engine deviation %.3e  %s\n", name.c_str(), worst,
                pass ? "PASS" : "FAIL");
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steerlab: steady-state quantum correlations of two mirrors in "
               "squeezed-light-driven cavities"};
  app.require_subcommand(1);

  steerlab::ModelPoint pt{};
  std::string engine_name = "analytic";
  CLI::App* compute = app.add_subcommand(
      "compute", "Steering and entanglement measures at one operating point");
  compute->add_option("--c1", pt.c1, "cooperativity, cavity 1")->required();
  compute->add_option("--c2", pt.c2, "cooperativity, cavity 2")->required();
  compute->add_option("--nth1", pt.nth1, "thermal occupation, mirror 1")->required();
  compute->add_option("--nth2", pt.nth2, "thermal occupation, mirror 2")->required();
  compute->add_option("--r", pt.r, "drive squeeze parameter")->required();
  compute->add_option("--tau", pt.tau, "gamma_m / kappa_c")->required();
  compute->add_option("--engine", engine_name, "analytic, numeric or both");

  std::string config_path, out_override;
  int workers = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
  sweep->add_option("--config", config_path, "line-oriented key=value config")->required();
  sweep->add_option("--out", out_override, "output path override ('-' for stdout)");
  sweep->add_option("--workers", workers, "worker thread count (else STEERLAB_WORKERS or cores)");

  std::string preset_name, fig_engine, fig_format, fig_out;
  CLI::App* figure = app.add_subcommand(
      "figure", "Run a bundled preset sweep (fig2a..fig2d: squeezing 0..3, 301 points; "
                "fig3a..fig3d: mirror-1 occupation 0..10, 201 points; the grid ranges are "
                "defaults of this tool, not physically mandated)");
  figure->add_option("name", preset_name, "preset name, fig2a..fig3d")->required();
  figure->add_option("--out", fig_out, "output path ('-' or empty for stdout)");
  figure->add_option("--engine", fig_engine, "analytic, numeric or both");
  figure->add_option("--format", fig_format, "csv, json or svg");
  figure->add_option("--workers", workers, "worker thread count");

  std::string validate_preset = "all";
  CLI::App* validate = app.add_subcommand(
      "validate", "Cross-check the closed-form covariances against the Lyapunov solver");
  validate->add_option("--preset", validate_preset, "preset name or 'all'");
  validate->add_option("--workers", workers, "worker thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (compute->parsed()) return run_compute(pt, engine_name);
    if (sweep->parsed()) {
      steerlab::SweepSpec spec = steerlab::parse_config_file(config_path);
      if (!out_override.empty()) spec.out = out_override;
      steerlab::emit_output(steerlab::run_sweep(spec, workers), spec);
      return 0;
    }
    if (figure->parsed()) {
      steerlab::SweepSpec spec = steerlab::figure_preset(preset_name);
      if (!fig_engine.empty()) spec.engine = parse_engine(fig_engine);
      if (!fig_format.empty()) spec.format = parse_format(fig_format);
      spec.out = fig_out;
      steerlab::emit_output(steerlab::run_sweep(spec, workers), spec);
      return 0;
    }
    if (validate->parsed()) return run_validate(validate_preset, workers);
  } catch (const steerlab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

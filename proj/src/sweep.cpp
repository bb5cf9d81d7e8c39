#include "steerlab/sweep.hpp"

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace steerlab {

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& key, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError("malformed number '" + text + "' for key '" + key + "'", line);
  return v;
}

int parse_int(const std::string& text, const std::string& key, int line) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || v > 1000000000L)
    throw ParseError("malformed integer '" + text + "' for key '" + key + "'", line);
  return static_cast<int>(v);
}

struct RawConfig {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
};

const char* const kKnownKeys[] = {"axis", "lo",   "hi", "points", "c1",  "c2",
                                  "nth1", "nth2", "r",  "tau",    "engine", "format", "out"};

bool known_key(const std::string& k) {
  for (const char* known : kKnownKeys)
    if (k == known) return true;
  return false;
}

void check_spec(const SweepSpec& spec, const RawConfig* raw) {
  // With a raw config available, errors carry the offending line.
  const auto fail = [&](const std::string& msg, const char* key) {
    if (raw) {
      auto it = raw->lines.find(key);
      throw ParseError(msg, it == raw->lines.end() ? 0 : it->second);
    }
    throw std::invalid_argument("SweepSpec: " + msg);
  };
  if (spec.points < 2) fail("points must be at least 2", "points");
  if (!(spec.lo < spec.hi)) fail("lo must be strictly below hi", "lo");
  if (spec.lo < 0.0) fail("lo must be nonnegative", "lo");
  if (spec.c1 < 0.0) fail("c1 must be nonnegative", "c1");
  if (spec.c2 < 0.0) fail("c2 must be nonnegative", "c2");
  if (spec.nth1 < 0.0) fail("nth1 must be nonnegative", "nth1");
  if (spec.nth2 < 0.0) fail("nth2 must be nonnegative", "nth2");
  if (spec.r < 0.0) fail("r must be nonnegative", "r");
  if (!(spec.tau > 0.0)) fail("tau must be positive", "tau");
}

}  // namespace

ParseError::ParseError(const std::string& msg, int line)
    : std::runtime_error("config line " + std::to_string(line) + ": " + msg), line_(line) {}

SweepSpec parse_config(std::istream& in) {
  RawConfig raw;
  std::string line;
  int lineno = 0;
  bool seen_section = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body != "[sweep]") throw ParseError("unknown section '" + body + "'", lineno);
      if (seen_section) throw ParseError("duplicate [sweep] section", lineno);
      seen_section = true;
      continue;
    }
    const size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + body + "'", lineno);
    const std::string key = trimmed(body.substr(0, eq));
    const std::string value = trimmed(body.substr(eq + 1));
    if (!known_key(key)) throw ParseError("unknown key '" + key + "'", lineno);
    if (value.empty()) throw ParseError("empty value for key '" + key + "'", lineno);
    if (raw.values.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
    raw.values[key] = value;
    raw.lines[key] = lineno;
  }

  // Malformed values are reported before missing keys; they carry a line.
  for (const char* key : {"lo", "hi", "c1", "c2", "nth1", "nth2", "r", "tau"})
    if (auto it = raw.values.find(key); it != raw.values.end())
      parse_double(it->second, key, raw.lines.at(key));
  if (auto it = raw.values.find("points"); it != raw.values.end())
    parse_int(it->second, "points", raw.lines.at("points"));

  const auto require = [&](const char* key) -> const std::string& {
    auto it = raw.values.find(key);
    if (it == raw.values.end()) throw ParseError(std::string("missing key '") + key + "'", 0);
    return it->second;
  };
  const auto forbid = [&](const char* key) {
    auto it = raw.values.find(key);
    if (it != raw.values.end())
      throw ParseError(std::string("key '") + key + "' conflicts with the swept axis",
                       raw.lines.at(key));
  };

  SweepSpec spec;
  const std::string& axis = require("axis");
  if (axis == "r") {
    spec.axis = SweepAxis::Squeezing;
    forbid("r");
    spec.nth1 = parse_double(require("nth1"), "nth1", raw.lines["nth1"]);
    spec.nth2 = parse_double(require("nth2"), "nth2", raw.lines["nth2"]);
  } else if (axis == "nth1") {
    spec.axis = SweepAxis::Thermal1;
    forbid("nth1");
    spec.r = parse_double(require("r"), "r", raw.lines["r"]);
    spec.nth2 = parse_double(require("nth2"), "nth2", raw.lines["nth2"]);
  } else {
    throw ParseError("axis must be 'r' or 'nth1', got '" + axis + "'", raw.lines["axis"]);
  }
  spec.lo = parse_double(require("lo"), "lo", raw.lines["lo"]);
  spec.hi = parse_double(require("hi"), "hi", raw.lines["hi"]);
  spec.points = parse_int(require("points"), "points", raw.lines["points"]);
  spec.c1 = parse_double(require("c1"), "c1", raw.lines["c1"]);
  spec.c2 = parse_double(require("c2"), "c2", raw.lines["c2"]);
  spec.tau = parse_double(require("tau"), "tau", raw.lines["tau"]);

  if (auto it = raw.values.find("engine"); it != raw.values.end()) {
    if (it->second == "analytic") spec.engine = Engine::Analytic;
    else if (it->second == "numeric") spec.engine = Engine::Numeric;
    else if (it->second == "both") spec.engine = Engine::Both;
    else throw ParseError("engine must be analytic, numeric or both", raw.lines["engine"]);
  }
  if (auto it = raw.values.find("format"); it != raw.values.end()) {
    if (it->second == "csv") spec.format = OutputFormat::Csv;
    else if (it->second == "json") spec.format = OutputFormat::Json;
    else if (it->second == "svg") spec.format = OutputFormat::Svg;
    else throw ParseError("format must be csv, json or svg", raw.lines["format"]);
  }
  if (auto it = raw.values.find("out"); it != raw.values.end()) spec.out = it->second;

  check_spec(spec, &raw);
  return spec;
}

SweepSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d"};
}

SweepSpec figure_preset(const std::string& name) {
  SweepSpec spec;
  spec.tau = 140.0 / 215000.0;
  if (name.rfind("fig2", 0) == 0) {
    spec.axis = SweepAxis::Squeezing;
    spec.lo = 0.0;
    spec.hi = 3.0;
    spec.points = 301;
    spec.c1 = 35.0;
    spec.c2 = 15.0;
    if (name == "fig2a") { spec.nth1 = 2.0; spec.nth2 = 0.5; return spec; }
    if (name == "fig2b") { spec.nth1 = 0.5; spec.nth2 = 2.0; return spec; }
    if (name == "fig2c") { spec.nth1 = 1.0; spec.nth2 = 2.0; return spec; }
    if (name == "fig2d") { spec.nth1 = 1.0; spec.nth2 = 5.0; return spec; }
  } else if (name.rfind("fig3", 0) == 0) {
    spec.axis = SweepAxis::Thermal1;
    spec.lo = 0.0;
    spec.hi = 10.0;
    spec.points = 201;
    spec.c1 = 35.0;
    spec.c2 = 25.0;
    if (name == "fig3a") { spec.r = 0.5; spec.nth2 = 0.1; return spec; }
    if (name == "fig3b") { spec.r = 0.5; spec.nth2 = 15.0; return spec; }
    if (name == "fig3c") { spec.r = 0.05; spec.nth2 = 0.01; return spec; }
    if (name == "fig3d") { spec.r = 0.05; spec.nth2 = 1.5; return spec; }
  }
  std::string known;
  for (const std::string& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STEERLAB_WORKERS")) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || errno == ERANGE || v < 1 || v > 4096)
      throw std::invalid_argument("STEERLAB_WORKERS must be a positive integer, got '" +
                                  std::string(env) + "'");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

double grid_value(const SweepSpec& spec, int i) {
  if (i == spec.points - 1) return spec.hi;
  return spec.lo + (spec.hi - spec.lo) * i / (spec.points - 1);
}

double form_deviation(const TwoModeStandardForm& x, const TwoModeStandardForm& ref) {
  const auto dev = [](double v, double r) { return std::abs(v - r) / std::max(1.0, std::abs(r)); };
  return std::max(std::max(dev(x.a, ref.a), dev(x.b, ref.b)),
                  std::max(dev(x.c_plus, ref.c_plus), dev(x.c_minus, ref.c_minus)));
}

OutputRow evaluate_point(const SweepSpec& spec, int i) {
  ModelPoint pt{spec.c1, spec.c2, spec.nth1, spec.nth2, spec.r, spec.tau};
  const double x = grid_value(spec, i);
  (spec.axis == SweepAxis::Squeezing ? pt.r : pt.nth1) = x;

  TwoModeStandardForm sf;
  double deviation = 0.0;
  switch (spec.engine) {
    case Engine::Analytic: sf = analytic_mechanical_cm(pt); break;
    case Engine::Numeric: sf = numeric_mechanical_cm(pt).standard_form; break;
    case Engine::Both: {
      sf = analytic_mechanical_cm(pt);
      deviation = form_deviation(numeric_mechanical_cm(pt).standard_form, sf);
      break;
    }
  }
  const SteeringReport rep = analyze_state(sf);
  return {x,         sf.a,   sf.b, sf.c_plus, rep.g_ab,      rep.g_ba,
          rep.asymmetry, rep.e2, rep.direction, spec.engine, deviation};
}

}  // namespace

std::vector<OutputRow> run_sweep(const SweepSpec& spec, int workers) {
  check_spec(spec, nullptr);
  const int n = spec.points;
  std::vector<OutputRow> rows(static_cast<size_t>(n));
  const int nworkers = std::min(resolve_workers(workers), n);

  std::atomic<int> next{0};
  std::mutex fail_mutex;
  int fail_index = -1;
  std::string fail_message;
  const auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        rows[static_cast<size_t>(i)] = evaluate_point(spec, i);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(fail_mutex);
        if (fail_index < 0 || i < fail_index) {
          fail_index = i;
          fail_message = e.what();
        }
      }
    }
  };

  if (nworkers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
  }

  if (fail_index >= 0)
    throw std::runtime_error("sweep failed at " + std::string(to_string(spec.axis)) + " = " +
                             fmt_g(grid_value(spec, fail_index)) + ": " + fail_message);
  return rows;
}

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Numeric: return "numeric";
    case Engine::Both: return "both";
  }
  return "?";
}

const char* to_string(SweepAxis a) {
  return a == SweepAxis::Squeezing ? "r" : "nth1";
}

std::string format_csv(const std::vector<OutputRow>& rows) {
  std::string out = "axis,v1,v2,v12,g_ab,g_ba,g_delta,e2,class,engine\n";
  char buf[256];
  for (const OutputRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%s,%s\n",
                  r.axis_value, r.v1, r.v2, r.v12, r.g_ab, r.g_ba, r.g_delta, r.e2,
                  to_string(r.direction), to_string(r.engine));
    out += buf;
  }
  return out;
}

std::string format_json(const std::vector<OutputRow>& rows) {
  std::string out = "[\n";
  char buf[384];
  for (size_t i = 0; i < rows.size(); ++i) {
    const OutputRow& r = rows[i];
    std::snprintf(buf, sizeof buf,
                  "  {\"axis\": %.12g, \"v1\": %.12g, \"v2\": %.12g, \"v12\": %.12g, "
                  "\"g_ab\": %.12g, \"g_ba\": %.12g, \"g_delta\": %.12g, \"e2\": %.12g, "
                  "\"class\": \"%s\", \"engine\": \"%s\"",
                  r.axis_value, r.v1, r.v2, r.v12, r.g_ab, r.g_ba, r.g_delta, r.e2,
                  to_string(r.direction), to_string(r.engine));
    out += buf;
    if (r.engine == Engine::Both) {
      std::snprintf(buf, sizeof buf, ", \"engine_deviation\": %.12g", r.engine_deviation);
      out += buf;
    }
    out += i + 1 < rows.size() ? "},\n" : "}\n";
  }
  out += "]\n";
  return out;
}

namespace {

struct Curve {
  const char* label;
  const char* color;
  const char* dash;  // nullptr for solid
  double OutputRow::*field;
};

constexpr Curve kCurves[] = {
    {"G(A-&gt;B)", "#d62728", nullptr, &OutputRow::g_ab},
    {"G(B-&gt;A)", "#2ca02c", nullptr, &OutputRow::g_ba},
    {"asymmetry", "#1f77b4", "7 4", &OutputRow::g_delta},
    {"E2", "#e0a800", nullptr, &OutputRow::e2},
};

}  // namespace

std::string format_svg(const std::vector<OutputRow>& rows, const SweepSpec& spec) {
  if (rows.empty()) throw std::invalid_argument("format_svg: no rows");
  constexpr double x0 = 70, x1 = 770, y0 = 450, y1 = 30;  // plot area, y up
  const double axis_lo = rows.front().axis_value;
  const double axis_hi = rows.back().axis_value;
  const double axis_span = axis_hi > axis_lo ? axis_hi - axis_lo : 1.0;
  double ymax = 0.0;
  for (const OutputRow& r : rows)
    for (const Curve& c : kCurves) ymax = std::max(ymax, r.*(c.field));
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;

  const auto px = [&](double x) { return x0 + (x - axis_lo) / axis_span * (x1 - x0); };
  const auto py = [&](double y) { return y0 - y / ymax * (y0 - y1); };

  std::string out;
  char buf[256];
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "font-family=\"sans-serif\" font-size=\"14\">\n";
  out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                x0, y0, x1, y0);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                x0, y0, x0, y1);
  out += buf;

  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.6g</text>\n",
                x0, y0 + 20, axis_lo);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.6g</text>\n",
                x1, y0 + 20, axis_hi);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%s</text>\n",
                0.5 * (x0 + x1), y0 + 40, to_string(spec.axis));
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.6g</text>\n",
                x0 - 8, y1 + 5, ymax);
  out += buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">0</text>\n",
                x0 - 8, y0 + 5);
  out += buf;

  for (const Curve& c : kCurves) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += c.color;
    out += "\" stroke-width=\"2\"";
    if (c.dash) {
      out += " stroke-dasharray=\"";
      out += c.dash;
      out += "\"";
    }
    out += " points=\"";
    for (const OutputRow& r : rows) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r.axis_value), py(r.*(c.field)));
      out += buf;
    }
    out += "\"/>\n";
  }

  double ly = y1 + 15;
  for (const Curve& c : kCurves) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                  "stroke-width=\"2\"%s%s%s/>\n",
                  x1 - 120.0, ly, x1 - 90.0, ly, c.color, c.dash ? " stroke-dasharray=\"" : "",
                  c.dash ? c.dash : "", c.dash ? "\"" : "");
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\">%s</text>\n", x1 - 82.0, ly + 5,
                  c.label);
    out += buf;
    ly += 22;
  }
  out += "</svg>\n";
  return out;
}

namespace {

void write_text(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace

void emit_csv(const std::vector<OutputRow>& rows, const std::string& path) {
  write_text(format_csv(rows), path);
}

void emit_json(const std::vector<OutputRow>& rows, const std::string& path) {
  write_text(format_json(rows), path);
}

void emit_svg(const std::vector<OutputRow>& rows, const SweepSpec& spec, const std::string& path) {
  write_text(format_svg(rows, spec), path);
}

void emit_output(const std::vector<OutputRow>& rows, const SweepSpec& spec) {
  switch (spec.format) {
    case OutputFormat::Csv: emit_csv(rows, spec.out); break;
    case OutputFormat::Json: emit_json(rows, spec.out); break;
    case OutputFormat::Svg: emit_svg(rows, spec, spec.out); break;
  }
}

}  // namespace steerlab

#include "realmut/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "realmut/errors.hpp"
#include "realmut/export.hpp"
#include "realmut/levelset.hpp"
#include "realmut/matrix_mutation.hpp"
#include "realmut/orbit.hpp"
#include "realmut/params.hpp"
#include "realmut/render.hpp"
#include "realmut/scan_config.hpp"
#include "realmut/tropical.hpp"
#include "realmut/verify.hpp"

namespace realmut {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<double> p;
  std::optional<double> q;
  std::optional<std::size_t> steps;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;
  std::optional<double> tol;
  double x0 = 1.0;
  double y0 = 1.0;
  double s0 = 1.0;
  double t0 = 0.0;
};

Params require_params(const GlobalOptions& g) {
  if (!g.p) throw UsageError("--p is required");
  if (!g.q) throw UsageError("--q is required");
  return Params(*g.p, *g.q);
}

Tolerances eq_tolerances(const GlobalOptions& g) {
  Tolerances d;
  return g.tol ? Tolerances(*g.tol, d.period_tol(), d.jac_step()) : d;
}

void require_format(const std::string& format,
                    std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("--format " + format + " is not supported by this command");
}

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open " + g.out_path);
  file << text;
}

std::string render_orbit(const GlobalOptions& g, const Orbit& orbit) {
  if (g.format == "json") return export_json(orbit);
  if (g.format == "svg") return render_svg(orbit);
  return export_csv(orbit);
}

std::vector<MatrixRow> parse_rows(const std::string& spec) {
  std::vector<MatrixRow> rows;
  std::stringstream all(spec);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    std::replace(item.begin(), item.end(), ',', ' ');
    std::istringstream pair(item);
    MatrixRow r{};
    std::string rest;
    if (!(pair >> r[0] >> r[1]) || (pair >> rest)) {
      throw UsageError("--rows: expected 'a,b;a,b;...' but got '" + item + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

std::string scan_csv(const ScanTable& table) {
  std::string out = "i,j,p,q,verdict,value\n";
  for (const auto& c : table.cells) {
    out += std::to_string(c.i) + "," + std::to_string(c.j) + "," + format_double(c.p) +
           "," + format_double(c.q) + "," + verdict_name(c.verdict) + "," +
           format_double(verdict_value(c.verdict)) + "\n";
  }
  return out;
}

std::string levelset_csv(const std::vector<Polyline>& lines) {
  std::string out = "piece,index,s,t\n";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    for (std::size_t i = 0; i < lines[k].size(); ++i) {
      out += std::to_string(k) + "," + std::to_string(i) + "," +
             format_double(lines[k][i][0]) + "," + format_double(lines[k][i][1]) + "\n";
    }
  }
  return out;
}

std::string levelset_json(const Params& params, double c,
                          const std::vector<Polyline>& lines) {
  std::string out = "{\"params\":{\"p\":" + format_double(params.p()) +
                    ",\"q\":" + format_double(params.q()) +
                    "},\"c\":" + format_double(c) + ",\"pieces\":[";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k) out += ',';
    out += '[';
    for (std::size_t i = 0; i < lines[k].size(); ++i) {
      if (i) out += ',';
      out += "[" + format_double(lines[k][i][0]) + "," + format_double(lines[k][i][1]) + "]";
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real-parameter mutation dynamics: orbits, periods, scans, level sets"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--p", g.p, "Exchange parameter p > 0");
  app.add_option("--q", g.q, "Exchange parameter q > 0");
  app.add_option("--steps", g.steps, "Number of iterations");
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", g.out_path, "Write output to PATH instead of stdout");
  app.add_option("--tol", g.tol, "Comparison tolerance of the command");
  app.add_option("--x0", g.x0, "Rational start x (default 1)");
  app.add_option("--y0", g.y0, "Rational start y (default 1)");
  app.add_option("--s0", g.s0, "Tropical start s (default 1)");
  app.add_option("--t0", g.t0, "Tropical start t (default 0)");

  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate the rational map");
  auto* trop_cmd = app.add_subcommand("trop-orbit", "Iterate the tropical map");

  auto* period_cmd = app.add_subcommand("period", "Detect the period of a tropical orbit");
  std::optional<long> m_opt;
  period_cmd->add_option("--m", m_opt, "Use q = 4cos^2(pi/m)/p")->check(CLI::Range(3L, 1000000L));

  auto* scan_cmd = app.add_subcommand("scan", "Classify orbit growth over a (p, q) grid");
  std::string config_path;
  std::optional<double> p_min, p_max, q_min, q_max;
  std::optional<std::size_t> resolution;
  std::string kind_name = "rational";
  std::size_t starts = 4;
  unsigned threads = 0;
  scan_cmd->add_option("--config", config_path, "key = value configuration file");
  scan_cmd->add_option("--p-min", p_min);
  scan_cmd->add_option("--p-max", p_max);
  scan_cmd->add_option("--q-min", q_min);
  scan_cmd->add_option("--q-max", q_max);
  scan_cmd->add_option("--resolution", resolution);
  scan_cmd->add_option("--kind", kind_name)->check(CLI::IsMember({"rational", "tropical"}));
  scan_cmd->add_option("--starts", starts, "Random starts per cell")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* level_cmd = app.add_subcommand("levelset", "Sample a level curve of phi");
  double level_c = 1.0;
  int samples = 128;
  std::optional<double> extent;
  level_cmd->add_option("--c", level_c, "Level value c > 0");
  level_cmd->add_option("--samples", samples, "Samples per conic piece (>= 2)");
  level_cmd->add_option("--extent", extent, "Sup-norm clip for unbounded pieces");

  auto* class_cmd = app.add_subcommand("matclass", "Enumerate a mutation class");
  std::string rows_spec = "1,0";
  std::size_t cap = kDefaultClassCap;
  class_cmd->add_option("--rows", rows_spec, "Coefficient rows 'a,b;a,b;...'");
  class_cmd->add_option("--cap", cap, "Maximum number of matrices")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*orbit_cmd || *trop_cmd) {
      const Params params = require_params(g);
      const bool trop = static_cast<bool>(*trop_cmd);
      const Coords start = trop ? Coords{g.s0, g.t0} : Coords{g.x0, g.y0};
      const Orbit orbit = iterate_orbit(params, trop ? OrbitKind::Tropical : OrbitKind::Rational,
                                        start, g.steps.value_or(100));
      emit(g, render_orbit(g, orbit), out);
      if (orbit.truncation) {
        err << "orbit truncated at step " << orbit.truncation->step << ": "
            << orbit.truncation->reason << "\n";
        return kExitRange;
      }
      return kExitOk;
    }

    if (*period_cmd) {
      if (!g.p) throw UsageError("--p is required");
      if (m_opt && g.q) throw UsageError("--m and --q are mutually exclusive");
      if (!m_opt && !g.q) throw UsageError("--q or --m is required");
      const Params params(*g.p, m_opt ? q_for_m(*g.p, *m_opt) : *g.q);
      Tolerances d;
      const Tolerances tol(d.eq_tol(), g.tol.value_or(d.period_tol()), d.jac_step());
      const auto period = detect_period(params, PointPL(g.s0, g.t0),
                                        static_cast<int>(g.steps.value_or(1000)), tol);
      emit(g, (period ? std::to_string(*period) : std::string("none")) + "\n", out);
      return kExitOk;
    }

    if (*scan_cmd) {
      require_format(g.format, {"csv", "json"});
      ScanConfig cfg;
      if (!config_path.empty()) cfg = load_scan_config(config_path, cfg);
      if (p_min) cfg.p_min = *p_min;
      if (p_max) cfg.p_max = *p_max;
      if (q_min) cfg.q_min = *q_min;
      if (q_max) cfg.q_max = *q_max;
      if (resolution) cfg.resolution = *resolution;
      if (g.steps) cfg.steps = *g.steps;
      if (app.count("--seed")) cfg.seed = g.seed;
      const OrbitKind kind = kind_name == "tropical" ? OrbitKind::Tropical : OrbitKind::Rational;
      RandomStarts policy;
      policy.count = starts;
      policy.seed = cfg.seed;
      if (kind == OrbitKind::Tropical) policy.first = policy.second = Range{-2.0, 2.0};
      const ScanTable table = scan_grid({cfg.p_min, cfg.p_max}, {cfg.q_min, cfg.q_max},
                                        cfg.resolution, kind, cfg.steps, policy, threads);
      emit(g, g.format == "json" ? export_json(table) : scan_csv(table), out);
      return kExitOk;
    }

    if (*level_cmd) {
      const Params params = require_params(g);
      if (!app.count("--format")) g.format = "svg";
      const auto lines = levelset_points(params, level_c, samples, extent, eq_tolerances(g));
      if (g.format == "svg") {
        emit(g, render_svg(lines), out);
      } else if (g.format == "json") {
        emit(g, levelset_json(params, level_c, lines), out);
      } else {
        emit(g, levelset_csv(lines), out);
      }
      return kExitOk;
    }

    if (*class_cmd) {
      require_format(g.format, {"csv", "json"});
      const Params params = require_params(g);
      const auto mat = ExtendedExchangeMatrix::b_form(params, parse_rows(rows_spec));
      const auto result = mutation_class(mat, g.tol.value_or(kDefaultClassTol), cap);
      if (g.format == "json" || !app.count("--format")) {
        emit(g, export_json(result), out);
      } else {
        emit(g, "size,complete,stop\n" + std::to_string(result.matrices.size()) + "," +
                    (result.complete ? "true" : "false") + "," + to_string(result.stop) + "\n",
             out);
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      std::ostringstream report;
      const bool ok = run_property_suites(report, g.seed);
      emit(g, report.str(), out);
      return ok ? kExitOk : kExitUsage;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << "\n";
    return kExitRange;
  } catch (const std::range_error& e) {
    err << "range error: " << e.what() << "\n";
    return kExitRange;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(args, out, err);
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace realmut

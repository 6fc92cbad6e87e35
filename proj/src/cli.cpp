#include "bdim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdim/error.hpp"
#include "bdim/io.hpp"
#include "bdim/pressure.hpp"

namespace bdim {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string config;
  std::optional<double> alpha;
  std::optional<double> alpha_from, alpha_to;
  int steps = 21;
  int depth = 8;
  double tol = 1e-10;
  int jobs = 1;
  std::string out;
  std::string cache;
  bool no_warm_start = false;
  std::string word;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions s;
  s.execution = c.jobs == 1 ? Execution::serial : Execution::parallel;
  s.jobs = c.jobs;
  s.warm_start = !c.no_warm_start;
  s.orbit.tol = c.tol;
  return s;
}

void check_config(const RunConfig& c) {
  if (c.depth < 2) throw ParseError("--depth must be >= 2");
  if (!(c.tol > 0.0)) throw ParseError("--tol must be positive");
  if (c.jobs < 0) throw ParseError("--jobs must be >= 0");
}

double default_alpha(const BilliardTable& t) {
  return t.interval().contains(0.0, 0.0) ? 0.0 : t.interval().lo;
}

double pick_alpha(const RunConfig& c, const BilliardTable& t) {
  const double a = c.alpha.value_or(default_alpha(t));
  if (!t.interval().contains(a)) {
    std::ostringstream msg;
    msg << "--alpha " << a << " outside [" << t.interval().lo << ", " << t.interval().hi << "]";
    throw ParseError(msg.str());
  }
  return a;
}

std::shared_ptr<OrbitCache> open_cache(const RunConfig& c) {
  auto cache = std::make_shared<OrbitCache>();
  if (!c.cache.empty() && std::filesystem::exists(c.cache)) cache->load_jsonl(c.cache);
  return cache;
}

TableConfig load(const RunConfig& c, std::ostream& err) {
  TableConfig t = load_table(c.config);
  if (t.smoothness) {
    if (*t.smoothness < 3) {
      throw GeometryError("boundary smoothness r = " + std::to_string(*t.smoothness) +
                          " is below 3");
    }
    if (*t.smoothness == 3) {
      err << "warning: boundary smoothness r = 3; front derivatives assume r >= 4\n";
    }
  }
  return t;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TableConfig cfg = load(c, err);
  const BilliardTable& t = cfg.table;
  const AlphaInterval I = t.interval();
  std::vector<double> alphas;
  const int samples = I.hi > I.lo ? 9 : 1;
  for (int k = 0; k < samples; ++k) {
    alphas.push_back(samples == 1 ? I.lo : I.lo + (I.hi - I.lo) * k / (samples - 1.0));
  }

  bool pass = true;
  json js = json::array();
  NoEclipseReport worst;
  double worst_alpha = alphas.front();
  worst.min_distance = std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    const NoEclipseReport r = check_no_eclipse(t, a);
    pass = pass && r.pass;
    json e = no_eclipse_to_json(r);
    e["alpha"] = a;
    js.push_back(e);
    if (r.min_distance < worst.min_distance) {
      worst = r;
      worst_alpha = a;
    }
  }
  const DeformationConstants dc = deformation_constants(t, alphas, 256, 1.0);

  out << std::setprecision(10);
  out << "table: " << (cfg.name.empty() ? c.config : cfg.name) << '\n';
  out << "obstacles: " << t.size() << ", alpha in [" << I.lo << ", " << I.hi << "]\n";
  out << "deformed:";
  for (int i = 0; i < t.size(); ++i) {
    if (t.deformed(i)) out << ' ' << i + 1;
  }
  out << (t.deformed_count() == 0 ? " none" : "") << '\n';
  out << "no-eclipse: " << (pass ? "pass" : "FAIL") << '\n';
  out << "margin: " << worst.min_distance << " (obstacles " << worst.witness[0] << ","
      << worst.witness[1] << ";" << worst.witness[2] << " at alpha=" << worst_alpha << ")\n";
  out << "min pair distance: " << worst.min_pair_distance << '\n';
  out << "kappa_min=" << dc.kappa_min << '\n';
  out << "kappa_max=" << dc.kappa_max << '\n';
  for (int q = 0; q <= 3; ++q) {
    for (int qa = 0; qa <= 1; ++qa) {
      if (q + qa > 0) out << 'C' << q << qa << '=' << dc(q, qa) << (q == 3 && qa == 1 ? "\n" : " ");
    }
  }

  if (!c.out.empty()) {
    Output o(c.out, out);
    json j = {{"table", cfg.name},
              {"pass", pass},
              {"samples", js},
              {"deformation_constants", deformation_to_json(dc)}};
    *o << j.dump(2) << '\n';
  }
  if (!pass) {
    err << "no-eclipse condition fails: convex hull of obstacles " << worst.witness[0] << " and "
        << worst.witness[1] << " meets obstacle " << worst.witness[2] << " at alpha="
        << worst_alpha << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

int cmd_orbit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TableConfig cfg = load(c, err);
  const double a = pick_alpha(c, cfg.table);
  const CyclicWord w = parse_word(c.word);
  const TableAt at = cfg.table.at(a);
  auto cache = open_cache(c);
  SolveOptions s = solve_options(c);
  s.execution = Execution::serial;
  const std::vector<CyclicWord> words{w};
  const OrbitRecord r = solve_records(at, words, s, cache.get()).front();
  Output o(c.out, out);
  *o << record_to_json(r).dump(2) << '\n';
  if (!c.cache.empty()) cache->save_jsonl(c.cache);
  return kExitOk;
}

DimensionOptions dimension_options(const RunConfig& c) {
  DimensionOptions d;
  d.depth = c.depth;
  d.solve = solve_options(c);
  return d;
}

int cmd_dimension(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TableConfig cfg = load(c, err);
  const double a = pick_alpha(c, cfg.table);
  auto cache = open_cache(c);
  const DimensionReport rep = dimension_report(cfg.table, a, dimension_options(c), cache);
  json j = report_to_json(rep);
  j["table"] = cfg.name;
  j["no_eclipse"] = no_eclipse_to_json(check_no_eclipse(cfg.table, a));
  {
    Output o(c.out, out);
    *o << j.dump(2) << '\n';
  }
  if (!c.cache.empty()) cache->save_jsonl(c.cache);
  if (!rep.bracket_ok()) {
    err << "internal inconsistency: D = " << rep.D << " outside [" << rep.lower << ", "
        << rep.upper << "]\n";
    return kExitNumerical;
  }
  if (!rep.derivative_bound_ok()) {
    err << "internal inconsistency: |dD/dalpha| = " << std::abs(rep.dD_dalpha)
        << " exceeds its bound " << rep.dD_bound << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

std::string clean(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n') ch = ';';
  }
  return s;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const TableConfig cfg = load(c, err);
  const AlphaInterval I = cfg.table.interval();
  const double lo = c.alpha_from.value_or(I.lo), hi = c.alpha_to.value_or(I.hi);
  if (!I.contains(lo) || !I.contains(hi)) throw ParseError("sweep bounds must lie inside the table's alpha interval");
  if (hi < lo) throw ParseError("--alpha-from must not exceed --alpha-to");
  if (c.steps < 1 || (c.steps == 1 && hi > lo)) throw ParseError("--steps must be >= 2 for a nonempty range");

  auto cache = open_cache(c);
  const DimensionOptions opt = dimension_options(c);
  std::vector<SweepRow> rows(c.steps);
  int failures = 0, violations = 0;
  for (int i = 0; i < c.steps; ++i) {
    SweepRow& row = rows[i];
    row.alpha = c.steps == 1 ? lo : lo + (hi - lo) * i / (c.steps - 1.0);
    row.report.n = c.depth;
    try {
      row.report = dimension_report(cfg.table, row.alpha, opt, cache);
      row.ok = true;
      if (!row.report.bracket_ok() || !row.report.derivative_bound_ok()) {
        row.status = "bound-violated";
        ++violations;
      }
    } catch (const NumericalError& e) {
      row.status = "numerical-failure: " + clean(e.what());
      ++failures;
    } catch (const std::exception& e) {
      row.status = "invalid: " + clean(e.what());
      ++failures;
    }
    if (c.cache.empty()) cache->clear_records();
  }
  fill_finite_differences(rows);
  {
    Output o(c.out, out);
    std::ostringstream head;
    head << "alpha sweep of " << (cfg.name.empty() ? c.config : cfg.name) << ", depth " << c.depth
         << ", " << c.steps << " points\n"
         << "Du: unstable dimension; D = 2 Du; lower/upper: bracket from pool extremes\n"
         << "dD_danalytic: Gibbs-integral derivative; dD_dfinite: grid differences of D\n"
         << "delta_n: |D(n) - D(n-2)|; dD_bound: derivative bound";
    write_sweep_csv(*o, rows, head.str());
  }
  if (!c.cache.empty()) cache->save_jsonl(c.cache);
  if (failures) err << failures << " sweep point(s) failed; see the status column\n";
  if (violations) {
    err << violations << " sweep point(s) violate a bound\n";
    return kExitNumerical;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--config", c.config, "table JSON file")->required();
  sub->add_option("--tol", c.tol, "orbit gradient tolerance");
  sub->add_option("--jobs", c.jobs, "worker threads (0: all cores)");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--cache", c.cache, "orbit cache, JSON lines");
  sub->add_flag("--no-warm-start", c.no_warm_start, "do not reuse cached parameters");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hausdorff dimension of open billiards and its derivative"};
  app.require_subcommand(1);
  RunConfig c;

  auto* validate = app.add_subcommand("validate", "check no-eclipse and convexity over I");
  add_common(validate, c);

  auto* orbit = app.add_subcommand("orbit", "solve one periodic orbit");
  add_common(orbit, c);
  orbit->add_option("--word", c.word, "comma-separated symbols, e.g. 1,2,3")->required();
  orbit->add_option("--alpha", c.alpha, "deformation parameter");

  auto* dimension = app.add_subcommand("dimension", "dimension report at one alpha");
  add_common(dimension, c);
  dimension->add_option("--alpha", c.alpha, "deformation parameter");
  dimension->add_option("--depth", c.depth, "cylinder depth n");

  auto* sweep = app.add_subcommand("sweep", "dimension over an alpha grid, CSV");
  add_common(sweep, c);
  sweep->add_option("--alpha-from", c.alpha_from, "first alpha");
  sweep->add_option("--alpha-to", c.alpha_to, "last alpha");
  sweep->add_option("--steps", c.steps, "number of grid points");
  sweep->add_option("--depth", c.depth, "cylinder depth n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    check_config(c);
    if (validate->parsed()) return cmd_validate(c, out, err);
    if (orbit->parsed()) return cmd_orbit(c, out, err);
    if (dimension->parsed()) return cmd_dimension(c, out, err);
    return cmd_sweep(c, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace bdim

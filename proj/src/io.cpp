#include "bdim/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bdim/error.hpp"

namespace bdim {

using nlohmann::json;

namespace {

Polynomial poly(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array() || j.empty()) {
    throw ParseError(std::string(what) + ": expected a nonempty array of coefficients");
  }
  Polynomial p;
  for (const auto& c : j) {
    if (!c.is_number()) throw ParseError(std::string(what) + ": coefficients must be numbers");
    p.push_back(c.get<double>());
  }
  return p;
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

CurveFamily obstacle_from_json(const json& j, int index) {
  const std::string where = "obstacle " + std::to_string(index);
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const std::string kind = field(j, "kind", where).get<std::string>();
  const json& center = field(j, "center", where);
  if (!center.is_array() || center.size() != 2) {
    throw ParseError(where + ": \"center\" must be [[cx...], [cy...]]");
  }
  Polynomial cx = poly(center[0], "center x"), cy = poly(center[1], "center y");

  std::optional<CurveFamily> c;
  if (kind == "circle") {
    c = CurveFamily::circle(cx, cy, poly(field(j, "radius", where), "radius"));
  } else if (kind == "ellipse") {
    const json& axes = field(j, "axes", where);
    if (!axes.is_array() || axes.size() != 2) throw ParseError(where + ": \"axes\" must be [[a...], [b...]]");
    Polynomial angle = j.contains("angle") ? poly(j["angle"], "angle") : Polynomial{0.0};
    c = CurveFamily::ellipse(cx, cy, poly(axes[0], "axis a"), poly(axes[1], "axis b"), angle);
  } else if (kind == "polar-harmonic") {
    std::vector<Polynomial> cs;
    if (j.contains("cos")) {
      if (!j["cos"].is_array()) throw ParseError(where + ": \"cos\" must be an array");
      for (const auto& p : j["cos"]) cs.push_back(poly(p, "cos coefficient"));
    }
    c = CurveFamily::polar_harmonic(cx, cy, poly(field(j, "base", where), "base"), cs);
  } else {
    throw ParseError(where + ": unknown kind \"" + kind + "\"");
  }
  if (j.contains("seam")) c = c->with_seam(j["seam"].get<double>());
  return *c;
}

json poly_json(const Polynomial& p) { return json(p); }

template <class T>
json vec(const std::vector<T>& v) {
  return json(v);
}

json points(const std::vector<Vec2>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back({p.x, p.y});
  return a;
}

}  // namespace

TableConfig table_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("table: expected a JSON object");
  try {
    const json& obs = field(j, "obstacles", "table");
    if (!obs.is_array()) throw ParseError("table: \"obstacles\" must be an array");
    std::vector<CurveFamily> curves;
    for (std::size_t i = 0; i < obs.size(); ++i) {
      curves.push_back(obstacle_from_json(obs[i], static_cast<int>(i) + 1));
    }
    AlphaInterval I;
    if (j.contains("alpha")) {
      I.lo = field(j["alpha"], "lo", "alpha").get<double>();
      I.hi = field(j["alpha"], "hi", "alpha").get<double>();
      if (I.lo > I.hi) throw ParseError("alpha: lo > hi");
    }
    const bool multiple = j.value("allow_multiple_deformed", false);
    TableConfig cfg{BilliardTable(std::move(curves), I, multiple), std::nullopt,
                    j.value("name", std::string())};
    if (j.contains("deformed")) {
      const int i = j["deformed"].get<int>();
      if (i < 1 || i > cfg.table.size()) throw ParseError("\"deformed\" index out of range");
      for (int k = 0; k < cfg.table.size(); ++k) {
        if (cfg.table.deformed(k) && k + 1 != i && !multiple) {
          throw DomainError("obstacle " + std::to_string(k + 1) +
                            " depends on alpha but \"deformed\" is " + std::to_string(i));
        }
      }
    }
    if (j.contains("smoothness")) cfg.smoothness = j["smoothness"].get<int>();
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("table: ") + e.what());
  }
}

TableConfig load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    // e.byte is a 1-based offset; report line and column as well
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << path << ":" << line << ":" << col << ": malformed JSON (byte " << e.byte << ")";
    throw ParseError(msg.str());
  }
  return table_from_json(j);
}

json table_to_json(const BilliardTable& t) {
  json obs = json::array();
  for (const auto& c : t.obstacles()) {
    json o;
    o["center"] = {poly_json(c.center_x()), poly_json(c.center_y())};
    const auto& sh = c.shape();
    switch (c.kind()) {
      case CurveKind::circle:
        o["kind"] = "circle";
        o["radius"] = sh[0];
        break;
      case CurveKind::ellipse:
        o["kind"] = "ellipse";
        o["axes"] = {sh[0], sh[1]};
        o["angle"] = sh[2];
        break;
      case CurveKind::polar_harmonic: {
        o["kind"] = "polar-harmonic";
        o["base"] = sh[0];
        json cs = json::array();
        for (std::size_t k = 1; k < sh.size(); ++k) cs.push_back(sh[k]);
        o["cos"] = cs;
        break;
      }
    }
    o["seam"] = c.seam();
    obs.push_back(o);
  }
  json j;
  j["alpha"] = {{"lo", t.interval().lo}, {"hi", t.interval().hi}};
  j["allow_multiple_deformed"] = t.allow_multiple_deformed();
  j["obstacles"] = obs;
  return j;
}

json record_to_json(const OrbitRecord& r) {
  const PeriodicOrbit& o = r.orbit;
  json j;
  j["word"] = o.word.symbols();
  j["alpha"] = o.alpha;
  j["u"] = o.u;
  j["residual"] = o.residual;
  j["reflection_residual"] = o.reflection_residual;
  j["clearance"] = o.clearance;
  j["newton_steps"] = o.newton_steps;
  j["p"] = points(o.p);
  j["d"] = o.d;
  j["phi"] = o.phi;
  j["kappa"] = o.kappa;
  j["gamma"] = o.gamma;
  j["d_alpha"] = {{"du", r.derivs.du},         {"dp", points(r.derivs.dp)},
                  {"dd", r.derivs.dd},         {"dkappa", r.derivs.dkappa},
                  {"dcos_phi", r.derivs.dcos_phi}, {"dgamma", r.derivs.dgamma}};
  j["front"] = {{"k", r.front.k},     {"expansion", r.front.expansion}, {"psi", r.front.psi},
                {"psi_s", r.front.psi_s}, {"dk", r.front.dk},           {"dpsi", r.front.dpsi}};
  return j;
}

json no_eclipse_to_json(const NoEclipseReport& r) {
  return {{"pass", r.pass},
          {"disjoint", r.disjoint},
          {"min_distance", r.min_distance},
          {"witness", r.witness},
          {"min_pair_distance", r.min_pair_distance},
          {"pair_witness", r.pair_witness}};
}

json deformation_to_json(const DeformationConstants& dc) {
  json c;
  for (int q = 0; q <= 3; ++q) {
    for (int qa = 0; qa <= 1; ++qa) {
      if (q == 0 && qa == 0) continue;
      c["C" + std::to_string(q) + std::to_string(qa)] = dc(q, qa);
    }
  }
  c["kappa_min"] = dc.kappa_min;
  c["kappa_max"] = dc.kappa_max;
  return c;
}

json report_to_json(const DimensionReport& r) {
  const PotentialBounds& b = r.bounds;
  json pool = {{"orbits", b.orbits},
               {"d_min", b.d_min},
               {"d_max", b.d_max},
               {"k_min", b.k_min},
               {"k_max", b.k_max},
               {"gamma_min", b.pool.gamma_min},
               {"gamma_max", b.pool.gamma_max},
               {"phi_max", b.pool.phi_max},
               {"psi_min", b.psi_min},
               {"psi_max", b.psi_max}};
  json constants = {{"C_u", b.constants.C_u},     {"C_p", b.constants.C_p},
                    {"C_d", b.constants.C_d},     {"C_kappa", b.constants.C_kappa},
                    {"C_phi", b.constants.C_phi}, {"C_gamma", b.constants.C_gamma},
                    {"C_k", b.front.C_k},         {"C_psi", b.C_psi}};
  return {{"alpha", r.alpha},
          {"n", r.n},
          {"m", r.m},
          {"Du", r.Du},
          {"Ds", r.Ds},
          {"D", r.D},
          {"lower", r.lower},
          {"upper", r.upper},
          {"bracket_ok", r.bracket_ok()},
          {"h", r.h},
          {"int_psi", r.int_psi},
          {"int_dpsi", r.int_dpsi},
          {"dDu_dalpha", r.dDu_dalpha},
          {"dD_dalpha", r.dD_dalpha},
          {"dD_bound", r.dD_bound},
          {"derivative_bound_ok", r.derivative_bound_ok()},
          {"mu0_lower", r.mu0_lower},
          {"pressure_at_root", r.pressure_at_root},
          {"periodic_pressure_at_root", r.periodic_pressure_at_root},
          {"D_previous", r.D_previous},
          {"delta_n", r.delta_n},
          {"bowen_iterations", r.bowen_iterations},
          {"pool", pool},
          {"constants", constants}};
}

void fill_finite_differences(std::vector<SweepRow>& rows) {
  const std::size_t n = rows.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = i == 0 ? 0 : i - 1;
    std::size_t b = i + 1 < n ? i + 1 : i;
    if (a == b || !rows[a].ok || !rows[b].ok || !rows[i].ok) {
      rows[i].dD_dfinite = nan;
      continue;
    }
    rows[i].dD_dfinite = (rows[b].report.D - rows[a].report.D) / (rows[b].alpha - rows[a].alpha);
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  }
  out << "alpha,Du,D,lower,upper,dD_danalytic,dD_dfinite,n,delta_n,dD_bound,status\n";
  out << std::setprecision(15);
  for (const auto& r : rows) {
    const auto& p = r.report;
    out << r.alpha << ',';
    if (r.ok) {
      out << p.Du << ',' << p.D << ',' << p.lower << ',' << p.upper << ',' << p.dD_dalpha << ','
          << r.dD_dfinite << ',' << p.n << ',' << p.delta_n << ',' << p.dD_bound;
    } else {
      out << "nan,nan,nan,nan,nan,nan," << p.n << ",nan,nan";
    }
    out << ',' << r.status << '\n';
  }
}

}  // namespace bdim

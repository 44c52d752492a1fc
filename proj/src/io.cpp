#include "crcc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crcc/errors.hpp"

namespace crcc {

using nlohmann::json;

namespace {

void only_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
  }
}

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + name + "\"");
  return *it;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

VarSet names_of(const json& j, const std::string& where) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw ParseError(where + ": expected a name or a list of names");
  VarSet out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(where + ": expected variable names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<Variable> parse_variables(const json& doc) {
  const json& vars = field(doc, "variables", "pmf");
  if (!vars.is_array()) throw ParseError("pmf: \"variables\" must be a list");
  std::vector<Variable> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    only_fields(vars[i], {"name", "size"}, where);
    const json& name = field(vars[i], "name", where);
    const json& size = field(vars[i], "size", where);
    if (!name.is_string() || !size.is_number_integer() || size.get<long long>() < 1) {
      throw ParseError(where + ": needs a string name and a positive integer size");
    }
    out.push_back({name.get<std::string>(), size.get<int>()});
  }
  return out;
}

template <typename Entry, typename Convert>
void parse_factors(const json& doc, std::vector<Entry>& out, Convert convert) {
  const json& factors = field(doc, "factors", "pmf");
  if (!factors.is_array()) throw ParseError("pmf: \"factors\" must be a list");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string where = "factors[" + std::to_string(i) + "]";
    only_fields(factors[i], {"child", "parents", "table"}, where);
    Entry e;
    e.child = names_of(field(factors[i], "child", where), where + ".child");
    e.parents = factors[i].contains("parents") ? names_of(factors[i]["parents"], where + ".parents") : VarSet{};
    const json& table = field(factors[i], "table", where);
    if (!table.is_array()) throw ParseError(where + ": \"table\" must be a list");
    for (const auto& x : table) e.table.push_back(convert(x, where));
    out.push_back(std::move(e));
  }
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("cannot write " + path);
}

FactorizationSpec parse_pmf_json(const std::string& text) {
  const json doc = parse(text);
  only_fields(doc, {"variables", "factors"}, "pmf");
  FactorizationSpec spec;
  spec.variables = parse_variables(doc);
  parse_factors(doc, spec.factors, [](const json& x, const std::string& where) {
    if (!x.is_number()) throw ParseError(where + ": table entries must be numbers");
    return x.get<double>();
  });
  return spec;
}

std::string pmf_to_json(const FactorizationSpec& spec) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& v : spec.variables) doc["variables"].push_back({{"name", v.name}, {"size", v.size}});
  doc["factors"] = json::array();
  for (const auto& f : spec.factors) {
    json child = f.child.size() == 1 ? json(f.child.front()) : json(f.child);
    doc["factors"].push_back({{"child", child}, {"parents", f.parents}, {"table", f.table}});
  }
  return doc.dump(2) + "\n";
}

FamilySpec parse_family_json(const std::string& text) {
  const json doc = parse(text);
  only_fields(doc, {"variables", "factors", "parameters"}, "family");
  FamilySpec fam;
  fam.variables = parse_variables(doc);
  parse_factors(doc, fam.factors, [](const json& x, const std::string& where) {
    if (x.is_number()) return Expression::constant(x.get<double>());
    if (x.is_string()) return Expression::parse(x.get<std::string>());
    throw ParseError(where + ": table entries must be numbers or expressions");
  });
  const json& params = field(doc, "parameters", "family");
  if (!params.is_array()) throw ParseError("family: \"parameters\" must be a list");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string where = "parameters[" + std::to_string(i) + "]";
    only_fields(params[i], {"name", "min", "max", "steps"}, where);
    Parameter p;
    const json& name = field(params[i], "name", where);
    const json& lo = field(params[i], "min", where);
    const json& hi = field(params[i], "max", where);
    const json& steps = field(params[i], "steps", where);
    if (!name.is_string() || !lo.is_number() || !hi.is_number() || !steps.is_number_integer()) {
      throw ParseError(where + ": needs name (string), min, max (numbers) and steps (integer)");
    }
    p.name = name.get<std::string>();
    p.min = lo.get<double>();
    p.max = hi.get<double>();
    p.steps = steps.get<int>();
    if (p.steps < 1) throw ParseError(where + ": steps must be at least 1");
    if (!seen.insert(p.name).second) throw ParseError(where + ": duplicate parameter " + p.name);
    fam.parameters.push_back(p);
  }
  fam.grid_size();
  return fam;
}

std::string region_to_json(const LinearSystem& sys, const VertexSet* vertices) {
  json doc;
  doc["variables"] = sys.variables;
  doc["inequalities"] = json::array();
  for (const auto& r : sys.rows) {
    json coeffs = json::array();
    for (Eigen::Index i = 0; i < r.coeffs.size(); ++i) coeffs.push_back(r.coeffs[i].str());
    doc["inequalities"].push_back({{"coeffs", coeffs},
                                   {"rhs", r.rhs == 0.0 ? 0.0 : r.rhs},
                                   {"symbolic", r.symbolic ? r.symbolic->str() : std::string()},
                                   {"label", r.label}});
  }
  if (!sys.constants.empty()) {
    json consts = json::object();
    for (const auto& [name, value] : sys.constants) consts[name] = value;
    doc["constants"] = consts;
  }
  if (vertices) {
    doc["vertices"] = json::array();
    for (const auto& p : vertices->points) {
      json row = json::array();
      for (Eigen::Index i = 0; i < p.size(); ++i) row.push_back(p[i] == 0.0 ? 0.0 : p[i]);
      doc["vertices"].push_back(row);
    }
  }
  return doc.dump(2) + "\n";
}

LinearSystem parse_region_json(const std::string& text, VertexSet* vertices) {
  const json doc = parse(text);
  only_fields(doc, {"variables", "inequalities", "constants", "vertices"}, "region");
  LinearSystem sys(names_of(field(doc, "variables", "region"), "region.variables"));
  if (doc.contains("constants")) {
    const json& consts = doc["constants"];
    if (!consts.is_object()) throw ParseError("region: \"constants\" must be an object");
    for (auto it = consts.begin(); it != consts.end(); ++it) {
      if (!it.value().is_number()) throw ParseError("region: constant " + it.key() + " must be a number");
      sys.constants[it.key()] = it.value().get<double>();
    }
  }
  const json& rows = field(doc, "inequalities", "region");
  if (!rows.is_array()) throw ParseError("region: \"inequalities\" must be a list");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "inequalities[" + std::to_string(i) + "]";
    only_fields(rows[i], {"coeffs", "rhs", "symbolic", "label"}, where);
    const json& coeffs = field(rows[i], "coeffs", where);
    if (!coeffs.is_array() || coeffs.size() != sys.dim()) {
      throw ParseError(where + ": needs one coefficient per variable");
    }
    Inequality row;
    row.coeffs.resize(static_cast<Eigen::Index>(sys.dim()));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_string()) {
        row.coeffs[static_cast<Eigen::Index>(k)] = Rational::parse(coeffs[k].get<std::string>());
      } else if (coeffs[k].is_number_integer()) {
        row.coeffs[static_cast<Eigen::Index>(k)] = Rational(coeffs[k].get<std::int64_t>());
      } else {
        throw ParseError(where + ": coefficients must be \"p/q\" strings");
      }
    }
    const json& rhs = field(rows[i], "rhs", where);
    if (!rhs.is_number()) throw ParseError(where + ": rhs must be a number");
    row.rhs = rhs.get<double>();
    if (rows[i].contains("symbolic")) {
      const json& s = rows[i]["symbolic"];
      if (!s.is_string()) throw ParseError(where + ": symbolic must be a string");
      if (!s.get<std::string>().empty()) row.symbolic = SymbolicExpr::parse(s.get<std::string>());
    }
    if (rows[i].contains("label")) {
      if (!rows[i]["label"].is_string()) throw ParseError(where + ": label must be a string");
      row.label = rows[i]["label"].get<std::string>();
    }
    sys.rows.push_back(std::move(row));
  }
  if (vertices) {
    vertices->variables = sys.variables;
    vertices->points.clear();
    if (doc.contains("vertices")) {
      for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != sys.dim()) throw ParseError("region: vertex of wrong dimension");
        Eigen::VectorXd p(static_cast<Eigen::Index>(sys.dim()));
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (!v[k].is_number()) throw ParseError("region: vertex coordinates must be numbers");
          p[static_cast<Eigen::Index>(k)] = v[k].get<double>();
        }
        vertices->points.push_back(p);
      }
    }
  }
  return sys;
}

std::string points_csv(const std::vector<std::string>& header, const std::vector<Eigen::VectorXd>& points) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& p : points) {
    for (Eigen::Index i = 0; i < p.size(); ++i) out << (i ? "," : "") << format17(p[i]);
    out << "\n";
  }
  return out.str();
}

std::vector<Eigen::VectorXd> slice_polygon(const LinearSystem& region, const std::string& fixed, double value) {
  const LinearSystem section = fix_variable(region, fixed, value);
  if (section.dim() != 2) throw InputError("slice needs a three-variable region");
  auto pts = enumerate_vertices(section).points;
  if (pts.size() < 3) return pts;
  Eigen::VectorXd centre = Eigen::VectorXd::Zero(2);
  for (const auto& p : pts) centre += p;
  centre /= static_cast<double>(pts.size());
  // Start from the lexicographically smallest vertex, then sweep by angle.
  const Eigen::VectorXd start = pts.front();
  const double a0 = std::atan2(start[1] - centre[1], start[0] - centre[0]);
  auto angle = [&](const Eigen::VectorXd& p) {
    double a = std::atan2(p[1] - centre[1], p[0] - centre[0]) - a0;
    while (a < 0) a += 2 * M_PI;
    return a;
  };
  std::stable_sort(pts.begin() + 1, pts.end(),
                   [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return angle(a) < angle(b); });
  pts.push_back(pts.front());
  return pts;
}

}  // namespace crcc

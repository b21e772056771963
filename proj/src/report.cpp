#include "deloc/report.hpp"

#include <cmath>
#include <cstdio>

namespace deloc {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
  // Keep floats recognisable as floats after a round trip.
  std::string_view s(buf);
  if (s.find_first_of(".eE") == std::string_view::npos) out += ".0";
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += Json(it.key()).dump();
        out += ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalar = true;
      for (const auto& v : j) scalar = scalar && !v.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

Json complex_json(CD z) { return Json::array({z.real(), z.imag()}); }

Json rational_json(const QC& q) {
  Json j;
  j["re"] = format_rational(q.re);
  j["im"] = format_rational(q.im);
  return j;
}

Json group_summary(const Group& G) {
  Json j;
  j["label"] = G.label();
  j["generators"] = G.generator_names();
  if (auto n = G.order()) j["order"] = *n;
  else j["order"] = "infinite";
  return j;
}

Json class_summary(const ConjugacyClass& cl) {
  const Group& G = cl.group;
  Json j;
  j["gamma"] = G.name(cl.gamma);
  j["order"] = cl.order == 0 ? Json("infinite") : Json(cl.order);
  j["radius"] = cl.radius;
  j["complete"] = cl.complete;
  Json w = Json::array();
  for (std::size_t i = 0; i < cl.members.size(); ++i)
    w.push_back(Json{{"member", G.name(cl.members[i])}, {"h", G.name(cl.witnesses[i])}});
  j["witnesses"] = w;
  Json z = Json::array();
  for (const auto& c : cl.centralizer) z.push_back(G.name(c));
  j["centralizer"] = z;
  return j;
}

Json pairing_json(const PairingReport& r) {
  Json j;
  j["invariant"] = r.invariant;
  j["value"] = complex_json(r.value);
  j["error"] = r.error;
  j["T"] = r.T;
  j["tol"] = r.tol;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["lhs"] = complex_json(c.lhs);
    cj["rhs"] = complex_json(c.rhs);
    cj["diff"] = c.diff;
    cj["tol"] = c.tol;
    cj["passed"] = c.passed;
    cj["required"] = c.required;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  Json prov = Json::object();
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = prov;
  j["passed"] = r.passed();
  return j;
}

Json growth_json(const Group& G, const GrowthBound& b) {
  Json j;
  j["R"] = format_rational(b.R);
  j["k"] = b.k;
  j["max_radius_checked"] = b.max_radius_checked;
  j["fitted_degree"] = b.fitted_degree;
  j["exhaustive"] = b.exhaustive;
  j["tuples_checked"] = b.tuples_checked;
  if (b.witness) {
    Json w = Json::array();
    for (const auto& g : *b.witness) w.push_back(G.name(g));
    j["witness"] = w;
  }
  return j;
}

}  // namespace deloc

#include "deloc/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "deloc/orbits.hpp"

namespace deloc {

namespace {

std::string at(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}
std::string idx(const std::string& base, std::size_t i) {
  return (base.empty() ? std::string("$") : base) + "[" + std::to_string(i) + "]";
}

// Collects diagnostics; helpers return false after recording a problem.
struct Checker {
  Diagnostics out;

  void fail(const std::string& path, const std::string& msg) {
    out.push_back({path.empty() ? "$" : path, msg});
  }
  bool object(const Json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "expected an object");
    return false;
  }
  bool array(const Json& j, const std::string& path) {
    if (j.is_array()) return true;
    fail(path, "expected an array");
    return false;
  }
  const Json* field(const Json& j, const std::string& path, const char* key, bool required = true) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) fail(at(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }
  bool natural(const Json& j, const std::string& path, long min = 0) {
    if (j.is_number_integer() && j.get<long>() >= min) return true;
    fail(path, "expected an integer >= " + std::to_string(min));
    return false;
  }
  bool string(const Json& j, const std::string& path) {
    if (j.is_string()) return true;
    fail(path, "expected a string");
    return false;
  }
  bool number(const Json& j, const std::string& path) {
    if (j.is_number()) return true;
    fail(path, "expected a number");
    return false;
  }
  bool complex_entry(const Json& j, const std::string& path) {
    if (j.is_number()) return true;
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return true;
    fail(path, "expected a number or [re, im]");
    return false;
  }
  bool rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return true;
    if (j.is_string() && parse_rational(j.get<std::string>())) return true;
    fail(path, "malformed rational " + j.dump() + " (expected \"p/q\" with q != 0)");
    return false;
  }
};

CD complex_value(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j[0].get<double>(), j[1].get<double>()};
}

mpq_class rational_value(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  return *parse_rational(j.get<std::string>());
}

std::optional<Group> check_group(Checker& c, const Json& j, const std::string& path);

std::optional<Element> check_element(Checker& c, const Group& G, const Json& j, const std::string& path) {
  if (!j.is_string() && !j.is_number_integer()) {
    c.fail(path, "expected an element name");
    return std::nullopt;
  }
  try {
    return G.parse(j.is_string() ? j.get<std::string>() : std::to_string(j.get<long>()));
  } catch (const std::exception& e) {
    c.fail(path, e.what());
    return std::nullopt;
  }
}

std::optional<Group> check_group(Checker& c, const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return group_from_label(j.get<std::string>());
    } catch (const std::exception& e) {
      c.fail(path, e.what());
      return std::nullopt;
    }
  }
  if (!c.object(j, path)) return std::nullopt;
  const Json* kind = c.field(j, path, "kind");
  if (!kind || !c.string(*kind, at(path, "kind"))) return std::nullopt;
  const std::string k = kind->get<std::string>();
  std::optional<Group> G;
  try {
    if (k == "cyclic") {
      const Json* n = c.field(j, path, "k");
      if (n && c.natural(*n, at(path, "k"), 1)) G = Group::cyclic(n->get<long>());
    } else if (k == "free_abelian") {
      const Json* n = c.field(j, path, "n");
      if (n && c.natural(*n, at(path, "n"), 1)) {
        if (n->get<long>() > static_cast<long>(kMaxComponents)) c.fail(at(path, "n"), "rank above 8");
        else G = Group::free_abelian(n->get<std::size_t>());
      }
    } else if (k == "heisenberg") {
      G = Group::heisenberg();
    } else if (k == "finite_table") {
      const Json* preset = c.field(j, path, "preset", false);
      if (preset && c.string(*preset, at(path, "preset"))) {
        const std::string p = preset->get<std::string>();
        if (p == "s3") G = Group::symmetric3();
        else if (p == "d4") G = Group::dihedral4();
        else c.fail(at(path, "preset"), "unknown preset '" + p + "'");
      } else {
        const Json* names = c.field(j, path, "elements");
        const Json* table = c.field(j, path, "table");
        bool ok = names && table && c.array(*names, at(path, "elements")) &&
                  c.array(*table, at(path, "table"));
        std::vector<std::string> nm;
        std::vector<std::vector<std::size_t>> tb;
        if (ok) {
          for (std::size_t i = 0; i < names->size(); ++i)
            if (c.string((*names)[i], idx(at(path, "elements"), i))) nm.push_back((*names)[i]);
            else ok = false;
          for (std::size_t i = 0; i < table->size(); ++i) {
            const std::string rp = idx(at(path, "table"), i);
            if (!c.array((*table)[i], rp)) {
              ok = false;
              continue;
            }
            std::vector<std::size_t> row;
            for (std::size_t jx = 0; jx < (*table)[i].size(); ++jx)
              if (c.natural((*table)[i][jx], idx(rp, jx))) row.push_back((*table)[i][jx].get<std::size_t>());
              else ok = false;
            tb.push_back(std::move(row));
          }
        }
        if (ok) G = Group::finite_table(std::move(nm), std::move(tb));
      }
    } else if (k == "product") {
      const Json* f = c.field(j, path, "factors");
      if (f && c.array(*f, at(path, "factors"))) {
        std::vector<Group> fs;
        bool ok = !f->empty();
        if (!ok) c.fail(at(path, "factors"), "needs at least one factor");
        for (std::size_t i = 0; i < f->size(); ++i) {
          auto g = check_group(c, (*f)[i], idx(at(path, "factors"), i));
          if (g) fs.push_back(*g);
          else ok = false;
        }
        if (ok) G = Group::product(std::move(fs));
      }
    } else {
      c.fail(at(path, "kind"), "unknown group kind '" + k + "'");
    }
  } catch (const std::exception& e) {
    c.fail(path, e.what());
    return std::nullopt;
  }
  if (!G) return std::nullopt;
  if (const Json* gens = c.field(j, path, "generators", false)) {
    if (!c.array(*gens, at(path, "generators"))) return std::nullopt;
    std::vector<Element> gs;
    for (std::size_t i = 0; i < gens->size(); ++i) {
      auto g = check_element(c, *G, (*gens)[i], idx(at(path, "generators"), i));
      if (!g) return std::nullopt;
      gs.push_back(*g);
    }
    try {
      G = G->with_generators(std::move(gs));
    } catch (const std::exception& e) {
      c.fail(at(path, "generators"), e.what());
      return std::nullopt;
    }
  }
  return G;
}

std::optional<Mat> check_matrix(Checker& c, const Json& j, const std::string& path, Eigen::Index N) {
  if (!c.array(j, path)) return std::nullopt;
  if (static_cast<Eigen::Index>(j.size()) != N) {
    c.fail(path, "expected " + std::to_string(N) + " rows");
    return std::nullopt;
  }
  Mat m(N, N);
  bool ok = true;
  for (Eigen::Index r = 0; r < N; ++r) {
    const std::string rp = idx(path, static_cast<std::size_t>(r));
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!c.array(row, rp) || static_cast<Eigen::Index>(row.size()) != N) {
      if (row.is_array()) c.fail(rp, "expected " + std::to_string(N) + " entries");
      ok = false;
      continue;
    }
    for (Eigen::Index col = 0; col < N; ++col) {
      const Json& e = row[static_cast<std::size_t>(col)];
      if (c.complex_entry(e, idx(rp, static_cast<std::size_t>(col)))) m(r, col) = complex_value(e);
      else ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return m;
}

std::optional<AlgebraElement> check_terms(Checker& c, const Group& G, Eigen::Index N, const Json& terms,
                                          const std::string& path) {
  if (!c.array(terms, path)) return std::nullopt;
  AlgebraElement a(G, N);
  bool ok = true;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = idx(path, i);
    if (!c.object(terms[i], tp)) {
      ok = false;
      continue;
    }
    const Json* g = c.field(terms[i], tp, "g");
    const Json* m = c.field(terms[i], tp, "matrix");
    if (!g || !m) {
      ok = false;
      continue;
    }
    auto el = check_element(c, G, *g, at(tp, "g"));
    auto mat = check_matrix(c, *m, at(tp, "matrix"), N);
    if (el && mat) a.add(*el, *mat);
    else ok = false;
  }
  if (!ok) return std::nullopt;
  return a;
}

std::optional<AlgebraElement> check_algebra(Checker& c, const Json& j, const std::string& path,
                                            const char* terms_key) {
  if (!c.object(j, path)) return std::nullopt;
  const Json* gj = c.field(j, path, "group");
  const Json* nj = c.field(j, path, "N");
  const Json* tj = c.field(j, path, terms_key);
  std::optional<Group> G = gj ? check_group(c, *gj, at(path, "group")) : std::nullopt;
  bool n_ok = nj && c.natural(*nj, at(path, "N"), 1);
  if (!G || !n_ok || !tj) return std::nullopt;
  auto a = check_terms(c, *G, nj->get<Eigen::Index>(), *tj, at(path, terms_key));
  if (!a) return std::nullopt;
  if (const Json* l = c.field(j, path, "lambda", false)) {
    if (!c.complex_entry(*l, at(path, "lambda"))) return std::nullopt;
    a->set_lambda(complex_value(*l));
  }
  return a;
}

std::optional<LoadedCochain> check_cochain(Checker& c, const Json& j, const std::string& path) {
  if (!c.object(j, path)) return std::nullopt;
  const Json* fj = c.field(j, path, "flavor");
  const Json* dj = c.field(j, path, "degree");
  const Json* gj = c.field(j, path, "group");
  const Json* ej = c.field(j, path, "entries");
  std::optional<Flavor> flavor;
  if (fj && c.string(*fj, at(path, "flavor"))) {
    flavor = parse_flavor(fj->get<std::string>());
    if (!flavor) c.fail(at(path, "flavor"), "unknown flavor '" + fj->get<std::string>() + "'");
  }
  bool deg_ok = dj && c.natural(*dj, at(path, "degree"));
  std::optional<Group> G = gj ? check_group(c, *gj, at(path, "group")) : std::nullopt;
  if (!flavor || !deg_ok || !G || !ej) return std::nullopt;
  const int degree = dj->get<int>();

  std::shared_ptr<ConjugacyClass> cls;
  const Json* cj = c.field(j, path, "class", false);
  const bool needs_class = *flavor == Flavor::CyclicDelocalized || *flavor == Flavor::Relative ||
                           *flavor == Flavor::RelativeNoGamma;
  if (needs_class && !cj) {
    c.fail(at(path, "class"), "flavor " + flavor_name(*flavor) + " needs a class");
    return std::nullopt;
  }
  if (cj) {
    const std::string cp = at(path, "class");
    if (!c.object(*cj, cp)) return std::nullopt;
    const Json* gam = c.field(*cj, cp, "gamma");
    if (!gam) return std::nullopt;
    auto gamma = check_element(c, *G, *gam, at(cp, "gamma"));
    if (!gamma) return std::nullopt;
    std::size_t radius = full_radius(*G);
    if (const Json* rj = c.field(*cj, cp, "radius", false)) {
      if (!c.natural(*rj, at(cp, "radius"), 1)) return std::nullopt;
      radius = rj->get<std::size_t>();
    }
    try {
      cls = std::make_shared<ConjugacyClass>(conjugacy_class(*G, *gamma, radius));
    } catch (const std::exception& e) {
      c.fail(cp, e.what());
      return std::nullopt;
    }
  }
  if (const Json* wj = c.field(j, path, "witnesses", false)) {
    const std::string wp = at(path, "witnesses");
    if (!cls) {
      c.fail(wp, "witnesses need a class");
      return std::nullopt;
    }
    if (!c.array(*wj, wp)) return std::nullopt;
    for (std::size_t i = 0; i < wj->size(); ++i) {
      const std::string ip = idx(wp, i);
      if (!c.object((*wj)[i], ip)) return std::nullopt;
      const Json* mj = c.field((*wj)[i], ip, "member");
      const Json* hj = c.field((*wj)[i], ip, "h");
      if (!mj || !hj) return std::nullopt;
      auto y = check_element(c, *G, *mj, at(ip, "member"));
      auto h = check_element(c, *G, *hj, at(ip, "h"));
      if (!y || !h) return std::nullopt;
      if (!(G->conjugate(cls->gamma, *h) == *y)) {
        c.fail(at(ip, "h"), "h^-1 gamma h does not equal the member");
        return std::nullopt;
      }
      auto it = cls->lookup.find(*y);
      if (it == cls->lookup.end()) {
        cls->lookup.emplace(*y, cls->members.size());
        cls->members.push_back(*y);
        cls->witnesses.push_back(*h);
      } else {
        cls->witnesses[it->second] = *h;
      }
    }
  }

  std::string storage = "table";
  if (const Json* sj = c.field(j, path, "storage", false)) {
    if (!c.string(*sj, at(path, "storage"))) return std::nullopt;
    storage = sj->get<std::string>();
    if (storage != "table" && storage != "orbit") {
      c.fail(at(path, "storage"), "expected \"table\" or \"orbit\"");
      return std::nullopt;
    }
  }

  if (!c.array(*ej, at(path, "entries"))) return std::nullopt;
  Cochain::Table table;
  bool ok = true;
  for (std::size_t i = 0; i < ej->size(); ++i) {
    const std::string ep = idx(at(path, "entries"), i);
    const Json& e = (*ej)[i];
    if (!c.object(e, ep)) {
      ok = false;
      continue;
    }
    const Json* tj = c.field(e, ep, "tuple");
    const Json* re = c.field(e, ep, "re");
    const Json* im = c.field(e, ep, "im", false);
    bool entry_ok = tj && re;
    entry_ok = (re && c.rational(*re, at(ep, "re"))) && entry_ok;
    if (im) entry_ok = c.rational(*im, at(ep, "im")) && entry_ok;
    if (!tj || !c.array(*tj, at(ep, "tuple"))) {
      ok = false;
      continue;
    }
    if (static_cast<int>(tj->size()) != degree + 1) {
      c.fail(at(ep, "tuple"), "expected " + std::to_string(degree + 1) + " elements");
      ok = false;
      continue;
    }
    Tuple t;
    for (std::size_t k = 0; k < tj->size(); ++k) {
      auto g = check_element(c, *G, (*tj)[k], idx(at(ep, "tuple"), k));
      if (g) t.push_back(*g);
      else entry_ok = false;
    }
    if (!entry_ok) {
      ok = false;
      continue;
    }
    table[t] = QC(rational_value(*re), im ? rational_value(*im) : mpq_class(0));
  }
  if (!ok) return std::nullopt;

  ClassPtr cp = cls;
  try {
    if (storage == "orbit") {
      OrbitStructure orbits(*G, *flavor, cp);
      RepValues reps;
      for (auto& [t, v] : table) {
        auto canon = orbits.canonicalize(t);
        if (canon.sign == 0) continue;
        reps[canon.rep] = canon.sign > 0 ? v : -v;
      }
      return LoadedCochain{orbit_cochain(orbits, degree, std::move(reps)), cp};
    }
    return LoadedCochain{Cochain::from_table(*G, degree, *flavor, std::move(table), cp), cp};
  } catch (const std::exception& e) {
    c.fail(path, e.what());
    return std::nullopt;
  }
}

std::optional<SpectrumFile> check_spectrum_json(Checker& c, const Json& j, const std::string& path) {
  if (!c.object(j, path)) return std::nullopt;
  const Json* cl = c.field(j, path, "classes");
  const Json* md = c.field(j, path, "modes");
  if (!cl || !md) return std::nullopt;
  SpectrumFile s;
  bool ok = c.array(*cl, at(path, "classes")) && c.array(*md, at(path, "modes"));
  if (!ok) return std::nullopt;
  for (std::size_t i = 0; i < cl->size(); ++i)
    if (c.string((*cl)[i], idx(at(path, "classes"), i))) s.classes.push_back((*cl)[i]);
    else ok = false;
  for (std::size_t i = 0; i < md->size(); ++i) {
    const std::string mp = idx(at(path, "modes"), i);
    const Json& m = (*md)[i];
    if (!c.object(m, mp)) {
      ok = false;
      continue;
    }
    const Json* l = c.field(m, mp, "lambda");
    const Json* mu = c.field(m, mp, "mult");
    if (!l || !mu || !c.number(*l, at(mp, "lambda")) || !c.object(*mu, at(mp, "mult"))) {
      ok = false;
      continue;
    }
    SpectrumMode mode;
    mode.lambda = l->get<double>();
    for (auto it = mu->begin(); it != mu->end(); ++it) {
      const std::string kp = at(at(mp, "mult"), it.key());
      if (!c.number(it.value(), kp)) {
        ok = false;
        continue;
      }
      if (std::find(s.classes.begin(), s.classes.end(), it.key()) == s.classes.end()) {
        c.fail(kp, "class id not listed in classes");
        ok = false;
        continue;
      }
      mode.mult[it.key()] = it.value().get<double>();
    }
    s.modes.push_back(std::move(mode));
  }
  if (const Json* meta = c.field(j, path, "metadata", false)) {
    if (!c.object(*meta, at(path, "metadata"))) return std::nullopt;
    for (auto it = meta->begin(); it != meta->end(); ++it) {
      if (!c.string(it.value(), at(at(path, "metadata"), it.key()))) {
        ok = false;
        continue;
      }
      s.metadata[it.key()] = it.value().get<std::string>();
    }
  }
  if (!ok) return std::nullopt;
  return s;
}

std::optional<LoadedPath> check_path(Checker& c, const Json& j, const std::string& path) {
  if (!c.object(j, path)) return std::nullopt;
  std::string analytic = "none";
  if (const Json* a = c.field(j, path, "analytic", false)) {
    if (!c.string(*a, at(path, "analytic"))) return std::nullopt;
    analytic = a->get<std::string>();
  }
  try {
    if (analytic == "connecting") {
      const Json* p = c.field(j, path, "p");
      if (!p) return std::nullopt;
      auto a = check_algebra(c, *p, at(path, "p"), "terms");
      if (!a) return std::nullopt;
      return LoadedPath{connecting_path(*a), nullptr};
    }
    if (analytic == "rho") {
      const Json* m = c.field(j, path, "model");
      if (!m) return std::nullopt;
      auto D = check_algebra(c, *m, at(path, "model"), "D");
      if (!D) return std::nullopt;
      bool inverse = false;
      if (const Json* o = c.field(j, path, "orientation", false)) {
        if (!c.string(*o, at(path, "orientation"))) return std::nullopt;
        const std::string os = o->get<std::string>();
        if (os != "U" && os != "U^-1") {
          c.fail(at(path, "orientation"), "expected \"U\" or \"U^-1\"");
          return std::nullopt;
        }
        inverse = os == "U^-1";
      }
      auto model = std::make_shared<SpectralModel>(eigendecompose(*D));
      return LoadedPath{rho_path(*model, inverse), model};
    }
    if (analytic != "none") {
      c.fail(at(path, "analytic"), "expected none, connecting or rho");
      return std::nullopt;
    }
    const Json* grid = c.field(j, path, "grid");
    const Json* samples = c.field(j, path, "samples");
    if (!grid || !samples) return std::nullopt;
    if (!c.array(*grid, at(path, "grid")) || !c.array(*samples, at(path, "samples"))) return std::nullopt;
    std::vector<double> g;
    std::vector<AlgebraElement> s;
    bool ok = true;
    for (std::size_t i = 0; i < grid->size(); ++i)
      if (c.number((*grid)[i], idx(at(path, "grid"), i))) g.push_back((*grid)[i].get<double>());
      else ok = false;
    for (std::size_t i = 0; i < samples->size(); ++i) {
      auto a = check_algebra(c, (*samples)[i], idx(at(path, "samples"), i), "terms");
      if (a) s.push_back(*a);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return LoadedPath{sampled_path(std::move(g), std::move(s)), nullptr};
  } catch (const ValidationError& e) {
    c.fail(path, e.what());
    return std::nullopt;
  }
}

[[noreturn]] void raise(const Diagnostics& d) { throw ValidationError(format_diagnostics(d)); }

}  // namespace

std::string format_diagnostics(const Diagnostics& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "\n" : "") + d[i].path + ": " + d[i].message;
  return s;
}

std::optional<Schema> parse_schema(const std::string& name) {
  for (Schema s : {Schema::Group, Schema::Cochain, Schema::Algebra, Schema::Model, Schema::Spectrum,
                   Schema::Path})
    if (schema_name(s) == name) return s;
  return std::nullopt;
}

std::string schema_name(Schema s) {
  switch (s) {
    case Schema::Group:
      return "group";
    case Schema::Cochain:
      return "cochain";
    case Schema::Algebra:
      return "algebra";
    case Schema::Model:
      return "model";
    case Schema::Spectrum:
      return "spectrum";
    case Schema::Path:
      return "path";
  }
  return "unknown";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON syntax error: " + e.what());
  }
}

Diagnostics validate(const Json& j, Schema s) {
  Checker c;
  try {
    switch (s) {
      case Schema::Group:
        check_group(c, j, "");
        break;
      case Schema::Cochain:
        check_cochain(c, j, "");
        break;
      case Schema::Algebra:
        check_algebra(c, j, "", "terms");
        break;
      case Schema::Model: {
        auto D = check_algebra(c, j, "", "D");
        if (D && !D->is_hermitian(1e-12)) c.fail("D", "operator is not Hermitian");
        break;
      }
      case Schema::Spectrum:
        check_spectrum_json(c, j, "");
        break;
      case Schema::Path:
        check_path(c, j, "");
        break;
    }
  } catch (const std::exception& e) {
    c.fail("", e.what());
  }
  return c.out;
}

Diagnostics validate_file(const std::string& path, Schema s) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const ValidationError& e) {
    return {{"$", e.what()}};
  }
  return validate(j, s);
}

Group group_from_label(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto number_after = [&](const std::string& prefix) -> long {
    try {
      std::size_t used = 0;
      long v = std::stol(s.substr(prefix.size()), &used);
      if (used != s.size() - prefix.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("malformed group label '" + text + "'");
    }
  };
  if (s.rfind("cyclic:", 0) == 0) {
    long k = number_after("cyclic:");
    if (k < 1) throw ValidationError("cyclic order must be >= 1");
    return Group::cyclic(k);
  }
  if (s.rfind("free_abelian:", 0) == 0) {
    long n = number_after("free_abelian:");
    if (n < 1 || n > static_cast<long>(kMaxComponents))
      throw ValidationError("free_abelian rank must be in 1..8");
    return Group::free_abelian(static_cast<std::size_t>(n));
  }
  if (s == "heisenberg") return Group::heisenberg();
  if (s == "s3") return Group::symmetric3();
  if (s == "d4") return Group::dihedral4();
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    std::vector<Group> factors;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 8; i + 1 < s.size(); ++i) {
      char ch = s[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        factors.push_back(group_from_label(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) factors.push_back(group_from_label(cur));
    return Group::product(std::move(factors));
  }
  throw ValidationError("unknown group label '" + text + "'");
}

Group group_from_json(const Json& j) {
  Checker c;
  auto G = check_group(c, j, "");
  if (!G || !c.out.empty()) raise(c.out);
  return *G;
}

Json group_to_json(const Group& G) {
  Json j;
  switch (G.kind()) {
    case GroupKind::Cyclic:
      j["kind"] = "cyclic";
      j["k"] = *G.cyclic_order();
      break;
    case GroupKind::FreeAbelian:
      j["kind"] = "free_abelian";
      j["n"] = G.lattice_rank();
      break;
    case GroupKind::Heisenberg:
      j["kind"] = "heisenberg";
      break;
    case GroupKind::FiniteTable:
      j["kind"] = "finite_table";
      if (G.label() == "s3" || G.label() == "d4") {
        j["preset"] = G.label();
      } else {
        j["elements"] = G.table_names();
        j["table"] = G.table();
      }
      break;
    case GroupKind::Product: {
      j["kind"] = "product";
      Json f = Json::array();
      for (const auto& g : G.factors()) f.push_back(group_to_json(g));
      j["factors"] = f;
      break;
    }
  }
  j["generators"] = G.generator_names();
  return j;
}

LoadedCochain cochain_from_json(const Json& j) {
  Checker c;
  auto r = check_cochain(c, j, "");
  if (!r || !c.out.empty()) raise(c.out);
  return *r;
}

std::vector<Tuple> enumerate_tuples(const Group& G, std::size_t length, const ConjugacyClass* cl,
                                    std::size_t cap) {
  if (!G.is_finite()) throw ComputationError("tuple enumeration needs a finite group");
  const auto elems = G.elements();
  std::vector<Tuple> out;
  if (length == 0) return out;
  // The last slot is forced by the product when a class is given.
  const std::size_t free_slots = cl ? length - 1 : length;
  double total = std::pow(static_cast<double>(elems.size()), static_cast<double>(free_slots)) *
                 (cl ? static_cast<double>(cl->members.size()) : 1.0);
  if (total > static_cast<double>(cap))
    throw CapacityError("tuple enumeration exceeds " + std::to_string(cap) + " tuples");
  std::vector<std::size_t> id(free_slots, 0);
  Tuple t(length);
  while (true) {
    for (std::size_t k = 0; k < free_slots; ++k) t[k] = elems[id[k]];
    if (cl) {
      Element prefix = G.identity();
      for (std::size_t k = 0; k + 1 < length; ++k) prefix = G.multiply(prefix, t[k]);
      const Element pinv = G.inverse(prefix);
      for (const auto& y : cl->members) {
        t[length - 1] = G.multiply(pinv, y);
        out.push_back(t);
      }
    } else {
      out.push_back(t);
    }
    std::size_t k = 0;
    while (k < free_slots && ++id[k] == elems.size()) id[k++] = 0;
    if (k == free_slots) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Json cochain_to_json(const Cochain& c, const std::vector<Tuple>& tuples) {
  const Group& G = c.group();
  Json j;
  j["flavor"] = flavor_name(c.flavor());
  j["degree"] = c.degree();
  j["group"] = group_to_json(G);
  if (c.cls()) {
    Json cj;
    cj["gamma"] = G.name(c.cls()->gamma);
    cj["radius"] = c.cls()->radius;
    j["class"] = cj;
  }
  Json entries = Json::array();
  for (const auto& t : tuples) {
    QC v = c(t);
    if (v.is_zero()) continue;
    Json e;
    Json names = Json::array();
    for (const auto& g : t) names.push_back(G.name(g));
    e["tuple"] = names;
    e["re"] = format_rational(v.re);
    e["im"] = format_rational(v.im);
    entries.push_back(e);
  }
  j["entries"] = entries;
  if (c.cls()) {
    Json w = Json::array();
    for (std::size_t i = 0; i < c.cls()->members.size(); ++i)
      w.push_back(Json{{"member", G.name(c.cls()->members[i])}, {"h", G.name(c.cls()->witnesses[i])}});
    j["witnesses"] = w;
  }
  return j;
}

AlgebraElement algebra_from_json(const Json& j) {
  Checker c;
  auto a = check_algebra(c, j, "", "terms");
  if (!a || !c.out.empty()) raise(c.out);
  return *a;
}

namespace {

Json terms_json(const AlgebraElement& a) {
  const Group& G = a.group();
  Json terms = Json::array();
  for (const auto& [g, m] : a.coeffs()) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index col = 0; col < m.cols(); ++col)
        row.push_back(Json::array({m(r, col).real(), m(r, col).imag()}));
      rows.push_back(row);
    }
    terms.push_back(Json{{"g", G.name(g)}, {"matrix", rows}});
  }
  return terms;
}

}  // namespace

Json algebra_to_json(const AlgebraElement& a) {
  Json j;
  j["group"] = group_to_json(a.group());
  j["N"] = a.N();
  j["terms"] = terms_json(a);
  if (a.lambda() != CD{}) j["lambda"] = Json::array({a.lambda().real(), a.lambda().imag()});
  return j;
}

AlgebraElement model_operator_from_json(const Json& j) {
  Checker c;
  auto a = check_algebra(c, j, "", "D");
  if (!a || !c.out.empty()) raise(c.out);
  if (!a->is_hermitian(1e-12)) throw ValidationError("D: operator is not Hermitian");
  return *a;
}

Json model_to_json(const AlgebraElement& D) {
  Json j;
  j["group"] = group_to_json(D.group());
  j["N"] = D.N();
  j["D"] = terms_json(D);
  return j;
}

SpectrumFile spectrum_from_json(const Json& j) {
  Checker c;
  auto s = check_spectrum_json(c, j, "");
  if (!s || !c.out.empty()) raise(c.out);
  return *s;
}

Json spectrum_to_json(const SpectrumFile& s) {
  Json j;
  j["classes"] = s.classes;
  Json modes = Json::array();
  for (const auto& m : s.modes) {
    Json mj;
    mj["lambda"] = m.lambda;
    Json mult = Json::object();
    for (const auto& [k, v] : m.mult) mult[k] = v;
    mj["mult"] = mult;
    modes.push_back(mj);
  }
  j["modes"] = modes;
  if (!s.metadata.empty()) {
    Json meta = Json::object();
    for (const auto& [k, v] : s.metadata) meta[k] = v;
    j["metadata"] = meta;
  }
  return j;
}

LoadedPath path_from_json(const Json& j) {
  Checker c;
  auto p = check_path(c, j, "");
  if (!p || !c.out.empty()) raise(c.out);
  return std::move(*p);
}

}  // namespace deloc

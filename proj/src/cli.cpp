#include "deloc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "deloc/complex_rank.hpp"
#include "deloc/io.hpp"
#include "deloc/orbits.hpp"

namespace deloc::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string group;
  std::string gamma;
  std::string flavor;
  std::string model;
  std::string cocycle;
  std::string cochain;
  std::string alpha;
  std::string spectrum;
  std::string class_id;
  std::string path;
  std::string idempotent;
  std::string schema;
  std::string file;
  std::string out;
  std::string format = "json";
  std::size_t radius = 0;  // 0: default per command
  double tol = 1e-8;
  double step = 1e-3;
  std::uint64_t seed = 42;
  int m = 0;
  int degree = 1;
  int max_degree = 3;
  int count = 10;
  bool trace = false;
  bool normalize = false;
  bool plain = false;
  std::vector<double> grid;
};

// What a command hands back: the JSON report and any pairing rows for CSV.
struct Outcome {
  Json report;
  std::vector<PairingReport> pairings;
  std::string group_label;
  std::string gamma_name;
  int m = 0;
};

Group load_group(const std::string& arg) {
  if (arg.empty()) throw ValidationError("--group is required");
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json")
    return group_from_json(read_json_file(arg));
  return group_from_label(arg);
}

std::size_t radius_or(const RunConfig& c, std::size_t fallback) {
  return c.radius ? c.radius : fallback;
}

std::shared_ptr<ConjugacyClass> make_class(const Group& G, const std::string& gamma, std::size_t radius) {
  if (gamma.empty()) throw ValidationError("--gamma is required");
  Element g = G.parse(gamma);
  return std::make_shared<ConjugacyClass>(
      conjugacy_class(G, g, G.is_finite() ? full_radius(G) : radius));
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  auto put = [&](const char* k, const std::string& v) {
    if (!v.empty()) j[k] = v;
  };
  put("group", c.group);
  put("gamma", c.gamma);
  put("flavor", c.flavor);
  put("model", c.model);
  put("cocycle", c.cocycle);
  put("cochain", c.cochain);
  put("alpha", c.alpha);
  put("spectrum", c.spectrum);
  put("class", c.class_id);
  put("path", c.path);
  put("idempotent", c.idempotent);
  j["radius"] = c.radius ? Json(c.radius) : Json("default");
  j["default_radius"] = Group::default_radius();
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["m"] = c.m;
  j["format"] = c.format;
  j["quadrature_max_depth"] = kQuadratureMaxDepth;
  return j;
}

Json model_json(const SpectralModel& model) {
  const Group& G = model.D.group();
  Json j;
  j["N"] = model.D.N();
  j["eigenvalues"] = model.eigenvalues;
  j["cluster_sizes"] = model.cluster_sizes;
  j["gap"] = model.gap;
  Json mult = Json::object();
  for (std::size_t i = 0; i < model.classes.size(); ++i)
  {
    Json row = Json::array();
    for (CD v : model.multiplicities[i]) row.push_back(complex_json(v));
    mult[G.name(model.classes[i]->gamma)] = row;
  }
  j["multiplicities"] = mult;
  return j;
}

Json cochain_summary(const Cochain& c) {
  Json j;
  j["flavor"] = flavor_name(c.flavor());
  j["degree"] = c.degree();
  if (c.cls()) j["class"] = class_summary(*c.cls());
  return j;
}

std::vector<Tuple> tuples_for(const Cochain& c, int degree) {
  const ConjugacyClass* cl = c.flavor() == Flavor::CyclicDelocalized ? c.cls().get() : nullptr;
  return enumerate_tuples(c.group(), static_cast<std::size_t>(degree) + 1, cl);
}

bool vanishes_on(const Cochain& c, const std::vector<Tuple>& tuples) {
  for (const auto& t : tuples)
    if (!c(t).is_zero()) return false;
  return true;
}

SpectralModel load_model(const std::string& file) {
  if (file.empty()) throw ValidationError("--model is required");
  return eigendecompose(model_operator_from_json(read_json_file(file)));
}

LoadedCochain load_cochain(const std::string& file, const char* flag) {
  if (file.empty()) throw ValidationError(std::string(flag) + " is required");
  return cochain_from_json(read_json_file(file));
}

void require_same_group(const Group& a, const Group& b) {
  if (!(a == b)) throw StructuralError("cocycle and model live over different groups");
}

// p = (1/ord) sum_r gamma^r: an exact idempotent in every finite group.
ExactElement cyclic_average(const Group& G, const Element& gamma) {
  const std::uint64_t ord = element_order(G, gamma);
  if (ord == 0) throw UnsupportedOrder("idempotent needs gamma of finite order");
  ExactElement p;
  for (std::uint64_t r = 0; r < ord; ++r)
    p[G.power(gamma, static_cast<std::int64_t>(r))] = QC(mpq_class(1, static_cast<long>(ord)));
  return p;
}

ExactElement exact_from(const AlgebraElement& a) {
  if (a.N() != 1) throw ValidationError("exact idempotents need N = 1");
  if (a.lambda() != CD{}) throw ValidationError("exact idempotents cannot carry a unit part");
  ExactElement p;
  for (const auto& [g, m] : a.coeffs())
    if (m(0, 0) != CD{}) p[g] = QC(mpq_class(m(0, 0).real()), mpq_class(m(0, 0).imag()));
  return p;
}

Json exact_json(const Group& G, const ExactElement& p) {
  Json j = Json::array();
  for (const auto& [g, v] : p) j.push_back(Json{{"g", G.name(g)}, {"value", rational_json(v)}});
  return j;
}

Json base_report(const RunConfig& c, const Group& G) {
  Json j;
  j["config"] = config_json(c);
  j["group"] = group_summary(G);
  return j;
}

// ---------------------------------------------------------------------------

Outcome grp_describe(const RunConfig& c) {
  Group G = load_group(c.group);
  const std::size_t r = radius_or(c, G.is_finite() ? full_radius(G) : Group::default_radius());
  Outcome o;
  o.report = base_report(c, G);
  Json res;
  res["finite"] = G.is_finite();
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k <= r; ++k) sizes.push_back(G.ball_size(k));
  res["ball_sizes"] = sizes;
  if (r >= 3) {
    GrowthFit fit = growth_degree_fit(G, r);
    res["growth"] = Json{{"C0", fit.C0}, {"m", fit.m}, {"max_radius", r}};
  }
  if (G.is_finite()) {
    Json elems = Json::array();
    for (const auto& g : G.elements()) elems.push_back(G.name(g));
    res["elements"] = elems;
    Json classes = Json::array();
    for (const auto& cl : nontrivial_classes(G)) {
      Json members = Json::array();
      for (const auto& y : cl.members) members.push_back(G.name(y));
      classes.push_back(Json{{"gamma", G.name(cl.gamma)}, {"order", cl.order}, {"members", members}});
    }
    res["nontrivial_classes"] = classes;
  }
  if (!c.gamma.empty()) res["class"] = class_summary(*make_class(G, c.gamma, r));
  o.report["result"] = res;
  return o;
}

Outcome grp_ball(const RunConfig& c) {
  Group G = load_group(c.group);
  const std::size_t r = radius_or(c, 1);
  Outcome o;
  o.report = base_report(c, G);
  Json elems = Json::array();
  for (const auto& g : G.ball(r)) elems.push_back(Json{{"element", G.name(g)}, {"length", G.word_length(g)}});
  o.report["result"] = Json{{"radius", r}, {"size", elems.size()}, {"elements", elems}};
  return o;
}

Outcome coh_rank(const RunConfig& c) {
  Group G = load_group(c.group);
  auto flavor = parse_flavor(c.flavor);
  if (!flavor) throw ValidationError("unknown flavor '" + c.flavor + "'");
  if (c.max_degree < 0) throw ValidationError("--max-degree must be >= 0");
  ClassPtr cls;
  if (!c.gamma.empty()) cls = make_class(G, c.gamma, radius_or(c, Group::default_radius()));
  OrbitStructure orbits(G, *flavor, cls);
  ComplexTruncation tr = build_truncation(orbits, c.max_degree);
  Outcome o;
  o.report = base_report(c, G);
  if (cls) o.report["class"] = class_summary(*cls);
  std::vector<std::size_t> ranks, dims;
  for (int n = 0; n <= c.max_degree; ++n) ranks.push_back(cohomology_rank(tr, n));
  for (const auto& b : tr.basis) dims.push_back(b.size());
  o.report["result"] = Json{{"flavor", flavor_name(*flavor)}, {"ranks", ranks}, {"basis_sizes", dims}};
  return o;
}

Outcome cocycle_build(const RunConfig& c) {
  Outcome o;
  Cochain phi = Cochain::zero(Group::cyclic(1), 0, Flavor::Cyclic);
  Json extra;
  if (c.trace) {
    Group G = load_group(c.group);
    auto cl = make_class(G, c.gamma, radius_or(c, Group::default_radius()));
    phi = trace_cocycle(cl);
    extra["source"] = "trace";
  } else {
    LoadedCochain a = load_cochain(c.alpha, "--alpha or --trace");
    if (!a.cls) throw ValidationError("alpha needs a class");
    auto tuples = enumerate_tuples(a.cochain.group(), static_cast<std::size_t>(a.cochain.degree()) + 2, nullptr);
    extra["source"] = "alpha";
    extra["alpha_is_cocycle"] = vanishes_on(group_coboundary(a.cochain), tuples);
    phi = build_delocalized_cocycle(a.cochain, a.cls);
    if (c.normalize) phi = normalize_cocycle(phi, a.cls);
    extra["normalized"] = c.normalize;
  }
  const Group& G = phi.group();
  o.report = base_report(c, G);
  o.report["class"] = class_summary(*phi.cls());
  extra["is_cocycle"] = vanishes_on(cyclic_coboundary(phi), tuples_for(phi, phi.degree() + 1));
  extra["cocycle"] = cochain_to_json(phi, tuples_for(phi, phi.degree()));
  o.report["result"] = extra;
  return o;
}

Outcome cocycle_skew(const RunConfig& c) {
  LoadedCochain in = load_cochain(c.cochain, "--cochain");
  Cochain F = skew_symmetrize(in.cochain);
  auto tuples = enumerate_tuples(F.group(), static_cast<std::size_t>(F.degree()) + 1, nullptr);
  Outcome o;
  o.report = base_report(c, F.group());
  o.report["input"] = cochain_summary(in.cochain);
  Json res;
  res["idempotent"] = vanishes_on(skew_symmetrize(F) - F, tuples);
  res["already_skew"] = vanishes_on(F - in.cochain, tuples);
  res["cochain"] = cochain_to_json(F, tuples);
  o.report["result"] = res;
  return o;
}

Outcome cocycle_periodicity(const RunConfig& c) {
  LoadedCochain in = load_cochain(c.cochain, "--cochain");
  const bool deloc = !c.plain && in.cochain.flavor() == Flavor::CyclicDelocalized;
  Cochain S = periodicity_S(in.cochain, deloc);
  Outcome o;
  o.report = base_report(c, S.group());
  o.report["input"] = cochain_summary(in.cochain);
  Json res;
  res["delocalized"] = deloc;
  res["input_is_cocycle"] = vanishes_on(cyclic_coboundary(in.cochain), tuples_for(in.cochain, in.cochain.degree() + 1));
  res["output_is_cocycle"] = vanishes_on(cyclic_coboundary(S), tuples_for(S, S.degree() + 1));
  res["cochain"] = cochain_to_json(S, tuples_for(S, S.degree()));
  o.report["result"] = res;
  return o;
}

Outcome cocycle_growth_fit(const RunConfig& c) {
  LoadedCochain in = load_cochain(c.cochain, "--cochain");
  const Group& G = in.cochain.group();
  const std::size_t r = radius_or(c, G.is_finite() ? full_radius(G) : 4);
  GrowthBound b = growth_bound_estimate(in.cochain, r, c.seed);
  // Fresh sample for the re-check, drawn from a shifted seed.
  Rng rng(c.seed + 1);
  const auto ball = G.ball(r);
  std::vector<Tuple> sample;
  for (int s = 0; s < 2000; ++s) {
    Tuple t(static_cast<std::size_t>(in.cochain.degree()) + 1);
    for (auto& g : t) g = ball[rng.below(ball.size())];
    sample.push_back(std::move(t));
  }
  auto violation = check_growth_bound(in.cochain, b, sample);
  Outcome o;
  o.report = base_report(c, G);
  o.report["input"] = cochain_summary(in.cochain);
  Json res = growth_json(G, b);
  Json re;
  re["tuples"] = sample.size();
  re["passed"] = !violation.has_value();
  if (violation) {
    Json w = Json::array();
    for (const auto& g : *violation) w.push_back(G.name(g));
    re["violation"] = w;
  }
  res["recheck"] = re;
  o.report["result"] = res;
  return o;
}

Outcome eta_compute(const RunConfig& c) {
  Outcome o;
  o.m = c.m;
  if (!c.spectrum.empty()) {
    SpectrumFile s = spectrum_from_json(read_json_file(c.spectrum));
    if (c.class_id.empty()) throw ValidationError("--class is required with --spectrum");
    PairingReport r = eta_from_spectrum(s, c.class_id, c.tol);
    o.report["config"] = config_json(c);
    Json meta = Json::object();
    for (const auto& [k, v] : s.metadata) meta[k] = v;
    o.report["spectrum"] = Json{{"modes", s.modes.size()}, {"metadata", meta}};
    o.report["result"] = pairing_json(r);
    o.group_label = "spectrum";
    o.gamma_name = c.class_id;
    o.pairings.push_back(r);
    return o;
  }
  SpectralModel model = load_model(c.model);
  LoadedCochain phi = load_cochain(c.cocycle, "--cocycle");
  require_same_group(phi.cochain.group(), model.D.group());
  PairingReport r = eta_invariant(to_float(phi.cochain), model, c.m, c.tol);
  const Group& G = model.D.group();
  o.report = base_report(c, G);
  o.report["model"] = model_json(model);
  o.report["cocycle"] = cochain_summary(phi.cochain);
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = phi.cls ? G.name(phi.cls->gamma) : "";
  o.pairings.push_back(r);
  return o;
}

Outcome tau_compute(const RunConfig& c) {
  if (c.path.empty()) throw ValidationError("--path is required");
  LoadedPath path = path_from_json(read_json_file(c.path));
  LoadedCochain phi = load_cochain(c.cocycle, "--cocycle");
  PairingReport r = determinant_tau(to_float(phi.cochain), path.path, c.m, c.tol);
  const Group& G = phi.cochain.group();
  Outcome o;
  o.m = c.m;
  o.report = base_report(c, G);
  o.report["path"] = Json{{"analytic", path_kind_name(path.path.kind)},
                          {"orientation", path.path.orientation},
                          {"grid_points", path.path.grid.size()}};
  o.report["cocycle"] = cochain_summary(phi.cochain);
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = phi.cls ? G.name(phi.cls->gamma) : "";
  o.pairings.push_back(r);
  return o;
}

Outcome ch_compute(const RunConfig& c) {
  if (c.idempotent.empty()) throw ValidationError("--idempotent is required");
  AlgebraElement p = algebra_from_json(read_json_file(c.idempotent));
  LoadedCochain phi = load_cochain(c.cocycle, "--cocycle");
  require_same_group(phi.cochain.group(), p.group());
  check_idempotent(p);
  PairingReport r;
  r.invariant = "ch";
  r.tol = c.tol;
  r.value = chern_character(to_float(phi.cochain), p, c.m);
  r.provenance["m"] = std::to_string(c.m);
  const Group& G = p.group();
  Outcome o;
  o.m = c.m;
  o.report = base_report(c, G);
  o.report["cocycle"] = cochain_summary(phi.cochain);
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = phi.cls ? G.name(phi.cls->gamma) : "";
  o.pairings.push_back(r);
  return o;
}

// ---------------------------------------------------------------------------
// verify

Json lipschitz_json(const Group& G, const LipschitzResult& L) {
  Json j;
  j["max_ratio"] = format_rational(L.max_ratio);
  j["bound"] = 4;
  j["witness_pair"] = Json::array({G.name(L.witness_pair.first), G.name(L.witness_pair.second)});
  j["pairs"] = L.pairs;
  j["fixes_centralizer"] = L.fixes_centralizer;
  j["equivariant"] = L.equivariant;
  j["norm_bound_violations"] = L.max_norm_ratio_violations;
  return j;
}

Outcome verify_lipschitz(const RunConfig& c) {
  Group G = load_group(c.group);
  const std::size_t r = G.is_finite() ? full_radius(G) : radius_or(c, 6);
  if (c.gamma.empty()) throw ValidationError("--gamma is required");
  auto cl = std::make_shared<ConjugacyClass>(
      conjugacy_class(G, G.parse(c.gamma), G.is_finite() ? full_radius(G) : 2 * r));
  LipschitzResult L = lipschitz_check(*cl, r);
  Outcome o;
  o.report = base_report(c, G);
  o.report["class"] = Json{{"gamma", G.name(cl->gamma)}, {"radius", cl->radius},
                           {"centralizer_size", cl->centralizer.size()}};
  Json res;
  res["check"] = "lipschitz";
  res["radius"] = r;
  res["f"] = lipschitz_json(G, L);
  bool ok = L.max_ratio <= 4 && L.fixes_centralizer;
  if (G.is_finite()) {
    LipschitzResult C = coset_lipschitz_check(*cl);
    res["coset_f"] = lipschitz_json(G, C);
    ok = ok && C.max_ratio <= 4;
  }
  res["passed"] = ok;
  o.report["result"] = res;
  return o;
}

std::shared_ptr<const ConjugacyClass> model_class(const SpectralModel& model, const std::string& gamma) {
  if (model.classes.empty()) throw ValidationError("model group has no nontrivial class");
  if (gamma.empty()) return model.classes.front();
  return model.classes[model.class_index(model.D.group().parse(gamma))];
}

Outcome verify_transgression_cmd(const RunConfig& c) {
  SpectralModel model = load_model(c.model);
  const Group& G = model.D.group();
  const int m = c.m ? c.m : 1;
  Cochain phi = Cochain::zero(G, 0, Flavor::Cyclic);
  Json source;
  if (!c.cocycle.empty()) {
    phi = load_cochain(c.cocycle, "--cocycle").cochain;
    require_same_group(phi.group(), G);
    source["source"] = c.cocycle;
  } else {
    auto cl = model_class(model, c.gamma);
    OrbitStructure orbits(G, Flavor::CyclicDelocalized, cl);
    Rng rng(c.seed);
    phi = random_cochain(orbits, 2 * m - 1, rng, 6);
    source["source"] = "random";
    source["seed"] = c.seed;
    source["cochain"] = cochain_to_json(phi, tuples_for(phi, phi.degree()));
  }
  std::vector<double> grid = c.grid.empty() ? std::vector<double>{0.25, 0.5, 0.75, 1.0, 1.5, 2.0} : c.grid;
  PairingReport r = verify_transgression(phi, model, m, grid, c.step);
  Outcome o;
  o.m = m;
  o.report = base_report(c, G);
  o.report["model"] = model_json(model);
  o.report["input"] = source;
  o.report["grid"] = grid;
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = phi.cls() ? G.name(phi.cls()->gamma) : "";
  o.pairings.push_back(r);
  return o;
}

Outcome verify_s_invariance_cmd(const RunConfig& c) {
  SpectralModel model = load_model(c.model);
  LoadedCochain phi = load_cochain(c.cocycle, "--cocycle");
  const Group& G = model.D.group();
  require_same_group(phi.cochain.group(), G);
  if (!phi.cls) throw ValidationError("S-invariance needs a delocalized cocycle");
  std::vector<ExactElement> idems;
  if (!c.idempotent.empty()) idems.push_back(exact_from(algebra_from_json(read_json_file(c.idempotent))));
  else idems.push_back(cyclic_average(G, phi.cls->gamma));
  for (const auto& p : idems)
    if (!is_idempotent_exact(G, p)) throw NotIdempotentError("idempotent fails p^2 = p exactly");
  PairingReport r = verify_s_invariance(phi.cochain, model, c.m, idems, c.tol);
  Outcome o;
  o.m = c.m;
  o.report = base_report(c, G);
  o.report["model"] = model_json(model);
  o.report["cocycle"] = cochain_summary(phi.cochain);
  Json ij = Json::array();
  for (const auto& p : idems) ij.push_back(exact_json(G, p));
  o.report["idempotents"] = ij;
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = G.name(phi.cls->gamma);
  o.pairings.push_back(r);
  return o;
}

Outcome verify_aps(const RunConfig& c) {
  SpectralModel model = load_model(c.model);
  LoadedCochain phi = load_cochain(c.cocycle, "--cocycle");
  const Group& G = model.D.group();
  require_same_group(phi.cochain.group(), G);
  AlgebraElement p = c.idempotent.empty() ? negative_projection(model)
                                          : algebra_from_json(read_json_file(c.idempotent));
  PairingReport r = aps_model_check(phi.cochain, p, model, c.m, c.tol);
  Outcome o;
  o.m = c.m;
  o.report = base_report(c, G);
  o.report["model"] = model_json(model);
  o.report["cocycle"] = cochain_summary(phi.cochain);
  o.report["idempotent"] = c.idempotent.empty() ? Json("negative spectral projection") : Json(c.idempotent);
  o.report["result"] = pairing_json(r);
  o.group_label = G.label();
  o.gamma_name = phi.cls ? G.name(phi.cls->gamma) : "";
  o.pairings.push_back(r);
  return o;
}

// Tuples to test an identity on: all of them when few, else a seeded sample.
std::vector<Tuple> identity_tuples(const Group& G, std::size_t len, Rng& rng, std::size_t cap = 2000) {
  const auto elems = G.elements();
  double total = std::pow(static_cast<double>(elems.size()), static_cast<double>(len));
  if (total <= static_cast<double>(cap)) return enumerate_tuples(G, len, nullptr);
  std::vector<Tuple> out;
  for (std::size_t s = 0; s < cap; ++s) {
    Tuple t(len);
    for (auto& g : t) g = elems[rng.below(elems.size())];
    out.push_back(std::move(t));
  }
  return out;
}

// Arbitrary (not skew) sparse cochain with rational values.
Cochain random_table_cochain(const Group& G, int degree, Flavor flavor, ClassPtr cls, Rng& rng,
                             std::size_t nonzeros) {
  const auto elems = G.elements();
  Cochain::Table table;
  for (std::size_t k = 0; k < nonzeros; ++k) {
    Tuple t(static_cast<std::size_t>(degree) + 1);
    for (auto& g : t) g = elems[rng.below(elems.size())];
    table[t] = random_rational(rng, false);
  }
  return Cochain::from_table(G, degree, flavor, std::move(table), std::move(cls));
}

Outcome verify_homotopy(const RunConfig& c) {
  Group G = load_group(c.group.empty() ? "s3" : c.group);
  if (!G.is_finite()) throw ValidationError("homotopy identity runs over finite groups");
  if (c.degree < 1 || c.degree > 4) throw ValidationError("--degree must be in 1..4");
  Rng rng(c.seed);
  std::size_t failures = 0, literal_failures = 0, checked = 0;
  for (int s = 0; s < c.count; ++s) {
    Cochain phi = random_table_cochain(G, c.degree, Flavor::HomogeneousGroup, nullptr, rng, 12);
    Cochain lhs = skew_symmetrize(phi) - phi;
    Cochain rhs = group_coboundary(chain_homotopy_p(phi)) + chain_homotopy_p(group_coboundary(phi));
    Cochain lit = group_coboundary(chain_homotopy_p(phi, HomotopySlot::RepeatLast)) +
                  chain_homotopy_p(group_coboundary(phi), HomotopySlot::RepeatLast);
    bool ok = true, lit_ok = true;
    for (const auto& t : identity_tuples(G, static_cast<std::size_t>(c.degree) + 1, rng, 400)) {
      QC l = lhs(t);
      ok = ok && l == rhs(t);
      lit_ok = lit_ok && l == lit(t);
      ++checked;
    }
    failures += !ok;
    literal_failures += !lit_ok;
  }
  Outcome o;
  o.report = base_report(c, G);
  Json res;
  res["check"] = "homotopy_identity";
  res["degree"] = c.degree;
  res["cochains"] = c.count;
  res["tuples_checked"] = checked;
  res["extra_slot"] = "identity";
  res["failures"] = failures;
  res["literal_extra_slot_failures"] = literal_failures;
  res["passed"] = failures == 0;
  o.report["result"] = res;
  return o;
}

Outcome verify_averaging(const RunConfig& c) {
  Group G = load_group(c.group.empty() ? "cyclic:4" : c.group);
  if (!G.is_finite()) throw ValidationError("averaging check runs over finite groups");
  if (c.degree < 0 || c.degree > 2) throw ValidationError("--degree must be in 0..2");
  auto cl = make_class(G, c.gamma.empty() ? G.name(G.generators().front()) : c.gamma, 1);
  if (!cl->nontrivial) throw ValidationError("averaging needs a nontrivial gamma");
  const std::uint64_t ord = cl->order;
  std::vector<Element> powers;
  for (std::uint64_t r = 0; r < ord; ++r) powers.push_back(G.power(cl->gamma, static_cast<std::int64_t>(r)));
  auto coset_min = [&](const Element& g) {
    Element best = g;
    for (const auto& p : powers) best = std::min(best, G.multiply(p, g));
    return best;
  };
  Rng rng(c.seed);
  const auto tuples = enumerate_tuples(G, static_cast<std::size_t>(c.degree) + 1, nullptr);
  mpq_class expected = 1, stated = 1;
  const mpq_class A(static_cast<long>(ord * (ord + 1) / 2));
  for (int k = 0; k <= c.degree; ++k) {
    expected *= static_cast<long>(ord);
    stated *= A;
  }
  std::size_t failures = 0, invariance_failures = 0;
  bool matches_stated = true;
  for (int s = 0; s < c.count; ++s) {
    // gamma-invariant alpha: a random function of the slotwise cosets.
    Cochain beta = random_table_cochain(G, c.degree, Flavor::RelativeNoGamma, cl, rng, 8);
    Cochain alpha(
        G, c.degree, Flavor::Relative,
        [beta, coset_min](const Tuple& t) {
          Tuple u = t;
          for (auto& g : u) g = coset_min(g);
          return beta(u);
        },
        cl);
    Cochain Ri = averaging_R(inclusion_iota(alpha));
    Cochain Rb = averaging_R(beta);
    for (const auto& t : tuples) {
      QC a = alpha(t), v = Ri(t);
      if (!(v == QC(expected) * a)) ++failures;
      if (!(v == QC(stated) * a) && !a.is_zero()) matches_stated = false;
      Tuple shifted = t;
      shifted[0] = G.multiply(cl->gamma, shifted[0]);
      if (!(Rb(shifted) == Rb(t))) ++invariance_failures;
    }
  }
  Outcome o;
  o.report = base_report(c, G);
  o.report["class"] = class_summary(*cl);
  Json res;
  res["check"] = "averaging";
  res["degree"] = c.degree;
  res["order"] = ord;
  res["coefficient_observed"] = format_rational(expected);
  res["coefficient_stated_triangular"] = format_rational(stated);
  res["stated_coefficient_matches"] = matches_stated;
  res["coefficient_discrepancy"] = expected != stated;
  res["failures"] = failures;
  res["gamma_invariance_failures"] = invariance_failures;
  res["passed"] = failures == 0 && invariance_failures == 0;
  o.report["result"] = res;
  return o;
}

Outcome validate_cmd(const RunConfig& c) {
  auto schema = parse_schema(c.schema);
  if (!schema) throw ValidationError("unknown schema '" + c.schema + "'");
  Diagnostics d = validate_file(c.file, *schema);
  Outcome o;
  o.report["config"] = config_json(c);
  Json diags = Json::array();
  for (const auto& x : d) diags.push_back(Json{{"path", x.path}, {"message", x.message}});
  o.report["result"] = Json{{"file", c.file}, {"schema", schema_name(*schema)}, {"valid", d.empty()},
                            {"diagnostics", diags}};
  return o;
}

void emit(const RunConfig& c, const Outcome& o, std::ostream& out) {
  std::string text;
  if (c.format == "csv") {
    if (o.pairings.empty()) throw ValidationError("csv output is only available for pairing commands");
    text = csv_header() + "\n";
    for (const auto& r : o.pairings) text += csv_row(r, o.group_label, o.gamma_name, o.m) + "\n";
  } else {
    text = dump_json(o.report);
  }
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error(c.out + ": cannot open for writing");
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delocalized cyclic cohomology toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<Outcome(const RunConfig&)> action;

  auto common = [&](CLI::App* sub, std::function<Outcome(const RunConfig&)> fn) {
    sub->add_option("--out", cfg.out, "Report path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", cfg.tol, "Absolute tolerance");
    sub->add_option("--seed", cfg.seed, "Seed for random cochains");
    sub->add_option("--radius", cfg.radius, "Truncation radius");
    sub->callback([&, sub, fn] {
      cfg.command = sub->get_parent()->get_name() + " " + sub->get_name();
      action = fn;
    });
  };
  auto group_opts = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Group label or group JSON file");
    sub->add_option("--gamma", cfg.gamma, "Class representative");
  };
  auto pairing_opts = [&](CLI::App* sub) {
    sub->add_option("--cocycle", cfg.cocycle, "Cocycle JSON");
    sub->add_option("--m", cfg.m, "Pairing degree index");
  };

  CLI::App* grp = app.add_subcommand("grp", "Group queries")->require_subcommand(1);
  CLI::App* s = grp->add_subcommand("describe", "Orders, balls, growth and classes");
  group_opts(s);
  common(s, grp_describe);
  s = grp->add_subcommand("ball", "Elements of a word-metric ball");
  group_opts(s);
  common(s, grp_ball);

  CLI::App* coh = app.add_subcommand("coh", "Cohomology")->require_subcommand(1);
  s = coh->add_subcommand("rank", "Exact cohomology ranks of a truncated complex");
  group_opts(s);
  s->add_option("--flavor", cfg.flavor, "Cochain flavor")->required();
  s->add_option("--max-degree", cfg.max_degree, "Highest degree");
  common(s, coh_rank);

  CLI::App* coc = app.add_subcommand("cocycle", "Cochain constructions")->require_subcommand(1);
  s = coc->add_subcommand("build", "Delocalized cocycle from a relative cochain");
  group_opts(s);
  s->add_option("--alpha", cfg.alpha, "Relative cochain JSON");
  s->add_flag("--trace", cfg.trace, "Build the class trace instead");
  s->add_flag("--normalize", cfg.normalize, "Apply the normalization map");
  common(s, cocycle_build);
  s = coc->add_subcommand("skew", "Skew symmetrization");
  s->add_option("--cochain", cfg.cochain, "Cochain JSON")->required();
  common(s, cocycle_skew);
  s = coc->add_subcommand("periodicity", "Periodicity operator");
  s->add_option("--cochain", cfg.cochain, "Cochain JSON")->required();
  s->add_flag("--plain", cfg.plain, "Use S on the full complex");
  common(s, cocycle_periodicity);
  s = coc->add_subcommand("growth-fit", "Polynomial growth bound");
  s->add_option("--cochain", cfg.cochain, "Cochain JSON")->required();
  common(s, cocycle_growth_fit);

  CLI::App* eta = app.add_subcommand("eta", "Delocalized eta invariant")->require_subcommand(1);
  s = eta->add_subcommand("compute", "Quadrature eta");
  s->add_option("--model", cfg.model, "Model JSON");
  s->add_option("--spectrum", cfg.spectrum, "Spectrum JSON");
  s->add_option("--class", cfg.class_id, "Class id in the spectrum");
  pairing_opts(s);
  common(s, eta_compute);

  CLI::App* tau = app.add_subcommand("tau", "Determinant map")->require_subcommand(1);
  s = tau->add_subcommand("compute", "Pairing with an invertible path");
  s->add_option("--path", cfg.path, "Path JSON")->required();
  pairing_opts(s);
  common(s, tau_compute);

  CLI::App* ch = app.add_subcommand("ch", "Chern character")->require_subcommand(1);
  s = ch->add_subcommand("compute", "Pairing with an idempotent");
  s->add_option("--idempotent", cfg.idempotent, "Idempotent JSON")->required();
  pairing_opts(s);
  common(s, ch_compute);

  CLI::App* ver = app.add_subcommand("verify", "Identity checks")->require_subcommand(1);
  s = ver->add_subcommand("lipschitz", "Lipschitz ratio of f and its coset version");
  group_opts(s);
  common(s, verify_lipschitz);
  s = ver->add_subcommand("transgression", "Transgression formula on a grid");
  s->add_option("--model", cfg.model, "Model JSON")->required();
  s->add_option("--gamma", cfg.gamma, "Class for the random cochain");
  s->add_option("--grid", cfg.grid, "Parameter values");
  s->add_option("--step", cfg.step, "Difference step");
  pairing_opts(s);
  common(s, verify_transgression_cmd);
  s = ver->add_subcommand("s-invariance", "Eta and ch against the periodicity operator");
  s->add_option("--model", cfg.model, "Model JSON")->required();
  s->add_option("--idempotent", cfg.idempotent, "Idempotent JSON (N = 1)");
  pairing_opts(s);
  common(s, verify_s_invariance_cmd);
  s = ver->add_subcommand("aps-model", "ch against eta through the connecting path");
  s->add_option("--model", cfg.model, "Model JSON")->required();
  s->add_option("--idempotent", cfg.idempotent, "Idempotent JSON");
  pairing_opts(s);
  common(s, verify_aps);
  s = ver->add_subcommand("homotopy-identity", "F - Id against the chain homotopy");
  group_opts(s);
  s->add_option("--degree", cfg.degree, "Cochain degree");
  s->add_option("--count", cfg.count, "Random cochains");
  common(s, verify_homotopy);
  s = ver->add_subcommand("averaging", "Averaging after inclusion");
  group_opts(s);
  s->add_option("--degree", cfg.degree, "Cochain degree");
  s->add_option("--count", cfg.count, "Random cochains");
  common(s, verify_averaging);

  CLI::App* val = app.add_subcommand("validate", "Schema validation of an input file");
  val->add_option("--schema", cfg.schema, "group, cochain, algebra, model, spectrum or path")->required();
  val->add_option("file", cfg.file, "Input file")->required();
  val->add_option("--out", cfg.out, "Report path");
  val->callback([&] {
    cfg.command = "validate";
    action = validate_cmd;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (!(cfg.tol > 0)) throw ValidationError("--tol must be positive");
    if (!(cfg.step > 0)) throw ValidationError("--step must be positive");
    Outcome o = action(cfg);
    emit(cfg, o, out);
    if (cfg.command == "validate" && !o.report["result"]["valid"].get<bool>()) {
      err << "validation error: " << cfg.file << "\n";
      return kExitValidation;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    // I/O failures surface verbatim.
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"deloc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace deloc::cli

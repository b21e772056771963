#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "deloc/io.hpp"

using namespace deloc;

namespace {

std::string data(const std::string& name) { return std::string(DELOC_TEST_DATA) + "/" + name; }

bool has_path(const Diagnostics& d, const std::string& path) {
  for (const auto& x : d)
    if (x.path == path) return true;
  return false;
}

}  // namespace

TEST_CASE("group labels") {
  CHECK(group_from_label("cyclic:4").order() == 4u);
  CHECK(group_from_label("s3").order() == 6u);
  CHECK(group_from_label("d4").order() == 8u);
  CHECK(group_from_label("product(cyclic:2,s3)").order() == 12u);
  CHECK_FALSE(group_from_label("heisenberg").is_finite());
  CHECK_THROWS_AS(group_from_label("cyclic:0"), ValidationError);
  CHECK_THROWS_AS(group_from_label("torus"), ValidationError);
  for (const char* l : {"cyclic:3", "free_abelian:2", "heisenberg", "s3", "d4"}) {
    Group G = group_from_label(l);
    Group back = group_from_json(group_to_json(G));
    CHECK(back == G);
  }
}

TEST_CASE("cochain files") {
  LoadedCochain c = cochain_from_json(read_json_file(data("trgamma.json")));
  CHECK(c.cochain.flavor() == Flavor::CyclicDelocalized);
  REQUIRE(c.cls);
  const Group& G = c.cochain.group();
  CHECK(c.cochain({G.parse("1")}) == QC(1));
  CHECK(c.cochain({G.identity()}).is_zero());

  auto tuples = enumerate_tuples(G, 1, c.cls.get());
  LoadedCochain back = cochain_from_json(cochain_to_json(c.cochain, tuples));
  for (const auto& t : enumerate_tuples(G, 1, nullptr)) CHECK(back.cochain(t) == c.cochain(t));
}

TEST_CASE("orbit storage extends by symmetry") {
  Json j = Json::parse(R"j({"flavor": "cyclic", "degree": 1, "group": "cyclic:3", "storage": "orbit",
    "entries": [{"tuple": ["1", "2"], "re": "3/4"}]})j");
  LoadedCochain c = cochain_from_json(j);
  const Group& G = c.cochain.group();
  // Degree one: rotation carries sign -1.
  CHECK(c.cochain({G.parse("2"), G.parse("1")}) == -c.cochain({G.parse("1"), G.parse("2")}));
}

TEST_CASE("diagnostics carry field paths") {
  Diagnostics d = validate_file(data("bad-rational.json"), Schema::Cochain);
  REQUIRE_FALSE(d.empty());
  CHECK(has_path(d, "entries[1].re"));
  CHECK(format_diagnostics(d).find("entries[1].re") != std::string::npos);

  Json missing = Json::parse(R"j({"flavor": "cyclic-delocalized", "degree": 0, "group": "cyclic:2", "entries": []})j");
  CHECK(has_path(validate(missing, Schema::Cochain), "class"));

  Json notherm = Json::parse(R"j({"group": "cyclic:2", "N": 1, "D": [{"g": "0", "matrix": [[[0, 1]]]}]})j");
  CHECK_FALSE(validate(notherm, Schema::Model).empty());
  CHECK_THROWS_AS(model_operator_from_json(notherm), ValidationError);

  Json spectrum = Json::parse(R"j({"classes": ["g"], "modes": [{"lambda": 1.0, "mult": {"h": 1}}]})j");
  CHECK(has_path(validate(spectrum, Schema::Spectrum), "modes[0].mult.h"));

  CHECK(validate(read_json_file(data("z2-model.json")), Schema::Model).empty());
  CHECK(validate(read_json_file(data("z2-rho.json")), Schema::Path).empty());
  CHECK(validate(read_json_file(data("s3.json")), Schema::Group).empty());
}

TEST_CASE("witness overrides are checked") {
  Json j = Json::parse(R"j({"flavor": "cyclic-delocalized", "degree": 0, "group": "s3",
    "class": {"gamma": "(12)"}, "witnesses": [{"member": "(13)", "h": "e"}],
    "entries": [{"tuple": ["(12)"], "re": "1"}]})j");
  CHECK(has_path(validate(j, Schema::Cochain), "witnesses[0].h"));
  j["witnesses"][0]["h"] = "(23)";
  CHECK(validate(j, Schema::Cochain).empty());
}

TEST_CASE("file errors") {
  CHECK_THROWS_AS(read_json_file(data("does-not-exist.json")), std::runtime_error);
  std::string tmp = "deloc-io-test-bad.json";
  {
    std::ofstream f(tmp);
    f << "{\n  \"a\": [1, 2,\n}\n";
  }
  try {
    read_json_file(tmp);
    FAIL("expected a syntax error");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find(tmp + ":3:") != std::string::npos);
  }
  std::remove(tmp.c_str());
}

TEST_CASE("model and spectrum round trips") {
  AlgebraElement D = model_operator_from_json(read_json_file(data("z2-model.json")));
  AlgebraElement back = model_operator_from_json(model_to_json(D));
  CHECK((back - D).max_abs() == 0.0);
  AlgebraElement p = algebra_from_json(read_json_file(data("z2-half.json")));
  CHECK((algebra_from_json(algebra_to_json(p)) - p).max_abs() == 0.0);
  SpectrumFile s = spectrum_from_json(read_json_file(data("z2-spectrum.json")));
  CHECK(s.modes.size() == 2);
  CHECK(spectrum_from_json(spectrum_to_json(s)) == s);
}

TEST_CASE("paths from files") {
  LoadedPath c = path_from_json(read_json_file(data("z2-connecting.json")));
  CHECK(c.path.kind == PathKind::Connecting);
  LoadedPath r = path_from_json(read_json_file(data("z2-rho.json")));
  CHECK(r.path.kind == PathKind::Rho);
  CHECK(r.model);
  CHECK(r.path.orientation == "U^-1");
}

TEST_CASE("tuple enumeration") {
  Group S3 = Group::symmetric3();
  auto cl = conjugacy_class(S3, S3.parse("(12)"), full_radius(S3));
  auto t = enumerate_tuples(S3, 2, &cl);
  CHECK(t.size() == 18);
  for (const auto& x : t) CHECK(cl.contains(S3.product_of(x)));
  CHECK(enumerate_tuples(S3, 2, nullptr).size() == 36);
  CHECK_THROWS_AS(enumerate_tuples(S3, 8, nullptr, 1000), CapacityError);
  CHECK_THROWS_AS(enumerate_tuples(Group::free_abelian(1), 1, nullptr), ComputationError);
}

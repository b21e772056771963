#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deloc/report.hpp"

namespace deloc {

struct Diagnostic {
  std::string path;  // e.g. entries[2].re
  std::string message;
};
using Diagnostics = std::vector<Diagnostic>;

std::string format_diagnostics(const Diagnostics& d);

enum class Schema { Group, Cochain, Algebra, Model, Spectrum, Path };
std::optional<Schema> parse_schema(const std::string& name);
std::string schema_name(Schema s);

// Reads and parses a JSON file. I/O failures raise std::runtime_error with the
// system message; syntax errors raise ValidationError with line and column.
Json read_json_file(const std::string& path);

Diagnostics validate(const Json& j, Schema s);
Diagnostics validate_file(const std::string& path, Schema s);

// Groups: a label such as "cyclic:4", "free_abelian:2", "heisenberg", "s3",
// "d4", "product(cyclic:2,heisenberg)", or a group object.
Group group_from_label(const std::string& label);
Group group_from_json(const Json& j);
Json group_to_json(const Group& G);

struct LoadedCochain {
  Cochain cochain;
  ClassPtr cls;
};

// Table storage reads entries verbatim; orbit storage treats them as orbit
// representatives and extends by the flavor's symmetries.
LoadedCochain cochain_from_json(const Json& j);
Json cochain_to_json(const Cochain& c, const std::vector<Tuple>& tuples);

// Tuples of the given length over a finite group, restricted to products in
// the class when one is given.
std::vector<Tuple> enumerate_tuples(const Group& G, std::size_t length, const ConjugacyClass* cl,
                                    std::size_t cap = 200000);

AlgebraElement algebra_from_json(const Json& j);
Json algebra_to_json(const AlgebraElement& a);
AlgebraElement model_operator_from_json(const Json& j);
Json model_to_json(const AlgebraElement& D);

SpectrumFile spectrum_from_json(const Json& j);
Json spectrum_to_json(const SpectrumFile& s);

struct LoadedPath {
  InvertiblePath path;
  std::shared_ptr<SpectralModel> model;  // owns the model behind rho paths
};
LoadedPath path_from_json(const Json& j);

}  // namespace deloc

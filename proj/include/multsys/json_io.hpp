#pragma once

#include <string>

#include <json.hpp>

#include <multsys/jointerg.hpp>
#include <multsys/systems.hpp>

namespace multsys {

using json = nlohmann::json;

// Parsers validate shape, reject unknown fields, and throw validation_error
// with a path into the document.
FgMultFunction parse_mult_function(const json& j, const std::string& path = "$");
FgAddFunction parse_add_function(const json& j, const std::string& path = "$");
DirichletCharacter parse_character(const json& j, const std::string& path = "$");
AddSystem parse_add_system(const json& j, const std::string& path = "$");
MultSystem parse_mult_system(const json& j, const std::string& path = "$");
ModeFunction parse_mode_function(const json& j, const std::string& path = "$");
IntegerSetSpec parse_integer_set(const json& j, const std::string& path = "$");

// Canonical serializers; emitted documents re-parse to equal values.
json to_json(const FgMultFunction& f);
json to_json(const FgAddFunction& a);
json to_json(const DirichletCharacter& chi);
json to_json(const AddSystem& T);
json to_json(const MultSystem& S);
json to_json(const ModeFunction& F);
json to_json(const IntegerSetSpec& E);

// Loads and parses a whole file; JSON syntax errors surface as
// validation_error carrying the byte offset reported by the parser.
json load_json_file(const std::string& filename);

// Locale-independent float formatting.  Measured payload values print with
// 15 significant digits; identity-carrying document values print with the
// shortest exact round-trip so re-parsing gives back the same double.
std::string fmt_double(double v);
std::string fmt_double_exact(double v);

// One-line dump of a canonical document: keys in nlohmann's lexicographic
// order, every double printed exactly.
std::string dump_canonical(const json& j);

// Streaming single-line JSON object writer for run records.  Values are
// formatted at the call site, so payload floats go through fmt_double while
// embedded canonical documents keep exact carriers.
class JsonLineWriter {
 public:
  JsonLineWriter() { out_ = "{"; }
  JsonLineWriter& field(const std::string& key, const std::string& str);
  JsonLineWriter& field(const std::string& key, const char* str);
  JsonLineWriter& field_raw(const std::string& key, const std::string& raw_json);
  JsonLineWriter& field(const std::string& key, i64 v);
  JsonLineWriter& field(const std::string& key, bool v);
  JsonLineWriter& field(const std::string& key, double v);  // 15 digits
  std::string finish();

 private:
  void sep();
  std::string out_;
  bool first_ = true;
};

std::string json_escape(const std::string& s);

}  // namespace multsys

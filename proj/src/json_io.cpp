#include <multsys/json_io.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace multsys {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw validation_error(path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) fail(path, "unknown field '" + it.key() + "'");
  }
}

i64 get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<i64>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<i64> get_int_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<i64> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

UnitPhase parse_phase(const json& j, const std::string& path) {
  const std::string type = get_string(field(j, "type", path), path + ".type");
  if (type == "rational") {
    reject_unknown(j, {"type", "num", "den"}, path);
    const i64 num = get_int(field(j, "num", path), path + ".num");
    const i64 den = get_int(field(j, "den", path), path + ".den");
    if (den <= 0) fail(path, "denominator must be positive");
    return UnitPhase::from_rational(num, den);
  }
  if (type == "irrational") {
    reject_unknown(j, {"type", "alpha"}, path);
    const double a = get_number(field(j, "alpha", path), path + ".alpha");
    if (!std::isfinite(a)) fail(path, "alpha must be finite");
    UnitPhase u = UnitPhase::from_irrational(a);
    if (u.alpha == 0.0) fail(path, "irrational carrier must lie strictly inside (0,1)");
    return u;
  }
  fail(path, "phase type must be 'rational' or 'irrational'");
}

PrimeSet parse_prime_set(const json& j, const std::string& path) {
  const std::string type = get_string(field(j, "type", path), path + ".type");
  try {
    if (type == "explicit") {
      reject_unknown(j, {"type", "primes"}, path);
      return PrimeSet::explicit_set(get_int_array(field(j, "primes", path), path + ".primes"));
    }
    if (type == "residue") {
      reject_unknown(j, {"type", "mod", "residues"}, path);
      return PrimeSet::residue_classes(
          get_int(field(j, "mod", path), path + ".mod"),
          get_int_array(field(j, "residues", path), path + ".residues"));
    }
    if (type == "default") {
      reject_unknown(j, {"type"}, path);
      return PrimeSet::all_primes();
    }
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
  fail(path, "spec type must be 'explicit', 'residue' or 'default'");
}

json phase_to_json(const UnitPhase& u) {
  json j;
  if (u.rational) {
    j["type"] = "rational";
    j["num"] = u.rat.num;
    j["den"] = u.rat.den;
  } else {
    j["type"] = "irrational";
    j["alpha"] = u.alpha;
  }
  return j;
}

json prime_set_to_json(const PrimeSet& s) {
  json j;
  switch (s.kind) {
    case PrimeSet::Kind::Explicit:
      j["type"] = "explicit";
      j["primes"] = s.primes;
      break;
    case PrimeSet::Kind::Residue:
      j["type"] = "residue";
      j["mod"] = s.modulus;
      j["residues"] = s.residues;
      break;
    case PrimeSet::Kind::Default:
      j["type"] = "default";
      break;
  }
  return j;
}

}  // namespace

FgMultFunction parse_mult_function(const json& j, const std::string& path) {
  reject_unknown(j, {"classes"}, path);
  const json& classes = field(j, "classes", path);
  if (!classes.is_array()) fail(path + ".classes", "expected an array");
  FgMultFunction f;
  for (size_t i = 0; i < classes.size(); ++i) {
    const std::string cpath = path + ".classes[" + std::to_string(i) + "]";
    reject_unknown(classes[i], {"spec", "phase"}, cpath);
    MultClass mc;
    mc.primes = parse_prime_set(field(classes[i], "spec", cpath), cpath + ".spec");
    mc.phase = parse_phase(field(classes[i], "phase", cpath), cpath + ".phase");
    f.classes.push_back(std::move(mc));
  }
  try {
    f.validate();
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
  return f;
}

FgAddFunction parse_add_function(const json& j, const std::string& path) {
  reject_unknown(j, {"classes"}, path);
  const json& classes = field(j, "classes", path);
  if (!classes.is_array()) fail(path + ".classes", "expected an array");
  FgAddFunction a;
  for (size_t i = 0; i < classes.size(); ++i) {
    const std::string cpath = path + ".classes[" + std::to_string(i) + "]";
    reject_unknown(classes[i], {"spec", "value"}, cpath);
    AddClass ac;
    ac.primes = parse_prime_set(field(classes[i], "spec", cpath), cpath + ".spec");
    ac.value = get_int(field(classes[i], "value", cpath), cpath + ".value");
    a.classes.push_back(std::move(ac));
  }
  try {
    a.validate();
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
  return a;
}

DirichletCharacter parse_character(const json& j, const std::string& path) {
  reject_unknown(j, {"modulus", "values"}, path);
  const i64 q = get_int(field(j, "modulus", path), path + ".modulus");
  const json& values = field(j, "values", path);
  if (!values.is_array()) fail(path + ".values", "expected an array");
  std::vector<std::optional<RationalPhase>> table;
  for (size_t i = 0; i < values.size(); ++i) {
    const std::string vpath = path + ".values[" + std::to_string(i) + "]";
    if (values[i].is_null()) {
      table.push_back(std::nullopt);
      continue;
    }
    reject_unknown(values[i], {"num", "den"}, vpath);
    const i64 num = get_int(field(values[i], "num", vpath), vpath + ".num");
    const i64 den = get_int(field(values[i], "den", vpath), vpath + ".den");
    if (den <= 0) fail(vpath, "denominator must be positive");
    table.push_back(RationalPhase(num, den));
  }
  try {
    return DirichletCharacter(q, std::move(table));
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
}

AddSystem parse_add_system(const json& j, const std::string& path) {
  reject_unknown(j, {"angle"}, path);
  return AddSystem::rotation(parse_phase(field(j, "angle", path), path + ".angle"));
}

MultSystem parse_mult_system(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, "kind", path), path + ".kind");
  try {
    if (kind == "rotation") {
      reject_unknown(j, {"kind", "generator", "band"}, path);
      i64 band = 0;
      if (j.contains("band")) band = get_int(j["band"], path + ".band");
      return MultSystem::rotation(
          parse_mult_function(field(j, "generator", path), path + ".generator"), band);
    }
    if (kind == "skew") {
      reject_unknown(j, {"kind", "base", "function", "band"}, path);
      i64 band = 0;
      if (j.contains("band")) band = get_int(j["band"], path + ".band");
      return MultSystem::skew(parse_add_system(field(j, "base", path), path + ".base"),
                              parse_add_function(field(j, "function", path), path + ".function"),
                              band);
    }
  } catch (const domain_error& e) {
    fail(path, e.what());
  }
  fail(path, "system kind must be 'rotation' or 'skew'");
}

ModeFunction parse_mode_function(const json& j, const std::string& path) {
  reject_unknown(j, {"space", "coeffs"}, path);
  const json& sp = field(j, "space", path);
  const std::string kind = get_string(field(sp, "kind", path + ".space"), path + ".space.kind");
  ModeSpace space;
  if (kind == "cyclic") {
    reject_unknown(sp, {"kind", "order"}, path + ".space");
    space.kind = ModeSpace::Kind::Cyclic;
    space.order = get_int(field(sp, "order", path + ".space"), path + ".space.order");
    if (space.order < 1) fail(path + ".space.order", "order must be >= 1");
  } else if (kind == "torus") {
    reject_unknown(sp, {"kind", "band"}, path + ".space");
    space.kind = ModeSpace::Kind::Torus;
    space.band = get_int(field(sp, "band", path + ".space"), path + ".space.band");
    if (space.band < 0) fail(path + ".space.band", "band must be >= 0");
  } else {
    fail(path + ".space.kind", "space kind must be 'cyclic' or 'torus'");
  }

  ModeFunction F;
  F.space = space;
  const json& coeffs = field(j, "coeffs", path);
  if (!coeffs.is_array()) fail(path + ".coeffs", "expected an array");
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const std::string cpath = path + ".coeffs[" + std::to_string(i) + "]";
    reject_unknown(coeffs[i], {"mode", "re", "im"}, cpath);
    const i64 mode = get_int(field(coeffs[i], "mode", cpath), cpath + ".mode");
    const double re = get_number(field(coeffs[i], "re", cpath), cpath + ".re");
    const double im = get_number(field(coeffs[i], "im", cpath), cpath + ".im");
    try {
      F.set_coeff(mode, {re, im});
    } catch (const domain_error& e) {
      fail(cpath, e.what());
    }
  }
  return F;
}

IntegerSetSpec parse_integer_set(const json& j, const std::string& path) {
  const std::string kind = get_string(field(j, "kind", path), path + ".kind");
  try {
    if (kind == "residue") {
      reject_unknown(j, {"kind", "mod", "residues", "horizon"}, path);
      return IntegerSetSpec::residue_union(
          get_int(field(j, "mod", path), path + ".mod"),
          get_int_array(field(j, "residues", path), path + ".residues"),
          get_int(field(j, "horizon", path), path + ".horizon"));
    }
    if (kind == "explicit") {
      reject_unknown(j, {"kind", "members", "horizon"}, path);
      return IntegerSetSpec::explicit_set(
          get_int_array(field(j, "members", path), path + ".members"),
          get_int(field(j, "horizon", path), path + ".horizon"));
    }
    if (kind == "threshold") {
      reject_unknown(j, {"kind", "min", "horizon"}, path);
      return IntegerSetSpec::threshold_rule(get_int(field(j, "min", path), path + ".min"),
                                            get_int(field(j, "horizon", path), path + ".horizon"));
    }
  } catch (const validation_error& e) {
    fail(path, e.what());
  }
  fail(path, "set kind must be 'residue', 'explicit' or 'threshold'");
}

json to_json(const FgMultFunction& f) {
  json classes = json::array();
  for (const auto& c : f.classes) {
    json jc;
    jc["spec"] = prime_set_to_json(c.primes);
    jc["phase"] = phase_to_json(c.phase);
    classes.push_back(jc);
  }
  return json{{"classes", classes}};
}

json to_json(const FgAddFunction& a) {
  json classes = json::array();
  for (const auto& c : a.classes) {
    json jc;
    jc["spec"] = prime_set_to_json(c.primes);
    jc["value"] = c.value;
    classes.push_back(jc);
  }
  return json{{"classes", classes}};
}

json to_json(const DirichletCharacter& chi) {
  json values = json::array();
  for (const auto& v : chi.table()) {
    if (!v) {
      values.push_back(nullptr);
    } else {
      values.push_back(json{{"num", v->num}, {"den", v->den}});
    }
  }
  return json{{"modulus", chi.modulus()}, {"values", values}};
}

json to_json(const AddSystem& T) { return json{{"angle", phase_to_json(T.angle)}}; }

json to_json(const MultSystem& S) {
  json j;
  if (S.kind() == MultSystem::Kind::Rotation) {
    j["kind"] = "rotation";
    j["generator"] = to_json(S.generator());
  } else {
    j["kind"] = "skew";
    j["base"] = to_json(S.base());
    j["function"] = to_json(S.additive_part());
  }
  if (S.space().kind == ModeSpace::Kind::Torus) j["band"] = S.space().band;
  return j;
}

json to_json(const ModeFunction& F) {
  json sp;
  if (F.space.kind == ModeSpace::Kind::Cyclic) {
    sp["kind"] = "cyclic";
    sp["order"] = F.space.order;
  } else {
    sp["kind"] = "torus";
    sp["band"] = F.space.band;
  }
  json coeffs = json::array();
  for (const auto& [j, c] : F.coeffs)
    coeffs.push_back(json{{"mode", j}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"space", sp}, {"coeffs", coeffs}};
}

json to_json(const IntegerSetSpec& E) {
  json j;
  switch (E.kind) {
    case IntegerSetSpec::Kind::ResidueUnion:
      j["kind"] = "residue";
      j["mod"] = E.modulus;
      j["residues"] = E.residues;
      break;
    case IntegerSetSpec::Kind::Explicit:
      j["kind"] = "explicit";
      j["members"] = E.members;
      break;
    case IntegerSetSpec::Kind::Threshold:
      j["kind"] = "threshold";
      j["min"] = E.threshold;
      break;
  }
  j["horizon"] = E.horizon;
  return j;
}

json load_json_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw validation_error("cannot open file: " + filename);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw validation_error("JSON parse error in " + filename + ": " + e.what());
  }
}

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

std::string fmt_double_exact(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string dump_canonical(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return "null";
    case json::value_t::boolean:
      return j.get<bool>() ? "true" : "false";
    case json::value_t::number_integer:
      return std::to_string(j.get<i64>());
    case json::value_t::number_unsigned:
      return std::to_string(j.get<u64>());
    case json::value_t::number_float:
      return fmt_double_exact(j.get<double>());
    case json::value_t::string:
      return "\"" + json_escape(j.get<std::string>()) + "\"";
    case json::value_t::array: {
      std::string out = "[";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",";
        out += dump_canonical(j[i]);
      }
      return out + "]";
    }
    case json::value_t::object: {
      std::string out = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(it.key()) + "\":" + dump_canonical(it.value());
      }
      return out + "}";
    }
    default:
      return "null";
  }
}

JsonLineWriter& JsonLineWriter::field(const std::string& key, const std::string& str) {
  sep();
  out_ += "\"" + json_escape(key) + "\":\"" + json_escape(str) + "\"";
  return *this;
}

JsonLineWriter& JsonLineWriter::field(const std::string& key, const char* str) {
  return field(key, std::string(str));
}

JsonLineWriter& JsonLineWriter::field_raw(const std::string& key, const std::string& raw_json) {
  sep();
  out_ += "\"" + json_escape(key) + "\":" + raw_json;
  return *this;
}

JsonLineWriter& JsonLineWriter::field(const std::string& key, i64 v) {
  sep();
  out_ += "\"" + json_escape(key) + "\":" + std::to_string(v);
  return *this;
}

JsonLineWriter& JsonLineWriter::field(const std::string& key, bool v) {
  sep();
  out_ += "\"" + json_escape(key) + "\":" + (v ? "true" : "false");
  return *this;
}

JsonLineWriter& JsonLineWriter::field(const std::string& key, double v) {
  sep();
  out_ += "\"" + json_escape(key) + "\":" + fmt_double(v);
  return *this;
}

std::string JsonLineWriter::finish() {
  out_ += "}";
  return out_;
}

void JsonLineWriter::sep() {
  if (!first_) out_ += ",";
  first_ = false;
}

}  // namespace multsys

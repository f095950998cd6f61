#include "koszul/cli/schema.hpp"

#include <fstream>

#include "koszul/error.hpp"

namespace koszul::cli {

using json = nlohmann::ordered_json;

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  throw Error(ErrorCode::invalid_params, "schema uses unknown type '" + t + "'");
}

class Checker {
 public:
  explicit Checker(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& at) {
    if (s.contains("$ref")) {
      check(v, resolve(s["$ref"].get<std::string>()), at);
      return;
    }
    if (s.contains("type")) {
      const json& t = s["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
      }
      if (!ok) {
        fail(at, "expected type " + t.dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) fail(at, "expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& x : s["enum"]) found = found || x == v;
      if (!found) fail(at, v.dump() + " is not one of " + s["enum"].dump());
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
      fail(at, "below minimum " + s["minimum"].dump());
    if (v.is_object()) object(v, s, at);
    if (v.is_array() && s.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], at + "/" + std::to_string(i));
  }

  std::vector<std::string> errors;

 private:
  void object(const json& v, const json& s, const std::string& at) {
    if (s.contains("required"))
      for (const auto& k : s["required"])
        if (!v.contains(k.get<std::string>())) fail(at, "missing property '" + k.get<std::string>() + "'");
    const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
    for (const auto& [k, x] : v.items()) {
      if (s.contains("properties") && s["properties"].contains(k))
        check(x, s["properties"][k], at + "/" + k);
      else if (closed)
        fail(at, "unexpected property '" + k + "'");
    }
  }

  const json& resolve(const std::string& ref) {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0)
      throw Error(ErrorCode::invalid_params, "only local $defs references are supported: " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  void fail(const std::string& at, const std::string& msg) {
    errors.push_back((at.empty() ? "/" : at) + ": " + msg);
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> schema_errors(const json& doc, const json& schema) {
  Checker c(schema);
  c.check(doc, schema, "");
  return c.errors;
}

json load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read schema " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io_error, "schema " + path + " is not JSON: " + e.what());
  }
}

}  // namespace koszul::cli

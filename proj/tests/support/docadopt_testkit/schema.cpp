#include "docadopt_testkit/schema.hpp"

#include <fstream>
#include <stdexcept>

namespace docadopt::testkit {
namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
  if (type == "number") return v.is_number();
  throw std::invalid_argument("schema: unsupported type " + type);
}

const json& resolve(const json& root, const std::string& ref) {
  const std::string prefix = "#/$defs/";
  if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("schema: unsupported $ref " + ref);
  return root.at("$defs").at(ref.substr(prefix.size()));
}

void check(const json& root, const json& schema, const json& v, const std::string& where,
           std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    check(root, resolve(root, schema["$ref"].get<std::string>()), v, where, errors);
    return;
  }
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(v, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || has_type(v, alt.get<std::string>());
    }
    if (!ok) {
      errors.push_back(where + ": expected type " + t.dump() + ", got " + v.type_name());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) errors.push_back(where + ": value " + v.dump() + " not in enum");
  }
  if (schema.contains("const") && schema["const"] != v) {
    errors.push_back(where + ": expected const " + schema["const"].dump());
  }
  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& alt : schema["anyOf"]) {
      std::vector<std::string> sub;
      check(root, alt, v, where, sub);
      if (sub.empty()) {
        any = true;
        break;
      }
    }
    if (!any) errors.push_back(where + ": no anyOf alternative matched");
  }
  if (v.is_string()) {
    if (schema.contains("minLength") && v.get<std::string>().size() < schema["minLength"].get<std::size_t>()) {
      errors.push_back(where + ": string shorter than minLength");
    }
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) errors.push_back(where + ": below minimum");
    if (schema.contains("maximum") && x > schema["maximum"].get<double>()) errors.push_back(where + ": above maximum");
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(where + ": fewer than minItems");
    }
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
      errors.push_back(where + ": more than maxItems");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check(root, schema["items"], v[i], where + "/" + std::to_string(i), errors);
      }
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!v.contains(key.get<std::string>())) errors.push_back(where + ": missing required " + key.get<std::string>());
      }
    }
    const json props = schema.value("properties", json::object());
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) {
        check(root, props[key], value, where + "/" + key, errors);
        continue;
      }
      if (!schema.contains("additionalProperties")) continue;
      const auto& extra = schema["additionalProperties"];
      if (extra.is_boolean()) {
        if (!extra.get<bool>()) errors.push_back(where + ": unexpected property " + key);
      } else {
        check(root, extra, value, where + "/" + key, errors);
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& instance) {
  std::vector<std::string> errors;
  check(schema, schema, instance, "", errors);
  return errors;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

std::vector<nlohmann::json> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<nlohmann::json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

}  // namespace docadopt::testkit

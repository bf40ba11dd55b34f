#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace comlim {

/// Deterministic number formatting shared by every emitted report: 12
/// significant digits, negative zero normalized.
std::string format_number(double v);

/// Insertion-ordered JSON document builder. Output is byte-stable for a
/// given build sequence, which the report golden tests rely on.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue object();
  static JsonValue array();
  static JsonValue of(double v);
  static JsonValue of(bool v);
  static JsonValue of(int v);
  static JsonValue of(const std::string& v);
  static JsonValue of(const char* v);

  JsonValue& set(const std::string& key, JsonValue v);
  JsonValue& push(JsonValue v);

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Null, Bool, Number, Int, String, Array, Object };
  Kind kind_;
  bool bool_ = false;
  double num_ = 0;
  long long int_ = 0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;

  void write(std::string& out, int indent, int depth) const;
};

}  // namespace comlim

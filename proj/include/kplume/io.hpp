#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace kplume {

/// Doubles formatted with 17 significant digits: round-trip exact and
/// byte-stable across runs.
std::string fmt17(double value);

/// Minimal JSON document builder. Output is deterministic: object keys keep
/// insertion order and numbers go through fmt17. (Parsing, where it is
/// needed, uses nlohmann::json; this writer only exists to pin the bytes.)
class JsonValue {
 public:
  static JsonValue object();
  static JsonValue array();
  static JsonValue str(std::string s);
  static JsonValue num(double v);
  static JsonValue integer(std::int64_t v);
  static JsonValue uinteger(std::uint64_t v);
  static JsonValue boolean(bool v);

  JsonValue& add(std::string key, JsonValue v);  // object
  JsonValue& push(JsonValue v);                  // array

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, String, Number, Integer, UInteger, Bool };
  Kind kind_ = Kind::Object;
  std::string scalar_;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> items_;

  void write(std::string& out, int indent, int depth) const;
};

/// Writes text to a file, throwing on failure. Content is written as-is
/// ('\n' newlines only).
void write_file(const std::string& path, const std::string& content);

/// Current time as an ISO-8601 UTC stamp.
std::string utc_timestamp();

/// Simple CSV buffer with fixed formatting rules: integers verbatim,
/// doubles via fmt17.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::initializer_list<std::string> header);
  CsvBuilder& cell(std::int64_t v);
  CsvBuilder& cell(int v);
  CsvBuilder& cell(std::uint64_t v);
  CsvBuilder& cell(double v);
  CsvBuilder& endrow();
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
  bool row_open_ = false;
};

}  // namespace kplume

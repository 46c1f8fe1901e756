#include "kplume/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace kplume {

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}

JsonValue JsonValue::str(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.scalar_ = std::move(s);
  return v;
}

JsonValue JsonValue::num(double d) {
  JsonValue v;
  v.kind_ = Kind::Number;
  v.scalar_ = fmt17(d);
  return v;
}

JsonValue JsonValue::integer(std::int64_t i) {
  JsonValue v;
  v.kind_ = Kind::Integer;
  v.scalar_ = std::to_string(i);
  return v;
}

JsonValue JsonValue::uinteger(std::uint64_t u) {
  JsonValue v;
  v.kind_ = Kind::UInteger;
  v.scalar_ = std::to_string(u);
  return v;
}

JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.scalar_ = b ? "true" : "false";
  return v;
}

JsonValue& JsonValue::add(std::string key, JsonValue v) {
  members_.emplace_back(std::move(key), std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
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
  out += '"';
}

void pad(std::string& out, int indent, int depth) {
  if (indent > 0) out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  const char* nl = indent > 0 ? "\n" : "";
  switch (kind_) {
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      for (std::size_t i = 0; i < members_.size(); ++i) {
        pad(out, indent, depth + 1);
        write_escaped(out, members_[i].first);
        out += indent > 0 ? ": " : ":";
        members_[i].second.write(out, indent, depth + 1);
        if (i + 1 < members_.size()) out += ',';
        out += nl;
      }
      pad(out, indent, depth);
      out += '}';
      return;
    }
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      out += nl;
      for (std::size_t i = 0; i < items_.size(); ++i) {
        pad(out, indent, depth + 1);
        items_[i].write(out, indent, depth + 1);
        if (i + 1 < items_.size()) out += ',';
        out += nl;
      }
      pad(out, indent, depth);
      out += ']';
      return;
    }
    case Kind::String:
      write_escaped(out, scalar_);
      return;
    default:
      out += scalar_;
      return;
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CsvBuilder::CsvBuilder(std::initializer_list<std::string> header) {
  bool first = true;
  for (const std::string& h : header) {
    if (!first) buf_ += ',';
    buf_ += h;
    first = false;
  }
  buf_ += '\n';
}

CsvBuilder& CsvBuilder::cell(std::int64_t v) {
  if (row_open_) buf_ += ',';
  buf_ += std::to_string(v);
  row_open_ = true;
  return *this;
}

CsvBuilder& CsvBuilder::cell(int v) { return cell(static_cast<std::int64_t>(v)); }

CsvBuilder& CsvBuilder::cell(std::uint64_t v) {
  if (row_open_) buf_ += ',';
  buf_ += std::to_string(v);
  row_open_ = true;
  return *this;
}

CsvBuilder& CsvBuilder::cell(double v) {
  if (row_open_) buf_ += ',';
  buf_ += fmt17(v);
  row_open_ = true;
  return *this;
}

CsvBuilder& CsvBuilder::endrow() {
  buf_ += '\n';
  row_open_ = false;
  return *this;
}

}  // namespace kplume

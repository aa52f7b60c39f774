#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace fgt {

//! Minimal deterministic JSON emitter. Numbers are written with 17
//! significant digits so every double round-trips exactly and reports are
//! byte-stable across runs and thread counts.
class JsonWriter {
public:
  std::string take() { return std::move(out_); }
  const std::string& str() const { return out_; }

  void begin_object() { separator(); out_ += '{'; stack_.push_back(true); first_ = true; }
  void end_object() { out_ += '}'; stack_.pop_back(); first_ = false; }
  void begin_array() { separator(); out_ += '['; stack_.push_back(false); first_ = true; }
  void end_array() { out_ += ']'; stack_.pop_back(); first_ = false; }

  void key(std::string_view k)
  {
    separator();
    append_string(k);
    out_ += ':';
    pending_value_ = true;
  }

  void value(std::string_view s) { separator(); append_string(s); }
  void value(const char* s) { value(std::string_view(s)); }
  void value(bool b) { separator(); out_ += b ? "true" : "false"; }
  void value(double d)
  {
    separator();
    if (!std::isfinite(d)) {
      out_ += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    out_ += buf;
  }
  void value(std::int64_t v)
  {
    separator();
    out_ += std::to_string(v);
  }
  void value(std::uint64_t v)
  {
    separator();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(unsigned v) { value(static_cast<std::uint64_t>(v)); }

  template <class T>
  void kv(std::string_view k, const T& v)
  {
    key(k);
    value(v);
  }

private:
  void separator()
  {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty() && !first_)
      out_ += ',';
    first_ = false;
  }

  void append_string(std::string_view s)
  {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> stack_;
  bool first_ = true;
  bool pending_value_ = false;
};

} // namespace fgt

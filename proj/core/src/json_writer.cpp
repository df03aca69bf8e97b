#include "knalg/json_writer.hpp"

#include <cmath>

#include <fmt/format.h>

#include "knalg/error.hpp"

namespace knalg {

std::string formatDouble(double v) {
  if (!std::isfinite(v)) throw Error(fmt::format("cannot serialize non-finite value {}", v));
  return fmt::format("{:.17g}", v);
}

void JsonWriter::newline() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::beforeValue() {
  if (afterKey_) {
    afterKey_ = false;
    return;
  }
  if (stack_.empty()) return;
  Frame& top = stack_.back();
  if (!top.empty) out_ += top.inlined ? ", " : ",";
  if (!top.inlined) newline();
  top.empty = false;
}

JsonWriter& JsonWriter::beginObject(bool inlined) {
  beforeValue();
  out_ += '{';
  stack_.push_back(Frame{inlined || (!stack_.empty() && stack_.back().inlined)});
  return *this;
}

JsonWriter& JsonWriter::endObject() {
  const Frame top = stack_.back();
  stack_.pop_back();
  if (!top.inlined && !top.empty) newline();
  out_ += '}';
  if (stack_.empty()) out_ += '\n';
  return *this;
}

JsonWriter& JsonWriter::beginArray(bool inlined) {
  beforeValue();
  out_ += '[';
  stack_.push_back(Frame{inlined || (!stack_.empty() && stack_.back().inlined)});
  return *this;
}

JsonWriter& JsonWriter::endArray() {
  const Frame top = stack_.back();
  stack_.pop_back();
  if (!top.inlined && !top.empty) newline();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  beforeValue();
  writeString(name);
  out_ += ": ";
  afterKey_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  beforeValue();
  out_ += formatDouble(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  beforeValue();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  beforeValue();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  beforeValue();
  writeString(v);
  return *this;
}

void JsonWriter::writeString(std::string_view v) {
  out_ += '"';
  for (char ch : v) {
    switch (ch) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out_ += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out_ += ch;
        }
    }
  }
  out_ += '"';
}

JsonWriter& JsonWriter::complex(cplx v) {
  beginArray(true);
  value(v.real());
  value(v.imag());
  return endArray();
}

JsonWriter& JsonWriter::series(const LaurentSeries& s) {
  beginObject(true);
  key("minExp").value(s.minExp());
  key("truncOrder").value(s.truncOrder());
  key("coeffs").beginArray(true);
  for (const cplx& c : s.coeffs()) complex(c);
  endArray();
  return endObject();
}

}  // namespace knalg

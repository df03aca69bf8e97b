#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "knalg/series.hpp"

namespace knalg {

/// Deterministic JSON emitter: doubles with 17 significant digits, keys in call order.
/// Nested containers opened with `inlined = true` stay on one line.
class JsonWriter {
 public:
  JsonWriter& beginObject(bool inlined = false);
  JsonWriter& endObject();
  JsonWriter& beginArray(bool inlined = false);
  JsonWriter& endArray();
  JsonWriter& key(std::string_view name);

  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(bool v);

  /// {minExp, truncOrder, coeffs: [[re, im], ...]}
  JsonWriter& series(const LaurentSeries& s);
  /// [re, im]
  JsonWriter& complex(cplx v);

  const std::string& str() const noexcept { return out_; }

 private:
  struct Frame {
    bool inlined;
    bool empty = true;
  };
  void beforeValue();
  void newline();
  void writeString(std::string_view v);

  std::string out_;
  std::vector<Frame> stack_;
  bool afterKey_ = false;
};

/// "%.17g" formatting; throws Error for non-finite values.
std::string formatDouble(double v);

}  // namespace knalg

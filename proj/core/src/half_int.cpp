#include "knalg/half_int.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "knalg/error.hpp"

namespace knalg {

HalfInt HalfInt::fromDouble(double x) {
  const double twice = 2.0 * x;
  if (!std::isfinite(x) || twice != std::round(twice) || std::fabs(twice) > 1e9) {
    throw DomainError(fmt::format("{} is not a half-integer", x));
  }
  return fromTwice(static_cast<int>(twice));
}

HalfInt HalfInt::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    int num = 0;
    int den = 0;
    const char* b = text.data();
    auto r1 = std::from_chars(b, b + slash, num);
    auto r2 = std::from_chars(b + slash + 1, b + text.size(), den);
    if (r1.ec != std::errc{} || r1.ptr != b + slash || r2.ec != std::errc{} ||
        r2.ptr != b + text.size() || (den != 1 && den != 2)) {
      throw DomainError(fmt::format("cannot parse '{}' as a half-integer", text));
    }
    return den == 1 ? HalfInt(num) : fromTwice(num);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError(fmt::format("cannot parse '{}' as a half-integer", text));
  }
  if (used != text.size()) throw DomainError(fmt::format("cannot parse '{}' as a half-integer", text));
  return fromDouble(v);
}

int HalfInt::toInt() const {
  if (!isInteger()) throw DomainError(fmt::format("{} is not an integer", str()));
  return twice_ / 2;
}

std::string HalfInt::str() const {
  if (isInteger()) return std::to_string(twice_ / 2);
  return fmt::format("{}", 0.5 * twice_);
}

}  // namespace knalg

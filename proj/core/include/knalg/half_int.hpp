#pragma once

#include <compare>
#include <cstdlib>
#include <functional>
#include <string>

namespace knalg {

/// Exact half-integer, stored as twice its value. Indices of the algebra are
/// integral for even genus and half-odd-integral for odd genus.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int n) : twice_(2 * n) {}  // NOLINT: integers are half-integers

  static constexpr HalfInt fromTwice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Throws DomainError unless x is an exact multiple of 1/2.
  static HalfInt fromDouble(double x);
  /// Accepts "3", "-2.5", "7/2", "-1/2".
  static HalfInt parse(const std::string& text);

  constexpr int twice() const { return twice_; }
  constexpr bool isInteger() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }
  /// Throws DomainError when the value is half-odd.
  int toInt() const;

  /// Decimal form: "3", "-0.5".
  std::string str() const;

  constexpr HalfInt operator-() const { return fromTwice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

}  // namespace knalg

template <>
struct std::hash<knalg::HalfInt> {
  std::size_t operator()(knalg::HalfInt h) const noexcept { return std::hash<int>{}(h.twice()); }
};

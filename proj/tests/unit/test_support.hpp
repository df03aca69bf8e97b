#pragma once

#include <complex>

#include <gtest/gtest.h>

#include "knalg/half_int.hpp"

namespace knalg::test {

inline HalfInt H(double x) { return HalfInt::fromDouble(x); }

inline ::testing::AssertionResult near(std::complex<double> got, std::complex<double> want, double tol) {
  const double err = std::abs(got - want);
  if (err <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "got " << got << ", want " << want << ", |diff| = " << err << " > " << tol;
}

}  // namespace knalg::test

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bsshift/approx.hpp"

using namespace bsshift;

namespace {

struct TableRow {
  double ratio, extrap6, extrap8;
};

// Closed-form columns of the reference comparison table.
constexpr TableRow kTable[] = {
    {1.0, 0.063219, 0.063224},  {3.5, 0.706106, 0.708068},  {6.0, 1.637358, 1.642716},
    {8.5, 2.631189, 2.639640},  {11.0, 3.645118, 3.656504}, {13.5, 4.667893, 4.682141},
    {16.0, 5.695333, 5.712406}, {18.5, 6.725536, 6.745409}, {21.0, 7.757510, 7.780169},
};

}  // namespace

TEST(RabiParams, Validation) {
  EXPECT_THROW(RabiParams(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RabiParams(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RabiParams(1.0, -0.1), std::invalid_argument);
  EXPECT_THROW(RabiParams(std::numeric_limits<double>::quiet_NaN(), 1.0), std::invalid_argument);
  EXPECT_THROW(RabiParams(1.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_NO_THROW(RabiParams(1.0, 0.0));
}

TEST(ExtrapolatedShift, TableValues) {
  for (const auto& row : kTable) {
    const RabiParams p(1.0, row.ratio);
    EXPECT_NEAR(extrapolated_shift(p, 6).shift, row.extrap6, 5e-6) << row.ratio;
    EXPECT_NEAR(extrapolated_shift(p, 8).shift, row.extrap8, 5e-6) << row.ratio;
  }
}

TEST(ExtrapolatedShift, SecondOrderClosedForm) {
  const ShiftReport r = extrapolated_shift(RabiParams(1.0, 1.0), 2);
  EXPECT_NEAR(r.shift, 0.0606601717798213, 1e-15);
  EXPECT_EQ(r.method, Method::EXTRAP2);
  EXPECT_EQ(r.resonance(), 1.0 + r.shift);
}

TEST(ExtrapolatedShift, ZeroDriveIsExactlyZero) {
  for (int n : {2, 4, 6, 8}) {
    EXPECT_EQ(extrapolated_shift(RabiParams(3.7, 0.0), n).shift, 0.0);
  }
}

TEST(ExtrapolatedShift, InvalidOrder) {
  EXPECT_THROW(extrapolated_shift(RabiParams(1.0, 1.0), 3), std::invalid_argument);
  EXPECT_THROW(extrapolated_shift(RabiParams(1.0, 1.0), 10), std::invalid_argument);
}

TEST(ExtrapolatedShift, DiagnosticsCarryRegime) {
  EXPECT_EQ(extrapolated_shift(RabiParams(1.0, 0.1), 8).diagnostic<std::string>("regime"), "weak");
  EXPECT_EQ(extrapolated_shift(RabiParams(1.0, 1.0), 8).diagnostic<std::string>("regime"), "intermediate");
  EXPECT_EQ(extrapolated_shift(RabiParams(1.0, 21.0), 8).diagnostic<std::string>("regime"), "strong");
}

TEST(ExtrapolatedShift, HomogeneityProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_lambda(-3.0, 3.0), w0(0.1, 10.0), ratio(0.0, 40.0);
  for (int i = 0; i < 400; ++i) {
    const double lambda = std::pow(10.0, log_lambda(rng));
    const double omega0 = w0(rng);
    const double amplitude = omega0 * ratio(rng);
    for (int n : {2, 4, 6, 8}) {
      const double base = extrapolated_shift_value(omega0, amplitude, n);
      const double scaled = extrapolated_shift_value(lambda * omega0, lambda * amplitude, n);
      EXPECT_NEAR(scaled / (lambda * base), 1.0, 1e-12) << "n=" << n << " lambda=" << lambda;
    }
  }
}

TEST(ExtrapolatedShift, StrictlyIncreasingInAmplitude) {
  for (int n : {2, 4, 6, 8}) {
    double prev = 0.0;
    for (int i = 1; i <= 300; ++i) {
      const double s = extrapolated_shift_value(1.0, 0.1 * i, n);
      EXPECT_GT(s, prev) << "n=" << n << " A=" << 0.1 * i;
      prev = s;
    }
  }
}

TEST(ExtrapolatedShift, AsymptoticSlope) {
  for (int n : {2, 4, 6, 8}) {
    const double a = 1e6;
    const double slope = extrapolated_shift_value(1.0, a, n) / a;
    EXPECT_NEAR(slope * asymptotic_divisor(derive_formula(n)), 1.0, 1e-4) << n;
  }
}

TEST(ExtrapolatedShift, FiniteWhereSeriesDiverges) {
  const double s = extrapolated_shift_value(1e-3, 1.0, 8);
  EXPECT_TRUE(std::isfinite(s));
  EXPECT_NEAR(s, 1.0 / 2.4030, 0.01 / 2.4030);
  EXPECT_GT(pt_shift_value(1e-3, 1.0, 8), 1e6 * s);
}

TEST(ExtrapolatedShift, BranchesAgreeAtSwitchPoint) {
  for (int n : {2, 4, 6, 8}) {
    const double below = extrapolated_shift_value(1.0, std::nextafter(1.0, 0.0), n);
    const double above = extrapolated_shift_value(1.0, std::nextafter(1.0, 2.0), n);
    EXPECT_NEAR(below, above, 1e-14) << n;
  }
}

// |extrap - pt| ~ C x^(n+2): log-log slope between x = 0.1 and 0.01.
TEST(ExtrapolatedShift, SmallAmplitudeAgreementExponent) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  for (int n : {2, 4, 6, 8}) {
    auto gap = [n](const char* x) {
      const Big a(x);
      return boost::multiprecision::abs(extrapolated_shift_value(Big(1), a, n) - pt_shift_value(Big(1), a, n));
    };
    const double slope = static_cast<double>(boost::multiprecision::log10(gap("0.1") / gap("0.01")));
    EXPECT_NEAR(slope, n + 2, 0.1) << "n=" << n;
  }
}

TEST(PtShift, Values) {
  EXPECT_NEAR(pt_shift(RabiParams(1.0, 1.0), 8).shift, 0.0632218, 1e-7);
  EXPECT_NEAR(pt_shift(RabiParams(1.0, 1.0), 8).shift, 0.06322181224822998, 1e-16);
  EXPECT_DOUBLE_EQ(pt_shift(RabiParams(1.0, 1.0), 2).shift, 0.0625);
  EXPECT_EQ(pt_shift(RabiParams(2.0, 0.0), 8).shift, 0.0);
  EXPECT_THROW(pt_shift(RabiParams(1.0, 1.0), 7), std::invalid_argument);
  EXPECT_EQ(pt_shift(RabiParams(1.0, 1.0), 6).method, Method::PT6);
}

TEST(RwaShift, AlwaysZero) {
  EXPECT_EQ(rwa_shift(RabiParams(1.0, 21.0)).shift, 0.0);
  EXPECT_EQ(rwa_shift(RabiParams(5.0, 0.0)).shift, 0.0);
  EXPECT_EQ(rwa_shift(RabiParams(2.0, 100.0)).shift, 0.0);
  EXPECT_EQ(rwa_shift(RabiParams(2.0, 100.0)).resonance(), 2.0);
}

TEST(AsymptoticShift, Values) {
  EXPECT_NEAR(asymptotic_shift(RabiParams(1.0, 24.04826)).shift, 10.0, 1e-4);
  EXPECT_NEAR(asymptotic_shift(RabiParams(1.0, 21.0)).shift, 8.73245, 1e-4);
  EXPECT_EQ(asymptotic_shift(RabiParams(1.0, 0.0)).shift, 0.0);
}

TEST(AsymptoticShift, FlagsWeakDriving) {
  EXPECT_TRUE(asymptotic_shift(RabiParams(1.0, 5.0)).diagnostic<std::string>("warning").has_value());
  EXPECT_FALSE(asymptotic_shift(RabiParams(1.0, 50.0)).diagnostic<std::string>("warning").has_value());
}

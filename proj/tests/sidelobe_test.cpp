#include <gtest/gtest.h>

#include "phasedist/sidelobe.hpp"
#include "test_support.hpp"

using namespace phasedist;

TEST(DtftMagnitude, DcIsWindowSum) {
  const auto w = make_window(WindowSpec::hamming(64));
  double sum = 0.0;
  for (double v : w) sum += v;
  EXPECT_NEAR(dtft_magnitude(w, 0.0), sum, 1e-12);
  EXPECT_NEAR(dtft_magnitude(std::vector<double>(16, 1.0), kTwoPi * 3 / 16), 0.0, 1e-12);
}

TEST(Sidelobe, OrderingAtQuarterRate) {
  const double rect = sidelobe_suppression_db(WindowSpec::rectangular(512), kPi / 2);
  const double hamming = sidelobe_suppression_db(WindowSpec::hamming(512), kPi / 2);
  const double hann = sidelobe_suppression_db(WindowSpec::hann(512), kPi / 2);
  EXPECT_TRUE(std::isfinite(rect));
  EXPECT_LT(rect, 0.0);
  EXPECT_LT(hamming, rect);
  EXPECT_LT(hann, hamming);
}

TEST(Sidelobe, MainLobeIsNearZeroDb) {
  for (double alpha : {0.0, 0.25, 0.46, 0.5}) {
    WindowSpec spec{alpha, WindowMode::periodic, 512};
    const double db = sidelobe_suppression_db(spec, 1e-6);
    EXPECT_LE(db, 0.0);
    EXPECT_GE(db, -1.5) << alpha;
  }
}

TEST(Sidelobe, MonotoneAcrossAlphaSweep) {
  double previous = 1.0;
  for (int i = 0; i <= 10; ++i) {
    WindowSpec spec{0.05 * i, WindowMode::periodic, 512};
    const double db = sidelobe_suppression_db(spec, kPi / 2);
    EXPECT_LE(db, previous) << "alpha=" << spec.alpha;
    previous = db;
  }
}

TEST(Sidelobe, RejectsOffsetOutsideRange) {
  for (double offset : {0.0, -0.1, kPi + 1e-9}) {
    try {
      sidelobe_suppression_db(WindowSpec::hann(64), offset);
      FAIL() << offset;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::configuration);
    }
  }
  EXPECT_NO_THROW(sidelobe_suppression_db(WindowSpec::hann(64), kPi));
}

#include <filesystem>

#include <gtest/gtest.h>

#include "kappa/graph_io.hpp"
#include "kappa/serialize.hpp"
#include "kappa/threshold.hpp"

namespace kappa {
namespace {

std::filesystem::path golden(const std::string& name) {
  return std::filesystem::path(KAPPA_SOURCE_DIR) / "tests" / "golden" / name;
}

TEST(Threshold, HalfOfDPlusK) {
  EXPECT_EQ(admissible_threshold(3, 2), Rational(5, 2));
  EXPECT_EQ(admissible_threshold(4, 2), Rational(3));
  EXPECT_EQ(format_rational(admissible_threshold(3, 2)), "5/2");
  EXPECT_EQ(format_rational(admissible_threshold(4, 2)), "3");
}

TEST(Threshold, SharpenedPinnedDistanceValues) {
  EXPECT_EQ(sharpened_distance_threshold(2), Rational(5, 4));
  EXPECT_EQ(sharpened_distance_threshold(3), Rational(12, 7));
  for (int d = 3; d <= 40; ++d) {
    const Rational expected = Rational(d, 2) + Rational(1, 4) - Rational(1, 8 * d + 4);
    EXPECT_EQ(sharpened_distance_threshold(d), expected) << d;
    // Always strictly below the unsharpened (d + 1) / 2.
    EXPECT_LT(sharpened_distance_threshold(d), admissible_threshold(d, 1)) << d;
  }
  EXPECT_THROW(sharpened_distance_threshold(1), std::invalid_argument);
}

TEST(Threshold, ValidityFlagFollowsDimension) {
  for (int k = 0; k <= 8; ++k) {
    const ThresholdReport report = threshold_table(k, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    for (const ThresholdRow& row : report.rows) {
      EXPECT_EQ(row.valid, row.d > k);
      EXPECT_EQ(row.sharpened.has_value(), k == 1 && row.d >= 2);
    }
  }
}

TEST(Threshold, RejectsBadArguments) {
  EXPECT_THROW(threshold_table(-1, {2}), std::invalid_argument);
  EXPECT_THROW(threshold_table(1, {0}), std::invalid_argument);
}

TEST(Threshold, MatchesGoldenFilesByteForByte) {
  for (int k : {0, 1, 2, 3, 4, 7}) {
    const ThresholdReport report = threshold_table(k, {1, 2, 3, 4, 5, 6, 7, 8});
    const std::string produced = dump_document({{"k", report.k}, {"thresholds", to_json(report)}});
    EXPECT_EQ(produced, read_text_file(golden("threshold_k" + std::to_string(k) + ".json"))) << k;
  }
}

}  // namespace
}  // namespace kappa

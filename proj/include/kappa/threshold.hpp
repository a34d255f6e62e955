#ifndef KAPPA_THRESHOLD_HPP
#define KAPPA_THRESHOLD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace kappa {

using Rational = boost::rational<std::int64_t>;

/// "5/2", or "3" for integral values.
std::string format_rational(const Rational& r);

struct ThresholdRow {
  int d = 0;
  Rational value;  // (d + k) / 2
  bool valid = false;  // d > k
  /// Sharper known pinned-distance threshold, present only for k = 1, d >= 2.
  std::optional<Rational> sharpened;
};

struct ThresholdReport {
  int k = 0;
  std::vector<ThresholdRow> rows;
};

/// Dimension threshold (d + k) / 2 for a k-admissible configuration.
Rational admissible_threshold(int d, int k);

/// Best known pinned Falconer threshold in R^d: 5/4 for d = 2 and
/// d/2 + 1/4 - 1/(8d + 4) for d >= 3. Requires d >= 2.
Rational sharpened_distance_threshold(int d);

ThresholdReport threshold_table(int k, const std::vector<int>& dims);

}  // namespace kappa

#endif  // KAPPA_THRESHOLD_HPP

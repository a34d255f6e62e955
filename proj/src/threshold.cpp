#include "kappa/threshold.hpp"

#include <stdexcept>

namespace kappa {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational admissible_threshold(int d, int k) { return Rational(d + k, 2); }

Rational sharpened_distance_threshold(int d) {
  if (d < 2) throw std::invalid_argument("sharpened threshold needs d >= 2");
  if (d == 2) return Rational(5, 4);
  return Rational(d, 2) + Rational(1, 4) - Rational(1, 8 * static_cast<std::int64_t>(d) + 4);
}

ThresholdReport threshold_table(int k, const std::vector<int>& dims) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  ThresholdReport report;
  report.k = k;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    ThresholdRow row;
    row.d = d;
    row.value = admissible_threshold(d, k);
    row.valid = d > k;
    if (k == 1 && d >= 2) row.sharpened = sharpened_distance_threshold(d);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace kappa

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace kendall {

/// Marker for a missing observation. NaN never compares equal to a real value.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) noexcept { return std::isnan(v); }

/// A named column of ordinal observations; missing entries hold kMissing.
struct OrdinalVector {
  std::string name;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

/// A named column of category labels; an empty label is missing.
struct CategoricalColumn {
  std::string name;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return labels.size(); }
};

/// Fractional (average) ranks, 1-based. With `descending` the largest value
/// gets rank 1. Missing values get kMissing and do not occupy a rank.
inline std::vector<double> fractional_ranks(std::span<const double> values, bool descending = false) {
  std::vector<std::size_t> order;
  order.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_missing(values[i])) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return descending ? values[l] > values[r] : values[l] < values[r];
  });

  std::vector<double> ranks(values.size(), kMissing);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace kendall

#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kendall/sequence.hpp"

namespace kendall {

/// Placement of batches in a merged system; batch k occupies objects
/// [offsets[k], offsets[k] + sizes[k]).
struct BatchMap {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> sizes;
  std::size_t total = 0;

  static BatchMap from_sizes(std::vector<std::size_t> sizes) {
    BatchMap map;
    map.offsets.reserve(sizes.size());
    for (auto s : sizes) {
      map.offsets.push_back(map.total);
      map.total += s;
    }
    map.sizes = std::move(sizes);
    return map;
  }

  std::size_t batch_of(std::size_t object) const {
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      if (object < offsets[k] + sizes[k]) return k;
    }
    throw std::out_of_range("BatchMap: object " + std::to_string(object) + " beyond " + std::to_string(total));
  }
};

/// Merges independently transformed batches of one feature. Within-batch
/// pairs keep their symbols; cross-batch pairs are Missing.
inline KendallSequence merge_transformed(std::span<const KendallSequence> batches, const BatchMap& map) {
  if (batches.empty()) throw std::domain_error("merge_transformed: no batches");
  if (batches.size() != map.sizes.size()) {
    throw std::domain_error("merge_transformed: " + std::to_string(batches.size()) + " batches but map lists " +
                            std::to_string(map.sizes.size()));
  }
  for (std::size_t k = 0; k < batches.size(); ++k) {
    if (batches[k].n() != map.sizes[k]) {
      throw std::domain_error("merge_transformed: batch " + std::to_string(k) + " has n=" +
                              std::to_string(batches[k].n()) + ", map expects " + std::to_string(map.sizes[k]));
    }
  }

  KendallSequence merged(map.total);
  const auto& scheme = merged.scheme();
  for (std::size_t k = 0; k < batches.size(); ++k) {
    const auto& batch = batches[k];
    const std::size_t offset = map.offsets[k];
    std::size_t j = 0;
    for (std::size_t a = 0; a < batch.n(); ++a) {
      for (std::size_t b = 0; b < batch.n(); ++b) {
        if (a == b) continue;
        merged.set(scheme.unchecked_index(offset + a, offset + b), batch[j++]);
      }
    }
  }
  return merged;
}

inline KendallSequence merge_transformed(std::span<const KendallSequence> batches) {
  std::vector<std::size_t> sizes;
  for (const auto& b : batches) sizes.push_back(b.n());
  return merge_transformed(batches, BatchMap::from_sizes(std::move(sizes)));
}

/// Fraction of pairs that are not Missing.
inline double complete_fraction(const KendallSequence& x) {
  return 1.0 - static_cast<double>(x.count(Symbol::Missing)) / static_cast<double>(x.size());
}

}  // namespace kendall

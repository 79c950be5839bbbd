#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kendall {

/// An ordered pair of distinct object indices.
struct Pair {
  std::size_t a = 0;
  std::size_t b = 0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Number of ordered pairs over n objects, n(n-1).
constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1); }

/// Pair ordering shared by every feature of a transformed system.
///
/// Row-major over the n x n relation matrix with the diagonal skipped: the
/// outer loop runs over a, the inner over b != a. The pair (a, b) lives at
/// index a(n-1) + (b < a ? b : b - 1). Serialized files tag this layout as
/// `rowmajor-v1`.
class PairScheme {
 public:
  static constexpr const char* kTag = "rowmajor-v1";

  explicit PairScheme(std::size_t n) : n_(n) {
    if (n < 2) throw std::domain_error("PairScheme: need at least 2 objects, got " + std::to_string(n));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return n_ * (n_ - 1); }

  Pair pair_at(std::size_t index) const {
    if (index >= m()) {
      throw std::domain_error("pair index " + std::to_string(index) + " out of range for n=" + std::to_string(n_));
    }
    const std::size_t a = index / (n_ - 1);
    const std::size_t r = index % (n_ - 1);
    return {a, r < a ? r : r + 1};
  }

  std::size_t index(std::size_t a, std::size_t b) const {
    if (a >= n_ || b >= n_ || a == b) {
      throw std::domain_error("invalid pair (" + std::to_string(a) + "," + std::to_string(b) + ") for n=" +
                              std::to_string(n_));
    }
    return unchecked_index(a, b);
  }

  std::size_t unchecked_index(std::size_t a, std::size_t b) const noexcept {
    return a * (n_ - 1) + (b < a ? b : b - 1);
  }

  friend bool operator==(const PairScheme&, const PairScheme&) = default;

 private:
  std::size_t n_;
};

inline Pair pair_at(std::size_t index, std::size_t n) { return PairScheme(n).pair_at(index); }

inline std::size_t pair_index(std::size_t a, std::size_t b, std::size_t n) { return PairScheme(n).index(a, b); }

}  // namespace kendall

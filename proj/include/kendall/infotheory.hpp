#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kendall/ordinal.hpp"
#include "kendall/sequence.hpp"

namespace kendall {

enum class LogBase { nats, bits };

inline double in_base(double nats, LogBase base) noexcept {
  return base == LogBase::bits ? nats / std::numbers::ln2 : nats;
}

inline constexpr std::int32_t kMissingCode = -1;

/// Integer-coded categorical sequence; codes lie in [0, cardinality) or are
/// kMissingCode.
struct CategoricalSequence {
  std::vector<std::int32_t> codes;
  std::int32_t cardinality = 0;

  std::size_t size() const noexcept { return codes.size(); }
};

inline CategoricalSequence make_categorical(std::vector<std::int32_t> codes) {
  std::int32_t card = 0;
  for (auto c : codes) {
    if (c < kMissingCode) throw std::domain_error("make_categorical: negative code " + std::to_string(c));
    card = std::max(card, c + 1);
  }
  return {std::move(codes), card};
}

/// Asc, Desc, Tie map to 0, 1, 2.
inline CategoricalSequence to_categorical(const KendallSequence& k) {
  CategoricalSequence out{std::vector<std::int32_t>(k.size()), 3};
  for (std::size_t j = 0; j < k.size(); ++j) {
    const Symbol s = k[j];
    out.codes[j] = s == Symbol::Missing ? kMissingCode : static_cast<std::int32_t>(s);
  }
  return out;
}

namespace detail {

inline constexpr std::int64_t kDenseLimit = 1 << 16;

inline void require_same_length(std::size_t expected, std::size_t got, const char* who) {
  if (expected != got) {
    throw std::domain_error(std::string(who) + ": sequences differ in length (" + std::to_string(expected) +
                            " vs " + std::to_string(got) + ")");
  }
}

inline CategoricalSequence join(const CategoricalSequence& x, const CategoricalSequence& y) {
  require_same_length(x.size(), y.size(), "make_joint");
  CategoricalSequence out{std::vector<std::int32_t>(x.size(), kMissingCode), 0};
  const std::int64_t product = static_cast<std::int64_t>(x.cardinality) * y.cardinality;
  if (product <= kDenseLimit) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.codes[i] != kMissingCode && y.codes[i] != kMissingCode) {
        out.codes[i] = x.codes[i] * y.cardinality + y.codes[i];
      }
    }
    out.cardinality = static_cast<std::int32_t>(product);
    return out;
  }
  // relabel observed combinations densely once the product alphabet gets large
  std::unordered_map<std::int64_t, std::int32_t> seen;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.codes[i] == kMissingCode || y.codes[i] == kMissingCode) continue;
    const std::int64_t key = static_cast<std::int64_t>(x.codes[i]) * y.cardinality + y.codes[i];
    auto [it, inserted] = seen.try_emplace(key, static_cast<std::int32_t>(seen.size()));
    out.codes[i] = it->second;
  }
  out.cardinality = static_cast<std::int32_t>(seen.size());
  return out;
}

/// Sum of c log c over the counts of `s` at positions where `mask` is not
/// missing, plus the number of such positions.
struct CountSummary {
  double c_log_c = 0.0;
  std::size_t total = 0;
};

inline CountSummary summarize(const CategoricalSequence& s, const CategoricalSequence& mask) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(s.cardinality), 0);
  CountSummary out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (mask.codes[i] == kMissingCode) continue;
    ++counts[static_cast<std::size_t>(s.codes[i])];
    ++out.total;
  }
  for (auto c : counts) {
    if (c > 1) out.c_log_c += static_cast<double>(c) * std::log(static_cast<double>(c));
  }
  return out;
}

inline double entropy_from(const CountSummary& c) {
  const double total = static_cast<double>(c.total);
  return std::max(0.0, std::log(total) - c.c_log_c / total);
}

}  // namespace detail

/// Position-wise product of sequences; Missing anywhere gives Missing.
inline CategoricalSequence make_joint(std::span<const CategoricalSequence> xs) {
  if (xs.empty()) throw std::domain_error("make_joint: no sequences");
  CategoricalSequence out = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) out = detail::join(out, xs[k]);
  return out;
}

inline CategoricalSequence make_joint(std::initializer_list<CategoricalSequence> xs) {
  return make_joint(std::span<const CategoricalSequence>(xs.begin(), xs.size()));
}

/// Joint state counts over pairwise-complete positions.
struct ContingencyTable {
  std::map<std::vector<std::int32_t>, std::size_t> counts;
  std::size_t total = 0;
};

inline ContingencyTable contingency(std::span<const CategoricalSequence> xs) {
  if (xs.empty()) throw std::domain_error("contingency: no sequences");
  ContingencyTable table;
  std::vector<std::int32_t> key(xs.size());
  for (std::size_t i = 0; i < xs.front().size(); ++i) {
    bool complete = true;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      detail::require_same_length(xs.front().size(), xs[k].size(), "contingency");
      key[k] = xs[k].codes[i];
      complete = complete && key[k] != kMissingCode;
    }
    if (!complete) continue;
    ++table.counts[key];
    ++table.total;
  }
  return table;
}

inline double entropy(const ContingencyTable& t, LogBase base = LogBase::nats) {
  if (t.total == 0) throw std::domain_error("entropy: empty contingency table");
  detail::CountSummary c{0.0, t.total};
  for (const auto& [_, count] : t.counts) {
    c.c_log_c += static_cast<double>(count) * std::log(static_cast<double>(count));
  }
  return in_base(detail::entropy_from(c), base);
}

/// Maximum-likelihood plug-in entropy over non-missing positions.
inline double entropy(const CategoricalSequence& x, LogBase base = LogBase::nats) {
  const auto c = detail::summarize(x, x);
  if (c.total == 0) throw std::domain_error("entropy: all positions missing");
  return in_base(detail::entropy_from(c), base);
}

inline double entropy(const KendallSequence& x, LogBase base = LogBase::nats) {
  return entropy(to_categorical(x), base);
}

/// Plug-in I(x;y) = H(x) + H(y) - H(x,y) over pairwise-complete positions.
inline double mutual_information(const CategoricalSequence& x, const CategoricalSequence& y,
                                 LogBase base = LogBase::nats) {
  const auto xy = detail::join(x, y);
  const auto cxy = detail::summarize(xy, xy);
  if (cxy.total == 0) throw std::domain_error("mutual_information: no pairwise-complete positions");
  const auto cx = detail::summarize(x, xy);
  const auto cy = detail::summarize(y, xy);
  const double total = static_cast<double>(cxy.total);
  const double mi = std::log(total) + (cxy.c_log_c - cx.c_log_c - cy.c_log_c) / total;
  return in_base(std::max(0.0, mi), base);
}

inline double mutual_information(const KendallSequence& x, const KendallSequence& y, LogBase base = LogBase::nats) {
  return mutual_information(to_categorical(x), to_categorical(y), base);
}

/// Plug-in I(x;y|z) = H(x,z) + H(y,z) - H(x,y,z) - H(z) on jointly complete positions.
inline double conditional_mi(const CategoricalSequence& x, const CategoricalSequence& y,
                             const CategoricalSequence& z, LogBase base = LogBase::nats) {
  const auto xz = detail::join(x, z);
  const auto yz = detail::join(y, z);
  const auto xyz = detail::join(xz, y);
  const auto cxyz = detail::summarize(xyz, xyz);
  if (cxyz.total == 0) throw std::domain_error("conditional_mi: no jointly complete positions");
  const auto cxz = detail::summarize(xz, xyz);
  const auto cyz = detail::summarize(yz, xyz);
  const auto cz = detail::summarize(z, xyz);
  const double total = static_cast<double>(cxyz.total);
  const double cmi = (cxyz.c_log_c + cz.c_log_c - cxz.c_log_c - cyz.c_log_c) / total;
  return in_base(std::max(0.0, cmi), base);
}

inline double conditional_mi(const KendallSequence& x, const KendallSequence& y, const KendallSequence& z,
                             LogBase base = LogBase::nats) {
  return conditional_mi(to_categorical(x), to_categorical(y), to_categorical(z), base);
}

/// I(x;y;z) = I(x;y) - I(x;y|z); negative values indicate synergy. Both
/// terms are estimated on the positions where all three are complete.
inline double interaction_information(const CategoricalSequence& x, const CategoricalSequence& y,
                                      const CategoricalSequence& z, LogBase base = LogBase::nats) {
  const auto xyz = detail::join(detail::join(x, y), z);
  const auto cxyz = detail::summarize(xyz, xyz);
  if (cxyz.total == 0) throw std::domain_error("interaction_information: no jointly complete positions");
  const double total = static_cast<double>(cxyz.total);
  auto s = [&](const CategoricalSequence& v) { return detail::summarize(v, xyz).c_log_c; };
  // H(x)+H(y)+H(z)-H(xy)-H(xz)-H(yz)+H(xyz) with H = log(total) - c_log_c/total
  const double ii = std::log(total) - (s(x) + s(y) + s(z) - s(detail::join(x, y)) - s(detail::join(x, z)) -
                                       s(detail::join(y, z)) + cxyz.c_log_c) /
                                          total;
  return in_base(ii, base);
}

inline double interaction_information(const KendallSequence& x, const KendallSequence& y, const KendallSequence& z,
                                      LogBase base = LogBase::nats) {
  return interaction_information(to_categorical(x), to_categorical(y), to_categorical(z), base);
}

/// Kendall tau over ordered pairs, normalised by m = n(n-1) of the input
/// length. Pairs tied in either variable or touching a missing value count
/// as neither concordant nor discordant.
struct TauValue {
  double tau = 0.0;
  std::uint64_t concordant = 0;
  std::uint64_t discordant = 0;
  std::uint64_t m = 0;

  friend bool operator==(const TauValue&, const TauValue&) = default;
};

namespace detail {

inline void require_tau_inputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::domain_error("kendall_tau: x and y differ in length");
  if (x.size() < 2) throw std::domain_error("kendall_tau: need at least 2 observations");
}

inline TauValue make_tau(std::uint64_t concordant, std::uint64_t discordant, std::size_t n) {
  TauValue t{0.0, concordant, discordant, static_cast<std::uint64_t>(n) * (n - 1)};
  t.tau = (static_cast<double>(concordant) - static_cast<double>(discordant)) / static_cast<double>(t.m);
  return t;
}

inline std::uint64_t tied_pairs(std::uint64_t run) { return run * (run - 1) / 2; }

}  // namespace detail

/// Direct O(n^2) count.
inline TauValue kendall_tau_direct(std::span<const double> x, std::span<const double> y) {
  detail::require_tau_inputs(x, y);
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      const int sx = (x[a] > x[b]) - (x[a] < x[b]);
      const int sy = (y[a] > y[b]) - (y[a] < y[b]);
      if (sx * sy > 0) {
        ++c;
      } else if (sx * sy < 0) {
        ++d;
      }
    }
  }
  return detail::make_tau(2 * c, 2 * d, x.size());
}

/// O(n log n) count (Knight's algorithm): sort by (x, y), then count the
/// inversions of y with a bottom-up merge sort.
inline TauValue kendall_tau(std::span<const double> x, std::span<const double> y) {
  detail::require_tau_inputs(x, y);
  struct Obs {
    double x, y;
  };
  std::vector<Obs> obs;
  obs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_missing(x[i]) && !is_missing(y[i])) obs.push_back({x[i], y[i]});
  }
  const std::size_t len = obs.size();
  std::sort(obs.begin(), obs.end(), [](const Obs& l, const Obs& r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });

  std::uint64_t tied_x = 0;
  std::uint64_t tied_xy = 0;
  for (std::size_t i = 0; i < len;) {
    std::size_t j = i + 1;
    while (j < len && obs[j].x == obs[i].x) ++j;
    tied_x += detail::tied_pairs(j - i);
    for (std::size_t k = i; k < j;) {
      std::size_t l = k + 1;
      while (l < j && obs[l].y == obs[k].y) ++l;
      tied_xy += detail::tied_pairs(l - k);
      k = l;
    }
    i = j;
  }

  std::vector<double> ys(len);
  std::vector<double> buffer(len);
  for (std::size_t i = 0; i < len; ++i) ys[i] = obs[i].y;
  std::uint64_t swaps = 0;
  for (std::size_t width = 1; width < len; width *= 2) {
    for (std::size_t lo = 0; lo < len; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, len);
      const std::size_t hi = std::min(lo + 2 * width, len);
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (ys[j] < ys[i]) {
          swaps += mid - i;
          buffer[k++] = ys[j++];
        } else {
          buffer[k++] = ys[i++];
        }
      }
      while (i < mid) buffer[k++] = ys[i++];
      while (j < hi) buffer[k++] = ys[j++];
    }
    std::swap(ys, buffer);
  }

  std::uint64_t tied_y = 0;
  for (std::size_t i = 0; i < len;) {
    std::size_t j = i + 1;
    while (j < len && ys[j] == ys[i]) ++j;
    tied_y += detail::tied_pairs(j - i);
    i = j;
  }

  const std::uint64_t untied = detail::tied_pairs(len) - tied_x - tied_y + tied_xy;
  return detail::make_tau(2 * (untied - swaps), 2 * swaps, x.size());
}

/// Mutual information of two tie-free transformed variables with Kendall
/// correlation tau: tau log sqrt((1+tau)/(1-tau)) + log sqrt(1-tau^2),
/// evaluated as [(1+tau)log(1+tau) + (1-tau)log(1-tau)]/2 so that the
/// endpoints give log 2.
inline double mi_from_tau(double tau) {
  if (!(std::abs(tau) <= 1.0)) throw std::domain_error("mi_from_tau: |tau| must not exceed 1");
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  return 0.5 * (xlogx(1.0 + tau) + xlogx(1.0 - tau));
}

/// Gaussian MI from a correlation coefficient, -log sqrt(1 - rho^2).
inline double mi_from_rho(double rho) {
  if (!(std::abs(rho) < 1.0)) throw std::domain_error("mi_from_rho: |rho| must be below 1");
  return -0.5 * std::log1p(-rho * rho);
}

struct AurocValue {
  double auroc = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  double u = 0.0;
};

/// Area under the ROC curve of score x for the positive class (y != 0).
/// Cross-class ties in x count one half. U = ab(1 - A).
inline AurocValue auroc(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::domain_error("auroc: x and y differ in length");
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) continue;
    (y[i] != 0.0 ? pos : neg).push_back(x[i]);
  }
  if (pos.empty() || neg.empty()) throw std::domain_error("auroc: both classes must be present");

  // Mann-Whitney via ranks of the pooled sample
  std::vector<double> pooled(pos);
  pooled.insert(pooled.end(), neg.begin(), neg.end());
  const auto ranks = fractional_ranks(pooled);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) rank_sum += ranks[i];

  AurocValue out;
  out.positives = pos.size();
  out.negatives = neg.size();
  const double a = static_cast<double>(out.positives);
  const double b = static_cast<double>(out.negatives);
  const double wins = rank_sum - a * (a + 1.0) / 2.0;
  out.auroc = wins / (a * b);
  out.u = a * b * (1.0 - out.auroc);
  return out;
}

/// MI between a transformed tie-free score and a transformed binary label:
/// 2ab/(n(n-1)) * (A log(A/(1-A)) + log(2-2A)), rewritten as
/// 2ab/(n(n-1)) * (A log A + (1-A) log(1-A) + log 2) for the endpoints.
inline double mi_from_auroc(double a_value, std::size_t positives, std::size_t negatives) {
  if (positives == 0 || negatives == 0) throw std::domain_error("mi_from_auroc: both classes must be non-empty");
  if (!(a_value >= 0.0 && a_value <= 1.0)) throw std::domain_error("mi_from_auroc: A must lie in [0, 1]");
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  const double a = static_cast<double>(positives);
  const double b = static_cast<double>(negatives);
  const double n = a + b;
  return 2.0 * a * b / (n * (n - 1.0)) * (xlogx(a_value) + xlogx(1.0 - a_value) + std::numbers::ln2);
}

}  // namespace kendall

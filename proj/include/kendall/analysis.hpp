#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kendall/infotheory.hpp"
#include "kendall/ordinal.hpp"
#include "kendall/transform.hpp"

namespace kendall {

namespace detail {

inline std::pair<double, double> finite_range(std::span<const double> x, const char* who) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double v : x) {
    if (is_missing(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo < hi)) throw std::domain_error(std::string(who) + ": need at least 2 distinct values");
  return {lo, hi};
}

}  // namespace detail

/// k equal-width bins over [min, max]; bins are left-closed and the last one
/// is also right-closed.
inline CategoricalSequence bin_equal_width(std::span<const double> x, int k) {
  if (k < 2) throw std::domain_error("bin_equal_width: need at least 2 bins");
  const auto [lo, hi] = detail::finite_range(x, "bin_equal_width");
  const double width = (hi - lo) / k;
  CategoricalSequence out{std::vector<std::int32_t>(x.size(), kMissingCode), k};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i])) continue;
    const auto label = static_cast<std::int32_t>(std::floor((x[i] - lo) / width));
    out.codes[i] = std::clamp(label, 0, k - 1);
  }
  return out;
}

/// k equal-frequency bins with edges at the i/k sample quantiles (type 7).
///
/// A value goes above an edge only when it is strictly greater than it, so a
/// tie block sitting on an edge lands in the lower bin. For sample values,
/// "greater than the type-7 quantile at h = (n-1)p" is the same as "greater
/// than the order statistic floor(h)", which is what the labelling compares
/// against; this keeps the labels invariant under increasing maps.
inline CategoricalSequence bin_equal_frequency(std::span<const double> x, int k) {
  if (k < 2) throw std::domain_error("bin_equal_frequency: need at least 2 bins");
  detail::finite_range(x, "bin_equal_frequency");
  std::vector<double> sorted;
  for (double v : x) {
    if (!is_missing(v)) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  const std::size_t last = sorted.size() - 1;

  std::vector<double> edges;
  for (int i = 1; i < k; ++i) edges.push_back(sorted[last * static_cast<std::size_t>(i) / static_cast<std::size_t>(k)]);

  CategoricalSequence out{std::vector<std::int32_t>(x.size(), kMissingCode), k};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i])) continue;
    out.codes[i] = static_cast<std::int32_t>(std::lower_bound(edges.begin(), edges.end(), x[i]) - edges.begin());
  }
  return out;
}

/// Type-7 sample quantile of non-missing values, p in [0, 1].
inline double quantile(std::span<const double> values, double p) {
  std::vector<double> sorted;
  for (double v : values) {
    if (!is_missing(v)) sorted.push_back(v);
  }
  if (sorted.empty()) throw std::domain_error("quantile: no values");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile: p outside [0, 1]");
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Pearson correlation over pairwise-complete observations.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::domain_error("pearson: x and y differ in length");
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) continue;
    sx += x[i];
    sy += y[i];
    ++n;
  }
  if (n < 2) throw std::domain_error("pearson: need at least 2 complete observations");
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) continue;
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson: constant input");
  return sxy / std::sqrt(sxx * syy);
}

/// Spearman correlation: Pearson correlation of fractional ranks.
inline double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::domain_error("spearman_rho: x and y differ in length");
  std::vector<double> xc, yc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_missing(x[i]) || is_missing(y[i])) continue;
    xc.push_back(x[i]);
    yc.push_back(y[i]);
  }
  if (xc.size() < 2) throw std::domain_error("spearman_rho: need at least 2 complete observations");
  return pearson(fractional_ranks(xc), fractional_ranks(yc));
}

struct ScoringMethod {
  enum class Kind { kendall, equal_width, equal_frequency };
  Kind kind = Kind::kendall;
  int bins = 0;

  static ScoringMethod kendall() { return {}; }
  static ScoringMethod width(int k) { return {Kind::equal_width, k}; }
  static ScoringMethod frequency(int k) { return {Kind::equal_frequency, k}; }

  /// Parses `kendall`, `width:<k>` or `freq:<k>`.
  static ScoringMethod parse(const std::string& text) {
    if (text == "kendall") return kendall();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      const std::string head = text.substr(0, colon);
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) k = 0;
      } catch (const std::exception&) {
        k = 0;
      }
      if (k >= 2 && head == "width") return width(k);
      if (k >= 2 && head == "freq") return frequency(k);
    }
    throw std::invalid_argument("unknown scoring method '" + text + "' (expected kendall, width:k or freq:k)");
  }

  std::string tag() const {
    switch (kind) {
      case Kind::kendall:
        return "kendall";
      case Kind::equal_width:
        return "width:" + std::to_string(bins);
      default:
        return "freq:" + std::to_string(bins);
    }
  }
};

/// Decision attribute: numeric (including binary 0/1) or categorical.
using Decision = std::variant<OrdinalVector, CategoricalColumn>;

struct RankedFeature {
  std::string name;
  double score = 0.0;
};

/// Features by decreasing score; equal scores keep input column order.
struct FeatureRanking {
  std::string method;
  std::vector<RankedFeature> entries;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.name);
    return out;
  }

  /// Scores re-ordered to follow `feature_order`.
  std::vector<double> scores_in(std::span<const std::string> feature_order) const {
    std::vector<double> out;
    for (const auto& name : feature_order) {
      auto it = std::find_if(entries.begin(), entries.end(), [&](const RankedFeature& e) { return e.name == name; });
      if (it == entries.end()) throw std::domain_error("FeatureRanking: no feature '" + name + "'");
      out.push_back(it->score);
    }
    return out;
  }
};

namespace detail {

inline FeatureRanking sort_ranking(std::string method, std::vector<RankedFeature> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankedFeature& l, const RankedFeature& r) { return l.score > r.score; });
  return {std::move(method), std::move(entries)};
}

inline void require_informative(const CategoricalSequence& d) {
  std::set<std::int32_t> states;
  for (auto c : d.codes) {
    if (c != kMissingCode) states.insert(c);
  }
  if (states.size() < 2) throw std::domain_error("rank_features: decision is degenerate (fewer than 2 states)");
}

inline CategoricalSequence encode_labels(const CategoricalColumn& c) {
  std::vector<std::string> seen;
  std::vector<std::int32_t> codes(c.size(), kMissingCode);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.labels[i].empty()) continue;
    auto it = std::find(seen.begin(), seen.end(), c.labels[i]);
    if (it == seen.end()) it = seen.insert(seen.end(), c.labels[i]);
    codes[i] = static_cast<std::int32_t>(it - seen.begin());
  }
  return make_categorical(std::move(codes));
}

inline std::size_t decision_size(const Decision& d) {
  return std::visit([](const auto& v) { return v.size(); }, d);
}

}  // namespace detail

/// Numeric columns standing in for the decision: the decision itself, or the
/// one-vs-rest indicators of a categorical decision.
inline std::vector<OrdinalVector> decision_columns(const Decision& decision) {
  if (const auto* numeric = std::get_if<OrdinalVector>(&decision)) return {*numeric};
  return expand_categorical(std::get<CategoricalColumn>(decision));
}

/// Kendall transforms of decision_columns, to be joined into one target.
inline std::vector<KendallSequence> kendall_decision_parts(const Decision& decision) {
  std::vector<KendallSequence> parts;
  for (const auto& column : decision_columns(decision)) parts.push_back(kendall_transform(column));
  return parts;
}

inline CategoricalSequence joint_target(std::span<const KendallSequence> parts) {
  std::vector<CategoricalSequence> coded;
  for (const auto& p : parts) coded.push_back(to_categorical(p));
  auto target = make_joint(coded);
  detail::require_informative(target);
  return target;
}

/// MI ranking of already transformed features against a transformed target.
inline FeatureRanking rank_transformed(std::span<const NamedSequence> features, const CategoricalSequence& target) {
  std::vector<RankedFeature> entries;
  for (const auto& f : features) {
    if (f.sequence.size() != target.size()) {
      throw std::domain_error("rank_transformed: feature '" + f.name + "' has a different pair count than the decision");
    }
    entries.push_back({f.name, mutual_information(to_categorical(f.sequence), target)});
  }
  return detail::sort_ranking("kendall", std::move(entries));
}

/// Ranks features by plug-in MI with the decision after the chosen
/// processing: Kendall transformation of both sides, or binning of both
/// sides (a categorical decision is used as is).
inline FeatureRanking rank_features(std::span<const OrdinalVector> table, const Decision& decision,
                                    ScoringMethod method = ScoringMethod::kendall()) {
  const std::size_t n = detail::decision_size(decision);
  for (const auto& f : table) {
    if (f.size() != n) {
      throw std::domain_error("rank_features: feature '" + f.name + "' has " + std::to_string(f.size()) +
                              " values, decision has " + std::to_string(n));
    }
  }

  if (method.kind == ScoringMethod::Kind::kendall) {
    const auto parts = kendall_decision_parts(decision);
    return rank_transformed(transform_system(table), joint_target(parts));
  }

  auto bin = [&](std::span<const double> x) {
    return method.kind == ScoringMethod::Kind::equal_width ? bin_equal_width(x, method.bins)
                                                           : bin_equal_frequency(x, method.bins);
  };
  CategoricalSequence target;
  if (const auto* numeric = std::get_if<OrdinalVector>(&decision)) {
    target = bin(numeric->values);
  } else {
    target = detail::encode_labels(std::get<CategoricalColumn>(decision));
  }
  detail::require_informative(target);

  std::vector<RankedFeature> entries;
  for (const auto& f : table) entries.push_back({f.name, mutual_information(bin(f.values), target)});
  return detail::sort_ranking(method.tag(), std::move(entries));
}

/// Best Jaccard index between the top-c features and the reference set, over
/// every cut-off c.
inline double jaccard_max(const FeatureRanking& ranking, std::span<const std::string> reference) {
  if (reference.empty()) throw std::domain_error("jaccard_max: empty reference set");
  const std::set<std::string> ref(reference.begin(), reference.end());
  for (const auto& r : ref) {
    if (std::none_of(ranking.entries.begin(), ranking.entries.end(),
                     [&](const RankedFeature& e) { return e.name == r; })) {
      throw std::domain_error("jaccard_max: reference feature '" + r + "' is not ranked");
    }
  }
  double best = 0.0;
  std::size_t hits = 0;
  for (std::size_t c = 1; c <= ranking.entries.size(); ++c) {
    hits += ref.contains(ranking.entries[c - 1].name);
    const std::size_t uni = c + ref.size() - hits;
    best = std::max(best, static_cast<double>(hits) / static_cast<double>(uni));
  }
  return best;
}

}  // namespace kendall

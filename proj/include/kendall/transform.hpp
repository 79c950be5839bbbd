#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kendall/ordinal.hpp"
#include "kendall/pair_scheme.hpp"
#include "kendall/random.hpp"
#include "kendall/sequence.hpp"

namespace kendall {

struct TransformOptions {
  /// Values closer than this are treated as tied. Zero means exact equality.
  double tie_tolerance = 0.0;
};

inline Symbol compare(double lhs, double rhs, double tie_tolerance = 0.0) noexcept {
  if (is_missing(lhs) || is_missing(rhs)) return Symbol::Missing;
  if (tie_tolerance > 0.0 ? std::abs(lhs - rhs) <= tie_tolerance : lhs == rhs) return Symbol::Tie;
  return lhs < rhs ? Symbol::Asc : Symbol::Desc;
}

/// Kendall transformation of a single vector: symbol j relates x[a_j] to x[b_j].
inline KendallSequence kendall_transform(std::span<const double> x, const TransformOptions& opts = {}) {
  if (x.size() < 2) {
    throw std::domain_error("kendall_transform: need at least 2 values, got " + std::to_string(x.size()));
  }
  const std::size_t n = x.size();
  KendallSequence out(n);
  std::size_t j = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) out.set(j++, compare(x[a], x[b], opts.tie_tolerance));
    }
  }
  return out;
}

inline KendallSequence kendall_transform(const OrdinalVector& x, const TransformOptions& opts = {}) {
  return kendall_transform(std::span<const double>(x.values), opts);
}

struct NamedSequence {
  std::string name;
  KendallSequence sequence;
};

/// Transforms every column of an information system under one PairScheme.
inline std::vector<NamedSequence> transform_system(std::span<const OrdinalVector> table,
                                                   const TransformOptions& opts = {}) {
  std::vector<NamedSequence> out;
  out.reserve(table.size());
  for (const auto& column : table) {
    if (column.size() != table.front().size()) {
      throw std::domain_error("transform_system: column '" + column.name + "' has " + std::to_string(column.size()) +
                              " values, expected " + std::to_string(table.front().size()));
    }
    out.push_back({column.name, kendall_transform(column, opts)});
  }
  return out;
}

/// One-vs-rest indicator columns, one per category in order of first
/// appearance, named `<column>=<category>`. A two-category column yields a
/// single indicator for its first category. Missing labels stay missing.
inline std::vector<OrdinalVector> expand_categorical(const CategoricalColumn& x) {
  std::vector<std::string> categories;
  for (const auto& label : x.labels) {
    if (!label.empty() && std::find(categories.begin(), categories.end(), label) == categories.end()) {
      categories.push_back(label);
    }
  }
  if (categories.size() < 2) {
    throw std::domain_error("expand_categorical: column '" + x.name + "' has fewer than 2 categories");
  }
  if (categories.size() == 2) categories.pop_back();

  std::vector<OrdinalVector> out;
  out.reserve(categories.size());
  for (const auto& category : categories) {
    OrdinalVector indicator{x.name + "=" + category, std::vector<double>(x.size())};
    for (std::size_t i = 0; i < x.size(); ++i) {
      indicator.values[i] = x.labels[i].empty() ? kMissing : (x.labels[i] == category ? 1.0 : 0.0);
    }
    out.push_back(std::move(indicator));
  }
  return out;
}

/// Breaks ties with seeded uniform noise in (-scale/2, scale/2).
///
/// Only values that take part in a tie move; a draw landing on a value that
/// is already present is redrawn. Relations between distinct values survive
/// when scale is below the smallest nonzero gap.
inline OrdinalVector jitter_ties(const OrdinalVector& x, std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) throw std::domain_error("jitter_ties: scale must be positive");

  std::map<double, std::size_t> multiplicity;
  for (double v : x.values) {
    if (!is_missing(v)) ++multiplicity[v];
  }

  OrdinalVector out = x;
  std::set<double> taken;
  for (double v : x.values) {
    if (!is_missing(v) && multiplicity[v] == 1) taken.insert(v);
  }

  CounterRng rng(seed);
  for (auto& v : out.values) {
    if (is_missing(v) || multiplicity[v] == 1) continue;
    double candidate;
    do {
      candidate = v + scale * (rng.uniform() - 0.5);
    } while (taken.contains(candidate));
    taken.insert(candidate);
    v = candidate;
  }
  return out;
}

/// Recovered ranking: rank 1 goes to the highest Copeland score, which for a
/// valid transform is the smallest original value. Equal scores share the
/// average rank.
struct Ranking {
  std::vector<double> ranks;
  std::vector<double> scores;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

inline Ranking ranking_from_scores(std::vector<double> scores) {
  Ranking r;
  r.ranks = fractional_ranks(scores, /*descending=*/true);
  r.scores = std::move(scores);
  return r;
}

/// Inverse transformation by Copeland scoring: each object wins +1 for every
/// Asc on its pairs (i, .) and loses 1 for every Desc. Tie and Missing score
/// nothing, so cycles collapse into shared ranks.
inline Ranking copeland_inverse(const KendallSequence& k) {
  const std::size_t n = k.n();
  std::vector<double> scores(n, 0.0);
  std::size_t j = 0;
  for (std::size_t a = 0; a < n; ++a) {
    long score = 0;
    for (std::size_t b = 0; b + 1 < n; ++b, ++j) {
      const Symbol s = k[j];
      score += (s == Symbol::Asc) - (s == Symbol::Desc);
    }
    scores[a] = static_cast<double>(score);
  }
  return ranking_from_scores(std::move(scores));
}

/// Non-negative support for each state of one ordered pair. All zeros means
/// the pair is unknown.
struct PairVotes {
  double asc = 0.0;
  double desc = 0.0;
  double tie = 0.0;
};

/// Copeland scoring over fuzzy per-pair votes.
///
/// Votes are given for every ordered pair and need not be antisymmetric, so
/// both directions of a pair are averaged: the vote on (i, j) and the flipped
/// vote on (j, i) each contribute half of (asc - desc) to object i. On one-hot
/// votes of a valid transform this is exactly copeland_inverse.
inline Ranking weighted_copeland(std::span<const PairVotes> votes, std::size_t n) {
  const PairScheme scheme(n);
  if (votes.size() != scheme.m()) {
    throw std::domain_error("weighted_copeland: expected " + std::to_string(scheme.m()) + " pair votes, got " +
                            std::to_string(votes.size()));
  }
  for (std::size_t j = 0; j < votes.size(); ++j) {
    const auto& v = votes[j];
    if (!(v.asc >= 0.0 && v.desc >= 0.0 && v.tie >= 0.0)) {
      throw std::domain_error("weighted_copeland: negative or NaN weight at pair " + std::to_string(j));
    }
  }

  std::vector<double> scores(n, 0.0);
  for (std::size_t j = 0; j < votes.size(); ++j) {
    const auto [a, b] = scheme.pair_at(j);
    const double margin = 0.5 * (votes[j].asc - votes[j].desc);
    scores[a] += margin;
    scores[b] -= margin;
  }
  return ranking_from_scores(std::move(scores));
}

}  // namespace kendall

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kendall/analysis.hpp"
#include "kendall/infotheory.hpp"
#include "kendall/integrate.hpp"
#include "kendall/random.hpp"
#include "kendall/transform.hpp"

namespace kendall {

inline constexpr std::array<double, 5> kPercentiles{0.05, 0.25, 0.50, 0.75, 0.95};

struct PercentileBand {
  std::array<double, 5> values{};

  double median() const noexcept { return values[2]; }
};

inline PercentileBand percentile_band(std::span<const double> replicates) {
  PercentileBand band;
  for (std::size_t i = 0; i < kPercentiles.size(); ++i) band.values[i] = quantile(replicates, kPercentiles[i]);
  return band;
}

/// Replicate estimates of several estimators plus their percentile bands.
/// values[e][r] is estimator e on replicate r; bands[e] summarizes values[e].
struct SimResult {
  std::vector<std::string> estimators;
  std::vector<std::vector<double>> values;
  std::vector<PercentileBand> bands;

  const std::vector<double>& of(const std::string& estimator) const {
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      if (estimators[e] == estimator) return values[e];
    }
    throw std::out_of_range("SimResult: no estimator '" + estimator + "'");
  }

  const PercentileBand& band(const std::string& estimator) const {
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      if (estimators[e] == estimator) return bands[e];
    }
    throw std::out_of_range("SimResult: no estimator '" + estimator + "'");
  }

  friend bool operator==(const SimResult& l, const SimResult& r) {
    return l.estimators == r.estimators && l.values == r.values;
  }
};

/// MI estimators compared on bivariate normal samples: plug-in MI of the
/// Kendall transforms, plug-in MI after 3 and 5 equal-width bins, and the
/// Gaussian formula on the sample Pearson correlation. All in nats.
inline SimResult simulate_bivariate(double r, std::size_t n, std::size_t reps, std::uint64_t seed) {
  if (!(std::abs(r) < 1.0)) throw std::domain_error("simulate_bivariate: need -1 < r < 1");
  if (n < 5) throw std::domain_error("simulate_bivariate: need n >= 5");

  SimResult out;
  out.estimators = {"kendall", "width3", "width5", "gauss"};
  out.values.assign(out.estimators.size(), std::vector<double>(reps));
  const double residual = std::sqrt(1.0 - r * r);

  for (std::size_t rep = 0; rep < reps; ++rep) {
    CounterRng rng(seed, rep);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      x[i] = z1;
      y[i] = r * z1 + residual * z2;
    }
    out.values[0][rep] = mutual_information(kendall_transform(x), kendall_transform(y));
    out.values[1][rep] = mutual_information(bin_equal_width(x, 3), bin_equal_width(y, 3));
    out.values[2][rep] = mutual_information(bin_equal_width(x, 5), bin_equal_width(y, 5));
    out.values[3][rep] = mi_from_rho(pearson(x, y));
  }
  for (const auto& v : out.values) out.bands.push_back(percentile_band(v));
  return out;
}

enum class InteractionKind { linear, max };

/// Information scores of the transformed three-feature system a, b, c ~ U(0,1)
/// with decision y = a*lambda + b*(1-lambda) or y = max(a*lambda, b*(1-lambda)).
struct MultivariateScores {
  double mi_a_y = 0.0;         // I(A;Y)
  double mi_b_y = 0.0;         // I(B;Y)
  double mi_ab_y = 0.0;        // I(A,B;Y)
  double cmi_a_b_y = 0.0;      // I(A;B|Y)
  double cmi_a_c_y = 0.0;      // I(A;C|Y)
  double interaction = 0.0;    // I(A;B;Y)

  static constexpr std::array<const char*, 6> kNames{"I(A;Y)", "I(B;Y)", "I(A,B;Y)", "I(A;B|Y)", "I(A;C|Y)",
                                                      "I(A;B;Y)"};

  std::array<double, 6> as_array() const { return {mi_a_y, mi_b_y, mi_ab_y, cmi_a_b_y, cmi_a_c_y, interaction}; }
};

inline MultivariateScores simulate_multivariate(double lambda, InteractionKind kind, std::size_t n,
                                                std::uint64_t seed, std::uint64_t replicate = 0) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::domain_error("simulate_multivariate: lambda outside [0, 1]");
  if (n < 20) throw std::domain_error("simulate_multivariate: need n >= 20");

  CounterRng rng(seed, replicate);
  std::vector<double> a(n), b(n), c(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform();
    c[i] = rng.uniform();
    y[i] = kind == InteractionKind::linear ? a[i] * lambda + b[i] * (1.0 - lambda)
                                           : std::max(a[i] * lambda, b[i] * (1.0 - lambda));
  }
  const auto ka = to_categorical(kendall_transform(a));
  const auto kb = to_categorical(kendall_transform(b));
  const auto kc = to_categorical(kendall_transform(c));
  const auto ky = to_categorical(kendall_transform(y));

  MultivariateScores s;
  s.mi_a_y = mutual_information(ka, ky);
  s.mi_b_y = mutual_information(kb, ky);
  s.mi_ab_y = mutual_information(make_joint({ka, kb}), ky);
  s.cmi_a_b_y = conditional_mi(ka, kb, ky);
  s.cmi_a_c_y = conditional_mi(ka, kc, ky);
  s.interaction = interaction_information(ka, kb, ky);
  return s;
}

inline std::vector<MultivariateScores> simulate_multivariate_reps(double lambda, InteractionKind kind, std::size_t n,
                                                                  std::size_t reps, std::uint64_t seed) {
  std::vector<MultivariateScores> out;
  out.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) out.push_back(simulate_multivariate(lambda, kind, n, seed, rep));
  return out;
}

/// Synthetic system of positive, mutually correlated features sharing a
/// latent factor with a numeric decision. Feature j carries signal strength
/// j/(features-1), so the true MI ranking is spread out, and a log-scale
/// dispersion drawn log-uniformly from [0.2, 2], as measured concentrations
/// tend to differ in spread.
struct SyntheticSystem {
  std::vector<OrdinalVector> features;
  OrdinalVector decision;
};

inline SyntheticSystem synthetic_system(std::size_t objects, std::size_t features, std::uint64_t seed) {
  if (objects < 4 || features < 2) throw std::domain_error("synthetic_system: need >= 4 objects and >= 2 features");
  CounterRng rng(seed, ~0ULL);
  std::vector<double> latent(objects);
  for (auto& v : latent) v = rng.normal();

  SyntheticSystem sys;
  sys.decision = {"decision", std::vector<double>(objects)};
  for (std::size_t i = 0; i < objects; ++i) sys.decision.values[i] = latent[i] + 0.5 * rng.normal();
  for (std::size_t j = 0; j < features; ++j) {
    const double strength = static_cast<double>(j) / static_cast<double>(features - 1);
    const double sigma = 0.2 * std::pow(10.0, rng.uniform());
    OrdinalVector f{"f" + std::to_string(j + 1), std::vector<double>(objects)};
    for (std::size_t i = 0; i < objects; ++i) {
      const double z = strength * latent[i] + std::sqrt(1.0 - strength * strength) * rng.normal();
      f.values[i] = std::exp(sigma * z);
    }
    sys.features.push_back(std::move(f));
  }
  return sys;
}

/// Per-replicate ranking agreements of the calibration-loss experiment.
struct IntegrationResult {
  std::vector<std::string> feature_names;
  std::vector<double> reference_scores;
  std::vector<double> transformed_agreement;
  std::vector<double> naive_agreement;
  /// Feature scores (in feature_names order) of the transformed merge, per replicate.
  std::vector<std::vector<double>> transformed_scores;
  PercentileBand transformed_band;
  PercentileBand naive_band;
};

namespace detail {

inline double agreement(std::span<const double> scores, std::span<const double> reference) {
  try {
    return spearman_rho(scores, reference);
  } catch (const std::domain_error&) {
    return 0.0;  // constant scores carry no ranking
  }
}

inline std::vector<double> rows_of(const OrdinalVector& x, std::span<const std::size_t> rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(x.values[r]);
  return out;
}

inline Decision subset(const Decision& d, std::span<const std::size_t> rows) {
  if (const auto* numeric = std::get_if<OrdinalVector>(&d)) {
    OrdinalVector out{numeric->name, {}};
    for (auto r : rows) out.values.push_back(numeric->values[r]);
    return out;
  }
  const auto& cat = std::get<CategoricalColumn>(d);
  CategoricalColumn out{cat.name, {}};
  for (auto r : rows) out.labels.push_back(cat.labels[r]);
  return out;
}

}  // namespace detail

/// Splits the objects in half at random, multiplies the second half's feature
/// values by `scale`, and compares two recoveries against the ranking of the
/// unperturbed transformed system: (naive) concatenate and transform,
/// (transformed) transform each half and merge. Agreement is the Spearman
/// correlation of feature scores. The decision is never perturbed.
inline IntegrationResult simulate_integration(std::span<const OrdinalVector> table, const Decision& decision,
                                              double scale, std::size_t reps, std::uint64_t seed) {
  if (!(scale > 0.0)) throw std::domain_error("simulate_integration: scale must be positive");
  if (table.empty()) throw std::domain_error("simulate_integration: empty table");
  const std::size_t n = detail::decision_size(decision);
  if (n < 4) throw std::domain_error("simulate_integration: need at least 4 objects");

  IntegrationResult out;
  for (const auto& f : table) out.feature_names.push_back(f.name);
  out.reference_scores = rank_features(table, decision).scores_in(out.feature_names);
  const auto decision_parts = decision_columns(decision);

  for (std::size_t rep = 0; rep < reps; ++rep) {
    CounterRng rng(seed, rep);
    const auto perm = rng.permutation(n);
    const std::size_t half = n / 2;
    const std::vector<std::size_t> first(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<std::size_t> second(perm.begin() + static_cast<std::ptrdiff_t>(half), perm.end());

    // perturbed halves of each feature, and their naive concatenation
    std::vector<OrdinalVector> naive;
    std::vector<NamedSequence> merged;
    for (const auto& f : table) {
      OrdinalVector lo{f.name, {}}, hi{f.name, {}};
      for (auto r : first) lo.values.push_back(f.values[r]);
      for (auto r : second) hi.values.push_back(f.values[r] * scale);
      OrdinalVector cat = lo;
      cat.values.insert(cat.values.end(), hi.values.begin(), hi.values.end());
      naive.push_back(std::move(cat));
      const std::array<KendallSequence, 2> halves{kendall_transform(lo), kendall_transform(hi)};
      merged.push_back({f.name, merge_transformed(halves)});
    }

    std::vector<std::size_t> order(first);
    order.insert(order.end(), second.begin(), second.end());
    const Decision naive_decision = detail::subset(decision, order);

    std::vector<KendallSequence> target_parts;
    for (const auto& column : decision_parts) {
      const std::array<KendallSequence, 2> halves{kendall_transform(detail::rows_of(column, first)),
                                                  kendall_transform(detail::rows_of(column, second))};
      target_parts.push_back(merge_transformed(halves));
    }

    auto transformed_scores = rank_transformed(merged, joint_target(target_parts)).scores_in(out.feature_names);
    const auto naive_scores = rank_features(naive, naive_decision).scores_in(out.feature_names);
    out.transformed_agreement.push_back(detail::agreement(transformed_scores, out.reference_scores));
    out.naive_agreement.push_back(detail::agreement(naive_scores, out.reference_scores));
    out.transformed_scores.push_back(std::move(transformed_scores));
  }
  out.transformed_band = percentile_band(out.transformed_agreement);
  out.naive_band = percentile_band(out.naive_agreement);
  return out;
}

}  // namespace kendall

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "kendall/infotheory.hpp"
#include "kendall/transform.hpp"

namespace {

using kendall::CategoricalSequence;
using kendall::KendallSequence;
using kendall::Symbol;
using A = std::vector<double>;

const double kLog2 = std::numbers::ln2;
const double kLog3 = std::log(3.0);

// Oracle: I(x;y) = sum p(x,y) log(p(x,y) / (p(x) p(y))) straight from a map of
// joint counts over pairwise-complete positions.
double oracle_mi(const CategoricalSequence& x, const CategoricalSequence& y) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> px, py;
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.codes[i] < 0 || y.codes[i] < 0) continue;
    joint[{x.codes[i], y.codes[i]}] += 1;
    px[x.codes[i]] += 1;
    py[y.codes[i]] += 1;
    total += 1;
  }
  double mi = 0;
  for (const auto& [k, c] : joint) mi += c / total * std::log(c * total / (px[k.first] * py[k.second]));
  return mi;
}

std::vector<double> distinct_values(kendall::CounterRng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

CategoricalSequence codes(std::vector<std::int32_t> c) { return kendall::make_categorical(std::move(c)); }

// --- entropy -------------------------------------------------------------------

TEST(Entropy, TieFreeTransformIsLog2) {
  kendall::CounterRng rng(1);
  for (std::size_t n = 2; n < 40; ++n) {
    EXPECT_NEAR(kendall::entropy(kendall::kendall_transform(distinct_values(rng, n))), kLog2, 1e-15);
  }
}

TEST(Entropy, ConstantIsZeroAndBalancedTiesGiveLog3) {
  EXPECT_EQ(kendall::entropy(kendall::kendall_transform(A{2, 2, 2, 2})), 0.0);
  const auto k = kendall::kendall_transform(A{1, 1, 2});
  EXPECT_EQ(k.counts()[0], 2u);
  EXPECT_EQ(k.counts()[1], 2u);
  EXPECT_EQ(k.counts()[2], 2u);
  EXPECT_NEAR(kendall::entropy(k), kLog3, 1e-15);
}

TEST(Entropy, TiedTransformsStayWithinLog3) {
  kendall::CounterRng rng(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(2 + rng.below(20));
    const auto levels = 1 + rng.below(6);
    for (auto& v : x) v = static_cast<double>(rng.below(levels));
    const double h = kendall::entropy(kendall::kendall_transform(x));
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, kLog3 + 1e-15);
  }
}

TEST(Entropy, BitsAndMissingHandling) {
  EXPECT_NEAR(kendall::entropy(kendall::kendall_transform(A{1, 2, 3}), kendall::LogBase::bits), 1.0, 1e-15);
  EXPECT_THROW(kendall::entropy(KendallSequence(3)), std::domain_error);
  EXPECT_NEAR(kendall::entropy(codes({0, 1, -1, -1})), kLog2, 1e-15);
}

TEST(Entropy, ContingencyTableAgrees) {
  const std::vector<CategoricalSequence> xs{codes({0, 0, 1, 2, -1, 1}), codes({1, 1, 0, 0, 0, -1})};
  const auto t = kendall::contingency(xs);
  EXPECT_EQ(t.total, 4u);
  EXPECT_EQ(t.counts.at({0, 1}), 2u);
  EXPECT_NEAR(kendall::entropy(t), kendall::entropy(kendall::make_joint(xs)), 1e-15);
}

// --- joint ---------------------------------------------------------------------

TEST(MakeJoint, DefinitionIdentityAndMissing) {
  const auto j = kendall::make_joint({codes({0, 1}), codes({0, 0})});
  EXPECT_NE(j.codes[0], j.codes[1]);
  EXPECT_EQ(kendall::make_joint({codes({0, 1, 2})}).codes, (std::vector<std::int32_t>{0, 1, 2}));
  const auto m = kendall::make_joint({codes({0, -1}), codes({0, 0})});
  EXPECT_NE(m.codes[0], kendall::kMissingCode);
  EXPECT_EQ(m.codes[1], kendall::kMissingCode);
  EXPECT_THROW(kendall::make_joint({codes({0, 1}), codes({0})}), std::domain_error);
}

TEST(MakeJoint, LargeAlphabetsAreCompacted) {
  std::vector<CategoricalSequence> parts;
  for (int k = 0; k < 12; ++k) parts.push_back(codes({0, 1, 2, k % 3, 1}));
  const auto j = kendall::make_joint(parts);
  EXPECT_LT(j.cardinality, 100);  // 3^12 without relabelling
  EXPECT_NEAR(kendall::entropy(j), kendall::entropy(kendall::make_joint({parts[0], parts[1], parts[3]})), 1e-15);
}

// --- mutual information --------------------------------------------------------

TEST(MutualInformation, SelfInformationIsLog2) {
  const auto k = kendall::kendall_transform(A{0.3, -1, 2, 8, 4});
  EXPECT_NEAR(kendall::mutual_information(k, k), kLog2, 1e-15);
}

TEST(MutualInformation, HandBuiltTable) {
  const auto kx = kendall::kendall_transform(A{1, 2, 3, 4});
  const auto ky = kendall::kendall_transform(A{1, 3, 2, 4});
  const auto t = kendall::contingency(std::vector{kendall::to_categorical(kx), kendall::to_categorical(ky)});
  EXPECT_EQ(t.counts.at({0, 0}), 5u);
  EXPECT_EQ(t.counts.at({1, 1}), 5u);
  EXPECT_EQ(t.counts.at({0, 1}), 1u);
  EXPECT_EQ(t.counts.at({1, 0}), 1u);
  EXPECT_NEAR(kendall::mutual_information(kx, ky), 0.242585971693640620772, 1e-15);
}

TEST(MutualInformation, ConstantCarriesNothing) {
  EXPECT_EQ(kendall::mutual_information(kendall::kendall_transform(A{1, 1, 1, 1}),
                                        kendall::kendall_transform(A{4, 2, 3, 1})),
            0.0);
}

TEST(MutualInformation, MatchesOracleAndBounds) {
  kendall::CounterRng rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t len = 1 + rng.below(60);
    std::vector<std::int32_t> xc(len), yc(len);
    const auto kx = 1 + rng.below(4), ky = 1 + rng.below(4);
    for (std::size_t i = 0; i < len; ++i) {
      xc[i] = rng.below(10) == 0 ? -1 : static_cast<std::int32_t>(rng.below(kx));
      yc[i] = rng.below(10) == 0 ? -1 : static_cast<std::int32_t>(rng.below(ky));
    }
    xc[0] = 0;
    yc[0] = 0;
    const auto x = codes(xc), y = codes(yc);
    const double mi = kendall::mutual_information(x, y);
    EXPECT_NEAR(mi, oracle_mi(x, y), 1e-12);
    EXPECT_GE(mi, 0.0);
    const auto xy = kendall::make_joint({x, y});
    // marginal entropies on the pairwise-complete positions
    std::vector<std::int32_t> xm, ym;
    for (std::size_t i = 0; i < len; ++i) {
      if (xy.codes[i] >= 0) {
        xm.push_back(xc[i]);
        ym.push_back(yc[i]);
      }
    }
    EXPECT_LE(mi, std::min(kendall::entropy(codes(xm)), kendall::entropy(codes(ym))) + 1e-12);
  }
}

TEST(MutualInformation, NoCompletePositions) {
  EXPECT_THROW(kendall::mutual_information(codes({0, -1}), codes({-1, 0})), std::domain_error);
}

// --- conditional and interaction ------------------------------------------------

TEST(ConditionalMi, ConstantConditionReducesToMi) {
  kendall::CounterRng rng(4);
  const auto x = kendall::kendall_transform(distinct_values(rng, 12));
  const auto y = kendall::kendall_transform(distinct_values(rng, 12));
  const auto z = kendall::kendall_transform(A(12, 1.0));
  EXPECT_NEAR(kendall::conditional_mi(x, y, z), kendall::mutual_information(x, y), 1e-14);
  EXPECT_NEAR(kendall::interaction_information(x, y, z), 0.0, 1e-14);
}

TEST(ConditionalMi, SelfGivesConditionalEntropy) {
  kendall::CounterRng rng(5);
  const auto x = kendall::to_categorical(kendall::kendall_transform(distinct_values(rng, 10)));
  const auto z = kendall::to_categorical(kendall::kendall_transform(distinct_values(rng, 10)));
  const double h_x_given_z = kendall::entropy(kendall::make_joint({x, z})) - kendall::entropy(z);
  EXPECT_NEAR(kendall::conditional_mi(x, x, z), h_x_given_z, 1e-14);
}

TEST(ConditionalMi, NonNegativeAndInteractionSymmetric) {
  kendall::CounterRng rng(6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t len = 2 + rng.below(80);
    std::vector<std::int32_t> a(len), b(len), c(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = static_cast<std::int32_t>(rng.below(3));
      b[i] = static_cast<std::int32_t>(rng.below(2));
      c[i] = static_cast<std::int32_t>((a[i] + b[i] + rng.below(2)) % 3);
    }
    const auto x = codes(a), y = codes(b), z = codes(c);
    EXPECT_GE(kendall::conditional_mi(x, y, z), 0.0);
    const double ii = kendall::interaction_information(x, y, z);
    EXPECT_NEAR(ii, kendall::mutual_information(x, y) - kendall::conditional_mi(x, y, z), 1e-12);
    EXPECT_NEAR(ii, kendall::mutual_information(x, z) - kendall::conditional_mi(x, z, y), 1e-12);
    EXPECT_NEAR(ii, kendall::mutual_information(y, z) - kendall::conditional_mi(y, z, x), 1e-12);
  }
}

TEST(InteractionInformation, XorIsSynergistic) {
  // x and y independent and uniform, z = x xor y: I(x;y) = 0, I(x;y|z) = log 2
  const auto x = codes({0, 0, 1, 1});
  const auto y = codes({0, 1, 0, 1});
  const auto z = codes({0, 1, 1, 0});
  EXPECT_NEAR(kendall::mutual_information(x, y), 0.0, 1e-15);
  EXPECT_NEAR(kendall::conditional_mi(x, y, z), kLog2, 1e-15);
  EXPECT_NEAR(kendall::interaction_information(x, y, z), -kLog2, 1e-15);
}

// --- tau -------------------------------------------------------------------------

TEST(KendallTau, PerfectAndReversed) {
  const A x{0.5, 2, -1, 7};
  const A rev{-0.5, -2, 1, -7};
  EXPECT_EQ(kendall::kendall_tau(x, x).tau, 1.0);
  EXPECT_EQ(kendall::kendall_tau(x, rev).tau, -1.0);
  EXPECT_EQ(kendall::kendall_tau_direct(x, rev).tau, -1.0);
}

TEST(KendallTau, EnumeratedExample) {
  const auto t = kendall::kendall_tau(A{1, 2, 3, 4}, A{1, 3, 2, 4});
  EXPECT_EQ(t.concordant, 10u);
  EXPECT_EQ(t.discordant, 2u);
  EXPECT_EQ(t.m, 12u);
  EXPECT_DOUBLE_EQ(t.tau, 2.0 / 3.0);
}

TEST(KendallTau, CountersAgreeWithTiesAndMissing) {
  kendall::CounterRng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + rng.below(40);
    std::vector<double> x(n), y(n);
    const bool ties = t % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ties ? static_cast<double>(rng.below(5)) : rng.normal();
      y[i] = ties ? static_cast<double>(rng.below(4)) : rng.normal();
      if (t % 7 == 0 && rng.below(6) == 0) y[i] = kendall::kMissing;
    }
    ASSERT_EQ(kendall::kendall_tau(x, y), kendall::kendall_tau_direct(x, y)) << "instance " << t;
  }
}

TEST(KendallTau, QuantisedIntoHalfMPlusOneStates) {
  // n = 5: every permutation against the identity, m/2 + 1 = 11 distinct values
  std::vector<double> base{1, 2, 3, 4, 5}, y = base;
  std::set<double> taus;
  do {
    taus.insert(kendall::kendall_tau(base, y).tau);
  } while (std::next_permutation(y.begin(), y.end()));
  EXPECT_EQ(taus.size(), 11u);
}

TEST(KendallTau, RejectsBadInput) {
  EXPECT_THROW(kendall::kendall_tau(A{1}, A{1}), std::domain_error);
  EXPECT_THROW(kendall::kendall_tau(A{1, 2}, A{1}), std::domain_error);
}

// --- closed forms ------------------------------------------------------------------

TEST(MiFromTau, ReferenceValues) {
  EXPECT_EQ(kendall::mi_from_tau(0.0), 0.0);
  EXPECT_NEAR(kendall::mi_from_tau(1.0), kLog2, 1e-15);
  EXPECT_NEAR(kendall::mi_from_tau(-1.0), kLog2, 1e-15);
  EXPECT_NEAR(kendall::mi_from_tau(0.5), 0.130812035941136959, 1e-15);
  EXPECT_THROW(kendall::mi_from_tau(1.0001), std::domain_error);
}

TEST(MiFromTau, MatchesDirectFormulaAwayFromEndpoints) {
  for (double t = -0.99; t < 0.99; t += 0.0137) {
    const double direct = t * std::log(std::sqrt((1 + t) / (1 - t))) + std::log(std::sqrt(1 - t * t));
    EXPECT_NEAR(kendall::mi_from_tau(t), direct, 1e-14);
  }
}

TEST(MiFromTau, EvenAndIncreasing) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    const double v = kendall::mi_from_tau(t);
    EXPECT_EQ(v, kendall::mi_from_tau(-t));
    EXPECT_GT(v, prev);
    EXPECT_LE(v, kLog2 + 1e-15);
    prev = v;
  }
}

TEST(MiFromTau, EqualsPluginMiOnTieFreeTransforms) {
  kendall::CounterRng rng(8);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 3 + rng.below(48);
    const auto x = distinct_values(rng, n);
    auto y = distinct_values(rng, n);
    if (t % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) y[i] += 2 * x[i];
    }
    const double plugin =
        kendall::mutual_information(kendall::kendall_transform(x), kendall::kendall_transform(y));
    EXPECT_NEAR(plugin, kendall::mi_from_tau(kendall::kendall_tau(x, y).tau), 1e-12);
  }
}

TEST(MiFromRho, ReferenceValuesAndSmallCorrelationAgreement) {
  EXPECT_EQ(kendall::mi_from_rho(0.0), 0.0);
  EXPECT_NEAR(kendall::mi_from_rho(0.6), 0.223143551314209755766, 1e-15);
  EXPECT_NEAR(kendall::mi_from_rho(0.01) / kendall::mi_from_tau(0.01), 1.0, 0.01);
  EXPECT_THROW(kendall::mi_from_rho(1.0), std::domain_error);
  EXPECT_THROW(kendall::mi_from_rho(-1.0), std::domain_error);
}

// --- AUROC -----------------------------------------------------------------------

TEST(Auroc, EnumeratedExamples) {
  const auto sep = kendall::auroc(A{1, 2, 3, 4}, A{0, 0, 1, 1});
  EXPECT_EQ(sep.auroc, 1.0);
  EXPECT_EQ(sep.u, 0.0);
  const auto mix = kendall::auroc(A{1, 3, 2, 4}, A{0, 0, 1, 1});
  EXPECT_EQ(mix.auroc, 0.75);
  EXPECT_EQ(mix.u, 1.0);
  EXPECT_EQ(mix.positives, 2u);
  EXPECT_EQ(mix.negatives, 2u);
}

TEST(Auroc, LabelSwapComplements) {
  const A x{0.2, 1.5, -3, 4, 2.2, 0.1};
  const auto a = kendall::auroc(x, A{1, 0, 0, 1, 1, 0});
  const auto b = kendall::auroc(x, A{0, 1, 1, 0, 0, 1});
  EXPECT_NEAR(a.auroc, 1.0 - b.auroc, 1e-15);
}

TEST(Auroc, SingleClassRejected) {
  EXPECT_THROW(kendall::auroc(A{1, 2, 3}, A{1, 1, 1}), std::domain_error);
}

TEST(MiFromAuroc, ReferenceValues) {
  EXPECT_EQ(kendall::mi_from_auroc(0.5, 3, 4), 0.0);
  EXPECT_NEAR(kendall::mi_from_auroc(0.75, 2, 2), 0.0872080239607579727528, 1e-15);
  EXPECT_NEAR(kendall::mi_from_auroc(0.75, 2, 2),
              kendall::mutual_information(kendall::kendall_transform(A{1, 3, 2, 4}),
                                          kendall::kendall_transform(A{0, 0, 1, 1})),
              1e-15);
  EXPECT_THROW(kendall::mi_from_auroc(0.5, 0, 3), std::domain_error);
}

TEST(MiFromAuroc, SymmetricUnderComplement) {
  for (double a = 0.0; a <= 1.0; a += 0.01) {
    EXPECT_NEAR(kendall::mi_from_auroc(a, 3, 5), kendall::mi_from_auroc(1.0 - a, 3, 5), 1e-15);
  }
}

}  // namespace

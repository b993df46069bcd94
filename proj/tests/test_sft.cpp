#include <gtest/gtest.h>

#include <set>

#include "chebotarev/sft.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace chebotarev;

namespace {

GroupHom free_hom(const FiniteGroup& g, std::vector<std::string> images) {
  auto target = std::make_shared<const FiniteGroup>(g);
  std::vector<ElementId> ids;
  for (const auto& s : images) ids.push_back(target->index_of(parse_cycles(s, g.degree())));
  return GroupHom(Presentation::free(ids.size()), target, ids);
}

LabeledSFT make_sft(std::size_t states, std::vector<std::tuple<std::size_t, std::size_t, std::string>> edges, GroupHom hom) {
  std::vector<SftEdge> e;
  for (auto& [f, t, l] : edges) e.push_back({f, t, parse_word(l)});
  return LabeledSFT(states, std::move(e), std::move(hom));
}

FiniteGroup trivial_group() { return corpus::make(1, {}); }
FiniteGroup z2() { return corpus::make(2, {"(1 2)"}); }

LabeledSFT golden_mean() {
  return make_sft(2, {{0, 0, "1"}, {0, 1, "1"}, {1, 0, "1"}}, free_hom(trivial_group(), {"()"}));
}

LabeledSFT two_shift_z2() { return make_sft(1, {{0, 0, "x1"}, {0, 0, "1"}}, free_hom(z2(), {"(1 2)"})); }

LabeledSFT a5_three_shift() {
  return make_sft(1, {{0, 0, "x1 x2^-1"}, {0, 0, "x2 x1"}, {0, 0, "x1 x1 x2"}},
                  free_hom(corpus::a5(), {"(1 2 3 4 5)", "(1 2 3)"}));
}

// A two-state example with a non-trivial graph and mixed labels, into S3.
LabeledSFT mixed_s3() {
  return make_sft(2, {{0, 0, "x1"}, {0, 1, "x2"}, {1, 0, "1"}, {1, 1, "x1 x2"}},
                  free_hom(corpus::make(3, {"(1 2 3)", "(1 2)"}), {"(1 2 3)", "(1 2)"}));
}

std::vector<std::size_t> counts_by_length(const std::vector<Orbit>& orbits, std::size_t max_len) {
  std::vector<std::size_t> c(max_len + 1, 0);
  for (const auto& o : orbits) ++c[o.length()];
  return c;
}

BigInt trace_power(const std::vector<std::vector<BigInt>>& adj, std::size_t n) {
  std::vector<std::vector<BigInt>> p = adj;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::vector<BigInt>> q(adj.size(), std::vector<BigInt>(adj.size()));
    for (std::size_t i = 0; i < adj.size(); ++i)
      for (std::size_t m = 0; m < adj.size(); ++m)
        for (std::size_t j = 0; j < adj.size(); ++j) q[i][j] += p[i][m] * adj[m][j];
    p = std::move(q);
  }
  BigInt t = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) t += p[i][i];
  return t;
}

BigInt total(const std::vector<BigInt>& v) {
  BigInt t = 0;
  for (const auto& x : v) t += x;
  return t;
}

}  // namespace

TEST(LabeledSFT, RejectsBadInput) {
  GroupHom hom = free_hom(z2(), {"(1 2)"});
  EXPECT_THROW(LabeledSFT(0, {}, hom), InputError);
  EXPECT_THROW(LabeledSFT(1, {}, hom), InputError);
  EXPECT_THROW(make_sft(1, {{0, 1, "x1"}}, hom), InputError);
  EXPECT_THROW(make_sft(1, {{0, 0, "x2"}}, hom), InputError);
}

TEST(Orbits, SingleLoop) {
  LabeledSFT s = make_sft(1, {{0, 0, "x1"}}, free_hom(z2(), {"(1 2)"}));
  auto orbits = enumerate_orbits(s, 6);
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_EQ(orbits[0].length(), 1u);
  EXPECT_EQ(orbits[0].holonomy, s.group().index_of(parse_cycles("(1 2)", 2)));
}

TEST(Orbits, GoldenMeanCounts) {
  LabeledSFT s = golden_mean();
  auto c = counts_by_length(enumerate_orbits(s, 8), 8);
  std::vector<std::size_t> expected{0, 1, 1, 1, 1, 2, 2, 4, 5};
  EXPECT_EQ(c, expected);
}

TEST(Orbits, FullTwoShiftCounts) {
  auto c = counts_by_length(enumerate_orbits(two_shift_z2(), 4), 4);
  EXPECT_EQ(c[1], 2u);
  EXPECT_EQ(c[2], 1u);
  EXPECT_EQ(c[3], 2u);
  EXPECT_EQ(c[4], 3u);
}

TEST(Orbits, CountsMatchTraceFormula) {
  for (const LabeledSFT& s : {golden_mean(), two_shift_z2(), mixed_s3(), a5_three_shift()}) {
    const std::size_t n = 9;
    auto c = counts_by_length(enumerate_orbits(s, n), n);
    auto want = oracle::primitive_orbit_counts(oracle::adjacency(s), n);
    for (std::size_t k = 1; k <= n; ++k) EXPECT_EQ(BigInt(c[k]), want[k]) << "length " << k;
  }
}

TEST(Orbits, OrderedUniqueAndPrimitive) {
  LabeledSFT s = mixed_s3();
  auto orbits = enumerate_orbits(s, 8);
  std::set<std::vector<std::uint32_t>> canonical;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (i) EXPECT_TRUE(orbit_less(orbits[i - 1], orbits[i]));
    const auto& e = orbits[i].edges;
    const std::size_t n = e.size();
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(s.edges()[e[k]].to, s.edges()[e[(k + 1) % n]].from);
    // Primitive: no proper rotation fixes the cycle.
    std::vector<std::vector<std::uint32_t>> rots;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<std::uint32_t> rot(e.begin() + static_cast<long>(r), e.end());
      rot.insert(rot.end(), e.begin(), e.begin() + static_cast<long>(r));
      if (r) EXPECT_NE(rot, std::vector<std::uint32_t>(e.begin(), e.end()));
      rots.push_back(rot);
    }
    EXPECT_TRUE(canonical.insert(*std::min_element(rots.begin(), rots.end())).second);
  }
}

TEST(Orbits, FrobeniusClassIsRotationInvariant) {
  LabeledSFT s = a5_three_shift();
  const auto& g = s.group();
  for (const auto& o : enumerate_orbits(s, 6)) {
    const std::size_t n = o.length();
    for (std::size_t r = 0; r < n; ++r) {
      ElementId h = g.identity();
      for (std::size_t k = 0; k < n; ++k) h = g.multiply(h, s.edge_holonomy(o.edges[(r + k) % n]));
      EXPECT_EQ(s.class_of(h), o.frobenius_class);
    }
  }
}

TEST(Orbits, WorkersGiveIdenticalStream) {
  LabeledSFT s = mixed_s3();
  auto one = enumerate_orbits(s, 9, 1);
  for (std::size_t w : {2u, 3u, 8u}) {
    auto many = enumerate_orbits(s, 9, w);
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(one[i].edges, many[i].edges);
      EXPECT_EQ(one[i].holonomy, many[i].holonomy);
    }
  }
}

TEST(ExactCounts, Examples) {
  auto gm = exact_counts(golden_mean(), 4);
  ASSERT_EQ(gm.size(), 1u);
  EXPECT_EQ(gm[0], 7);
  auto z = exact_counts(two_shift_z2(), 2);
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0], 2);
  EXPECT_EQ(z[1], 2);
}

TEST(ExactCounts, MatchesBruteForceEnumeration) {
  for (const LabeledSFT& s : {mixed_s3(), a5_three_shift(), two_shift_z2()})
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(exact_counts(s, n), oracle::brute_closed_path_counts(s, n)) << "n=" << n;
}

TEST(ExactCounts, ConservationIdentity) {
  for (const LabeledSFT& s : {golden_mean(), mixed_s3(), a5_three_shift()}) {
    auto orbits = enumerate_orbits(s, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
      auto exact = exact_counts(s, n);
      EXPECT_EQ(exact, oracle::orbit_power_counts(s, orbits, n)) << "n=" << n;
      EXPECT_EQ(total(exact), trace_power(oracle::adjacency(s), n)) << "n=" << n;
    }
  }
}

TEST(ExactCounts, CapIsEnforced) {
  EXPECT_THROW(exact_counts(a5_three_shift(), 3, 10), CapExceeded);
}

TEST(ChebotarevReport, TrivialGroupHasDensityOne) {
  auto rep = chebotarev_report(golden_mean(), 6);
  ASSERT_EQ(rep.cutoffs.size(), 6u);
  for (const auto& cut : rep.cutoffs) {
    ASSERT_EQ(cut.classes.size(), 1u);
    EXPECT_EQ(cut.classes[0].count, cut.total);
    EXPECT_DOUBLE_EQ(cut.classes[0].density, 1.0);
    EXPECT_DOUBLE_EQ(cut.classes[0].deviation, 0.0);
  }
  EXPECT_EQ(rep.cutoffs.back().total, 1u + 1 + 1 + 1 + 2 + 2);
}

TEST(ChebotarevReport, DensitiesSumToOneAndMatchCounts) {
  LabeledSFT s = a5_three_shift();
  auto rep = chebotarev_report(s, 7);
  auto orbits = enumerate_orbits(s, 7);
  for (const auto& cut : rep.cutoffs) {
    std::size_t expected_total = 0;
    std::vector<std::size_t> per_class(s.classes().size(), 0);
    for (const auto& o : orbits)
      if (o.length() <= cut.cutoff) {
        ++expected_total;
        ++per_class[o.frobenius_class];
      }
    EXPECT_EQ(cut.total, expected_total);
    double sum = 0;
    Fraction targets;
    for (std::size_t c = 0; c < cut.classes.size(); ++c) {
      EXPECT_EQ(cut.classes[c].count, per_class[c]);
      EXPECT_EQ(cut.classes[c].target, Fraction::of(s.classes()[c].size(), 60));
      EXPECT_NEAR(cut.classes[c].deviation, std::abs(cut.classes[c].density - cut.classes[c].target.value()), 1e-12);
      sum += cut.classes[c].density;
      targets = targets + cut.classes[c].target;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(targets, Fraction::of(1, 1));
  }
  // Types are ascending: (1,1,1,1,1), (2,2,1), (3,1,1), (5).
  ASSERT_EQ(rep.types.size(), 4u);
  EXPECT_EQ(rep.types[0].to_string(), "(1,1,1,1,1)");
  EXPECT_EQ(rep.types[3].to_string(), "(5)");
}

TEST(ChebotarevReport, SkipDropsLeadingOrbits) {
  LabeledSFT s = a5_three_shift();
  auto full = chebotarev_report(s, 5);
  ReportOptions opts;
  opts.skip = 3;
  auto skipped = chebotarev_report(s, 5, opts);
  EXPECT_EQ(skipped.skipped, 3u);
  EXPECT_EQ(skipped.cutoffs.back().total + 3, full.cutoffs.back().total);
  // All three length-1 orbits are skipped, so the first cutoff is length 2.
  EXPECT_EQ(skipped.cutoffs.front().cutoff, 2u);
  EXPECT_EQ(skipped.cutoffs.size() + 1, full.cutoffs.size());
}

TEST(ChebotarevReport, WorkersDoNotChangeResult) {
  LabeledSFT s = a5_three_shift();
  ReportOptions opts;
  opts.workers = 3;
  auto a = chebotarev_report(s, 7);
  auto b = chebotarev_report(s, 7, opts);
  for (std::size_t i = 0; i < a.cutoffs.size(); ++i)
    for (std::size_t c = 0; c < a.cutoffs[i].classes.size(); ++c)
      EXPECT_EQ(a.cutoffs[i].classes[c].count, b.cutoffs[i].classes[c].count);
}

TEST(ChebotarevReport, RejectsNonSurjectiveLabels) {
  LabeledSFT s = make_sft(1, {{0, 0, "x1"}}, free_hom(corpus::a5(), {"(1 2 3)"}));
  EXPECT_THROW(chebotarev_report(s, 4), PreconditionError);
}

TEST(Realization, IdentityLabelsFail) {
  LabeledSFT s = make_sft(1, {{0, 0, "x1 x1^-1"}, {0, 0, "1"}, {0, 0, "x2 x2^-1"}},
                          free_hom(corpus::a5(), {"(1 2 3 4 5)", "(1 2 3)"}));
  auto r = realization_check(s, 6);
  EXPECT_TRUE(r.irreducible);
  EXPECT_EQ(r.period, 1u);
  EXPECT_EQ(r.holonomy_order, 1u);
  EXPECT_EQ(r.target_order, 60u);
  EXPECT_FALSE(r.holonomy_full());
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.diagnostic().find("holonomy"), std::string::npos);
}

TEST(Realization, TwoShiftZ2HasLengthOneWitnesses) {
  auto r = realization_check(two_shift_z2(), 1);
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.witnesses.size(), 2u);
  for (const auto& w : r.witnesses) {
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->length(), 1u);
  }
}

TEST(Realization, A5ThreeShiftWitnessesAreValid) {
  LabeledSFT s = a5_three_shift();
  auto r = realization_check(s, 6);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.holonomy_order, 60u);
  for (std::size_t c = 0; c < r.witnesses.size(); ++c) {
    ASSERT_TRUE(r.witnesses[c].has_value());
    const Orbit& o = *r.witnesses[c];
    EXPECT_LE(o.length(), 6u);
    ElementId h = s.group().identity();
    for (auto e : o.edges) h = s.group().multiply(h, s.edge_holonomy(e));
    EXPECT_EQ(s.class_of(h), c);
  }
}

TEST(Realization, PeriodAndIrreducibility) {
  // A 2-cycle between states: period 2.
  LabeledSFT cyc = make_sft(2, {{0, 1, "x1"}, {1, 0, "1"}}, free_hom(z2(), {"(1 2)"}));
  auto r = realization_check(cyc, 4);
  EXPECT_TRUE(r.irreducible);
  EXPECT_EQ(r.period, 2u);
  // State 1 is a sink: not irreducible.
  LabeledSFT sink = make_sft(2, {{0, 0, "x1"}, {0, 1, "1"}}, free_hom(z2(), {"(1 2)"}));
  EXPECT_FALSE(realization_check(sink, 3).irreducible);
}

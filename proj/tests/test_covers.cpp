#include <gtest/gtest.h>

#include <random>

#include "chebotarev/covers.hpp"
#include "support/corpus.hpp"

using namespace chebotarev;

namespace {

// Free presentation on the group's own generators.
GroupHom identity_hom(const FiniteGroup& g) {
  auto target = std::make_shared<const FiniteGroup>(g);
  std::vector<ElementId> images(g.generators().begin(), g.generators().end());
  return GroupHom(Presentation::free(images.size()), target, images);
}

// A word for z, by breadth-first search in the Cayley graph (test-side).
Word word_for(const FiniteGroup& g, ElementId z) {
  std::vector<std::optional<Word>> w(g.order());
  w[g.identity()] = Word{};
  std::vector<ElementId> q{g.identity()};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      ElementId y = g.multiply(q[i], g.generators()[k]);
      if (!w[y]) {
        w[y] = *w[q[i]] * Word::generator(static_cast<Letter>(k + 1));
        q.push_back(y);
      }
    }
  return *w[z];
}

CycleType parts(std::initializer_list<std::size_t> p) { return CycleType{std::vector<std::size_t>(p)}; }

}  // namespace

TEST(BuildCover, TrivialAndRegularCovers) {
  FiniteGroup g = corpus::make(3, {"(1 2 3)", "(1 2)"});
  GroupHom hom = identity_hom(g);
  CoveringGraph trivial = build_cover(hom, Subgroup::whole(g));
  EXPECT_EQ(trivial.vertex_count(), 1u);
  for (std::size_t k = 1; k <= 2; ++k) EXPECT_EQ(trivial.edge(0, k), 0u);

  CoveringGraph regular = build_cover(hom, Subgroup::trivial(g));
  EXPECT_EQ(regular.vertex_count(), 6u);
}

TEST(BuildCover, A5OverA4HasFiveSheets) {
  FiniteGroup g = corpus::a5();
  GroupHom hom = identity_hom(g);
  CoveringGraph cover = build_cover(hom, point_stabilizer(g, 4));
  EXPECT_EQ(cover.vertex_count(), 5u);
  for (std::size_t k = 1; k <= 2; ++k) {
    std::vector<Point> img;
    for (std::size_t v = 0; v < 5; ++v) img.push_back(static_cast<Point>(cover.edge(v, k)));
    EXPECT_NO_THROW(Permutation{img});  // each generator permutes the vertices
  }
  for (std::size_t v = 0; v < cover.vertex_count(); ++v) {
    ASSERT_TRUE(cover.tree_path(v).has_value());
    EXPECT_EQ(cover.trace(0, cover.tree_path(v)->letters()), v);
  }
}

TEST(BuildCover, RejectsForeignSubgroup) {
  FiniteGroup g = corpus::a5();
  FiniteGroup s3 = corpus::make(3, {"(1 2 3)", "(1 2)"});
  EXPECT_THROW(build_cover(identity_hom(g), Subgroup::whole(s3)), PreconditionError);
}

TEST(DecomposeLoop, Examples) {
  FiniteGroup g = corpus::a5();
  GroupHom hom = identity_hom(g);  // x1 -> (1 2 3 4 5), x2 -> (1 2 3)
  CoveringGraph cover = build_cover(hom, point_stabilizer(g, 4));

  // x1^5 maps to the identity: totally decomposed.
  auto split = decompose_loop(cover, cyclic_reduce(parse_word("x1^5")));
  EXPECT_EQ(split.decomposition_type, parts({1, 1, 1, 1, 1}));

  auto inert = decompose_loop(cover, cyclic_reduce(parse_word("x1")));
  EXPECT_EQ(inert.decomposition_type, parts({5}));
  ASSERT_EQ(inert.components.size(), 1u);
  EXPECT_EQ(inert.components[0].vertices.size(), 5u);

  Word w = word_for(g, g.index_of(parse_cycles("(1 2)(3 4)", 5)));
  auto t = decompose_loop(cover, cyclic_reduce(w));
  EXPECT_EQ(t.decomposition_type, parts({2, 2, 1}));
  EXPECT_EQ(t.components.size(), 3u);

  EXPECT_THROW(decompose_loop(cover, CyclicWord{}), InputError);
}

TEST(DecomposeLoop, DegreesPartitionFiberAndAreInvariant) {
  FiniteGroup g = corpus::a5();
  GroupHom hom = identity_hom(g);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> letter(0, 3);
  for (const auto& h : all_subgroups(g)) {
    CoveringGraph cover = build_cover(hom, h);
    CosetAction action(g, h);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Letter> raw;
      for (int i = 0; i < 9; ++i) raw.push_back(std::array<Letter, 4>{1, -1, 2, -2}[letter(rng)]);
      Word w = Word::reduce(raw);
      if (cyclic_reduce(w).empty()) continue;
      Word u = Word::reduce({2, 1, -2});
      auto base = decompose_loop(cover, cyclic_reduce(w));
      std::size_t sum = 0;
      for (const auto& c : base.components) sum += c.degree;
      EXPECT_EQ(sum, cover.vertex_count());
      EXPECT_TRUE(std::is_sorted(base.decomposition_type.parts.rbegin(), base.decomposition_type.parts.rend()));
      EXPECT_EQ(decompose_loop(cover, cyclic_reduce(u * w * u.inverse())).decomposition_type, base.decomposition_type);
      EXPECT_EQ(decompose_loop(cover, cyclic_reduce(w.inverse())).decomposition_type, base.decomposition_type);

      // r = orbits of <z> on cosets; totally decomposed iff z is in the kernel.
      ElementId z = hom.evaluate(w);
      std::vector<ElementId> gen{z};
      std::vector<ElementId> cyc = closure(g, gen);
      std::set<std::set<std::size_t>> orbits;
      for (std::size_t c = 0; c < cover.vertex_count(); ++c) {
        std::set<std::size_t> orb;
        for (ElementId y : cyc) orb.insert(action.coset_of(g.multiply(action.representative(c), y)));
        orbits.insert(orb);
      }
      EXPECT_EQ(base.components.size(), orbits.size());
      bool split = std::all_of(base.components.begin(), base.components.end(), [](const auto& c) { return c.degree == 1; });
      EXPECT_EQ(split, action.kernel().contains(z));
    }
  }
}

TEST(VerifyArtin, Examples) {
  FiniteGroup trivial = corpus::make(1, {});
  EXPECT_TRUE(verify_artin(trivial, Subgroup::whole(trivial)).passed());
  EXPECT_EQ(verify_artin(trivial, Subgroup::whole(trivial)).checked, 1u);

  FiniteGroup s3 = corpus::make(3, {"(1 2 3)", "(1 2)"});
  std::vector<Permutation> t{parse_cycles("(1 2)", 3)};
  auto r = verify_artin(s3, Subgroup::generated_by(s3, std::span<const Permutation>(t)));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checked, 6u);

  FiniteGroup a5 = corpus::a5();
  r = verify_artin(a5, point_stabilizer(a5, 4));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checked, 60u);
}

TEST(VerifyArtin, AllSubgroupsOfA5) {
  FiniteGroup g = corpus::a5();
  for (const auto& h : all_subgroups(g)) {
    auto r = verify_artin(g, h);
    EXPECT_TRUE(r.passed()) << "subgroup of order " << h.order();
    EXPECT_EQ(r.checked, 60u);
  }
}

TEST(VerifyComponentBijection, Examples) {
  FiniteGroup g = corpus::a5();
  GroupHom hom = identity_hom(g);
  Subgroup h = point_stabilizer(g, 4);
  CoveringGraph cover = build_cover(hom, h);

  // Image in H: vertex 0 is fixed.
  Word in_h = word_for(g, g.index_of(parse_cycles("(1 2 3)", 5)));
  auto r = verify_component_bijection(cover, hom, h, cyclic_reduce(in_h));
  EXPECT_TRUE(r.conjugate_in_subgroup);
  EXPECT_FALSE(r.degree_one_vertices.empty());
  EXPECT_TRUE(r.passed());

  // A 5-cycle has no conjugate in A4: no degree-one component.
  r = verify_component_bijection(cover, hom, h, cyclic_reduce(parse_word("x1")));
  EXPECT_FALSE(r.conjugate_in_subgroup);
  EXPECT_TRUE(r.degree_one_vertices.empty());
  EXPECT_TRUE(r.passed());

  // Trivial cover: every component has degree one.
  Subgroup whole = Subgroup::whole(g);
  CoveringGraph trivial = build_cover(hom, whole);
  r = verify_component_bijection(trivial, hom, whole, cyclic_reduce(parse_word("x1 x2")));
  EXPECT_EQ(r.degree_one_vertices.size(), 1u);
  EXPECT_TRUE(r.passed());

  EXPECT_THROW(verify_component_bijection(trivial, hom, h, cyclic_reduce(parse_word("x1"))), PreconditionError);
}

TEST(VerifyComponentBijection, FixedBasepointIffImageInSubgroup) {
  FiniteGroup g = corpus::make(4, {"(1 2 3 4)", "(1 2)"});
  GroupHom hom = identity_hom(g);
  for (const auto& h : all_subgroups(g)) {
    CoveringGraph cover = build_cover(hom, h);
    for (ElementId z = 1; z < g.order(); ++z) {
      CyclicWord w = cyclic_reduce(word_for(g, z));
      Word loop = word_for(g, z);
      bool fixed = cover.trace(0, loop.letters()) == 0;
      EXPECT_EQ(fixed, h.contains(z));
      EXPECT_TRUE(verify_component_bijection(cover, hom, h, w).passed());
    }
  }
}

TEST(Monodromy, InverseOfLiftAndEqualToCosetAction) {
  FiniteGroup g = corpus::a5();
  GroupHom hom = identity_hom(g);
  Subgroup h = point_stabilizer(g, 4);
  CoveringGraph cover = build_cover(hom, h);
  CosetAction action(g, h);
  for (ElementId z = 0; z < g.order(); ++z) {
    Word w = word_for(g, z);
    EXPECT_EQ(monodromy(cover, w.letters()), action.image(z));
    EXPECT_EQ(compose(monodromy(cover, w.letters()), lift_permutation(cover, w.letters())),
              Permutation::identity(cover.vertex_count()));
  }
}

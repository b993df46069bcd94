#pragma once

// Finite covers of a wedge of circles realized as coset graphs, loop lifting
// and decomposition types of loops, plus exhaustive checks that the lifted
// picture agrees with the monodromy permutation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/freewords.hpp"
#include "chebotarev/permgroup.hpp"

namespace chebotarev {

// The cover of the wedge of circles (one circle per presentation generator)
// attached to a subgroup H of the homomorphism's target. Vertices are the
// right cosets H\G; vertex 0 is H, the basepoint of the cover. The k-edge
// out of Hx ends at Hx*g_k, so tracing a word w from Hx ends at Hx*w. The
// monodromy permutation of w is the inverse of that map.
class CoveringGraph {
 public:
  CoveringGraph(const GroupHom& hom, const Subgroup& h) {
    const FiniteGroup& g = hom.target();
    require_subgroup_of(g, h);
    generators_ = hom.presentation().generator_count();

    // Group the target's elements into cosets keyed by their least member.
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> key(g.order(), kUnset);
    std::vector<ElementId> least;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (key[x] != kUnset) continue;
      for (ElementId m : h.members()) key[g.multiply(m, x)] = least.size();
      least.push_back(x);
    }
    const std::size_t n = least.size();

    std::vector<std::size_t> label(n, kUnset);
    auto open = [&](std::size_t k, ElementId rep, std::optional<Word> path) {
      label[k] = reps_.size();
      reps_.push_back(rep);
      paths_.push_back(std::move(path));
    };
    // Breadth-first from H over generator images in presentation order; any
    // cosets the images do not reach are opened afterwards by least member.
    open(key[g.identity()], g.identity(), Word{});
    for (std::size_t seed = 0;; ++seed) {
      for (std::size_t head = 0; head < reps_.size(); ++head) {
        for (std::size_t k = 1; k <= generators_; ++k) {
          ElementId y = g.multiply(reps_[head], hom.image(k));
          if (label[key[y]] != kUnset) continue;
          std::optional<Word> path;
          if (paths_[head]) path = *paths_[head] * Word::generator(static_cast<Letter>(k));
          open(key[y], y, std::move(path));
        }
      }
      while (seed < n && label[seed] != kUnset) ++seed;
      if (seed >= n) break;
      open(seed, least[seed], std::nullopt);
    }

    forward_.assign(generators_, std::vector<std::size_t>(n));
    backward_.assign(generators_, std::vector<std::size_t>(n));
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t k = 1; k <= generators_; ++k) {
        std::size_t w = label[key[g.multiply(reps_[v], hom.image(k))]];
        forward_[k - 1][v] = w;
        backward_[k - 1][w] = v;
      }
  }

  std::size_t base_generator_count() const { return generators_; }
  std::size_t vertex_count() const { return reps_.size(); }

  // Target vertex of the k-edge (k is 1-based) leaving v.
  std::size_t edge(std::size_t v, std::size_t k) const { return forward_.at(k - 1).at(v); }

  std::size_t step(std::size_t v, Letter l) const {
    auto k = static_cast<std::size_t>(std::abs(l));
    if (l == 0 || k > generators_) throw InputError("word letter out of the cover's generator range");
    return l > 0 ? forward_[k - 1][v] : backward_[k - 1][v];
  }

  std::size_t trace(std::size_t v, std::span<const Letter> letters) const {
    for (Letter l : letters) v = step(v, l);
    return v;
  }

  // Coset representative x with vertex v = Hx.
  ElementId representative(std::size_t v) const { return reps_.at(v); }

  // Word of a path from the basepoint to v along the breadth-first tree;
  // empty optional for vertices the generator images do not reach.
  const std::optional<Word>& tree_path(std::size_t v) const { return paths_.at(v); }

 private:
  std::size_t generators_ = 0;
  std::vector<ElementId> reps_;
  std::vector<std::optional<Word>> paths_;
  std::vector<std::vector<std::size_t>> forward_;
  std::vector<std::vector<std::size_t>> backward_;
};

inline CoveringGraph build_cover(const GroupHom& hom, const Subgroup& h) { return CoveringGraph(hom, h); }

// Endpoint map of lifting w: v -> v*w.
inline Permutation lift_permutation(const CoveringGraph& cover, std::span<const Letter> letters) {
  std::vector<Point> img(cover.vertex_count());
  for (std::size_t v = 0; v < img.size(); ++v) img[v] = static_cast<Point>(cover.trace(v, letters));
  return Permutation(std::move(img));
}

// The monodromy permutation of w on the fiber over the basepoint.
inline Permutation monodromy(const CoveringGraph& cover, std::span<const Letter> letters) {
  return lift_permutation(cover, letters).inverse();
}

struct LiftComponent {
  std::vector<std::size_t> vertices;  // fiber points on the component, ascending
  std::size_t degree = 0;             // covering degree over the loop
};

struct LiftResult {
  std::vector<LiftComponent> components;  // by degree descending, then least vertex
  CycleType decomposition_type;
};

inline LiftResult decompose_lift(const CoveringGraph& cover, std::span<const Letter> letters) {
  const std::size_t n = cover.vertex_count();
  std::vector<bool> seen(n, false);
  LiftResult r;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    LiftComponent c;
    std::size_t v = start;
    std::size_t steps = 0;
    do {
      seen[v] = true;
      c.vertices.push_back(v);
      v = cover.trace(v, letters);
      steps += letters.size();
    } while (v != start);
    c.degree = letters.empty() ? 1 : steps / letters.size();
    std::sort(c.vertices.begin(), c.vertices.end());
    r.components.push_back(std::move(c));
  }
  std::stable_sort(r.components.begin(), r.components.end(),
                   [](const LiftComponent& a, const LiftComponent& b) { return a.degree > b.degree; });
  for (const auto& c : r.components) r.decomposition_type.parts.push_back(c.degree);
  return r;
}

// Preimage components of the loop w and their covering degrees.
inline LiftResult decompose_loop(const CoveringGraph& cover, const CyclicWord& w) {
  if (w.empty()) throw InputError("the empty cyclic word is not a knot class");
  return decompose_lift(cover, w.letters());
}

struct ArtinMismatch {
  ElementId element = 0;
  CycleType graph_type;
  CycleType monodromy_type;
};

struct ArtinReport {
  std::size_t checked = 0;
  std::vector<ArtinMismatch> mismatches;
  // Elements whose traced monodromy differs from the coset action as a
  // permutation (not just in cycle type).
  std::vector<ElementId> exact_mismatches;
  bool passed() const { return mismatches.empty() && exact_mismatches.empty(); }
};

// For every element z of g, compares the decomposition type read off the
// covering graph with the cycle type of the coset action image of z.
inline ArtinReport verify_artin(const FiniteGroup& g, const Subgroup& h) {
  require_subgroup_of(g, h);
  auto target = std::make_shared<const FiniteGroup>(g);
  std::vector<ElementId> images(g.generators().begin(), g.generators().end());
  GroupHom hom(Presentation::free(images.size()), target, images);
  CoveringGraph cover(hom, h);
  CosetAction action(g, h);

  // Shortest words for every element, breadth-first over the generators.
  std::vector<std::optional<Word>> word_of(g.order());
  word_of[g.identity()] = Word{};
  std::vector<ElementId> queue{g.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t k = 1; k <= images.size(); ++k) {
      ElementId y = g.multiply(queue[head], images[k - 1]);
      if (word_of[y]) continue;
      word_of[y] = *word_of[queue[head]] * Word::generator(static_cast<Letter>(k));
      queue.push_back(y);
    }

  ArtinReport report;
  for (ElementId z = 0; z < g.order(); ++z) {
    const Word& w = *word_of[z];
    Permutation rho = action.image(z);
    CycleType expected = cycle_type(rho);
    CycleType traced = w.empty() ? decompose_lift(cover, {}).decomposition_type
                                 : decompose_loop(cover, cyclic_reduce(w)).decomposition_type;
    if (traced != expected) report.mismatches.push_back({z, traced, expected});
    if (monodromy(cover, w.letters()) != rho) report.exact_mismatches.push_back(z);
    ++report.checked;
  }
  return report;
}

struct BijectionReport {
  ElementId image = 0;                 // z, the image of the loop
  bool conjugate_in_subgroup = false;  // some g z g^-1 lies in H
  std::vector<std::size_t> degree_one_vertices;
  // Per degree-one component: the based loop (tree path, lift, path back)
  // evaluates into H and into the conjugacy class of z.
  std::vector<bool> component_ok;
  bool direction_one() const { return std::all_of(component_ok.begin(), component_ok.end(), [](bool b) { return b; }); }
  bool direction_two() const { return !conjugate_in_subgroup || !degree_one_vertices.empty(); }
  bool passed() const { return direction_one() && direction_two(); }
};

// Both directions of the degree-one lifting correspondence for one loop.
inline BijectionReport verify_component_bijection(const CoveringGraph& cover, const GroupHom& hom,
                                                   const Subgroup& h, const CyclicWord& w) {
  const FiniteGroup& g = hom.target();
  require_subgroup_of(g, h);
  if (cover.base_generator_count() != hom.presentation().generator_count() || cover.vertex_count() * h.order() != g.order())
    throw PreconditionError("cover was not built from this homomorphism and subgroup");

  BijectionReport r;
  const Word loop = w.word();
  r.image = hom.evaluate(loop);
  for (ElementId c = 0; c < g.order() && !r.conjugate_in_subgroup; ++c)
    r.conjugate_in_subgroup = h.contains(g.conjugate(r.image, c));

  auto conjugate_to_image = [&](ElementId y) {
    for (ElementId c = 0; c < g.order(); ++c)
      if (g.conjugate(r.image, c) == y) return true;
    return false;
  };

  const LiftResult lift = decompose_lift(cover, loop.letters());
  for (const auto& comp : lift.components) {
    if (comp.degree != 1) continue;
    const std::size_t v = comp.vertices.front();
    r.degree_one_vertices.push_back(v);
    ElementId based;
    if (const auto& path = cover.tree_path(v))
      based = hom.evaluate(*path * loop * path->inverse());
    else {
      ElementId x = cover.representative(v);
      based = g.multiply(g.multiply(x, r.image), g.inverse(x));
    }
    r.component_ok.push_back(h.contains(based) && conjugate_to_image(based));
  }
  std::sort(r.degree_one_vertices.begin(), r.degree_one_vertices.end());
  return r;
}

}  // namespace chebotarev

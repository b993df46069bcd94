#pragma once

// Permutation arithmetic, finite permutation groups, conjugacy classes and
// the monodromy (coset) action of a group on the right cosets of a subgroup.
//
// Composition convention: (a * b)(x) = a(b(x)), the right factor acts first.
// Group products xy used throughout the library mean compose(x, y).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chebotarev/error.hpp"

namespace chebotarev {

using Point = std::uint32_t;
using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 10080;

class Permutation {
 public:
  Permutation() : images_{0} {}

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    if (images_.empty()) throw InputError("permutation degree must be at least 1");
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw InputError("image sequence is not a bijection");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> id(degree);
    std::iota(id.begin(), id.end(), Point{0});
    return Permutation(std::move(id));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    Permutation r;
    r.images_ = std::move(inv);
    return r;
  }

  friend Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw InputError("compose: degree mismatch");
    Permutation r;
    r.images_.resize(a.degree());
    for (std::size_t x = 0; x < a.degree(); ++x) r.images_[x] = a.images_[b.images_[x]];
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = p.degree();
    for (Point x : p.images()) h = h * 1000003u ^ (x + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

// Descending partition of the degree; fixed points appear as 1's.
struct CycleType {
  std::vector<std::size_t> parts;

  std::size_t degree() const { return std::accumulate(parts.begin(), parts.end(), std::size_t{0}); }

  // "(2,2,1)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType& a, const CycleType& b) { return a.parts <=> b.parts; }
};

inline std::vector<std::vector<Point>> cycles(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.degree(), false);
  for (Point start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cyc;
    for (Point x = start; !seen[x]; x = p(x)) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

inline CycleType cycle_type(const Permutation& p) {
  CycleType t;
  for (const auto& c : cycles(p)) t.parts.push_back(c.size());
  std::sort(t.parts.begin(), t.parts.end(), std::greater<>());
  return t;
}

// Disjoint-cycle notation with 1-based points, e.g. "(1 2 3)(4 5)". The
// identity is "()". Cycles need not be disjoint; they are multiplied with the
// rightmost cycle acting first.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  if (degree == 0) throw InputError("degree must be at least 1");
  Permutation result = Permutation::identity(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::vector<Permutation> factors;
  skip_ws();
  if (i == text.size()) throw InputError("empty permutation; write the identity as ()");
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && (text[i] == ',')) {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("malformed cycle notation: " + std::string(text));
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > degree) break;
        ++i;
      }
      if (v < 1 || v > degree)
        throw InputError("point out of range 1.." + std::to_string(degree) + ": " + std::string(text));
      cyc.push_back(static_cast<Point>(v - 1));
    }
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (used[cyc[k]]) throw InputError("repeated point inside a cycle: " + std::string(text));
      used[cyc[k]] = true;
      img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    factors.emplace_back(std::move(img));
    skip_ws();
  }
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) result = compose(*it, result);
  return result;
}

inline std::string format_cycles(const Permutation& p) {
  std::string s;
  for (const auto& c : cycles(p)) {
    if (c.size() == 1) continue;
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(c[k] + 1);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

// A finite permutation group with its elements enumerated in lexicographic
// order of their image sequences. Element 0 is always the identity.
class FiniteGroup {
 public:
  static FiniteGroup generate(std::size_t degree, std::span<const Permutation> gens,
                              std::size_t order_cap = kDefaultOrderCap) {
    if (degree == 0) throw InputError("degree must be at least 1");
    for (const auto& g : gens)
      if (g.degree() != degree) throw InputError("generator degree mismatch");

    std::vector<Permutation> found{Permutation::identity(degree)};
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen{{found[0], 0}};
    for (std::size_t head = 0; head < found.size(); ++head) {
      for (const auto& g : gens) {
        Permutation next = compose(found[head], g);
        if (seen.contains(next)) continue;
        if (found.size() >= order_cap)
          throw CapExceeded("group order exceeds cap " + std::to_string(order_cap));
        seen.emplace(next, found.size());
        found.push_back(std::move(next));
      }
    }

    FiniteGroup grp;
    grp.degree_ = degree;
    std::sort(found.begin(), found.end());
    grp.elements_ = std::move(found);
    grp.index_.reserve(grp.elements_.size());
    for (std::size_t i = 0; i < grp.elements_.size(); ++i)
      grp.index_.emplace(grp.elements_[i], static_cast<ElementId>(i));
    for (const auto& g : gens) grp.generators_.push_back(grp.index_.at(g));
    grp.inverse_.resize(grp.order());
    for (std::size_t i = 0; i < grp.order(); ++i)
      grp.inverse_[i] = grp.index_.at(grp.elements_[i].inverse());
    if (grp.order() <= kTableLimit) {
      grp.table_.resize(grp.order() * grp.order());
      for (std::size_t a = 0; a < grp.order(); ++a)
        for (std::size_t b = 0; b < grp.order(); ++b)
          grp.table_[a * grp.order() + b] = grp.index_.at(compose(grp.elements_[a], grp.elements_[b]));
    }
    return grp;
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  ElementId identity() const { return 0; }
  const Permutation& element(ElementId i) const { return elements_.at(i); }
  std::span<const Permutation> elements() const { return elements_; }
  std::span<const ElementId> generators() const { return generators_; }

  std::optional<ElementId> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ElementId index_of(const Permutation& p) const {
    if (auto id = find(p)) return *id;
    throw PreconditionError("permutation " + format_cycles(p) + " is not in the group");
  }

  ElementId multiply(ElementId a, ElementId b) const {
    if (!table_.empty()) return table_[a * order() + b];
    return index_.at(compose(elements_[a], elements_[b]));
  }

  ElementId inverse(ElementId a) const { return inverse_[a]; }

  // g x g^-1
  ElementId conjugate(ElementId x, ElementId g) const { return multiply(multiply(g, x), inverse(g)); }

  ElementId power(ElementId x, std::uint64_t k) const {
    ElementId result = identity();
    ElementId base = x;
    while (k) {
      if (k & 1u) result = multiply(result, base);
      base = multiply(base, base);
      k >>= 1u;
    }
    return result;
  }

 private:
  static constexpr std::size_t kTableLimit = 512;

  std::size_t degree_ = 1;
  std::vector<Permutation> elements_;
  std::vector<ElementId> generators_;
  std::vector<ElementId> inverse_;
  std::vector<ElementId> table_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
};

inline FiniteGroup generate_group(std::size_t degree, std::span<const Permutation> gens,
                                  std::size_t order_cap = kDefaultOrderCap) {
  return FiniteGroup::generate(degree, gens, order_cap);
}

// Closure of a set of element ids under multiplication, as a sorted id list.
inline std::vector<ElementId> closure(const FiniteGroup& g, std::span<const ElementId> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<ElementId> members{g.identity()};
  in[g.identity()] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (ElementId s : gens) {
      ElementId y = g.multiply(members[head], s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

class Subgroup {
 public:
  static Subgroup generated_by(const FiniteGroup& g, std::span<const ElementId> gens) {
    for (ElementId s : gens)
      if (s >= g.order()) throw InputError("element id out of range");
    Subgroup h;
    h.members_ = closure(g, gens);
    h.mask_.assign(g.order(), false);
    for (ElementId m : h.members_) h.mask_[m] = true;
    return h;
  }

  static Subgroup generated_by(const FiniteGroup& g, std::span<const Permutation> gens) {
    std::vector<ElementId> ids;
    for (const auto& p : gens) {
      if (p.degree() != g.degree()) throw PreconditionError("subgroup generator degree mismatch");
      ids.push_back(g.index_of(p));
    }
    return generated_by(g, std::span<const ElementId>(ids));
  }

  // Validates closure; throws PreconditionError when the set is not a subgroup.
  static Subgroup from_members(const FiniteGroup& g, std::vector<ElementId> members) {
    Subgroup h;
    h.mask_.assign(g.order(), false);
    for (ElementId m : members) {
      if (m >= g.order()) throw PreconditionError("subgroup member not contained in the group");
      h.mask_[m] = true;
    }
    if (!h.mask_[g.identity()]) throw PreconditionError("subgroup must contain the identity");
    for (ElementId a : members) {
      if (!h.mask_[g.inverse(a)]) throw PreconditionError("member set is not closed under inversion");
      for (ElementId b : members)
        if (!h.mask_[g.multiply(a, b)]) throw PreconditionError("member set is not closed under composition");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    h.members_ = std::move(members);
    return h;
  }

  static Subgroup whole(const FiniteGroup& g) {
    std::vector<ElementId> all(g.order());
    std::iota(all.begin(), all.end(), ElementId{0});
    Subgroup h;
    h.members_ = std::move(all);
    h.mask_.assign(g.order(), true);
    return h;
  }

  static Subgroup trivial(const FiniteGroup& g) { return generated_by(g, std::span<const ElementId>{}); }

  std::size_t order() const { return members_.size(); }
  std::size_t parent_order() const { return mask_.size(); }
  bool contains(ElementId x) const { return x < mask_.size() && mask_[x]; }
  std::span<const ElementId> members() const { return members_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  std::vector<ElementId> members_;
  std::vector<bool> mask_;
};

inline void require_subgroup_of(const FiniteGroup& g, const Subgroup& h) {
  if (h.parent_order() != g.order()) throw PreconditionError("subgroup is not contained in the group");
}

// Stabilizer of a 0-based point.
inline Subgroup point_stabilizer(const FiniteGroup& g, Point point) {
  if (point >= g.degree()) throw InputError("stabilized point out of range");
  std::vector<ElementId> members;
  for (ElementId i = 0; i < g.order(); ++i)
    if (g.element(i)(point) == point) members.push_back(i);
  return Subgroup::from_members(g, std::move(members));
}

// Every subgroup, ordered by (order, member list).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<ElementId>> seen;
  std::vector<std::vector<ElementId>> found;
  auto add = [&](std::vector<ElementId> m) {
    if (seen.insert(m).second) found.push_back(std::move(m));
  };
  add({g.identity()});
  for (std::size_t head = 0; head < found.size(); ++head) {
    std::vector<bool> in(g.order(), false);
    for (ElementId m : found[head]) in[m] = true;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (in[x]) continue;
      std::vector<ElementId> gens = found[head];
      gens.push_back(x);
      add(closure(g, gens));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& m : found) out.push_back(Subgroup::generated_by(g, std::span<const ElementId>(m)));
  return out;
}

// Largest normal subgroup of g contained in h: the intersection of all conjugates.
inline Subgroup normal_core(const FiniteGroup& g, const Subgroup& h) {
  require_subgroup_of(g, h);
  std::vector<ElementId> members;
  for (ElementId x : h.members()) {
    bool in_all = true;
    for (ElementId c = 0; c < g.order() && in_all; ++c) in_all = h.contains(g.conjugate(x, c));
    if (in_all) members.push_back(x);
  }
  return Subgroup::from_members(g, std::move(members));
}

struct ConjugacyClass {
  ElementId representative = 0;  // least member
  std::vector<ElementId> members;
  std::size_t size() const { return members.size(); }
};

// Classes partition the group and are sorted by representative, so the
// identity class comes first.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ConjugacyClass> out;
  std::vector<bool> assigned(g.order(), false);
  std::vector<ElementId> conjugators(g.generators().begin(), g.generators().end());
  for (ElementId x = 0; x < g.order(); ++x) {
    if (assigned[x]) continue;
    ConjugacyClass cls;
    cls.representative = x;
    cls.members.push_back(x);
    assigned[x] = true;
    for (std::size_t head = 0; head < cls.members.size(); ++head) {
      for (ElementId s : conjugators) {
        ElementId y = g.conjugate(cls.members[head], s);
        if (!assigned[y]) {
          assigned[y] = true;
          cls.members.push_back(y);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    out.push_back(std::move(cls));
  }
  return out;
}

// class_of[element] = position of its class in `classes`.
inline std::vector<std::size_t> class_lookup(std::span<const ConjugacyClass> classes, std::size_t order) {
  std::vector<std::size_t> class_of(order, 0);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (ElementId m : classes[c].members) class_of[m] = c;
  return class_of;
}

// The monodromy action of g on the right cosets H\g. Coset 0 is H itself;
// the rest are labeled breadth-first over the group's generators in input
// order. image(z) sends Hx to H x z^-1, which makes z -> image(z) a
// homomorphism under the composition convention.
class CosetAction {
 public:
  CosetAction(const FiniteGroup& g, const Subgroup& h) : group_(&g) {
    require_subgroup_of(g, h);
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    coset_of_.assign(g.order(), kUnset);
    auto open = [&](ElementId rep) {
      std::size_t label = reps_.size();
      reps_.push_back(rep);
      for (ElementId m : h.members()) coset_of_[g.multiply(m, rep)] = label;
    };
    open(g.identity());
    for (std::size_t head = 0; head < reps_.size(); ++head) {
      for (ElementId s : g.generators()) {
        ElementId y = g.multiply(reps_[head], s);
        if (coset_of_[y] == kUnset) open(y);
      }
    }
    if (reps_.size() * h.order() != g.order())
      throw PreconditionError("group generators do not reach every coset");
  }

  std::size_t coset_count() const { return reps_.size(); }
  std::size_t coset_of(ElementId x) const { return coset_of_.at(x); }
  ElementId representative(std::size_t coset) const { return reps_.at(coset); }

  Permutation image(ElementId z) const {
    ElementId zinv = group_->inverse(z);
    std::vector<Point> img(reps_.size());
    for (std::size_t c = 0; c < reps_.size(); ++c)
      img[c] = static_cast<Point>(coset_of_[group_->multiply(reps_[c], zinv)]);
    return Permutation(std::move(img));
  }

  Permutation operator()(ElementId z) const { return image(z); }

  Subgroup kernel() const {
    std::vector<ElementId> members;
    for (ElementId z = 0; z < group_->order(); ++z)
      if (image(z).is_identity()) members.push_back(z);
    return Subgroup::from_members(*group_, std::move(members));
  }

 private:
  const FiniteGroup* group_;
  std::vector<ElementId> reps_;
  std::vector<std::size_t> coset_of_;
};

inline CosetAction coset_action(const FiniteGroup& g, const Subgroup& h) { return CosetAction(g, h); }

}  // namespace chebotarev

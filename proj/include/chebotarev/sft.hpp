#pragma once

// Labeled subshifts of finite type: a finite directed multigraph whose edges
// carry words in the generators of a presented group, resolved into a finite
// group through a homomorphism. Primitive periodic orbits play the role of
// closed orbits of a flow; the product of the labels along one period is the
// orbit's holonomy and its conjugacy class the Frobenius class.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/freewords.hpp"
#include "chebotarev/intmatrix.hpp"
#include "chebotarev/permgroup.hpp"

namespace chebotarev {

inline constexpr std::size_t kDefaultTransferCap = 65536;

struct SftEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word label;
};

class LabeledSFT {
 public:
  LabeledSFT(std::size_t state_count, std::vector<SftEdge> edges, GroupHom hom)
      : states_(state_count), edges_(std::move(edges)), hom_(std::move(hom)) {
    if (states_ == 0) throw InputError("an SFT needs at least one state");
    if (edges_.empty()) throw InputError("an SFT needs at least one edge");
    outgoing_.resize(states_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ed = edges_[e];
      if (ed.from >= states_ || ed.to >= states_) throw InputError("edge " + std::to_string(e) + " references a missing state");
      if (ed.label.max_generator() > hom_.presentation().generator_count())
        throw InputError("edge " + std::to_string(e) + " label uses a generator outside the homomorphism");
      holonomy_.push_back(hom_.evaluate(ed.label));
      outgoing_[ed.from].push_back(static_cast<std::uint32_t>(e));
    }
    classes_ = conjugacy_classes(hom_.target());
    class_of_ = class_lookup(classes_, hom_.target().order());
  }

  std::size_t state_count() const { return states_; }
  std::span<const SftEdge> edges() const { return edges_; }
  const GroupHom& hom() const { return hom_; }
  const FiniteGroup& group() const { return hom_.target(); }
  std::span<const ConjugacyClass> classes() const { return classes_; }
  std::size_t class_of(ElementId x) const { return class_of_.at(x); }
  ElementId edge_holonomy(std::size_t e) const { return holonomy_.at(e); }
  std::span<const std::uint32_t> outgoing(std::size_t state) const { return outgoing_.at(state); }

 private:
  std::size_t states_;
  std::vector<SftEdge> edges_;
  GroupHom hom_;
  std::vector<ElementId> holonomy_;
  std::vector<std::vector<std::uint32_t>> outgoing_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
};

// A primitive closed path, stored in its least rotation.
struct Orbit {
  std::vector<std::uint32_t> edges;
  ElementId holonomy = 0;
  std::size_t frobenius_class = 0;
  std::size_t length() const { return edges.size(); }

  friend bool operator==(const Orbit&, const Orbit&) = default;
};

// Shortlex: length first, then the edge sequence.
inline bool orbit_less(const Orbit& a, const Orbit& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.edges < b.edges;
}

namespace detail {

// Depth-first search over edge sequences that are prenecklaces (prefixes of
// some necklace); a completed sequence is a primitive canonical orbit
// exactly when it is a Lyndon word, i.e. its prenecklace period is its
// length. Sequences of one length come out in lexicographic order.
template <typename Visit>
void orbits_of_length(const LabeledSFT& s, std::size_t length, std::uint32_t first_edge, Visit& visit) {
  const FiniteGroup& g = s.group();
  std::vector<std::uint32_t> path{first_edge};
  std::vector<ElementId> prefix{s.edge_holonomy(first_edge)};
  const std::size_t home = s.edges()[first_edge].from;

  auto recurse = [&](auto&& self, std::size_t period) -> void {
    const std::size_t d = path.size();
    const std::size_t at = s.edges()[path.back()].to;
    if (d == length) {
      if (period == length && at == home) {
        Orbit o;
        o.edges = path;
        o.holonomy = prefix.back();
        o.frobenius_class = s.class_of(o.holonomy);
        visit(std::move(o));
      }
      return;
    }
    const std::uint32_t floor = path[d - period];
    for (std::uint32_t e : s.outgoing(at)) {
      if (e < floor) continue;
      path.push_back(e);
      prefix.push_back(g.multiply(prefix.back(), s.edge_holonomy(e)));
      self(self, e == floor ? period : d + 1);
      path.pop_back();
      prefix.pop_back();
    }
  };
  recurse(recurse, 1);
}

}  // namespace detail

// Streams every primitive orbit of length <= max_len exactly once, in
// (length, least rotation) order. Memory use is proportional to max_len.
template <typename Visit>
void for_each_orbit(const LabeledSFT& s, std::size_t max_len, Visit&& visit) {
  if (max_len < 1) throw InputError("maximum orbit length must be at least 1");
  for (std::size_t len = 1; len <= max_len; ++len)
    for (std::uint32_t e = 0; e < s.edges().size(); ++e) detail::orbits_of_length(s, len, e, visit);
}

// Collected orbits. With workers > 1 each length is split by first edge
// across threads; the merged result is identical to the sequential stream.
inline std::vector<Orbit> enumerate_orbits(const LabeledSFT& s, std::size_t max_len, std::size_t workers = 1) {
  if (max_len < 1) throw InputError("maximum orbit length must be at least 1");
  std::vector<Orbit> out;
  if (workers <= 1) {
    for_each_orbit(s, max_len, [&](Orbit o) { out.push_back(std::move(o)); });
    return out;
  }
  const std::size_t edge_count = s.edges().size();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Orbit>> parts(edge_count);
    std::vector<std::thread> pool;
    const std::size_t nthreads = std::min(workers, edge_count);
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t e = t; e < edge_count; e += nthreads) {
          auto collect = [&](Orbit o) { parts[e].push_back(std::move(o)); };
          detail::orbits_of_length(s, len, static_cast<std::uint32_t>(e), collect);
        }
      });
    for (auto& th : pool) th.join();
    for (auto& p : parts)
      for (auto& o : p) out.push_back(std::move(o));
  }
  return out;
}

// Number of closed paths of length exactly n (based, not up to rotation)
// whose label product lies in each conjugacy class, by dynamic programming
// over (state, group element).
inline std::vector<BigInt> exact_counts(const LabeledSFT& s, std::size_t n, std::size_t cap = kDefaultTransferCap) {
  if (n < 1) throw InputError("path length must be at least 1");
  const FiniteGroup& g = s.group();
  const std::size_t states = s.state_count();
  const std::size_t order = g.order();
  if (states * order > cap)
    throw CapExceeded("transfer table of " + std::to_string(states * order) + " entries exceeds cap " + std::to_string(cap));

  std::vector<BigInt> per_class(s.classes().size());
  std::vector<BigInt> cur(states * order);
  std::vector<BigInt> next(states * order);
  for (std::size_t start = 0; start < states; ++start) {
    std::fill(cur.begin(), cur.end(), BigInt(0));
    cur[start * order + g.identity()] = 1;
    for (std::size_t step = 0; step < n; ++step) {
      std::fill(next.begin(), next.end(), BigInt(0));
      for (std::size_t v = 0; v < states; ++v)
        for (ElementId x = 0; x < order; ++x) {
          const BigInt& c = cur[v * order + x];
          if (c == 0) continue;
          for (std::uint32_t e : s.outgoing(v))
            next[s.edges()[e].to * order + g.multiply(x, s.edge_holonomy(e))] += c;
        }
      std::swap(cur, next);
    }
    for (ElementId x = 0; x < order; ++x) per_class[s.class_of(x)] += cur[start * order + x];
  }
  return per_class;
}

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction of(std::uint64_t n, std::uint64_t d) {
    std::uint64_t k = std::gcd(n, d);
    if (k == 0) k = 1;
    return {n / k, d / k};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend Fraction operator+(Fraction a, Fraction b) { return of(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct DensityEntry {
  std::string label;
  std::size_t count = 0;
  double density = 0;
  Fraction target;
  double deviation = 0;
};

struct CutoffDensities {
  std::size_t cutoff = 0;  // orbits of length <= cutoff
  std::size_t total = 0;
  std::vector<DensityEntry> classes;
  std::vector<DensityEntry> types;
};

struct DensityReport {
  std::size_t skipped = 0;
  std::vector<std::string> class_labels;
  std::vector<CycleType> class_types;
  std::vector<CycleType> types;  // distinct cycle types, lexicographically ascending
  std::vector<CutoffDensities> cutoffs;

  double max_type_deviation() const {
    double m = 0;
    if (!cutoffs.empty())
      for (const auto& e : cutoffs.back().types) m = std::max(m, e.deviation);
    return m;
  }
};

struct ReportOptions {
  std::size_t skip = 0;  // drop this many orbits from the front of the ordered stream
  std::size_t workers = 1;
  // Cycle type attached to a group element; must be a class function.
  // Defaults to the element's cycle type in the target's own action.
  std::function<CycleType(ElementId)> type_of;
};

// Empirical Frobenius-class and cycle-type densities over the
// length-ordered orbit stream, at every length cutoff, against #C/#G.
inline DensityReport chebotarev_report(const LabeledSFT& s, std::size_t max_len, const ReportOptions& opts = {}) {
  if (!s.hom().is_surjective()) throw PreconditionError("the label homomorphism is not surjective onto its target");
  const FiniteGroup& g = s.group();
  auto type_of = opts.type_of ? opts.type_of : [&g](ElementId x) { return cycle_type(g.element(x)); };

  DensityReport rep;
  rep.skipped = opts.skip;
  const auto classes = s.classes();
  std::map<CycleType, std::size_t> type_index;
  for (const auto& c : classes) {
    rep.class_labels.push_back(format_cycles(g.element(c.representative)));
    rep.class_types.push_back(type_of(c.representative));
    type_index.emplace(rep.class_types.back(), 0);
  }
  for (auto& [t, idx] : type_index) {
    idx = rep.types.size();
    rep.types.push_back(t);
  }
  std::vector<Fraction> class_target;
  std::vector<Fraction> type_target(rep.types.size(), Fraction{0, 1});
  for (std::size_t c = 0; c < classes.size(); ++c) {
    class_target.push_back(Fraction::of(classes[c].size(), g.order()));
    auto& t = type_target[type_index.at(rep.class_types[c])];
    t = t + class_target.back();
  }

  std::vector<std::vector<std::size_t>> by_length(max_len + 1, std::vector<std::size_t>(classes.size(), 0));
  std::size_t seen = 0;
  auto tally = [&](const Orbit& o) {
    if (seen++ < opts.skip) return;
    ++by_length[o.length()][o.frobenius_class];
  };
  if (opts.workers > 1) {
    for (const auto& o : enumerate_orbits(s, max_len, opts.workers)) tally(o);
  } else {
    for_each_orbit(s, max_len, tally);
  }

  std::vector<std::size_t> running(classes.size(), 0);
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::size_t c = 0; c < classes.size(); ++c) running[c] += by_length[len][c];
    const std::size_t total = std::accumulate(running.begin(), running.end(), std::size_t{0});
    if (total == 0) continue;
    CutoffDensities cut;
    cut.cutoff = len;
    cut.total = total;
    std::vector<std::size_t> type_count(rep.types.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      type_count[type_index.at(rep.class_types[c])] += running[c];
      DensityEntry e{rep.class_labels[c], running[c], double(running[c]) / double(total), class_target[c], 0};
      e.deviation = std::abs(e.density - e.target.value());
      cut.classes.push_back(std::move(e));
    }
    for (std::size_t t = 0; t < rep.types.size(); ++t) {
      DensityEntry e{rep.types[t].to_string(), type_count[t], double(type_count[t]) / double(total), type_target[t], 0};
      e.deviation = std::abs(e.density - e.target.value());
      cut.types.push_back(std::move(e));
    }
    rep.cutoffs.push_back(std::move(cut));
  }
  if (rep.cutoffs.empty()) throw PreconditionError("no orbits within the length bound");
  return rep;
}

struct RealizationReport {
  bool irreducible = false;  // transition graph strongly connected
  std::size_t period = 0;    // gcd of cycle lengths (1 = aperiodic); 0 if no cycle through state 0
  std::size_t holonomy_order = 0;
  std::size_t target_order = 0;
  std::vector<std::optional<Orbit>> witnesses;  // first orbit per conjugacy class

  bool holonomy_full() const { return holonomy_order == target_order; }
  bool all_classes_attained() const {
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
  }
  bool passed() const { return holonomy_full() && all_classes_attained(); }

  std::string diagnostic() const {
    if (!holonomy_full())
      return "holonomy subgroup has order " + std::to_string(holonomy_order) + ", target has order " +
             std::to_string(target_order);
    if (!all_classes_attained()) return "some conjugacy classes have no orbit within the length bound";
    return "ok";
  }
};

// (a) the holonomy group of loops at state 0, generated by the label
// products of a cycle basis (one generator per non-tree edge of a
// breadth-first spanning tree), against the full target; (b) the first orbit
// of length <= bound realizing each conjugacy class.
inline RealizationReport realization_check(const LabeledSFT& s, std::size_t bound) {
  const FiniteGroup& g = s.group();
  RealizationReport r;
  r.target_order = g.order();

  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(s.state_count(), kUnseen);
  std::vector<ElementId> tree(s.state_count(), g.identity());
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t u = queue[head];
    for (std::uint32_t e : s.outgoing(u)) {
      std::size_t v = s.edges()[e].to;
      if (level[v] != kUnseen) continue;
      level[v] = level[u] + 1;
      tree[v] = g.multiply(tree[u], s.edge_holonomy(e));
      queue.push_back(v);
    }
  }
  std::vector<ElementId> loops;
  std::size_t period = 0;
  for (std::size_t e = 0; e < s.edges().size(); ++e) {
    const auto& ed = s.edges()[e];
    if (level[ed.from] == kUnseen || level[ed.to] == kUnseen) continue;
    loops.push_back(g.multiply(g.multiply(tree[ed.from], s.edge_holonomy(e)), g.inverse(tree[ed.to])));
    auto diff = static_cast<long long>(level[ed.from]) + 1 - static_cast<long long>(level[ed.to]);
    period = std::gcd(period, static_cast<std::size_t>(std::llabs(diff)));
  }
  r.period = period;
  r.holonomy_order = closure(g, loops).size();

  // Strong connectivity: everything reachable from 0 and 0 reachable from everything.
  bool forward = queue.size() == s.state_count();
  std::vector<bool> back(s.state_count(), false);
  back[0] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& ed : s.edges())
      if (back[ed.to] && !back[ed.from]) back[ed.from] = changed = true;
  }
  r.irreducible = forward && std::all_of(back.begin(), back.end(), [](bool b) { return b; });

  r.witnesses.assign(s.classes().size(), std::nullopt);
  std::size_t missing = s.classes().size();
  for_each_orbit(s, bound, [&](Orbit o) {
    if (missing == 0 || r.witnesses[o.frobenius_class]) return;
    r.witnesses[o.frobenius_class] = std::move(o);
    --missing;
  });
  return r;
}

}  // namespace chebotarev

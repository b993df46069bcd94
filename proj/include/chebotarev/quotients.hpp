#pragma once

// Smith normal form over the integers, the H1-generation check for a set of
// loop classes, and exhaustive search for homomorphisms onto a finite group.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/freewords.hpp"
#include "chebotarev/intmatrix.hpp"
#include "chebotarev/permgroup.hpp"

namespace chebotarev {

// a = u * s * v with u, v unimodular and s diagonal with d1 | d2 | ... >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;
  IntMatrix v_inverse;

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
    return d;
  }
};

namespace detail {

// Applies row/column operations to `cur` while keeping u * cur * v equal to
// the input. Row op E on cur multiplies u by E^-1 on the right; column op F
// multiplies v by F^-1 on the left.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& a)
      : cur_(a),
        u_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        vinv_(IntMatrix::identity(a.cols())) {}

  SmithForm run() {
    const std::size_t m = cur_.rows();
    const std::size_t n = cur_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!move_smallest_pivot(t)) break;
      for (;;) {
        if (!clear_column(t) || !clear_row(t)) {
          move_smallest_pivot(t);
          continue;
        }
        // Divisibility: pull an offending row into the pivot row and retry.
        std::optional<std::size_t> bad;
        for (std::size_t i = t + 1; i < m && !bad; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (cur_(i, j) % cur_(t, t) != 0) {
              bad = i;
              break;
            }
        if (!bad) break;
        add_row(t, *bad, 1);
      }
      if (cur_(t, t) < 0) negate_row(t);
    }
    return SmithForm{u_, cur_, v_, vinv_};
  }

 private:
  // Smallest nonzero |entry| in the lower-right block goes to (t, t).
  bool move_smallest_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < cur_.rows(); ++i)
      for (std::size_t j = t; j < cur_.cols(); ++j) {
        if (cur_(i, j) == 0) continue;
        if (!best || abs(cur_(i, j)) < abs(cur_(best->first, best->second))) best = {i, j};
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Returns false if some remainder survived (a smaller pivot now exists).
  bool clear_column(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < cur_.rows(); ++i) {
      if (cur_(i, t) == 0) continue;
      BigInt q = cur_(i, t) / cur_(t, t);
      add_row(i, t, -q);
      if (cur_(i, t) != 0) clean = false;
    }
    return clean;
  }

  bool clear_row(std::size_t t) {
    bool clean = true;
    for (std::size_t j = t + 1; j < cur_.cols(); ++j) {
      if (cur_(t, j) == 0) continue;
      BigInt q = cur_(t, j) / cur_(t, t);
      add_col(j, t, -q);
      if (cur_(t, j) != 0) clean = false;
    }
    return clean;
  }

  // row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const BigInt& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cur_.cols(); ++j) cur_(i, j) += c * cur_(k, j);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, k) -= c * u_(r, i);
  }

  // col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const BigInt& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < cur_.rows(); ++i) cur_(i, j) += c * cur_(i, k);
    for (std::size_t r = 0; r < vinv_.rows(); ++r) vinv_(r, j) += c * vinv_(r, k);
    for (std::size_t col = 0; col < v_.cols(); ++col) v_(k, col) -= c * v_(j, col);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cur_.cols(); ++j) std::swap(cur_(a, j), cur_(b, j));
    for (std::size_t r = 0; r < u_.rows(); ++r) std::swap(u_(r, a), u_(r, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < cur_.rows(); ++i) std::swap(cur_(i, a), cur_(i, b));
    for (std::size_t r = 0; r < vinv_.rows(); ++r) std::swap(vinv_(r, a), vinv_(r, b));
    for (std::size_t c = 0; c < v_.cols(); ++c) std::swap(v_(a, c), v_(b, c));
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < cur_.cols(); ++j) cur_(t, j) = -cur_(t, j);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, t) = -u_(r, t);
  }

  IntMatrix cur_;
  IntMatrix u_;
  IntMatrix v_;
  IntMatrix vinv_;
};

inline BigInt smallest_prime_factor(const BigInt& n) {
  BigInt m = abs(n);
  if (m < 2) return 2;
  for (BigInt p = 2; p * p <= m; ++p)
    if (m % p == 0) return p;
  return m;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) { return detail::SmithReducer(a).run(); }

// Free rank and torsion coefficients (> 1) of the cokernel of the relation
// matrix, i.e. of Z^cols / rowspace.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
  std::string to_string() const {
    std::string s;
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
    for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    return s.empty() ? "0" : s;
  }
};

inline AbelianInvariants cokernel_invariants(const IntMatrix& relations) {
  SmithForm f = smith_normal_form(relations);
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (const auto& d : f.diagonal()) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) inv.torsion.push_back(d);
  }
  inv.free_rank = relations.cols() - nonzero;
  return inv;
}

// When the classes fail to generate H1: a prime p and a homomorphism
// Z^generators -> Z/p, x_j -> coefficients[j], that is onto and kills every
// relator and every class.
struct GenericWitness {
  BigInt prime;
  std::vector<BigInt> coefficients;
};

struct GenericResult {
  bool generates = false;
  std::vector<BigInt> invariant_factors;  // diagonal of the stacked matrix's Smith form
  std::optional<GenericWitness> witness;
};

// Do the abelianized classes, together with the relators, generate
// Z^generators? Equivalently: do the classes generate H1 of the presented group.
inline GenericResult generic_check(const Presentation& p, std::span<const Word> classes) {
  const std::size_t n = p.generator_count();
  IntMatrix rel = abelianized_matrix(p);
  IntMatrix stacked(rel.rows() + classes.size(), n);
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = rel(i, j);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto v = abelianized_vector(classes[c], n);
    for (std::size_t j = 0; j < n; ++j) stacked(rel.rows() + c, j) = v[j];
  }

  SmithForm f = smith_normal_form(stacked);
  GenericResult r;
  r.invariant_factors = f.diagonal();
  // Positions beyond the diagonal count as zero invariant factors.
  std::optional<std::size_t> first_non_unit;
  for (std::size_t k = 0; k < n; ++k) {
    BigInt d = k < r.invariant_factors.size() ? r.invariant_factors[k] : BigInt(0);
    if (d != 1) {
      first_non_unit = k;
      break;
    }
  }
  r.generates = !first_non_unit.has_value();
  if (r.generates) return r;

  const std::size_t k = *first_non_unit;
  BigInt d = k < r.invariant_factors.size() ? r.invariant_factors[k] : BigInt(0);
  GenericWitness w;
  w.prime = detail::smallest_prime_factor(d);
  // Column k of v^-1 pairs to zero mod p with every row of u s v.
  for (std::size_t j = 0; j < n; ++j) {
    BigInt c = f.v_inverse(j, k) % w.prime;
    if (c < 0) c += w.prime;
    w.coefficients.push_back(c);
  }
  r.witness = std::move(w);
  return r;
}

struct SearchOptions {
  bool surjective_only = true;
  // Keep only the lexicographically least tuple in each orbit under
  // simultaneous conjugation by the target.
  bool dedupe_conjugates = false;
  std::uint64_t budget = 100'000'000;  // candidate tuples, |target|^generators
};

// Every homomorphism from the presented group to `target`, as generator
// image tuples in lexicographic order of element ids. Relators are checked
// as soon as all their generators are assigned.
inline std::vector<GroupHom> quotient_search(const Presentation& p, std::shared_ptr<const FiniteGroup> target,
                                             const SearchOptions& opts = {}) {
  const std::size_t n = p.generator_count();
  const std::size_t order = target->order();
  {
    long double candidates = 1;
    for (std::size_t i = 0; i < n; ++i) candidates *= static_cast<long double>(order);
    if (candidates > static_cast<long double>(opts.budget))
      throw CapExceeded("search space of " + std::to_string(order) + "^" + std::to_string(n) +
                        " candidates exceeds budget " + std::to_string(opts.budget));
  }

  // Relators grouped by the depth at which they become fully assigned.
  std::vector<std::vector<const Word*>> ready(n + 1);
  for (const auto& r : p.relators()) ready[r.max_generator()].push_back(&r);

  std::vector<ElementId> tuple(n);
  std::vector<GroupHom> found;
  auto eval = [&](const Word& w) {
    ElementId acc = target->identity();
    for (Letter l : w.letters()) {
      ElementId g = tuple[static_cast<std::size_t>(std::abs(l)) - 1];
      acc = target->multiply(acc, l > 0 ? g : target->inverse(g));
    }
    return acc;
  };
  auto relators_hold = [&](std::size_t depth) {
    for (const Word* w : ready[depth])
      if (eval(*w) != target->identity()) return false;
    return true;
  };
  auto is_least_conjugate = [&] {
    for (ElementId c = 0; c < order; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        ElementId y = target->conjugate(tuple[i], c);
        if (y != tuple[i]) {
          if (y < tuple[i]) return false;
          break;
        }
      }
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      if (opts.surjective_only && closure(*target, tuple).size() != order) return;
      if (opts.dedupe_conjugates && !is_least_conjugate()) return;
      found.emplace_back(p, target, tuple);
      return;
    }
    for (ElementId e = 0; e < order; ++e) {
      tuple[depth] = e;
      if (relators_hold(depth + 1)) self(self, depth + 1);
    }
  };
  if (relators_hold(0)) recurse(recurse, 0);
  return found;
}

}  // namespace chebotarev

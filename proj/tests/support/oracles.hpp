#pragma once

// Independent reference computations. Nothing here calls the library
// routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "chebotarev/chebotarev.hpp"

namespace oracle {

using chebotarev::BigInt;
using chebotarev::IntMatrix;

// Fraction-free (Bareiss) determinant.
inline BigInt determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Invariant factors from determinantal divisors: d_k = gcd of all k x k
// minors, s_k = d_k / d_{k-1}. Returns min(rows, cols) entries, zeros last.
inline std::vector<BigInt> invariant_factors(const IntMatrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  std::vector<BigInt> out;
  BigInt prev = 1;
  bool dead = false;
  for (std::size_t k = 1; k <= r; ++k) {
    if (dead) {
      out.push_back(0);
      continue;
    }
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(a.rows(), k, rows);
    subsets(a.cols(), k, cols);
    BigInt g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(rs[i], cs[j]);
        g = boost::multiprecision::gcd(g, abs(determinant(minor)));
      }
    if (g == 0) {
      dead = true;
      out.push_back(0);
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline int mobius(std::size_t n) {
  int mu = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// Number of primitive periodic orbits of exact length n of the edge shift
// with adjacency matrix `adj`: (1/n) sum_{d|n} mu(n/d) tr(adj^d).
inline std::vector<BigInt> primitive_orbit_counts(const std::vector<std::vector<BigInt>>& adj, std::size_t max_n) {
  const std::size_t s = adj.size();
  std::vector<BigInt> traces(max_n + 1);
  std::vector<std::vector<BigInt>> power = adj;
  for (std::size_t n = 1; n <= max_n; ++n) {
    BigInt t = 0;
    for (std::size_t i = 0; i < s; ++i) t += power[i][i];
    traces[n] = t;
    std::vector<std::vector<BigInt>> next(s, std::vector<BigInt>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t j = 0; j < s; ++j) next[i][j] += power[i][k] * adj[k][j];
    power = std::move(next);
  }
  std::vector<BigInt> out(max_n + 1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    BigInt sum = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) sum += mobius(n / d) * traces[d];
    out[n] = sum / n;
  }
  return out;
}

inline std::vector<std::vector<BigInt>> adjacency(const chebotarev::LabeledSFT& s) {
  std::vector<std::vector<BigInt>> adj(s.state_count(), std::vector<BigInt>(s.state_count()));
  for (const auto& e : s.edges()) adj[e.from][e.to] += 1;
  return adj;
}

// Closed paths of length n counted by brute-force enumeration of every edge
// sequence, with label products taken on raw permutations.
inline std::vector<BigInt> brute_closed_path_counts(const chebotarev::LabeledSFT& s, std::size_t n) {
  using chebotarev::Permutation;
  const auto& g = s.group();
  std::vector<Permutation> label;
  for (const auto& e : s.edges()) {
    Permutation p = Permutation::identity(g.degree());
    for (auto l : e.label.letters()) {
      Permutation x = g.element(s.hom().image(static_cast<std::size_t>(std::abs(l))));
      p = compose(p, l > 0 ? x : x.inverse());
    }
    label.push_back(p);
  }
  std::vector<BigInt> counts(s.classes().size());
  const std::size_t m = s.edges().size();
  std::vector<std::size_t> seq(n, 0);
  for (;;) {
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) closed = s.edges()[seq[i]].to == s.edges()[seq[(i + 1) % n]].from;
    if (closed) {
      Permutation p = Permutation::identity(g.degree());
      for (std::size_t i = 0; i < n; ++i) p = compose(p, label[seq[i]]);
      counts[s.class_of(g.index_of(p))] += 1;
    }
    std::size_t i = 0;
    while (i < n && ++seq[i] == m) seq[i++] = 0;
    if (i == n) break;
  }
  return counts;
}

// Left side of the conservation identity: closed paths of length n
// reassembled from primitive orbits of length d | n, each contributing d
// rotations of its (n/d)-th power.
inline std::vector<BigInt> orbit_power_counts(const chebotarev::LabeledSFT& s, const std::vector<chebotarev::Orbit>& orbits,
                                              std::size_t n) {
  std::vector<BigInt> counts(s.classes().size());
  for (const auto& o : orbits) {
    const std::size_t d = o.length();
    if (n % d) continue;
    counts[s.class_of(s.group().power(o.holonomy, n / d))] += d;
  }
  return counts;
}

}  // namespace oracle

#pragma once

// Free-group words, cyclic words (conjugacy classes of loops), finite
// presentations, braid-closure presentations and homomorphisms from a
// presented group into a finite permutation group.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chebotarev/error.hpp"
#include "chebotarev/intmatrix.hpp"
#include "chebotarev/permgroup.hpp"

namespace chebotarev {

// +k is generator k (1-based), -k its inverse.
using Letter = std::int32_t;

// A freely reduced word.
class Word {
 public:
  Word() = default;

  static Word reduce(std::span<const Letter> raw) {
    Word w;
    for (Letter l : raw) {
      if (l == 0) throw InputError("letter 0 is not a generator");
      if (!w.letters_.empty() && w.letters_.back() == -l)
        w.letters_.pop_back();
      else
        w.letters_.push_back(l);
    }
    return w;
  }

  static Word reduce(std::initializer_list<Letter> raw) { return reduce(std::span<const Letter>(raw.begin(), raw.size())); }

  static Word generator(Letter k) { return reduce({k}); }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::size_t max_generator() const {
    std::size_t m = 0;
    for (Letter l : letters_) m = std::max<std::size_t>(m, static_cast<std::size_t>(std::abs(l)));
    return m;
  }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> raw(a.letters_);
    raw.insert(raw.end(), b.letters_.begin(), b.letters_.end());
    return reduce(raw);
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

inline Word reduce(std::span<const Letter> raw) { return Word::reduce(raw); }

// Order used for canonical rotations: +1 < -1 < +2 < -2 < ...
inline std::uint32_t letter_key(Letter l) {
  auto a = static_cast<std::uint32_t>(std::abs(l));
  return 2 * a - (l > 0 ? 1u : 0u);
}

// Cyclically reduced word stored in its least rotation; equal for conjugate
// words.
class CyclicWord {
 public:
  CyclicWord() = default;

  static CyclicWord from(const Word& w) {
    auto l = w.letters();
    std::size_t lo = 0;
    std::size_t hi = l.size();
    while (hi - lo >= 2 && l[lo] == -l[hi - 1]) {
      ++lo;
      --hi;
    }
    std::vector<Letter> core(l.begin() + static_cast<std::ptrdiff_t>(lo), l.begin() + static_cast<std::ptrdiff_t>(hi));
    CyclicWord c;
    c.letters_ = least_rotation(core);
    return c;
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Word word() const { return Word::reduce(letters_); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  static std::vector<Letter> least_rotation(const std::vector<Letter>& s) {
    const std::size_t n = s.size();
    if (n == 0) return {};
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        auto a = letter_key(s[(r + k) % n]);
        auto b = letter_key(s[(best + k) % n]);
        if (a != b) {
          if (a < b) best = r;
          break;
        }
      }
    }
    std::vector<Letter> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = s[(best + k) % n];
    return out;
  }

  std::vector<Letter> letters_;
};

inline CyclicWord cyclic_reduce(const Word& w) { return CyclicWord::from(w); }

class Presentation {
 public:
  Presentation() = default;

  Presentation(std::size_t generator_count, std::vector<Word> relators)
      : generator_count_(generator_count), relators_(std::move(relators)) {
    for (const auto& r : relators_)
      if (r.max_generator() > generator_count_) throw InputError("relator uses a generator out of range");
  }

  static Presentation free(std::size_t generator_count) { return Presentation(generator_count, {}); }

  std::size_t generator_count() const { return generator_count_; }
  std::span<const Word> relators() const { return relators_; }

 private:
  std::size_t generator_count_ = 0;
  std::vector<Word> relators_;
};

struct BraidWord {
  std::size_t strands = 1;
  std::vector<int> letters;  // +i is sigma_i, -i its inverse, 1 <= |i| <= strands - 1

  BraidWord() = default;
  BraidWord(std::size_t n, std::vector<int> ls) : strands(n), letters(std::move(ls)) {
    if (strands < 1) throw InputError("a braid needs at least one strand");
    for (int l : letters)
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= strands)
        throw InputError("braid generator index out of range for " + std::to_string(strands) + " strands");
  }
};

// Presentation of the fundamental group of the closed braid's complement:
// generators x1..xn are the top arcs, relators x_j^-1 beta(x_j) where beta is
// the Artin automorphism of the braid. Letters act left to right, each one
// substituted into the images produced by the previous letters.
inline Presentation braid_presentation(const BraidWord& b) {
  const std::size_t n = b.strands;
  std::vector<Word> images;
  for (std::size_t j = 1; j <= n; ++j) images.push_back(Word::generator(static_cast<Letter>(j)));

  for (int sigma : b.letters) {
    const auto i = static_cast<Letter>(std::abs(sigma));
    std::vector<Word> subst;  // image of x_k under this letter's automorphism
    for (std::size_t k = 1; k <= n; ++k) subst.push_back(Word::generator(static_cast<Letter>(k)));
    const Word xi = Word::generator(i);
    const Word xj = Word::generator(i + 1);
    if (sigma > 0) {
      subst[i - 1] = xi * xj * xi.inverse();
      subst[i] = xi;
    } else {
      subst[i - 1] = xj;
      subst[i] = xj.inverse() * xi * xj;
    }
    for (auto& w : images) {
      std::vector<Letter> raw;
      for (Letter l : w.letters()) {
        const Word& s = subst[static_cast<std::size_t>(std::abs(l)) - 1];
        const Word piece = l > 0 ? s : s.inverse();
        raw.insert(raw.end(), piece.letters().begin(), piece.letters().end());
      }
      w = Word::reduce(raw);
    }
  }

  std::vector<Word> relators;
  for (std::size_t j = 1; j <= n; ++j)
    relators.push_back(Word::generator(-static_cast<Letter>(j)) * images[j - 1]);
  return Presentation(n, std::move(relators));
}

// Entry (i, j) is the exponent sum of generator j+1 in relator i.
inline IntMatrix abelianized_matrix(const Presentation& p) {
  IntMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (Letter l : p.relators()[i].letters()) m(i, static_cast<std::size_t>(std::abs(l)) - 1) += (l > 0 ? 1 : -1);
  return m;
}

inline std::vector<BigInt> abelianized_vector(const Word& w, std::size_t generator_count) {
  std::vector<BigInt> v(generator_count);
  for (Letter l : w.letters()) {
    auto k = static_cast<std::size_t>(std::abs(l));
    if (k > generator_count) throw InputError("word uses a generator out of range");
    v[k - 1] += (l > 0 ? 1 : -1);
  }
  return v;
}

// Homomorphism from a presented group into a finite permutation group,
// given by one image per generator. Construction fails unless every relator
// maps to the identity.
class GroupHom {
 public:
  GroupHom(Presentation presentation, std::shared_ptr<const FiniteGroup> target, std::vector<ElementId> images)
      : presentation_(std::move(presentation)), target_(std::move(target)), images_(std::move(images)) {
    if (!target_) throw InputError("homomorphism needs a target group");
    if (images_.size() != presentation_.generator_count())
      throw InputError("expected " + std::to_string(presentation_.generator_count()) + " generator images, got " +
                       std::to_string(images_.size()));
    for (ElementId e : images_)
      if (e >= target_->order()) throw InputError("generator image is not an element of the target");
    for (std::size_t r = 0; r < presentation_.relators().size(); ++r)
      if (evaluate(presentation_.relators()[r]) != target_->identity())
        throw PreconditionError("relator " + std::to_string(r + 1) + " does not map to the identity");
  }

  const Presentation& presentation() const { return presentation_; }
  const FiniteGroup& target() const { return *target_; }
  std::shared_ptr<const FiniteGroup> target_ptr() const { return target_; }
  std::span<const ElementId> images() const { return images_; }
  ElementId image(std::size_t generator) const { return images_.at(generator - 1); }

  ElementId evaluate(std::span<const Letter> letters) const {
    ElementId acc = target_->identity();
    for (Letter l : letters) {
      auto k = static_cast<std::size_t>(std::abs(l));
      if (l == 0 || k > images_.size()) throw InputError("word letter out of the homomorphism's domain");
      ElementId g = images_[k - 1];
      acc = target_->multiply(acc, l > 0 ? g : target_->inverse(g));
    }
    return acc;
  }

  ElementId evaluate(const Word& w) const { return evaluate(w.letters()); }

  bool is_surjective() const { return closure(*target_, images_).size() == target_->order(); }

 private:
  Presentation presentation_;
  std::shared_ptr<const FiniteGroup> target_;
  std::vector<ElementId> images_;
};

inline ElementId evaluate(const GroupHom& hom, const Word& w) { return hom.evaluate(w); }

// "x1 x2^-1 x1", also "x2^3"; "" or "1" is the empty word.
inline Word parse_word(std::string_view text) {
  std::vector<Letter> raw;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 'x') throw InputError("bad word token '" + tok + "' (expected x<k> or x<k>^<e>)");
    auto caret = tok.find('^');
    std::string gen = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    if (gen.empty() || gen.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad generator in '" + tok + "'");
    long k = std::stol(gen);
    if (k < 1) throw InputError("generators are numbered from 1: '" + tok + "'");
    long e = 1;
    if (caret != std::string::npos) {
      std::string ex = tok.substr(caret + 1);
      std::size_t start = (!ex.empty() && ex[0] == '-') ? 1 : 0;
      if (start == ex.size() || ex.find_first_not_of("0123456789", start) != std::string::npos)
        throw InputError("bad exponent in '" + tok + "'");
      e = std::stol(ex);
    }
    for (long r = 0; r < std::abs(e); ++r) raw.push_back(static_cast<Letter>(e > 0 ? k : -k));
  }
  return Word::reduce(raw);
}

inline std::string format_word(std::span<const Letter> letters) {
  if (letters.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ' ';
    s += 'x' + std::to_string(std::abs(letters[i]));
    if (letters[i] < 0) s += "^-1";
  }
  return s;
}

inline std::string format_word(const Word& w) { return format_word(w.letters()); }
inline std::string format_word(const CyclicWord& w) { return format_word(w.letters()); }

// "3:s1 s2^-1 s1"
inline BraidWord parse_braid(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("braid must look like '<strands>:s1 s2^-1 ...'");
  std::string n_text(text.substr(0, colon));
  n_text.erase(0, n_text.find_first_not_of(" \t"));
  n_text.erase(n_text.find_last_not_of(" \t") + 1);
  if (n_text.empty() || n_text.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("bad strand count '" + n_text + "'");
  std::size_t n = std::stoul(n_text);
  std::vector<int> letters;
  std::istringstream in{std::string(text.substr(colon + 1))};
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    std::string body = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      if (tok.substr(caret) != "^-1") throw InputError("only ^-1 is allowed on braid letters: '" + tok + "'");
      inv = true;
      body = tok.substr(0, caret);
    }
    if (body.size() < 2 || body[0] != 's' || body.find_first_not_of("0123456789", 1) != std::string::npos)
      throw InputError("bad braid letter '" + tok + "'");
    int i = std::stoi(body.substr(1));
    letters.push_back(inv ? -i : i);
  }
  return BraidWord(n, std::move(letters));
}

}  // namespace chebotarev

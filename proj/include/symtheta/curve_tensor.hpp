#pragma once

// Brute-force model of H(X)^{tensor d} for a genus-g curve X, used as the
// oracle the production symmetric-power ring is validated against.  Words
// are stored slot by slot and symmetrization enumerates the full symmetric
// group, so this is only meant for small (g, d); the production code never
// calls into it.
//
// Letters and their degrees:
//   unit      degree 0   (the identity of H^0)
//   odd(i)    degree 1   (i = 1..2g, the H^1 basis)
//   top       degree 2   (the point class)
// Multiplication: odd(i) odd(i+g) = top and odd(i+g) odd(i) = -top for
// 1 <= i <= g; all other products of positive-degree letters vanish.

#include "symtheta/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace symtheta::oracle {

enum : uint8_t { kUnit = 0, kTop = 0xFF };  // odd(i) is encoded as i itself

inline int letter_degree(uint8_t l) { return l == kUnit ? 0 : (l == kTop ? 2 : 1); }

using Word = std::vector<uint8_t>;  // one letter per slot

struct LetterProduct {
  uint8_t letter;
  int sign;  // 0 means the product vanished
};

inline LetterProduct letter_mul(uint8_t a, uint8_t b, int g) {
  if (a == kUnit) return {b, 1};
  if (b == kUnit) return {a, 1};
  if (a != kTop && b != kTop) {
    if (a + g == b) return {kTop, 1};    // odd(i) odd(i+g), i <= g
    if (b + g == a) return {kTop, -1};   // odd(i+g) odd(i)
  }
  return {kUnit, 0};  // anything else dies on degree grounds
}

/// Slotwise product of two words with the Koszul sign
/// (-1)^{sum_{k>l} |v_l| |u_k|}; sign 0 when any slot vanishes.
struct WordProduct {
  Word word;
  int sign;
};

inline WordProduct word_mul(const Word& u, const Word& v, int g) {
  if (u.size() != v.size())
    throw std::invalid_argument("word_mul: slot count mismatch");
  int cross = 0;
  for (size_t l = 0; l < v.size(); ++l) {
    if (letter_degree(v[l]) % 2 == 0) continue;
    for (size_t k = l + 1; k < u.size(); ++k) cross += letter_degree(u[k]) % 2;
  }
  Word w(u.size());
  int sign = (cross % 2 == 0) ? 1 : -1;
  for (size_t i = 0; i < u.size(); ++i) {
    LetterProduct p = letter_mul(u[i], v[i], g);
    if (p.sign == 0) return {{}, 0};
    sign *= p.sign;
    w[i] = p.letter;
  }
  return {w, sign};
}

/// Linear combination of words; zero coefficients are never stored.
class TensorClass {
public:
  TensorClass() = default;

  void add(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const TensorClass& a, const TensorClass& b) {
    return a.terms_ == b.terms_;
  }
  TensorClass& operator+=(const TensorClass& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  TensorClass& operator-=(const TensorClass& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }

private:
  std::map<Word, Rational> terms_;
};

inline TensorClass mul(const TensorClass& a, const TensorClass& b, int g) {
  TensorClass r;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      WordProduct p = word_mul(u, v, g);
      if (p.sign != 0) r.add(p.word, cu * cv * p.sign);
    }
  return r;
}

/// Koszul sign of permuting the slots of w by sigma (slot i moves to
/// sigma[i]): one factor -1 per inverted pair of odd letters.
inline int permutation_sign(const Word& w, const std::vector<int>& sigma) {
  int inv = 0;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      if (sigma[i] > sigma[j] && letter_degree(w[i]) % 2 && letter_degree(w[j]) % 2) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

/// Orbit sum of w under all slot permutations with Koszul signs, normalized
/// so each distinct word appears with coefficient +-1 (division by the order
/// of the multiset stabilizer).  Words with a repeated odd letter symmetrize
/// to zero, which falls out of the signed sum automatically.
inline TensorClass symmetrize(const Word& w) {
  const size_t d = w.size();
  Integer stab = 1;
  {
    std::map<uint8_t, int> mult;
    for (uint8_t l : w) ++mult[l];
    for (const auto& [l, m] : mult) stab *= factorial(m);
  }
  Rational inv_stab = Rational(1) / Rational(stab);
  TensorClass out;
  std::vector<int> sigma(d);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    Word permuted(d);
    for (size_t i = 0; i < d; ++i) permuted[sigma[i]] = w[i];
    out.add(permuted, inv_stab * permutation_sign(w, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

/// True when the class is fixed by every adjacent slot transposition acting
/// with Koszul signs (hence by the whole symmetric group).
inline bool is_invariant(const TensorClass& c, size_t d) {
  for (size_t i = 0; i + 1 < d; ++i) {
    std::vector<int> tau(d);
    std::iota(tau.begin(), tau.end(), 0);
    std::swap(tau[i], tau[i + 1]);
    TensorClass swapped;
    for (const auto& [w, coeff] : c.terms()) {
      Word permuted(d);
      for (size_t j = 0; j < d; ++j) permuted[tau[j]] = w[j];
      swapped.add(permuted, coeff * permutation_sign(w, tau));
    }
    if (!(swapped == c)) return false;
  }
  return true;
}

/// Representative word of the symmetrized basis element: odd letters of S
/// ascending, then t tops, then units.
inline Word representative(int d, const std::vector<int>& s_ascending, int tops) {
  if (int(s_ascending.size()) + tops > d)
    throw std::invalid_argument("representative: letters exceed slot count");
  Word w;
  w.reserve(d);
  for (int i : s_ascending) w.push_back(uint8_t(i));
  for (int i = 0; i < tops; ++i) w.push_back(kTop);
  while (int(w.size()) < d) w.push_back(kUnit);
  return w;
}

}  // namespace symtheta::oracle

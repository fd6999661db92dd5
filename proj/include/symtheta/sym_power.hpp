#pragma once

// Cohomology ring of the d-th symmetric power of a genus-g curve, in exact
// rational arithmetic.
//
// Basis ("monomial symbols"): m(S, t) with S a subset of {1..2g} of odd
// generators and t >= 0 a top-class exponent, subject to |S| + t <= d;
// deg m(S, t) = |S| + 2t.  m(S, t) is the signed orbit sum of the word with
// the odd letters of S ascending, then t top letters, then units, with
// coefficient +1 on that representative.  Within a degree the basis is
// ordered by t ascending, then S in ascending-list lexicographic order.
//
// Products are computed from combinatorial structure constants: a product of
// two orbit sums is again invariant, so it is enough to read off coefficients
// of representative words, and those factor over per-slot letter products.
// Each choice of a subset P of odd letters of the first factor annihilating
// against partners in the second contributes one basis term; see
// mul_basis_into for the sign bookkeeping.  Orbit sums themselves are never
// expanded (their size grows factorially).
//
// The distinguished classes are xi_i = m({i}, 0) and eta = m(empty, 1); they
// generate, which the surjectivity tests check degree by degree.

#include "symtheta/bits.hpp"
#include "symtheta/graded.hpp"
#include "symtheta/kunneth.hpp"
#include "symtheta/rational.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtheta {

struct SymLabel {
  uint64_t mask = 0;  // odd-generator subset of {1..2g}
  uint32_t tops = 0;  // top-class exponent

  int degree() const { return popcount(mask) + 2 * int(tops); }

  friend bool operator==(const SymLabel&, const SymLabel&) = default;
  friend bool operator<(const SymLabel& a, const SymLabel& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.tops != b.tops) return a.tops < b.tops;
    if (a.mask == b.mask) return false;
    return mask_list_less(a.mask, b.mask);
  }
};

/// dim H^k(S^d X) = sum over a + 2t = k, a + t <= d of C(2g, a).
/// Closed form; valid for any genus without enumerating a basis.
inline Integer betti_count(int g, int d, int k) {
  if (g < 1 || d < 0 || k < 0 || k > 2 * d) return 0;
  Integer total = 0;
  for (int t = 0; 2 * t <= k; ++t) {
    int a = k - 2 * t;
    if (a + t > d || a > 2 * g) continue;
    total += binomial(2 * g, a);
  }
  return total;
}

class SymRing {
public:
  using Label = SymLabel;
  using Cls = GradedVector<SymRing>;

  SymRing(int g, int d) : g_(g), d_(d) {
    if (g < 1 || g > 16) throw std::invalid_argument("SymRing: genus must be in 1..16");
    if (d < 0 || d > 32) throw std::invalid_argument("SymRing: power must be in 0..32");
    basis_.resize(2 * d + 1);
    index_.resize(2 * d + 1);
    for (int k = 0; k <= 2 * d; ++k) {
      for (int t = 0; 2 * t <= k; ++t) {
        int a = k - 2 * t;
        if (a + t > d || a > 2 * g) continue;
        for_each_combination(2 * g, a, [&](uint64_t m) {
          basis_[k].push_back({m, uint32_t(t)});
        });
      }
      // Enumeration above runs t ascending and masks lexicographically,
      // which is exactly the canonical label order.
      for (size_t i = 0; i < basis_[k].size(); ++i) index_[k].emplace(basis_[k][i], i);
    }
  }

  SymRing(const SymRing&) = delete;
  SymRing& operator=(const SymRing&) = delete;

  int genus() const { return g_; }
  int power() const { return d_; }

  int min_degree() const { return 0; }
  int max_degree() const { return 2 * d_; }
  size_t dim(int k) const {
    return (k < 0 || k > 2 * d_) ? 0 : basis_[k].size();
  }
  const std::vector<SymLabel>& basis(int k) const {
    if (k < 0 || k > 2 * d_) {
      static const std::vector<SymLabel> empty;
      return empty;
    }
    return basis_[k];
  }
  std::optional<size_t> index_of(const SymLabel& l) const {
    int k = l.degree();
    if (k < 0 || k > 2 * d_) return std::nullopt;
    auto it = index_[k].find(l);
    if (it == index_[k].end()) return std::nullopt;
    return it->second;
  }
  std::string name() const {
    return "H(S^" + std::to_string(d_) + "X; g=" + std::to_string(g_) + ")";
  }

  bool valid(const SymLabel& l) const {
    return (l.mask >> (2 * g_)) == 0 && popcount(l.mask) + int(l.tops) <= d_;
  }

  Cls monomial(const SymLabel& l) const {
    if (!valid(l))
      throw std::invalid_argument("SymRing: label violates |S| + t <= " + std::to_string(d_) +
                                  " in " + name());
    Cls c;
    c.add(l, 1);
    return c;
  }

  Cls zero() const { return {}; }
  Cls unit() const { return monomial({0, 0}); }

  /// xi_i, the degree-1 generator; the zero class when d = 0.
  Cls xi(int i) const {
    if (i < 1 || i > 2 * g_)
      throw std::invalid_argument("SymRing: xi index out of range 1..2g");
    if (d_ == 0) return {};
    return monomial({uint64_t(1) << (i - 1), 0});
  }

  /// eta, the degree-2 divisor class; the zero class when d = 0.
  Cls eta() const { return d_ == 0 ? Cls{} : monomial({0, 1}); }

  Cls eta_power(int m) const {
    Cls p = unit();
    for (int i = 0; i < m; ++i) p = mul(p, eta());
    return p;
  }

  Cls mul(const Cls& a, const Cls& b) const {
    Cls out;
    for (const auto& [l1, c1] : a.terms())
      for (const auto& [l2, c2] : b.terms()) {
        // Cheap memoized path when one side is a single generator.
        if (is_generator(l1)) {
          for (const auto& [l, c] : gen_mul(l1, l2)) out.add(l, c1 * c2 * c);
        } else if (is_generator(l2)) {
          int sign = (l1.degree() * l2.degree()) % 2 ? -1 : 1;
          for (const auto& [l, c] : gen_mul(l2, l1)) out.add(l, c1 * c2 * c * sign);
        } else {
          mul_basis_into(l1, l2, c1 * c2, out);
        }
      }
    return out;
  }

  /// Integral over S^d X: the coefficient of m(empty, d) divided by d!
  /// (that representative orbit is the single word top^(x)d, whose integral
  /// against the 1/d! normalization of the symmetric quotient is 1/d!).
  Rational integrate(const Cls& a) const {
    Rational c = a.coeff({0, uint32_t(d_)});
    if (c.is_zero()) return 0;
    return c / Rational(factorial(d_));
  }

  /// Poincare pairing <a, b> = integral of a * b, evaluated through the
  /// closed form: basis elements pair only against their partner label.
  Rational pairing(const Cls& a, const Cls& b) const {
    Rational s = 0;
    for (const auto& [l1, c1] : a.terms())
      for (const auto& [l2, c2] : b.terms()) {
        Rational p = pairing_basis(l1, l2);
        if (!p.is_zero()) s += c1 * c2 * p;
      }
    return s;
  }

  /// <m(S1,t1), m(S2,t2)> is zero unless S2 = partner(S1) and the degrees
  /// are complementary; then it is +-1/(t1! t2!) with the sign worked out
  /// from the one surviving slot matching (all matchings carry equal sign).
  Rational pairing_basis(const SymLabel& a, const SymLabel& b) const {
    if (a.degree() + b.degree() != 2 * d_) return 0;
    if (b.mask != partner_mask(a.mask, g_)) return 0;
    uint64_t low = (uint64_t(1) << g_) - 1;
    int n1 = popcount(a.mask & low);
    int n2 = popcount(a.mask & ~low);
    int k = n1 + n2;
    int exp = n1 * n2 + k * (k - 1) / 2 + n2;
    Rational val = Rational(1) / Rational(Integer(factorial(a.tops) * factorial(b.tops)));
    return exp % 2 == 0 ? val : -val;
  }

  BilinearPairing<SymRing, SymRing> pairing_object() const {
    return BilinearPairing<SymRing, SymRing>(
        this, this, 2 * d_,
        [this](const SymLabel& a, const SymLabel& b) { return pairing_basis(a, b); });
  }

  /// Structure constants of m(S1,t1) * m(S2,t2), accumulated into out with
  /// an overall coefficient.  One term per subset P of S1 whose partner set
  /// lies in S2: the letters of P annihilate pairwise into tops, the rest
  /// must stay distinct.  The count of slot matchings realizing a term is
  /// t!/(t1! t2!) and every matching carries the same sign, computed here on
  /// the canonical matching.
  void mul_basis_into(const SymLabel& l1, const SymLabel& l2, const Rational& coeff,
                      Cls& out) const {
    const uint64_t q = l1.mask & partner_mask(l2.mask, g_);
    for_each_submask(q, [&](uint64_t p1) {
      const uint64_t p2 = partner_mask(p1, g_);
      const uint64_t r1 = l1.mask ^ p1;
      const uint64_t r2 = l2.mask ^ p2;
      if (r1 & r2) return;  // a repeated odd letter never reaches the basis
      const uint64_t s = r1 | r2;
      const uint32_t t = l1.tops + l2.tops + uint32_t(popcount(p1));
      if (popcount(s) + int(t) > d_) return;  // not enough slots at this power
      const int eps = config_sign(r1, r2, p1);
      Integer mult = factorial(t) / (factorial(l1.tops) * factorial(l2.tops));
      out.add({s, t}, coeff * Rational(mult) * eps);
    });
  }

  // ---- generator table (the cached structure constants) ----

  bool is_generator(const SymLabel& l) const {
    return (l.mask == 0 && l.tops == 1) || (l.tops == 0 && popcount(l.mask) == 1);
  }

  /// Table row for generator * m(S,t); computed on first use and memoized.
  const std::vector<std::pair<SymLabel, Rational>>& gen_mul(const SymLabel& gen,
                                                            const SymLabel& l) const {
    auto key = std::make_pair(gen, l);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    Cls prod;
    mul_basis_into(gen, l, 1, prod);
    std::vector<std::pair<SymLabel, Rational>> row(prod.terms().begin(), prod.terms().end());
    return table_.emplace(std::move(key), std::move(row)).first->second;
  }

  /// Deterministically computes every generator row (eta and each xi_i
  /// against the full basis).  This is the disk-cacheable payload.
  void fill_generator_table() const {
    std::vector<SymLabel> gens;
    if (d_ >= 1) {
      gens.push_back({0, 1});
      for (int i = 1; i <= 2 * g_; ++i) gens.push_back({uint64_t(1) << (i - 1), 0});
    }
    for (const SymLabel& gen : gens)
      for (int k = 0; k <= 2 * d_; ++k)
        for (const SymLabel& l : basis_[k]) gen_mul(gen, l);
  }

  /// Serialized complete generator table; stable text, one row per line.
  std::string table_payload() const {
    fill_generator_table();
    std::ostringstream os;
    os << "g " << g_ << " d " << d_ << "\n";
    for (const auto& [key, row] : table_) {
      os << key.first.mask << " " << key.first.tops << " " << key.second.mask << " "
         << key.second.tops << " :";
      for (const auto& [l, c] : row) os << " " << l.mask << " " << l.tops << " " << c.str();
      os << "\n";
    }
    return os.str();
  }

  /// Loads a previously serialized table.  Returns false (leaving the table
  /// untouched) on any structural mismatch; contents are re-derivable, so a
  /// suspicious payload is simply ignored.
  bool load_table_payload(const std::string& payload) const {
    std::istringstream is(payload);
    std::string tag_g, tag_d;
    int g = -1, d = -1;
    if (!(is >> tag_g >> g >> tag_d >> d) || tag_g != "g" || tag_d != "d" || g != g_ || d != d_)
      return false;
    std::map<std::pair<SymLabel, SymLabel>, std::vector<std::pair<SymLabel, Rational>>> fresh;
    std::string line;
    std::getline(is, line);  // eat rest of header line
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      SymLabel gen, l;
      std::string colon;
      if (!(ls >> gen.mask >> gen.tops >> l.mask >> l.tops >> colon) || colon != ":")
        return false;
      if (!is_generator(gen) || !valid(l)) return false;
      std::vector<std::pair<SymLabel, Rational>> row;
      SymLabel rl;
      std::string coeff;
      while (ls >> rl.mask >> rl.tops >> coeff) {
        if (!valid(rl)) return false;
        try {
          row.emplace_back(rl, Rational::parse(coeff));
        } catch (const std::exception&) {
          return false;
        }
      }
      if (!ls.eof()) return false;
      fresh.emplace(std::make_pair(gen, l), std::move(row));
    }
    table_ = std::move(fresh);
    return true;
  }

private:
  static int inversions(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
      for (size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) ++inv;
    return inv;
  }

  /// Sign of the canonical slot matching for the configuration (R1, R2, P):
  /// parity of each factor's odd-letter sequence, the crossing pairs between
  /// the factors, and one -1 per annihilating pair led by an index > g.
  int config_sign(uint64_t r1, uint64_t r2, uint64_t p1) const {
    // Odd-letter-bearing slots of the target representative, in slot order:
    // first the letters of S = R1 | R2 ascending, then the annihilating
    // pairs (placed on top slots; tops and units are even and transparent).
    std::vector<std::pair<int, int>> slots;  // (side-1 letter or 0, side-2 letter or 0)
    for (int i : mask_to_indices(r1 | r2))
      slots.emplace_back((r1 >> (i - 1)) & 1 ? i : 0, (r2 >> (i - 1)) & 1 ? i : 0);
    int neg = 0;
    for (int p : mask_to_indices(p1)) {
      int partner = (p <= g_) ? p + g_ : p - g_;
      if (p > g_) ++neg;
      slots.emplace_back(p, partner);
    }
    std::vector<int> seq1, seq2;
    for (const auto& [a, b] : slots) {
      if (a) seq1.push_back(a);
      if (b) seq2.push_back(b);
    }
    int inv = neg + inversions(seq1) + inversions(seq2);
    for (size_t l = 0; l < slots.size(); ++l)
      if (slots[l].second)
        for (size_t k = l + 1; k < slots.size(); ++k)
          if (slots[k].first) ++inv;
    return inv % 2 == 0 ? 1 : -1;
  }

  int g_, d_;
  std::vector<std::vector<SymLabel>> basis_;
  std::vector<std::map<SymLabel, size_t>> index_;
  mutable std::map<std::pair<SymLabel, SymLabel>,
                   std::vector<std::pair<SymLabel, Rational>>>
      table_;
};

using SymClass = GradedVector<SymRing>;

// ---- maps induced by the addition-of-a-point embedding j ----

/// j^* : H(S^d X) -> H(S^(d-1) X).  In the monomial basis this is the
/// truncation that forgets labels needing all d slots; it is a ring map and
/// sends xi to xi, eta to eta.
inline SymClass j_pullback(const SymRing& from, const SymRing& to, const SymClass& v) {
  if (from.genus() != to.genus() || to.power() != from.power() - 1)
    throw std::invalid_argument("j_pullback: expects " + from.name() + " -> " + to.name() +
                                " with the power dropping by one");
  SymClass out;
  for (const auto& [l, c] : v.terms())
    if (to.valid(l)) out.add(l, c);
  return out;
}

/// j_* : H(S^(d-1) X) -> H(S^d X), the pairing adjoint of j^*.  On the
/// monomial basis it is m(S,t) -> (t+1) m(S,t+1); adjointness against j^*
/// is checked exactly by the tests.
inline SymClass j_pushforward(const SymRing& from, const SymRing& to, const SymClass& v) {
  if (from.genus() != to.genus() || to.power() != from.power() + 1)
    throw std::invalid_argument("j_pushforward: expects " + from.name() + " -> " + to.name() +
                                " with the power rising by one");
  SymClass out;
  for (const auto& [l, c] : v.terms())
    out.add({l.mask, l.tops + 1}, c * Rational(long(l.tops) + 1));
  return out;
}

/// sigma^* : H(S^d X) -> H(S^d1 X) (x) H(S^d2 X), d = d1 + d2: restriction
/// of an invariant class to the product of smaller symmetric powers.  A
/// monomial splits over all ways to route its odd letters and tops to the
/// two factors; each split carries the sign of merging the two ascending
/// odd lists back together.
inline KunnethClass<SymRing, SymRing> sigma_pullback(const SymRing& from, const SymRing& to1,
                                                     const SymRing& to2, const SymClass& v) {
  if (from.genus() != to1.genus() || from.genus() != to2.genus() ||
      to1.power() + to2.power() != from.power())
    throw std::invalid_argument("sigma_pullback: powers of " + to1.name() + " and " +
                                to2.name() + " must add up to " + from.name());
  KunnethClass<SymRing, SymRing> out;
  for (const auto& [l, c] : v.terms()) {
    for_each_submask(l.mask, [&](uint64_t m1) {
      uint64_t m2 = l.mask ^ m1;
      for (uint32_t t1 = 0; t1 <= l.tops; ++t1) {
        SymLabel a{m1, t1}, b{m2, l.tops - t1};
        if (!to1.valid(a) || !to2.valid(b)) continue;
        out.add(a, b, c * merge_sign(m1, m2));
      }
    });
  }
  return out;
}

}  // namespace symtheta

#pragma once

// Exterior-algebra model of the cohomology of the Jacobian (the Picard
// torus) of a genus-g curve: generators e_1..e_2g in degree 1, with the
// principal polarization theta = sum_i e_i /\ e_{g+i}.  The orientation is
// normalized so that the integral of theta^g / g! is 1; its sign against the
// sorted monomial e_1 /\ ... /\ e_2g is computed, never assumed.
//
// Also here: the two Abel-Jacobi comparison maps between this ring and the
// symmetric-power rings — the pullback (an algebra map on generators) and
// its pairing adjoint, evaluated through dual bases.

#include "symtheta/bits.hpp"
#include "symtheta/graded.hpp"
#include "symtheta/kunneth.hpp"
#include "symtheta/sym_power.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtheta {

struct ExtLabel {
  uint64_t mask = 0;

  int degree() const { return popcount(mask); }

  friend bool operator==(const ExtLabel&, const ExtLabel&) = default;
  friend bool operator<(const ExtLabel& a, const ExtLabel& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.mask == b.mask) return false;
    return mask_list_less(a.mask, b.mask);
  }
};

class ExtRing {
public:
  using Label = ExtLabel;
  using Cls = GradedVector<ExtRing>;

  explicit ExtRing(int g) : g_(g) {
    if (g < 1 || g > 16) throw std::invalid_argument("ExtRing: genus must be in 1..16");
    basis_.resize(2 * g + 1);
    index_.resize(2 * g + 1);
    for (int k = 0; k <= 2 * g; ++k) {
      for_each_combination(2 * g, k, [&](uint64_t m) { basis_[k].push_back({m}); });
      for (size_t i = 0; i < basis_[k].size(); ++i) index_[k].emplace(basis_[k][i], i);
    }
    // Orientation: expand prod_i (e_i /\ e_{g+i}) and read its sign on the
    // sorted top monomial.
    Cls v = unit();
    for (int i = 1; i <= g; ++i) {
      Cls factor;
      factor.add({(uint64_t(1) << (i - 1)) | (uint64_t(1) << (g + i - 1))}, 1);
      v = mul(v, factor);
    }
    Rational s = v.coeff({full_mask()});
    if (!(s == Rational(1) || s == Rational(-1)))
      throw std::logic_error("ExtRing: orientation normalization failed");
    orient_ = (s == Rational(1)) ? 1 : -1;
  }

  ExtRing(const ExtRing&) = delete;
  ExtRing& operator=(const ExtRing&) = delete;

  int genus() const { return g_; }
  uint64_t full_mask() const { return (uint64_t(1) << (2 * g_)) - 1; }

  int min_degree() const { return 0; }
  int max_degree() const { return 2 * g_; }
  size_t dim(int k) const { return (k < 0 || k > 2 * g_) ? 0 : basis_[k].size(); }
  const std::vector<ExtLabel>& basis(int k) const {
    if (k < 0 || k > 2 * g_) {
      static const std::vector<ExtLabel> empty;
      return empty;
    }
    return basis_[k];
  }
  std::optional<size_t> index_of(const ExtLabel& l) const {
    int k = l.degree();
    if (k < 0 || k > 2 * g_) return std::nullopt;
    auto it = index_[k].find(l);
    if (it == index_[k].end()) return std::nullopt;
    return it->second;
  }
  std::string name() const { return "H(Pic; g=" + std::to_string(g_) + ")"; }

  Cls monomial(uint64_t mask) const {
    if (mask >> (2 * g_))
      throw std::invalid_argument("ExtRing: generator index beyond 2g in " + name());
    Cls c;
    c.add({mask}, 1);
    return c;
  }
  Cls unit() const { return monomial(0); }
  Cls e(int i) const {
    if (i < 1 || i > 2 * g_)
      throw std::invalid_argument("ExtRing: generator index out of range 1..2g");
    return monomial(uint64_t(1) << (i - 1));
  }

  /// The polarization class sum_i e_i /\ e_{g+i}.
  Cls theta() const {
    Cls t;
    for (int i = 1; i <= g_; ++i)
      t.add({(uint64_t(1) << (i - 1)) | (uint64_t(1) << (g_ + i - 1))}, 1);
    return t;
  }

  /// theta^m / m!, the m-th divided power (exact integer coefficients).
  Cls theta_power_over_factorial(int m) const {
    Cls p = unit();
    for (int i = 0; i < m; ++i) p = mul(p, theta());
    p *= Rational(1) / Rational(factorial(m));
    return p;
  }

  Cls mul(const Cls& a, const Cls& b) const {
    Cls out;
    for (const auto& [l1, c1] : a.terms())
      for (const auto& [l2, c2] : b.terms()) {
        if (l1.mask & l2.mask) continue;
        out.add({l1.mask | l2.mask}, c1 * c2 * merge_sign(l1.mask, l2.mask));
      }
    return out;
  }

  /// Integral normalized against theta^g / g! = 1.
  Rational integrate(const Cls& a) const {
    return a.coeff({full_mask()}) * orient_;
  }

  Rational pairing(const Cls& a, const Cls& b) const { return integrate(mul(a, b)); }

  /// The (-1)-involution: (-1)^p on degree p.
  Cls iota_pic(const Cls& a) const {
    Cls out;
    for (const auto& [l, c] : a.terms()) out.add(l, l.degree() % 2 ? -c : c);
    return out;
  }

  /// Pullback along addition Pic x Pic -> Pic: the coproduct sending each
  /// e_i to e_i (x) 1 + 1 (x) e_i, applied monomialwise with merge signs.
  KunnethClass<ExtRing, ExtRing> tensor_pullback(const Cls& a) const {
    KunnethClass<ExtRing, ExtRing> out;
    for (const auto& [l, c] : a.terms())
      for_each_submask(l.mask, [&](uint64_t m1) {
        uint64_t m2 = l.mask ^ m1;
        out.add({m1}, {m2}, c * merge_sign(m1, m2));
      });
    return out;
  }

  /// The antidiagonal correspondence: tensor_pullback of theta^g / g!.
  KunnethClass<ExtRing, ExtRing> antidiagonal() const {
    return tensor_pullback(theta_power_over_factorial(g_));
  }

  BilinearPairing<ExtRing, ExtRing> pairing_object() const {
    return BilinearPairing<ExtRing, ExtRing>(
        this, this, 2 * g_, [this](const ExtLabel& a, const ExtLabel& b) {
          return pairing(monomial(a.mask), monomial(b.mask));
        });
  }

private:
  int g_;
  int orient_;
  std::vector<std::vector<ExtLabel>> basis_;
  std::vector<std::map<ExtLabel, size_t>> index_;
};

using ExtClass = GradedVector<ExtRing>;

/// The Abel-Jacobi comparison between H(Pic) and H(S^d X): pullback is the
/// ring map e_i -> xi_i; pushforward is its adjoint under the two Poincare
/// pairings, computed against dual bases (each exterior monomial pairs with
/// exactly one complementary monomial).
class AbelJacobi {
public:
  AbelJacobi(const ExtRing* pic, const SymRing* sym) : pic_(pic), sym_(sym) {
    if (pic->genus() != sym->genus())
      throw std::invalid_argument("AbelJacobi: genus mismatch between " + pic->name() +
                                  " and " + sym->name());
  }

  const ExtRing& pic() const { return *pic_; }
  const SymRing& sym() const { return *sym_; }

  /// phi^* of a single exterior monomial: the ordered product of the xi's.
  const SymClass& pullback_monomial(uint64_t mask) const {
    auto it = pullback_memo_.find(mask);
    if (it != pullback_memo_.end()) return it->second;
    SymClass v = sym_->unit();
    for (int i : mask_to_indices(mask)) v = sym_->mul(v, sym_->xi(i));
    return pullback_memo_.emplace(mask, std::move(v)).first->second;
  }

  SymClass pullback(const ExtClass& a) const {
    SymClass out;
    for (const auto& [l, c] : a.terms()) {
      const SymClass& img = pullback_monomial(l.mask);
      for (const auto& [sl, sc] : img.terms()) out.add(sl, c * sc);
    }
    return out;
  }

  /// phi^*(theta^m / m!), memoized; the workhorse of the involution formula.
  const SymClass& pullback_theta_over_factorial(int m) const {
    auto it = theta_memo_.find(m);
    if (it != theta_memo_.end()) return it->second;
    SymClass v = pullback(pic_->theta_power_over_factorial(m));
    return theta_memo_.emplace(m, std::move(v)).first->second;
  }

  /// phi_* : H^k(S^d X) -> H^(k + 2(g - d))(Pic), the pairing adjoint of
  /// phi^*: <phi_* a, x>_Pic = <a, phi^* x>_Sym for all x.  Every exterior
  /// monomial has a unique pairing partner, so the adjoint reads off one
  /// coefficient per complementary monomial.
  ExtClass pushforward(const SymClass& a) const {
    ExtClass out;
    const int two_d = 2 * sym_->power();
    for (int k : a.degrees()) {
      SymClass part = a.degree_part(k);
      int wdeg = two_d - k;  // test-monomial degree
      for (const ExtLabel& w : pic_->basis(wdeg)) {
        Rational rhs = sym_->pairing(part, pullback_monomial(w.mask));
        if (rhs.is_zero()) continue;
        uint64_t vc = pic_->full_mask() ^ w.mask;
        Rational gram = pic_->pairing(pic_->monomial(vc), pic_->monomial(w.mask));
        // gram is +-1; dividing is multiplying.
        out.add({vc}, rhs * gram);
      }
    }
    return out;
  }

private:
  const ExtRing* pic_;
  const SymRing* sym_;
  mutable std::map<uint64_t, SymClass> pullback_memo_;
  mutable std::map<int, SymClass> theta_memo_;
};

}  // namespace symtheta

#pragma once

// Classes on a product space, kept in Kunneth form: a finite sum of
// decomposable terms u (x) v with rational coefficients.  Products follow
// the Koszul rule (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb', and the
// second-projection pushforward is (pr2)_*(x (x) y) = (integral of x) * y,
// with the integral vanishing off top degree.

#include "symtheta/graded.hpp"

#include <functional>
#include <map>
#include <utility>

namespace symtheta {

template <class R>
concept GradedRing = Graded<R> && requires(const R& r, const GradedVector<R>& v) {
  { r.mul(v, v) } -> std::convertible_to<GradedVector<R>>;
  { r.integrate(v) } -> std::convertible_to<Rational>;
};

// Unconstrained for the same reason as GradedVector: the factor types may
// still be incomplete where a space declares Kunneth-valued members.  The
// ring operations below check GradedRing where it matters.
template <typename A, typename B>
class KunnethClass {
public:
  using LabelA = typename A::Label;
  using LabelB = typename B::Label;
  using Key = std::pair<LabelA, LabelB>;

  KunnethClass() = default;

  void add(const LabelA& la, const LabelB& lb, const Rational& c) {
    if (c.is_zero()) return;
    Key key{la, lb};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static KunnethClass outer(const GradedVector<A>& u, const GradedVector<B>& v) {
    KunnethClass k;
    for (const auto& [la, ca] : u.terms())
      for (const auto& [lb, cb] : v.terms()) k.add(la, lb, ca * cb);
    return k;
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Total degree when homogeneous; nullopt otherwise.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [key, c] : terms_) {
      int k = key.first.degree() + key.second.degree();
      if (deg && *deg != k) return std::nullopt;
      deg = k;
    }
    return deg;
  }

  KunnethClass& operator+=(const KunnethClass& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
    return *this;
  }
  KunnethClass& operator-=(const KunnethClass& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
    return *this;
  }
  KunnethClass& operator*=(const Rational& r) {
    if (r.is_zero()) terms_.clear();
    else
      for (auto& [key, c] : terms_) c *= r;
    return *this;
  }
  friend bool operator==(const KunnethClass& a, const KunnethClass& b) {
    return a.terms_ == b.terms_;
  }

  /// Full product with the Koszul crossing sign.
  KunnethClass mul(const A& ra, const B& rb, const KunnethClass& o) const {
    KunnethClass out;
    for (const auto& [k1, c1] : terms_)
      for (const auto& [k2, c2] : o.terms_) {
        GradedVector<A> u1, u2;
        GradedVector<B> v1, v2;
        u1.add(k1.first, 1);
        v1.add(k1.second, 1);
        u2.add(k2.first, 1);
        v2.add(k2.second, 1);
        GradedVector<A> ua = ra.mul(u1, u2);
        if (ua.is_zero()) continue;
        GradedVector<B> vb = rb.mul(v1, v2);
        if (vb.is_zero()) continue;
        int sign = (k1.second.degree() * k2.first.degree()) % 2 ? -1 : 1;
        Rational c = c1 * c2 * sign;
        for (const auto& [la, cu] : ua.terms())
          for (const auto& [lb, cv] : vb.terms()) out.add(la, lb, c * cu * cv);
      }
    return out;
  }

  /// pr1^*(u) * this.
  KunnethClass mul_first(const A& ra, const GradedVector<A>& u) const {
    KunnethClass out;
    for (const auto& [key, c] : terms_) {
      GradedVector<A> w;
      w.add(key.first, 1);
      GradedVector<A> prod = ra.mul(u, w);
      for (const auto& [la, cu] : prod.terms()) out.add(la, key.second, c * cu);
    }
    return out;
  }

  /// pr2^*(v) * this; the Koszul sign crosses v past each first factor.
  KunnethClass mul_second(const B& rb, const GradedVector<B>& v) const {
    KunnethClass out;
    for (const auto& [key, c] : terms_) {
      for (const auto& [lv, cv] : v.terms()) {
        int sign = (lv.degree() * key.first.degree()) % 2 ? -1 : 1;
        GradedVector<B> w;
        w.add(key.second, 1);
        GradedVector<B> single;
        single.add(lv, 1);
        GradedVector<B> prod = rb.mul(single, w);
        for (const auto& [lb, cb] : prod.terms())
          out.add(key.first, lb, c * cv * cb * sign);
      }
    }
    return out;
  }

  /// (pr2)_* : integrate the first factor away.
  GradedVector<B> pr2_pushforward(const A& ra) const {
    GradedVector<B> out;
    for (const auto& [key, c] : terms_) {
      GradedVector<A> u;
      u.add(key.first, 1);
      Rational w = ra.integrate(u);
      if (!w.is_zero()) out.add(key.second, c * w);
    }
    return out;
  }

  /// Transposition of factors with the Koszul sign (-1)^{|u||v|}.
  KunnethClass<B, A> swapped() const {
    KunnethClass<B, A> out;
    for (const auto& [key, c] : terms_) {
      int sign = (key.first.degree() * key.second.degree()) % 2 ? -1 : 1;
      out.add(key.second, key.first, c * sign);
    }
    return out;
  }

  /// Apply ring maps factorwise: (f x g)^* style, no sign.
  template <GradedRing A2, GradedRing B2>
  KunnethClass<A2, B2> map_factors(
      const std::function<GradedVector<A2>(const LabelA&)>& fa,
      const std::function<GradedVector<B2>(const LabelB&)>& fb) const {
    KunnethClass<A2, B2> out;
    for (const auto& [key, c] : terms_) {
      GradedVector<A2> ua = fa(key.first);
      if (ua.is_zero()) continue;
      GradedVector<B2> vb = fb(key.second);
      for (const auto& [la, cu] : ua.terms())
        for (const auto& [lb, cv] : vb.terms()) out.add(la, lb, c * cu * cv);
    }
    return out;
  }

private:
  std::map<Key, Rational> terms_;
};

}  // namespace symtheta

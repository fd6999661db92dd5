#pragma once

// Graded-space plumbing shared by every ring in the library.
//
// A graded space is anything exposing an ordered, finite basis per degree:
//
//   typename S::Label;               // value type; ordered, hashable-free
//   int  min_degree(), max_degree();
//   size_t dim(int k);               // 0 outside [min, max]
//   const std::vector<Label>& basis(int k);
//   std::optional<size_t> index_of(const Label&);  // position within its degree
//   std::string name();              // for diagnostics
//
// Labels know their own degree (l.degree()).  Vectors never store zero
// coefficients; operators store one sparse column per basis vector of each
// source degree.  Everything here is immutable after construction and all
// results are deterministic: iteration follows the canonical label order.

#include "symtheta/linalg.hpp"
#include "symtheta/rational.hpp"

#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtheta {

template <class S>
concept Graded = requires(const S& s, int k, const typename S::Label& l) {
  { s.min_degree() } -> std::convertible_to<int>;
  { s.max_degree() } -> std::convertible_to<int>;
  { s.dim(k) } -> std::convertible_to<size_t>;
  { s.basis(k) } -> std::convertible_to<const std::vector<typename S::Label>&>;
  { s.index_of(l) } -> std::convertible_to<std::optional<size_t>>;
  { s.name() } -> std::convertible_to<std::string>;
  { l.degree() } -> std::convertible_to<int>;
};

// The container templates below take the space type unconstrained: the
// spaces declare `using Cls = GradedVector<Self>` inside their own bodies,
// where Self is still incomplete and the concept cannot be checked.  The
// algorithms at the bottom of this header constrain on Graded.
template <typename S>
class GradedVector {
public:
  using Label = typename S::Label;

  GradedVector() = default;

  void add(const Label& l, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(l);
    if (it == terms_.end()) {
      terms_.emplace(l, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Label, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Label& l) const {
    auto it = terms_.find(l);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::set<int> degrees() const {
    std::set<int> ds;
    for (const auto& [l, c] : terms_) ds.insert(l.degree());
    return ds;
  }

  /// Degree of a homogeneous vector; nullopt for 0 or mixed-degree vectors.
  std::optional<int> homogeneous_degree() const {
    auto ds = degrees();
    if (ds.size() != 1) return std::nullopt;
    return *ds.begin();
  }

  GradedVector degree_part(int k) const {
    GradedVector p;
    for (const auto& [l, c] : terms_)
      if (l.degree() == k) p.terms_.emplace(l, c);
    return p;
  }

  GradedVector& operator+=(const GradedVector& o) {
    for (const auto& [l, c] : o.terms_) add(l, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    for (const auto& [l, c] : o.terms_) add(l, -c);
    return *this;
  }
  GradedVector& operator*=(const Rational& r) {
    if (r.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [l, c] : terms_) c *= r;
    return *this;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const Rational& r, GradedVector v) { return v *= r; }
  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    return a.terms_ == b.terms_;
  }

private:
  std::map<Label, Rational> terms_;
};

/// Degree-homogeneous linear map between graded spaces: target degree is
/// source degree plus a fixed shift.  Blocks are sparse columns.
template <typename Src, typename Dst>
class LinearOperator {
public:
  using SparseCol = std::vector<std::pair<size_t, Rational>>;

  LinearOperator(const Src* src, const Dst* dst, int shift)
      : src_(src), dst_(dst), shift_(shift) {}

  /// Materializes the operator by evaluating `f` on every basis label.
  /// Each image must be homogeneous of degree (input degree + shift).
  static LinearOperator from_function(
      const Src* src, const Dst* dst, int shift,
      const std::function<GradedVector<Dst>(const typename Src::Label&)>& f) {
    LinearOperator op(src, dst, shift);
    for (int k = src->min_degree(); k <= src->max_degree(); ++k) {
      if (src->dim(k) == 0) continue;
      auto& cols = op.blocks_[k];
      cols.resize(src->dim(k));
      for (size_t j = 0; j < src->dim(k); ++j) {
        GradedVector<Dst> img = f(src->basis(k)[j]);
        for (const auto& [l, c] : img.terms()) {
          if (l.degree() != k + shift)
            throw std::logic_error("LinearOperator: image of a degree-" + std::to_string(k) +
                                   " vector is not homogeneous of degree " +
                                   std::to_string(k + shift) + " in " + dst->name());
          auto idx = dst->index_of(l);
          if (!idx)
            throw std::logic_error("LinearOperator: image label missing from " + dst->name());
          cols[j].emplace_back(*idx, c);
        }
      }
    }
    return op;
  }

  const Src* source() const { return src_; }
  const Dst* target() const { return dst_; }
  int shift() const { return shift_; }

  GradedVector<Dst> apply(const GradedVector<Src>& v) const {
    GradedVector<Dst> out;
    for (const auto& [l, c] : v.terms()) {
      int k = l.degree();
      auto it = blocks_.find(k);
      if (it == blocks_.end()) continue;
      auto idx = src_->index_of(l);
      if (!idx) throw std::invalid_argument("LinearOperator: label not in " + src_->name());
      const auto& basis = dst_->basis(k + shift_);
      for (const auto& [row, val] : it->second[*idx]) out.add(basis[row], c * val);
    }
    return out;
  }

  /// Dense matrix of the block on source degree k (rows: target basis).
  Mat dense_block(int k) const {
    Mat m(dst_->dim(k + shift_), src_->dim(k));
    auto it = blocks_.find(k);
    if (it != blocks_.end())
      for (size_t j = 0; j < it->second.size(); ++j)
        for (const auto& [row, val] : it->second[j]) m.at(row, j) += val;
    return m;
  }

  void set_block(int k, const Mat& m) {
    if (m.rows() != dst_->dim(k + shift_) || m.cols() != src_->dim(k))
      throw std::invalid_argument("LinearOperator: block shape mismatch at degree " +
                                  std::to_string(k));
    auto& cols = blocks_[k];
    cols.assign(m.cols(), {});
    for (size_t j = 0; j < m.cols(); ++j)
      for (size_t i = 0; i < m.rows(); ++i)
        if (!m.at(i, j).is_zero()) cols[j].emplace_back(i, m.at(i, j));
  }

  std::vector<int> block_degrees() const {
    std::vector<int> ks;
    for (const auto& [k, cols] : blocks_) ks.push_back(k);
    return ks;
  }

  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    if (a.shift_ != b.shift_) return false;
    for (int k = a.src_->min_degree(); k <= a.src_->max_degree(); ++k)
      if (!(a.dense_block(k) == b.dense_block(k))) return false;
    return true;
  }

private:
  const Src* src_;
  const Dst* dst_;
  int shift_;
  std::map<int, std::vector<SparseCol>> blocks_;
};

/// compose(a, b) = a after b.  The inner spaces must be the same object.
template <Graded A, Graded B, Graded C>
LinearOperator<A, C> compose(const LinearOperator<B, C>& a, const LinearOperator<A, B>& b) {
  if (static_cast<const void*>(a.source()) != static_cast<const void*>(b.target()))
    throw std::invalid_argument("compose: inner spaces differ (" + a.source()->name() +
                                " vs " + b.target()->name() + ")");
  LinearOperator<A, C> r(b.source(), a.target(), a.shift() + b.shift());
  for (int k = b.source()->min_degree(); k <= b.source()->max_degree(); ++k) {
    if (b.source()->dim(k) == 0 || a.target()->dim(k + r.shift()) == 0) continue;
    r.set_block(k, a.dense_block(k + b.shift()) * b.dense_block(k));
  }
  return r;
}

/// Alternating-sign trace of a degree-preserving endomorphism.
template <Graded S>
Rational supertrace(const LinearOperator<S, S>& a) {
  if (static_cast<const void*>(a.source()) != static_cast<const void*>(a.target()) ||
      a.shift() != 0)
    throw std::invalid_argument("supertrace: operator is not a degree-0 endomorphism of " +
                                a.source()->name());
  Rational st = 0;
  for (int k = a.source()->min_degree(); k <= a.source()->max_degree(); ++k) {
    if (a.source()->dim(k) == 0) continue;
    Mat blk = a.dense_block(k);
    Rational tr = 0;
    for (size_t i = 0; i < blk.rows(); ++i) tr += blk.at(i, i);
    st += (k % 2 == 0) ? tr : -tr;
  }
  return st;
}

/// Solves a x = y degreewise.  When a is injective on the relevant degrees
/// the solution is unique; a right-hand side outside the image raises
/// InconsistentSystem, shape problems raise std::invalid_argument.
template <Graded Src, Graded Dst>
GradedVector<Src> solve(const LinearOperator<Src, Dst>& a, const GradedVector<Dst>& y) {
  GradedVector<Src> x;
  for (int ky : y.degrees()) {
    int kx = ky - a.shift();
    if (a.source()->dim(kx) == 0)
      throw InconsistentSystem("inconsistent system: degree-" + std::to_string(ky) +
                               " component outside the image of " + a.source()->name());
    Mat blk = a.dense_block(kx);
    Mat rhs(a.target()->dim(ky), 1);
    GradedVector<Dst> part = y.degree_part(ky);
    for (const auto& [l, c] : part.terms()) rhs.at(*a.target()->index_of(l), 0) = c;
    Mat sol = symtheta::solve(blk, rhs);  // may throw InconsistentSystem
    const auto& basis = a.source()->basis(kx);
    for (size_t i = 0; i < sol.rows(); ++i)
      if (!sol.at(i, 0).is_zero()) x.add(basis[i], sol.at(i, 0));
  }
  return x;
}

/// Perfect pairing between complementary degrees: <u, v> != 0 only when
/// deg u + deg v = top.  Gram blocks are materialized on demand.
template <typename L, typename R>
class BilinearPairing {
public:
  using EvalFn =
      std::function<Rational(const typename L::Label&, const typename R::Label&)>;

  BilinearPairing(const L* left, const R* right, int top, EvalFn eval)
      : left_(left), right_(right), top_(top), eval_(std::move(eval)) {}

  const L* left() const { return left_; }
  const R* right() const { return right_; }
  int top() const { return top_; }

  Rational eval(const typename L::Label& a, const typename R::Label& b) const {
    if (a.degree() + b.degree() != top_) return 0;
    return eval_(a, b);
  }

  Rational eval(const GradedVector<L>& u, const GradedVector<R>& v) const {
    Rational s = 0;
    for (const auto& [la, ca] : u.terms())
      for (const auto& [lb, cb] : v.terms())
        if (la.degree() + lb.degree() == top_) s += ca * cb * eval_(la, lb);
    return s;
  }

  /// Gram matrix pairing basis(k) against basis(top - k).
  const Mat& gram(int k) const {
    auto it = gram_cache_.find(k);
    if (it != gram_cache_.end()) return it->second;
    Mat g(left_->dim(k), right_->dim(top_ - k));
    const auto& lb = left_->basis(k);
    const auto& rb = right_->basis(top_ - k);
    for (size_t i = 0; i < lb.size(); ++i)
      for (size_t j = 0; j < rb.size(); ++j) g.at(i, j) = eval_(lb[i], rb[j]);
    return gram_cache_.emplace(k, std::move(g)).first->second;
  }

  bool nondegenerate(int k) const {
    const Mat& g = gram(k);
    return g.rows() == g.cols() && !determinant(g).is_zero();
  }

private:
  const L* left_;
  const R* right_;
  int top_;
  EvalFn eval_;
  mutable std::map<int, Mat> gram_cache_;
};

/// Adjoint of a : V -> W under perfect pairings on V and W:
///     P_V(adj(a) u, v) = P_W(u, a v)   for all u in W, v in V.
/// Fails loudly (naming the degree and space) on any degenerate Gram block.
template <Graded V, Graded W>
LinearOperator<W, V> adjoint(const LinearOperator<V, W>& a, const BilinearPairing<V, V>& pv,
                             const BilinearPairing<W, W>& pw) {
  if (static_cast<const void*>(pv.left()) != static_cast<const void*>(a.source()) ||
      static_cast<const void*>(pw.left()) != static_cast<const void*>(a.target()))
    throw std::invalid_argument("adjoint: pairings do not match operator spaces (" +
                                a.source()->name() + ", " + a.target()->name() + ")");
  const int shift_adj = pv.top() - pw.top() + a.shift();
  LinearOperator<W, V> adj(a.target(), a.source(), shift_adj);
  for (int k = a.target()->min_degree(); k <= a.target()->max_degree(); ++k) {
    if (a.target()->dim(k) == 0) continue;
    const int kx = k + shift_adj;          // degree of the adjoint image
    const int q = pv.top() - kx;           // test degree on V
    if (a.source()->dim(kx) == 0) {
      if (a.source()->dim(q) != 0) {
        // Nothing can pair against the test vectors: only consistent if the
        // right-hand side vanishes identically.
        const Mat rhs_chk = pw.gram(k);
        Mat ablk = a.dense_block(q);
        if (!(rhs_chk * ablk).is_zero())
          throw std::domain_error("adjoint: degenerate pairing block at degree " +
                                  std::to_string(kx) + " on " + a.source()->name());
      }
      continue;
    }
    const Mat& g = pv.gram(kx);  // dim_V(kx) x dim_V(q)
    if (g.rows() != g.cols())
      throw std::domain_error("adjoint: degenerate pairing block at degree " +
                              std::to_string(kx) + " on " + a.source()->name());
    // R[j][i] = P_W(u_i, a v_j) for v_j in V_q, u_i in W_k.
    Mat r(a.source()->dim(q), a.target()->dim(k));
    {
      Mat ablk = a.dense_block(q);              // dim_W(q + shift) x dim_V(q)
      const Mat& gw = pw.gram(k);               // dim_W(k) x dim_W(topW - k)
      // q + a.shift() == pw.top() - k by construction.
      for (size_t j = 0; j < r.rows(); ++j)
        for (size_t i = 0; i < r.cols(); ++i) {
          Rational s = 0;
          for (size_t t = 0; t < ablk.rows(); ++t)
            if (!ablk.at(t, j).is_zero() && !gw.at(i, t).is_zero())
              s += gw.at(i, t) * ablk.at(t, j);
          r.at(j, i) = s;
        }
    }
    Mat gt = g.transposed();
    if (rank(gt) != gt.rows())
      throw std::domain_error("adjoint: degenerate pairing block at degree " +
                              std::to_string(kx) + " on " + a.source()->name());
    adj.set_block(k, symtheta::solve(gt, r));
  }
  return adj;
}

}  // namespace symtheta

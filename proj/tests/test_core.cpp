#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symtheta/graded.hpp"
#include "symtheta/linalg.hpp"
#include "symtheta/rational.hpp"

#include <random>

using namespace symtheta;

TEST_CASE("rational arithmetic and parsing") {
  Rational a = Rational::parse("3/4");
  Rational b = Rational::parse("-2");
  CHECK(a + b == Rational::parse("-5/4"));
  CHECK(a * b == Rational::parse("-3/2"));
  CHECK((a / b).str() == "-3/8");
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(7).is_integer());
  CHECK(!a.is_integer());
  CHECK(Rational(-5).sign() == -1);
  CHECK(Rational(3, 7).inv() == Rational(7, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("bit-length pivot heuristic measures numerator and denominator") {
  CHECK(Rational(1).bit_length() == 2);          // 1 and 1
  CHECK(Rational(255).bit_length() == 9);        // 8 + 1
  CHECK(Rational(1, 255).bit_length() == 9);     // symmetric
  CHECK(Rational(0).bit_length() < Rational(1000000).bit_length());
}

TEST_CASE("factorial, binomial, pow2") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(400, 200) % 2 == 0);
  CHECK(pow2(10) == 1024);
}

TEST_CASE("solve: exact solution, inconsistency, and shape errors are distinct") {
  Mat a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 3;
  a.at(1, 1) = 4;
  Mat b(2, 1);
  b.at(0, 0) = 5;
  b.at(1, 0) = 11;
  Mat x = solve(a, b);
  CHECK(a * x == b);

  Mat sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(0, 1) = 2;
  sing.at(1, 0) = 2;
  sing.at(1, 1) = 4;
  Mat bad(2, 1);
  bad.at(0, 0) = 1;
  bad.at(1, 0) = 3;  // not twice the first row
  CHECK_THROWS_AS(solve(sing, bad), InconsistentSystem);
  CHECK_THROWS_WITH_AS(solve(sing, bad),
                       "inconsistent system: right-hand side outside column space",
                       InconsistentSystem);

  Mat wrong(3, 1);
  CHECK_THROWS_AS(solve(a, wrong), std::invalid_argument);
}

TEST_CASE("rank, kernel, determinant, inverse") {
  Mat a(3, 3);
  int vals[3][3] = {{2, 1, 1}, {1, 3, 2}, {1, 0, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.at(i, j) = vals[i][j];
  CHECK(rank(a) == 3);
  CHECK(determinant(a) == Rational(-1));
  Mat inv = inverse(a);
  CHECK(a * inv == Mat::identity(3));

  Mat r1(2, 3);
  r1.at(0, 0) = 1;
  r1.at(0, 1) = 2;
  r1.at(0, 2) = 3;
  r1.at(1, 0) = 2;
  r1.at(1, 1) = 4;
  r1.at(1, 2) = 6;
  CHECK(rank(r1) == 1);
  Mat k = kernel(r1);
  CHECK(k.cols() == 2);
  CHECK((r1 * k).is_zero());

  Mat sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(1, 0) = 1;
  CHECK_THROWS_AS(inverse(sing), InconsistentSystem);
}

TEST_CASE("randomized solve round-trip") {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 25; ++trial) {
    size_t n = 1 + trial % 6;
    Mat a(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a.at(i, j) = Rational(coef(rng), 1 + (trial % 3));
    Mat x(n, 1);
    for (size_t i = 0; i < n; ++i) x.at(i, 0) = coef(rng);
    if (determinant(a).is_zero()) continue;
    CHECK(solve(a, a * x) == x);
  }
}

// A minimal graded space for operator tests: one-dimensional pieces in
// degrees 0..n with integer labels.
struct LineSpace {
  struct Label {
    int k = 0;
    int degree() const { return k; }
    friend bool operator==(const Label&, const Label&) = default;
    friend bool operator<(const Label& a, const Label& b) { return a.k < b.k; }
  };
  int n;
  std::string tag;
  explicit LineSpace(int n_, std::string t = "line") : n(n_), tag(std::move(t)) {
    for (int k = 0; k <= n; ++k) b_.push_back({{Label{k}}});
  }
  int min_degree() const { return 0; }
  int max_degree() const { return n; }
  size_t dim(int k) const { return (k >= 0 && k <= n) ? 1 : 0; }
  const std::vector<Label>& basis(int k) const {
    static const std::vector<Label> empty;
    return (k >= 0 && k <= n) ? b_[k] : empty;
  }
  std::optional<size_t> index_of(const Label& l) const {
    if (l.k < 0 || l.k > n) return std::nullopt;
    return 0;
  }
  std::string name() const { return tag; }
  std::vector<std::vector<Label>> b_;
};

TEST_CASE("graded vectors drop zeros and split by degree") {
  LineSpace s(4);
  GradedVector<LineSpace> v;
  v.add({1}, Rational(2));
  v.add({1}, Rational(-2));
  CHECK(v.is_zero());
  v.add({0}, 1);
  v.add({3}, Rational(1, 2));
  CHECK(v.degrees() == std::set<int>{0, 3});
  CHECK(v.degree_part(3).coeff({3}) == Rational(1, 2));
  CHECK(!v.homogeneous_degree().has_value());
  CHECK(v.degree_part(0).homogeneous_degree() == 0);
}

TEST_CASE("operators: composition demands a shared middle space") {
  LineSpace s(3, "A"), t(3, "B");
  auto shift_up = LinearOperator<LineSpace, LineSpace>::from_function(
      &s, &s, 1, [&](const LineSpace::Label& l) {
        GradedVector<LineSpace> v;
        if (l.k + 1 <= 3) v.add({l.k + 1}, 2);
        return v;
      });
  auto same = compose(shift_up, shift_up);
  GradedVector<LineSpace> e0;
  e0.add({0}, 1);
  CHECK(same.apply(e0).coeff({2}) == Rational(4));

  auto on_b = LinearOperator<LineSpace, LineSpace>::from_function(
      &t, &t, 0, [](const LineSpace::Label& l) {
        GradedVector<LineSpace> v;
        v.add(l, 1);
        return v;
      });
  CHECK_THROWS_AS(compose(shift_up, on_b), std::invalid_argument);
}

TEST_CASE("from_function rejects non-homogeneous images") {
  LineSpace s(3);
  auto build_bad = [&] {
    return LinearOperator<LineSpace, LineSpace>::from_function(
        &s, &s, 1, [](const LineSpace::Label&) {
          GradedVector<LineSpace> v;
          v.add({0}, 1);  // degree 0 regardless of the input: wrong shift
          v.add({1}, 1);
          return v;
        });
  };
  CHECK_THROWS_AS(build_bad(), std::logic_error);
}

TEST_CASE("supertrace alternates degree signs") {
  LineSpace s(2);
  auto scale = LinearOperator<LineSpace, LineSpace>::from_function(
      &s, &s, 0, [](const LineSpace::Label& l) {
        GradedVector<LineSpace> v;
        v.add(l, Rational(l.k + 1));
        return v;
      });
  // 1 - 2 + 3
  CHECK(supertrace(scale) == Rational(2));
}

TEST_CASE("graded solve distinguishes missing degrees from inconsistency") {
  LineSpace s(2, "S"), t(4, "T");
  auto dbl = LinearOperator<LineSpace, LineSpace>::from_function(
      &s, &t, 2, [](const LineSpace::Label& l) {
        GradedVector<LineSpace> v;
        v.add({l.k + 2}, 3);
        return v;
      });
  GradedVector<LineSpace> y;
  y.add({2}, 6);
  auto x = solve(dbl, y);
  CHECK(x.coeff({0}) == Rational(2));
  GradedVector<LineSpace> bad;
  bad.add({0}, 1);  // degree 0 of T is not in the image (source degree -2)
  CHECK_THROWS_AS(solve(dbl, bad), InconsistentSystem);
}

TEST_CASE("adjoint satisfies the pairing identity on a small space") {
  LineSpace s(2, "P");
  // Pairing <k, 2-k> = k+1 on the line space, top degree 2.
  BilinearPairing<LineSpace, LineSpace> pv(
      &s, &s, 2, [](const LineSpace::Label& a, const LineSpace::Label&) {
        return Rational(a.k + 1);
      });
  auto op = LinearOperator<LineSpace, LineSpace>::from_function(
      &s, &s, 0, [](const LineSpace::Label& l) {
        GradedVector<LineSpace> v;
        v.add(l, Rational(2 * l.k + 1));
        return v;
      });
  auto adj = adjoint(op, pv, pv);
  for (int ku = 0; ku <= 2; ++ku) {
    int kv = 2 - ku;
    GradedVector<LineSpace> u, v;
    u.add({ku}, 1);
    v.add({kv}, 1);
    CHECK(pv.eval(adj.apply(u), v) == pv.eval(u, op.apply(v)));
  }
}

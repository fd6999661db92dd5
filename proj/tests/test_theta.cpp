#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "symtheta/theta.hpp"

#include <string>

using namespace symtheta;

TEST_CASE("local stalk supertrace: one-dimensional pieces in degrees 0..2r") {
  // delta(r) counts r+1 alternating-ish signs mod 4; the supertrace of the
  // stalk collapses to 1 for even r and 0 for odd r.
  CHECK(delta_mod4(0) == 1);
  CHECK(delta_mod4(1) == 2);
  CHECK(delta_mod4(2) == 1);
  CHECK(delta_mod4(3) == 0);
  CHECK(delta_mod4(4) == 1);
  CHECK(delta_mod4(7) == 0);
  CHECK_THROWS_AS(delta_mod4(-1), std::invalid_argument);
  for (long r = 0; r <= 9; ++r) CHECK(fiber_supertrace(r) == Integer((r % 2) ? 0 : 1));
  CHECK_THROWS_AS(fiber_supertrace(-2), std::invalid_argument);
}

TEST_CASE("theta characteristic counts") {
  ThetaCharCounts c1 = theta_char_counts(1);
  CHECK(c1.odd == 1);
  CHECK(c1.even == 3);
  CHECK(c1.total == 4);
  ThetaCharCounts c3 = theta_char_counts(3);
  CHECK(c3.odd == 28);
  CHECK(c3.even == 36);
  CHECK(c3.total == 64);
  CHECK_THROWS_AS(theta_char_counts(0), std::invalid_argument);
  CHECK(multiplicity(1) == 0);
  CHECK(multiplicity(3) == 2);
  CHECK_THROWS_AS(multiplicity(0), std::invalid_argument);
}

TEST_CASE("weighted binomial identity equals the odd-characteristic count") {
  BinomialIdentityReport r3 = binomial_identity_check(3);
  CHECK(r3.lhs == 28);
  CHECK(r3.rhs == 28);
  CHECK(r3.ok);
  for (int g = 1; g <= 30; ++g) CHECK(binomial_identity_check(g).ok);
  CHECK_THROWS_AS(binomial_identity_check(0), std::invalid_argument);
}

TEST_CASE("closed-form traces, genus three") {
  Integer expect[5] = {1, -6, 14, -6, 1};
  for (int p = 0; p <= 4; ++p) CHECK(ih_trace_closed_form(3, p) == expect[p]);
  // Palindromic in p <-> 2(g-1) - p.
  for (int g = 2; g <= 6; ++g)
    for (int p = 0; p <= 2 * (g - 1); ++p)
      CHECK(ih_trace_closed_form(g, p) == ih_trace_closed_form(g, 2 * (g - 1) - p));
}

TEST_CASE("stratum table: codimensions, margins, incidence dimensions") {
  CHECK_THROWS_WITH_AS(
      strata_report(2),
      "strata_report: genus must be at least 3 (every curve of genus < 3 is hyperelliptic)",
      std::invalid_argument);

  StrataReport s3 = strata_report(3);
  CHECK(s3.small_resolution);
  REQUIRE(s3.rows.size() == 2);
  CHECK(s3.rows[0].r == 0);
  CHECK(s3.rows[0].wr == 2);
  CHECK(s3.rows[0].codim == 0);
  CHECK(s3.rows[0].zr_dim == 3);
  CHECK(!s3.rows[0].vacuous);
  CHECK(s3.rows[1].vacuous);  // w_1 = -1 at genus 3

  StrataReport s5 = strata_report(5);
  CHECK(s5.small_resolution);
  REQUIRE(s5.rows.size() == 3);
  CHECK(s5.rows[1].wr == 1);
  CHECK(s5.rows[1].codim == 3);
  CHECK(s5.rows[1].fiber_dim == 1);
  CHECK(s5.rows[1].margin == 1);
  CHECK(s5.rows[1].zr_dim == 4);
  CHECK(s5.rows[2].vacuous);

  StrataReport s10 = strata_report(10);
  CHECK(s10.small_resolution);
  CHECK(s10.rows[4].wr == 0);
  CHECK(s10.rows[4].codim == 9);
  CHECK(s10.rows[4].margin == 1);
  CHECK(s10.rows[4].zr_dim == 9);
  // The margin is exactly 1 on every nonvacuous deeper stratum.
  for (int g = 3; g <= 40; ++g)
    for (const StratumRow& row : strata_report(g).rows)
      if (!row.vacuous && row.r >= 1) CHECK(row.margin == 1);
}

TEST_CASE("kappa: genus one is the unit, higher genera satisfy the defining identity") {
  ThetaGeometry geo1(1);
  CHECK(geo1.kappa() == geo1.sym(0).unit());
  for (int g = 2; g <= 3; ++g) {
    ThetaGeometry geo(g);
    const SymClass& k = geo.kappa();
    CHECK(k.homogeneous_degree() == 2 * g - 2);
    // Defining property: j_* kappa is the pullback of theta^g / g!.
    CHECK(j_pushforward(geo.sym(2 * g - 2), geo.sym(2 * g - 1), k) ==
          geo.aj(2 * g - 1).pullback_theta_over_factorial(g));
  }
}

TEST_CASE("direct involution at genus three: image of eta, frozen") {
  ThetaGeometry geo(3);
  const auto& op = geo.iota_direct();
  SymClass ie = op.apply(geo.ih().eta());
  CHECK(ie == geo.rr_eta_power(1));
  CHECK(ie.coeff(SymLabel{0, 1}) == Rational(2));
  CHECK(ie.coeff(SymLabel{(uint64_t(1) << 0) | (uint64_t(1) << 3), 0}) == Rational(1));
  CHECK(ie.coeff(SymLabel{(uint64_t(1) << 1) | (uint64_t(1) << 4), 0}) == Rational(1));
  CHECK(ie.coeff(SymLabel{(uint64_t(1) << 2) | (uint64_t(1) << 5), 0}) == Rational(1));
  CHECK(ie.terms().size() == 4);
}

TEST_CASE("the involution squares to the identity") {
  for (int g = 2; g <= 3; ++g) {
    ThetaGeometry geo(g);
    const auto& op = geo.iota_direct();
    const SymRing& r = geo.ih();
    for (int k = 0; k <= r.max_degree(); ++k)
      for (const SymLabel& l : r.basis(k))
        CHECK(op.apply(op.apply(r.monomial(l))) == r.monomial(l));
  }
}

TEST_CASE("recursion for the eta-power images") {
  ThetaGeometry geo(3);
  const AbelJacobi& phi = geo.aj(2);
  const SymRing& r = geo.ih();
  for (int m = 1; m <= 2; ++m) {
    SymClass lhs = geo.rr_eta_power(m);
    SymClass rhs = phi.pullback_theta_over_factorial(m);
    SymClass back = r.mul(r.eta(), geo.rr_eta_power(m - 1));
    back *= Rational(-1);
    rhs += back;
    CHECK(lhs == rhs);
    CHECK(geo.iota_direct().apply(r.eta_power(m)) == lhs);
  }
  CHECK(geo.rr_eta_power(0) == r.unit());
  CHECK_THROWS_AS(geo.rr_eta_power(-1), std::invalid_argument);
}

TEST_CASE("formula route reproduces the direct involution") {
  for (int g = 1; g <= 3; ++g) {
    ThetaGeometry geo(g);
    CHECK(geo.iota_formula() == geo.iota_direct());
    CHECK(&geo.iota(IotaRoute::direct) == &geo.iota_direct());
    CHECK(&geo.iota(IotaRoute::formula) == &geo.iota_formula());
  }
}

TEST_CASE("profile of the middle cohomology, genus three") {
  ThetaGeometry geo(3);
  IhProfile prof = geo.ih_profile(geo.iota_direct());
  REQUIRE(prof.dims.size() == 5);
  CHECK(prof.dims[0] == 1);
  CHECK(prof.dims[1] == 6);
  CHECK(prof.dims[2] == 16);
  CHECK(prof.dims[3] == 6);
  CHECK(prof.dims[4] == 1);
  CHECK(prof.traces[2] == 14);
  CHECK(prof.supertrace == 28);
  CHECK(geo.supertrace_iota(geo.iota_direct()) == 28);
}

TEST_CASE("two-route Lefschetz balance") {
  for (int g = 2; g <= 3; ++g) {
    ThetaGeometry geo(g);
    LefschetzReport rep = geo.lefschetz_balance(geo.iota_direct());
    CHECK(rep.ok);
    CHECK(rep.from_counting == pow2(2 * g - 1) - pow2(g - 1));
    CHECK(rep.from_involution == rep.from_counting);
  }
}

TEST_CASE("eta-exponent filtration: triangular with signed identity blocks") {
  for (int g = 2; g <= 3; ++g) {
    ThetaGeometry geo(g);
    FiltrationReport rep = geo.filtration_check(geo.iota_direct());
    CHECK(rep.ok);
    for (const FiltrationRow& row : rep.rows) {
      CHECK(row.triangular);
      CHECK(row.diagonal_signs);
    }
  }
  ThetaGeometry geo3(3);
  FiltrationReport rep = geo3.filtration_check(geo3.iota_direct());
  // Degree 2 of H(S^2 X) splits as 15 monomial classes plus the eta line.
  for (const FiltrationRow& row : rep.rows)
    if (row.p == 2) {
      REQUIRE(row.block_sizes.size() == 2);
      CHECK(row.block_sizes[0] == 15);
      CHECK(row.block_sizes[1] == 1);
    }
}

TEST_CASE("non-multiplicativity: genus two degenerates, genus three is inconclusive") {
  ThetaGeometry geo2(2);
  NonMultReport r2 = geo2.nonmultiplicativity_witness(IotaRoute::direct);
  CHECK(!r2.witness_found);
  CHECK(!r2.certified);
  CHECK(r2.note.find("outside theorem hypotheses") != std::string::npos);

  ThetaGeometry geo3(3);
  NonMultReport r3 = geo3.nonmultiplicativity_witness(IotaRoute::direct);
  CHECK(r3.witness_found);
  CHECK(r3.witness == "2*eta - 1*phi^*theta");
  CHECK(r3.eigen_ok);
  CHECK(r3.power_nonzero);
  CHECK(r3.power_fixed);  // odd genus: the fixed power cannot separate
  CHECK(!r3.certified);
  CHECK(r3.note.find("odd genus") != std::string::npos);
}

TEST_CASE("non-multiplicativity: genus four certificate") {
  ThetaGeometry geo(4);
  NonMultReport rep = geo.nonmultiplicativity_witness(IotaRoute::direct);
  CHECK(rep.witness_found);
  CHECK(rep.eigen_ok);
  CHECK(rep.power_nonzero);
  CHECK(rep.power_fixed);
  CHECK(rep.certified);
  CHECK(rep.witness == "2*eta - 1*phi^*theta");
  CHECK(rep.note.find("not multiplicative") != std::string::npos);
}

TEST_CASE("route names") {
  CHECK(to_string(IotaRoute::direct) == std::string("direct"));
  CHECK(to_string(IotaRoute::formula) == std::string("formula"));
}

// Acceptance gate: the ten headline checks, one line of output each.
// Every comparison is exact; there are no tolerances to tune.  A criterion
// fails loudly with the reason rather than being skipped.

#include "symtheta/curve_tensor.hpp"
#include "symtheta/theta.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

using namespace symtheta;

namespace {

int failures = 0;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

void criterion(int n, const std::string& name, const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string verdict, why;
  try {
    body();
    verdict = "PASS";
  } catch (const std::exception& e) {
    ++failures;
    verdict = "FAIL";
    why = e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << "criterion " << n << " " << name << ": " << verdict;
  if (!why.empty()) std::cout << " (" << why << ")";
  std::cout << "  [" << ms << " ms]" << std::endl;
}

std::map<int, std::unique_ptr<ThetaGeometry>> geos;

ThetaGeometry& geo(int g) {
  auto it = geos.find(g);
  if (it == geos.end()) it = geos.emplace(g, std::make_unique<ThetaGeometry>(g)).first;
  return *it->second;
}

std::string at_genus(int g) { return " at genus " + std::to_string(g); }

oracle::TensorClass to_tensor(const SymRing& r, const SymClass& v) {
  oracle::TensorClass out;
  for (const auto& [l, c] : v.terms()) {
    oracle::TensorClass s =
        oracle::symmetrize(oracle::representative(r.power(), mask_to_indices(l.mask), l.tops));
    for (const auto& [w, wc] : s.terms()) out.add(w, wc * c);
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "supertrace counts odd theta characteristics", [] {
    const Integer expect[] = {28, 120, 496};
    for (int g = 3; g <= 5; ++g) {
      Integer st = geo(g).supertrace_iota(geo(g).iota_direct());
      require(st == expect[g - 3],
              "supertrace " + st.get_str() + " unexpected" + at_genus(g));
    }
  });

  criterion(2, "lefschetz balance against the character count", [] {
    for (int g = 3; g <= 5; ++g) {
      LefschetzReport rep = geo(g).lefschetz_balance(geo(g).iota_direct());
      require(rep.ok, "involution supertrace " + rep.from_involution.get_str() +
                          " != character count " + rep.from_counting.get_str() + at_genus(g));
    }
  });

  criterion(3, "the involution squares to the identity, both constructions", [] {
    for (int g = 1; g <= 5; ++g) {
      ThetaGeometry& t = geo(g);
      const SymRing& r = t.ih();
      const auto& direct = t.iota_direct();
      for (int k = 0; k <= r.max_degree(); ++k)
        for (const SymLabel& l : r.basis(k))
          require(direct.apply(direct.apply(r.monomial(l))) == r.monomial(l),
                  "iota^2 moves a degree-" + std::to_string(k) + " class" + at_genus(g));
      require(t.iota_formula() == direct,
              "formula and correspondence constructions disagree" + at_genus(g));
    }
  });

  criterion(4, "eta-power images satisfy the closed-form recursion", [] {
    for (int g = 1; g <= 5; ++g) {
      ThetaGeometry& t = geo(g);
      const SymRing& r = t.ih();
      const AbelJacobi& phi = t.aj(g - 1);
      require(t.rr_eta_power(0) == r.unit(), "base case is not the unit" + at_genus(g));
      for (int m = 1; m <= g - 1; ++m) {
        SymClass rhs = phi.pullback_theta_over_factorial(m);
        SymClass back = r.mul(r.eta(), t.rr_eta_power(m - 1));
        back *= Rational(-1);
        rhs += back;
        require(t.rr_eta_power(m) == rhs,
                "recursion fails at step " + std::to_string(m) + at_genus(g));
      }
      for (int m = 0; m <= g - 1; ++m)
        require(t.iota_direct().apply(r.eta_power(m)) == t.rr_eta_power(m),
                "direct involution disagrees on eta^" + std::to_string(m) + at_genus(g));
    }
  });

  criterion(5, "pushforward of eta powers gives divided theta powers", [] {
    for (int g = 1; g <= 5; ++g)
      for (int d = 0; d <= g; ++d) {
        ThetaGeometry& t = geo(g);
        const SymRing& r = t.sym(d);
        for (int i = 0; i <= d; ++i)
          require(t.aj(d).pushforward(r.eta_power(i)) ==
                      t.pic().theta_power_over_factorial(g - d + i),
                  "pushforward of eta^" + std::to_string(i) + " from the " +
                      std::to_string(d) + "-th power is wrong" + at_genus(g));
      }
  });

  criterion(6, "weighted binomial identity through genus 200, under a second", [] {
    auto t0 = std::chrono::steady_clock::now();
    for (int g = 1; g <= 200; ++g) {
      BinomialIdentityReport rep = binomial_identity_check(g);
      require(rep.ok, "identity fails" + at_genus(g) + ": lhs " + rep.lhs.get_str() +
                          ", rhs " + rep.rhs.get_str());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    require(ms < 1000, "sweep took " + std::to_string(ms) + " ms");
  });

  criterion(7, "eta filtration: triangular with signed identity blocks", [] {
    for (int g = 3; g <= 5; ++g) {
      FiltrationReport rep = geo(g).filtration_check(geo(g).iota_direct());
      for (const FiltrationRow& row : rep.rows) {
        require(row.triangular,
                "degree " + std::to_string(row.p) + " not triangular" + at_genus(g));
        require(row.diagonal_signs,
                "degree " + std::to_string(row.p) + " diagonal signs wrong" + at_genus(g));
      }
      require(rep.ok, "filtration report not ok" + at_genus(g));
    }
  });

  criterion(8, "the involution is certified not to be a ring map", [] {
    NonMultReport r4 = geo(4).nonmultiplicativity_witness(IotaRoute::direct);
    require(r4.witness_found, "no witness at genus 4");
    require(r4.certified, "certificate incomplete at genus 4: " + r4.note);
    require(r4.witness == "2*eta - 1*phi^*theta",
            "unexpected witness at genus 4: " + r4.witness);
    // Genus 6 through the closed-form construction: no operator is built.
    NonMultReport r6 = geo(6).nonmultiplicativity_witness(IotaRoute::formula);
    require(r6.witness_found, "no witness at genus 6");
    require(r6.certified, "certificate incomplete at genus 6: " + r6.note);
  });

  criterion(9, "ring structure matches the symmetrized tensor model", [] {
    for (int g = 1; g <= 3; ++g)
      for (int d = 0; d <= 3; ++d) {
        SymRing r(g, d);
        std::vector<SymLabel> all;
        for (int k = 0; k <= 2 * d; ++k)
          for (const SymLabel& l : r.basis(k)) all.push_back(l);
        for (const SymLabel& a : all)
          for (const SymLabel& b : all) {
            oracle::TensorClass lhs = to_tensor(r, r.mul(r.monomial(a), r.monomial(b)));
            oracle::TensorClass rhs =
                oracle::mul(to_tensor(r, r.monomial(a)), to_tensor(r, r.monomial(b)), g);
            if (!(lhs == rhs)) {
              std::ostringstream os;
              os << "product mismatch at genus " << g << ", power " << d << ", masks "
                 << a.mask << "/" << b.mask << ", tops " << a.tops << "/" << b.tops;
              require(false, os.str());
            }
          }
      }
  });

  criterion(10, "stratum table: codimension margins certify smallness", [] {
    for (int g = 3; g <= 50; ++g) {
      StrataReport rep = strata_report(g);
      require(rep.small_resolution, "smallness not certified" + at_genus(g));
      int vacuous = 0;
      for (const StratumRow& row : rep.rows) {
        if (row.vacuous) {
          ++vacuous;
          continue;
        }
        require(row.zr_dim == (row.r == 0 ? g : g - 1),
                "incidence dimension wrong at r=" + std::to_string(row.r) + at_genus(g));
        if (row.r >= 1)
          require(row.margin == 1,
                  "margin " + std::to_string(row.margin) + " at r=" + std::to_string(row.r) +
                      at_genus(g));
        require(row.mult == row.r, "multiplicity wrong at r=" + std::to_string(row.r) +
                                       at_genus(g));
      }
      require(vacuous == (g % 2 ? 1 : 0), "vacuous row count wrong" + at_genus(g));
    }
  });

  if (failures == 0) {
    std::cout << "acceptance: all 10 criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
  return 1;
}

// Command-line front end.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
// 3 the request exceeds a computation budget.

#include "symtheta/cache.hpp"
#include "symtheta/report.hpp"
#include "symtheta/theta.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace symtheta;
using report::Format;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string format = "table";
  bool no_cache = false;
  std::string cache_dir;
  int max_direct = 5;
  int max_formula = 8;
  int max_closed = 200;
};

CacheConfig cache_config(const CommonOpts& o) {
  CacheConfig cfg;
  cfg.enabled = !o.no_cache;
  cfg.dir_override = o.cache_dir;
  return cfg;
}

/// Warm freshly created rings from the cache; remember which ones came from
/// disk so only new tables are written back afterwards.
class CacheSession {
public:
  CacheSession(ThetaGeometry& geo, const CacheConfig& cfg) : geo_(geo), cfg_(cfg) {
    geo.set_ring_hook([this](const SymRing& r) {
      if (load_generator_table(r, cfg_)) loaded_.insert(&r);
    });
  }
  ~CacheSession() {
    if (!cfg_.enabled) return;
    geo_.for_each_sym([this](const SymRing& r) {
      if (!loaded_.count(&r)) store_generator_table(r, cfg_);
    });
  }

private:
  ThetaGeometry& geo_;
  CacheConfig cfg_;
  std::set<const SymRing*> loaded_;
};

IotaRoute parse_route(const std::string& s) {
  if (s == "direct") return IotaRoute::direct;
  if (s == "formula") return IotaRoute::formula;
  throw std::invalid_argument("unknown route '" + s + "' (expected direct or formula)");
}

void check_ring_budget(int g, IotaRoute route, const CommonOpts& o) {
  int limit = route == IotaRoute::direct ? o.max_direct : o.max_formula;
  if (g > limit)
    throw BudgetExceeded("genus " + std::to_string(g) + " exceeds the " +
                         std::string(to_string(route)) + "-construction budget of " +
                         std::to_string(limit) + " (raise it with --max-" +
                         to_string(route) + ")");
}

const char* kHypothesisNote =
    "outside theorem hypotheses (every curve of genus < 3 is hyperelliptic)";

int run_betti(int g, int d, const CommonOpts& o) {
  std::cout << report::render_betti(report::make_betti_report(g, d),
                                    report::parse_format(o.format));
  return 0;
}

int run_involution(int g, const std::string& route_s, const CommonOpts& o) {
  Format fmt = report::parse_format(o.format);
  IotaRoute route = parse_route(route_s);
  if (g < 1) throw std::invalid_argument("involution: genus must be positive");
  check_ring_budget(g, route, o);
  ThetaGeometry geo(g);
  CacheSession cache(geo, cache_config(o));
  const ThetaGeometry::Op& op = geo.iota(route);
  report::InvolutionReport rep;
  rep.genus = g;
  rep.route = route;
  rep.profile = geo.ih_profile(op);
  rep.lefschetz = geo.lefschetz_balance(op);
  if (g < 3) rep.note = kHypothesisNote;
  std::cout << report::render_involution(rep, fmt);
  return rep.lefschetz.ok ? 0 : 1;
}

int run_strata(int g, const CommonOpts& o) {
  Format fmt = report::parse_format(o.format);
  StrataReport rep = strata_report(g);  // throws invalid_argument when g < 3
  std::cout << report::render_strata(rep, fmt);
  return rep.small_resolution ? 0 : 1;
}

int run_verify(int g, std::vector<std::string> suites, const CommonOpts& o) {
  Format fmt = report::parse_format(o.format);
  if (g < 1) throw std::invalid_argument("verify: genus must be positive");
  static const std::vector<std::string> kRingSuites = {"traces", "lefschetz", "filtration",
                                                       "nonmult"};
  static const std::vector<std::string> kAll = {"traces",  "lefschetz", "filtration",
                                                "calc",    "strata",    "nonmult"};
  if (suites.empty()) suites = {"all"};
  std::vector<std::string> expanded;
  for (const std::string& s : suites) {
    if (s == "all") {
      for (const std::string& a : kAll)
        if (a != "strata" || g >= 3) expanded.push_back(a);
    } else if (std::find(kAll.begin(), kAll.end(), s) != kAll.end()) {
      expanded.push_back(s);
    } else {
      throw std::invalid_argument("unknown suite '" + s +
                                  "' (expected all, traces, lefschetz, filtration, calc, "
                                  "strata or nonmult)");
    }
  }
  bool needs_rings = false;
  for (const std::string& s : expanded)
    if (std::find(kRingSuites.begin(), kRingSuites.end(), s) != kRingSuites.end())
      needs_rings = true;
  if (needs_rings) check_ring_budget(g, IotaRoute::direct, o);
  for (const std::string& s : expanded)
    if (s == "calc" && g > o.max_closed)
      throw BudgetExceeded("genus " + std::to_string(g) +
                           " exceeds the closed-form budget of " +
                           std::to_string(o.max_closed) + " (raise it with --max-closed)");

  report::VerifyReport rep;
  rep.suites = expanded;
  std::unique_ptr<ThetaGeometry> geo;
  std::unique_ptr<CacheSession> cache;
  auto geometry = [&]() -> ThetaGeometry& {
    if (!geo) {
      geo = std::make_unique<ThetaGeometry>(g);
      cache = std::make_unique<CacheSession>(*geo, cache_config(o));
    }
    return *geo;
  };
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, g, ok, detail});
    if (!ok) rep.ok = false;
  };

  for (const std::string& s : expanded) {
    try {
      if (s == "traces") {
        IhProfile p = geometry().ih_profile(geometry().iota_direct());
        add(s, true, "degreewise traces match their closed form; supertrace " +
                         p.supertrace.get_str());
      } else if (s == "lefschetz") {
        LefschetzReport l = geometry().lefschetz_balance(geometry().iota_direct());
        add(s, l.ok, "involution supertrace " + l.from_involution.get_str() +
                         ", odd theta characteristics " + l.from_counting.get_str());
      } else if (s == "filtration") {
        FiltrationReport f = geometry().filtration_check(geometry().iota_direct());
        add(s, f.ok, f.ok ? "eta-filtration triangular with diagonal signs (-1)^(p-q)"
                          : "triangularity or diagonal-sign failure");
      } else if (s == "calc") {
        BinomialIdentityReport b = binomial_identity_check(g);
        ThetaCharCounts c = theta_char_counts(g);
        bool ok = b.ok && (c.odd + c.even == c.total) && (c.odd == b.rhs);
        add(s, ok, "weighted binomial sum " + b.lhs.get_str() + " vs odd count " +
                       b.rhs.get_str());
      } else if (s == "strata") {
        StrataReport sr = strata_report(g);
        add(s, sr.small_resolution,
            std::to_string(sr.rows.size()) + " strata, smallness margin certified");
      } else if (s == "nonmult") {
        NonMultReport n = geometry().nonmultiplicativity_witness(IotaRoute::direct);
        bool ok;
        std::string detail;
        if (g < 3) {
          ok = true;
          detail = std::string(kHypothesisNote);
        } else if (g % 2 == 0) {
          ok = n.certified;
          detail = "witness " + n.witness + ": " + n.note;
        } else {
          ok = n.witness_found && n.eigen_ok;
          detail = "witness " + n.witness + ": " + n.note;
        }
        add(s, ok, detail);
      }
    } catch (const CheckFailure& e) {
      add(s, false, e.what());
    }
  }
  std::cout << report::render_verify(rep, fmt);
  return rep.ok ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool budgets) {
  cmd->add_option("--format", o.format, "output format: json, csv or table")
      ->capture_default_str();
  if (budgets) {
    cmd->add_flag("--no-cache", o.no_cache, "disable the structure-constant cache");
    cmd->add_option("--cache-dir", o.cache_dir,
                    "cache directory (default: $SYMTHETA_CACHE_DIR or ~/.cache/symtheta)");
    cmd->add_option("--max-direct", o.max_direct,
                    "largest genus for the direct correspondence construction")
        ->capture_default_str();
    cmd->add_option("--max-formula", o.max_formula,
                    "largest genus for the formula construction")
        ->capture_default_str();
    cmd->add_option("--max-closed", o.max_closed,
                    "largest genus for closed-form sweeps")
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection-cohomology computations for theta divisors on Jacobians"};
  app.require_subcommand(1);

  int g = 0, d = 0;
  std::string route = "direct";
  std::vector<std::string> suites;
  CommonOpts betti_o, inv_o, verify_o, strata_o;

  CLI::App* betti = app.add_subcommand("betti", "Betti numbers of a symmetric power");
  betti->add_option("-g,--genus", g, "curve genus")->required();
  betti->add_option("-d,--power", d, "symmetric power")->required();
  add_common(betti, betti_o, false);

  CLI::App* inv = app.add_subcommand("involution",
                                     "build the canonical involution and profile it");
  inv->add_option("-g,--genus", g, "curve genus")->required();
  inv->add_option("--route", route, "construction route: direct or formula")
      ->capture_default_str();
  add_common(inv, inv_o, true);

  CLI::App* verify = app.add_subcommand("verify", "run consistency suites at one genus");
  verify->add_option("-g,--genus", g, "curve genus")->required();
  verify->add_option("--suite", suites,
                     "suites to run: all, traces, lefschetz, filtration, calc, strata, "
                     "nonmult (repeatable)");
  add_common(verify, verify_o, true);

  CLI::App* strata = app.add_subcommand("strata", "rank-stratum invariants of the divisor");
  strata->add_option("-g,--genus", g, "curve genus")->required();
  add_common(strata, strata_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (betti->parsed()) return run_betti(g, d, betti_o);
    if (inv->parsed()) return run_involution(g, route, inv_o);
    if (verify->parsed()) return run_verify(g, suites, verify_o);
    if (strata->parsed()) return run_strata(g, strata_o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#pragma once

// Rendering of pipeline results in the three CLI output formats.  JSON is
// the machine interface: key order is fixed, every mathematical integer is
// a decimal string (they outgrow 64 bits quickly), rationals are "num/den"
// strings, and nothing varies run to run, so identical inputs give
// byte-identical output.  CSV flattens the same data; table is for eyes.

#include "symtheta/rational.hpp"
#include "symtheta/theta.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace symtheta::report {

using ordered_json = nlohmann::ordered_json;

enum class Format { json, csv, table };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "table") return Format::table;
  throw std::invalid_argument("unknown format '" + s + "' (expected json, csv or table)");
}

inline constexpr const char* kSchemaVersion = "1";

inline std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string pad_left(const std::string& s, size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

/// Renders rows as an aligned text table; the first row is the header.
inline std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t i = 0; i < rows[r].size(); ++i) {
      if (i) os << "  ";
      os << (i == 0 ? pad_right(rows[r][i], width[i]) : pad_left(rows[r][i], width[i]));
    }
    os << "\n";
    if (r == 0) {
      size_t total = 0;
      for (size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      os << std::string(total, '-') << "\n";
    }
  }
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct BettiReport {
  int genus = 0;
  int power = 0;
  std::vector<Integer> dims;  // degree 0 .. 2*power
};

inline BettiReport make_betti_report(int g, int d) {
  if (g < 1) throw std::invalid_argument("betti: genus must be positive");
  if (d < 0) throw std::invalid_argument("betti: power must be nonnegative");
  BettiReport r;
  r.genus = g;
  r.power = d;
  for (int k = 0; k <= 2 * d; ++k) r.dims.push_back(betti_count(g, d, k));
  return r;
}

inline std::string render_betti(const BettiReport& r, Format f) {
  switch (f) {
    case Format::json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "betti";
      j["genus"] = r.genus;
      j["power"] = r.power;
      ordered_json dims = ordered_json::array();
      for (const Integer& d : r.dims) dims.push_back(d.get_str());
      j["dims"] = dims;
      return dump(j);
    }
    case Format::csv: {
      std::ostringstream os;
      os << "field,degree,value\n";
      for (size_t k = 0; k < r.dims.size(); ++k)
        os << "dim," << k << "," << r.dims[k].get_str() << "\n";
      return os.str();
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"degree", "dim"}};
      for (size_t k = 0; k < r.dims.size(); ++k)
        rows.push_back({std::to_string(k), r.dims[k].get_str()});
      std::ostringstream os;
      os << "Betti numbers of the degree-" << r.power << " symmetric power, genus " << r.genus
         << "\n"
         << detail::text_table(rows);
      return os.str();
    }
  }
  throw std::logic_error("render_betti: unhandled format");
}

// ---------------------------------------------------------------------------

struct InvolutionReport {
  int genus = 0;
  IotaRoute route = IotaRoute::direct;
  IhProfile profile;
  LefschetzReport lefschetz;
  std::string note;  // empty unless outside the theorem hypotheses
};

inline std::string render_involution(const InvolutionReport& r, Format f) {
  switch (f) {
    case Format::json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "involution";
      j["genus"] = r.genus;
      j["route"] = to_string(r.route);
      ordered_json dims = ordered_json::array(), traces = ordered_json::array();
      for (const Integer& d : r.profile.dims) dims.push_back(d.get_str());
      for (const Integer& t : r.profile.traces) traces.push_back(t.get_str());
      j["dims"] = dims;
      j["traces"] = traces;
      j["supertrace"] = r.profile.supertrace.get_str();
      j["odd_theta_characteristics"] = r.lefschetz.from_counting.get_str();
      j["lefschetz_ok"] = r.lefschetz.ok;
      if (!r.note.empty()) j["note"] = r.note;
      return dump(j);
    }
    case Format::csv: {
      std::ostringstream os;
      os << "field,degree,value\n";
      for (size_t k = 0; k < r.profile.dims.size(); ++k)
        os << "dim," << k << "," << r.profile.dims[k].get_str() << "\n";
      for (size_t k = 0; k < r.profile.traces.size(); ++k)
        os << "trace," << k << "," << r.profile.traces[k].get_str() << "\n";
      os << "supertrace,," << r.profile.supertrace.get_str() << "\n";
      os << "odd_theta_characteristics,," << r.lefschetz.from_counting.get_str() << "\n";
      os << "lefschetz_ok,," << (r.lefschetz.ok ? "true" : "false") << "\n";
      return os.str();
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"degree", "dim", "trace"}};
      for (size_t k = 0; k < r.profile.dims.size(); ++k)
        rows.push_back({std::to_string(k), r.profile.dims[k].get_str(),
                        r.profile.traces[k].get_str()});
      std::ostringstream os;
      os << "Involution profile, genus " << r.genus << " (" << to_string(r.route)
         << " construction)\n"
         << detail::text_table(rows) << "supertrace                 "
         << r.profile.supertrace.get_str() << "\n"
         << "odd theta characteristics  " << r.lefschetz.from_counting.get_str() << "\n"
         << "lefschetz balance          " << (r.lefschetz.ok ? "ok" : "MISMATCH") << "\n";
      if (!r.note.empty()) os << "note: " << r.note << "\n";
      return os.str();
    }
  }
  throw std::logic_error("render_involution: unhandled format");
}

// ---------------------------------------------------------------------------

inline std::string render_strata(const StrataReport& r, Format f) {
  switch (f) {
    case Format::json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "strata";
      j["genus"] = r.genus;
      j["small_resolution"] = r.small_resolution;
      ordered_json rows = ordered_json::array();
      for (const StratumRow& s : r.rows) {
        ordered_json row;
        row["r"] = s.r;
        row["vacuous"] = s.vacuous;
        if (!s.vacuous) {
          row["wr"] = std::to_string(s.wr);
          row["fiber_dim"] = std::to_string(s.fiber_dim);
          row["codim"] = std::to_string(s.codim);
          row["margin"] = std::to_string(s.margin);
          row["zr_dim"] = std::to_string(s.zr_dim);
          row["multiplicity"] = std::to_string(s.mult);
        }
        rows.push_back(row);
      }
      j["strata"] = rows;
      return dump(j);
    }
    case Format::csv: {
      std::ostringstream os;
      os << "r,vacuous,wr,fiber_dim,codim,margin,zr_dim,multiplicity\n";
      for (const StratumRow& s : r.rows) {
        os << s.r << "," << (s.vacuous ? "true" : "false");
        if (s.vacuous)
          os << ",,,,,,";
        else
          os << "," << s.wr << "," << s.fiber_dim << "," << s.codim << "," << s.margin << ","
             << s.zr_dim << "," << s.mult;
        os << "\n";
      }
      return os.str();
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{
          {"r", "wr", "fiber", "codim", "margin", "dim Z_r", "mult", "status"}};
      for (const StratumRow& s : r.rows) {
        if (s.vacuous)
          rows.push_back({std::to_string(s.r), "-", "-", "-", "-", "-", "-", "vacuous"});
        else
          rows.push_back({std::to_string(s.r), std::to_string(s.wr),
                          std::to_string(s.fiber_dim), std::to_string(s.codim),
                          std::to_string(s.margin), std::to_string(s.zr_dim),
                          std::to_string(s.mult), "ok"});
      }
      std::ostringstream os;
      os << "Rank strata of the theta divisor, genus " << r.genus << "\n"
         << detail::text_table(rows) << "small resolution: "
         << (r.small_resolution ? "certified (margin >= 1 on every positive stratum)"
                                : "NOT certified")
         << "\n";
      return os.str();
    }
  }
  throw std::logic_error("render_strata: unhandled format");
}

// ---------------------------------------------------------------------------

struct VerifyCheck {
  std::string name;
  int genus = 0;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<std::string> suites;
  std::vector<VerifyCheck> checks;
  bool ok = true;
};

inline std::string render_verify(const VerifyReport& r, Format f) {
  switch (f) {
    case Format::json: {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "verify";
      j["suites"] = r.suites;
      ordered_json checks = ordered_json::array();
      for (const VerifyCheck& c : r.checks) {
        ordered_json row;
        row["name"] = c.name;
        row["genus"] = c.genus;
        row["ok"] = c.ok;
        row["detail"] = c.detail;
        checks.push_back(row);
      }
      j["checks"] = checks;
      j["ok"] = r.ok;
      return dump(j);
    }
    case Format::csv: {
      std::ostringstream os;
      os << "name,genus,ok,detail\n";
      for (const VerifyCheck& c : r.checks) {
        std::string detail = c.detail;
        for (char& ch : detail)
          if (ch == ',') ch = ';';
        os << c.name << "," << c.genus << "," << (c.ok ? "true" : "false") << "," << detail
           << "\n";
      }
      return os.str();
    }
    case Format::table: {
      std::vector<std::vector<std::string>> rows{{"check", "genus", "result", "detail"}};
      for (const VerifyCheck& c : r.checks)
        rows.push_back({c.name, std::to_string(c.genus), c.ok ? "ok" : "FAIL", c.detail});
      std::ostringstream os;
      os << detail::text_table(rows)
         << (r.ok ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
      return os.str();
    }
  }
  throw std::logic_error("render_verify: unhandled format");
}

}  // namespace symtheta::report

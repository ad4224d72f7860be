#pragma once

// Report and weight-table serialization for the CLI and downstream tools.

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "divsum/report.hpp"
#include "divsum/selberg.hpp"
#include "divsum/verify.hpp"

namespace divsum::io {

inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kVerifyCsvHeader =
    "identity,n,s_mode,s_value,lhs,rhs,mode,passed,abs_discrepancy";

inline nlohmann::ordered_json to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["identity"] = r.identity;
  j["n"] = r.n;
  j["s_mode"] = r.s.mode_name();
  j["s_value"] = r.s.value_string();
  j["lhs"] = r.lhs.to_string();
  j["rhs"] = r.rhs.to_string();
  j["mode"] = std::string(to_string(r.mode));
  j["passed"] = r.passed;
  j["abs_discrepancy"] = r.abs_discrepancy;
  j["enumeration"] = r.enumeration ? std::string(to_string(*r.enumeration)) : "none";
  return j;
}

inline std::string csv_row(const IdentityReport& r) {
  std::ostringstream out;
  out << r.identity << ',' << r.n << ',' << r.s.mode_name() << ',' << r.s.value_string() << ','
      << r.lhs.to_string() << ',' << r.rhs.to_string() << ',' << to_string(r.mode) << ','
      << (r.passed ? "true" : "false") << ',' << format_double(r.abs_discrepancy);
  return out.str();
}

inline std::string text_line(const IdentityReport& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS " : "FAIL ") << r.identity << " n=" << r.n << " s=" << r.s.value_string()
      << " lhs=" << r.lhs.to_string() << " rhs=" << r.rhs.to_string() << " (" << to_string(r.mode)
      << ")";
  if (!r.passed) out << " discrepancy=" << format_double(r.abs_discrepancy);
  return out.str();
}

inline std::string summary_line(const VerifySummary& s) {
  std::ostringstream out;
  out << "summary: " << s.passed << "/" << s.total << " passed, " << (s.total - s.passed)
      << " failed, max_abs_discrepancy=" << format_double(s.max_discrepancy);
  return out.str();
}

inline void write_reports(std::ostream& os, const std::vector<IdentityReport>& reports,
                          const std::string& format) {
  if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
  } else if (format == "csv") {
    os << kVerifyCsvHeader << '\n';
    for (const auto& r : reports) os << csv_row(r) << '\n';
  } else {
    for (const auto& r : reports) os << text_line(r) << '\n';
  }
}

// Header {n, s, J_n} plus one row {d, mu, J_over_d, lambda} per squarefree d,
// where J_over_d is J_{rad(n)/d}.
inline nlohmann::ordered_json to_json(const SieveWeights& w) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = w.n;
  j["s_mode"] = w.s.mode_name();
  j["s"] = w.s.value_string();
  j["J_n"] = w.J_n().to_string();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [d, lambda] : w.lambda) {
    nlohmann::ordered_json row;
    row["d"] = d;
    row["mu"] = w.mu.at(d);
    row["J_over_d"] = w.J.at(w.radical_of_n / d).to_string();
    row["lambda"] = lambda.to_string();
    rows.push_back(std::move(row));
  }
  j["weights"] = std::move(rows);
  return j;
}

inline void write_weights(std::ostream& os, const SieveWeights& w, const std::string& format) {
  if (format == "json") {
    os << to_json(w).dump(2) << '\n';
  } else if (format == "csv") {
    os << "d,mu,J_over_d,lambda\n";
    for (const auto& [d, lambda] : w.lambda) {
      os << d << ',' << w.mu.at(d) << ',' << w.J.at(w.radical_of_n / d).to_string() << ','
         << lambda.to_string() << '\n';
    }
  } else {
    os << "n=" << w.n << " s=" << w.s.value_string() << " J_n=" << w.J_n().to_string() << '\n';
    for (const auto& [d, lambda] : w.lambda) {
      os << "d=" << d << " mu=" << w.mu.at(d) << " J_over_d=" << w.J.at(w.radical_of_n / d).to_string()
         << " lambda=" << lambda.to_string() << '\n';
    }
  }
}

}  // namespace divsum::io

#pragma once

// Machine-readable reports: the analysis JSON schema, the CSV table emitter
// mirroring the paper-style columns (Field Size, Length, Family Size, Bound,
// Actual), and the bound-satisfaction checks cmd_analyze asserts.

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellseq/analysis.hpp"
#include "ellseq/funcfield.hpp"
#include "ellseq/seqgen.hpp"

namespace ellseq {

using Json = nlohmann::ordered_json;

// Everything the measurement layer needs, whether the family was generated
// in-process or loaded from a dump.
struct AnalysisInput {
  std::uint64_t p = 0;
  int n = 0;
  std::uint64_t q = 0;
  std::int64_t t = 0;
  int d = 0;
  std::uint64_t length = 0;
  FamilyMode mode = FamilyMode::PaperFaithful;
  std::vector<BitSequence> sequences;
};

inline AnalysisInput analysis_input_from_family(const SequenceFamily& fam) {
  AnalysisInput in;
  in.p = fam.curve.field.p;
  in.n = fam.curve.field.n;
  in.q = fam.curve.field.q;
  in.t = fam.trace;
  in.d = fam.place.d;
  in.length = fam.length;
  in.mode = fam.mode;
  in.sequences = fam.sequences;
  return in;
}

inline AnalysisInput analysis_input_from_dump(const DumpData& dump) {
  AnalysisInput in;
  in.p = dump.p;
  in.n = dump.n;
  in.q = 1;
  for (int i = 0; i < dump.n; ++i) in.q *= dump.p;
  in.t = dump.t;
  in.d = dump.d;
  in.length = static_cast<std::uint64_t>(static_cast<std::int64_t>(in.q) + 1 + dump.t);
  in.mode = dump.mode;
  in.sequences = dump.sequences;
  return in;
}

struct AnalysisResult {
  CorrelationReport correlation;
  BalanceReport bal;
  LCReport lc;
  std::uint64_t distinct_count = 0;
  std::vector<std::pair<int, int>> duplicate_pairs;

  std::int64_t b_balance = 0;
  std::int64_t b_correlation = 0;
  std::int64_t b_correlation_corollary = 0;
  Rational b_lc;

  struct Check {
    std::string name;
    bool pass = false;
  };
  std::vector<Check> checks;

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline AnalysisResult analyze(const AnalysisInput& in, bool include_zero_delay) {
  AnalysisResult r;
  r.correlation = family_correlation(in.sequences, include_zero_delay);
  r.bal = balance(in.sequences);
  r.lc = family_lc(in.sequences);
  {
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& s : in.sequences) seen.insert(s.w);
    r.distinct_count = seen.size();
  }
  r.duplicate_pairs = delay0_duplicates(in.sequences);
  r.b_balance = bound_balance(in.q, in.t, in.d);
  r.b_correlation = bound_correlation(in.q, in.t, in.d);
  r.b_correlation_corollary = bound_correlation_corollary(in.q, in.d);
  r.b_lc = bound_lc(in.q, in.t, in.d);

  std::int64_t lc_floor = r.b_lc.ceil();  // may be <= 0: the bound is vacuous then
  r.checks.push_back({"balance_le_bound", r.bal.delta <= r.b_balance});
  r.checks.push_back({"max_auto_le_bound", r.correlation.max_auto <= r.b_correlation});
  r.checks.push_back({"max_cross_nonzero_delay_le_bound",
                      r.correlation.max_cross_nonzero_delay <= r.b_correlation});
  r.checks.push_back({"lc_min_ge_bound", r.lc.lc_min >= lc_floor});
  r.checks.push_back({"lc_methods_agree", r.lc.methods_agree});
  return r;
}

inline Json analysis_report_json(const AnalysisInput& in, const AnalysisResult& r) {
  Json j;
  j["params"] = {{"p", in.p},   {"n", in.n}, {"q", in.q},
                 {"t", in.t},   {"d", in.d}, {"N", in.length},
                 {"mode", family_mode_name(in.mode)}};
  j["bounds"] = {{"balance", r.b_balance},
                 {"correlation", r.b_correlation},
                 {"correlation_corollary", r.b_correlation_corollary},
                 {"lc", r.b_lc.str()}};
  j["measured"] = {{"delta", r.bal.delta},
                   {"max_auto", r.correlation.max_auto},
                   {"max_cross", r.correlation.max_cross},
                   {"max_cross_nonzero_delay", r.correlation.max_cross_nonzero_delay},
                   {"cor", r.correlation.cor},
                   {"lc_min", r.lc.lc_min}};
  j["witnesses"] = {
      {"delta", {{"seq", r.bal.witness}}},
      {"max_auto", {{"seq", r.correlation.auto_seq}, {"delay", r.correlation.auto_delay}}},
      {"max_cross",
       {{"i", r.correlation.cross_i},
        {"j", r.correlation.cross_j},
        {"delay", r.correlation.cross_delay}}},
      {"max_cross_nonzero_delay",
       {{"i", r.correlation.cross_nz_i},
        {"j", r.correlation.cross_nz_j},
        {"delay", r.correlation.cross_nz_delay}}},
      {"lc_min", {{"seq", r.lc.witness}}}};
  j["dedup"] = {{"distinct_count", r.distinct_count},
                {"duplicate_pair_count", r.duplicate_pairs.size()}};
  Json checks = Json::object();
  for (const auto& c : r.checks) checks[c.name] = c.pass;
  j["checks"] = checks;
  return j;
}

// Two blocks with the standard summary-table columns, one row each for
// the balance table and the correlation table.
inline std::string analysis_report_csv(const AnalysisInput& in, const AnalysisResult& r) {
  std::string out;
  out += "# table: balance\n";
  out += "Field Size,Length,Family Size,Bound,Actual\n";
  out += std::to_string(in.q) + "," + std::to_string(in.length) + "," +
         std::to_string(in.sequences.size()) + "," + std::to_string(r.b_balance) + "," +
         std::to_string(r.bal.delta) + "\n";
  out += "# table: correlation\n";
  out += "Field Size,Length,Family Size,Bound,Actual\n";
  std::int64_t actual_cor =
      std::max(r.correlation.max_auto, r.correlation.max_cross_nonzero_delay);
  out += std::to_string(in.q) + "," + std::to_string(in.length) + "," +
         std::to_string(in.sequences.size()) + "," + std::to_string(r.b_correlation) + "," +
         std::to_string(actual_cor) + "\n";
  return out;
}

// Riemann-Roch basis dump: the place descriptor plus one serialized
// rational function per basis element.
inline Json rr_basis_json(const FieldDescriptor& f, const RRBasis& rr) {
  Json j;
  j["place"] = {{"d", rr.place.d},
                {"e", rr.place.e},
                {"kind", place_kind_name(rr.place.kind)},
                {"rep", place_to_string(rr.place)},
                {"m", fq_poly_to_string(f, rr.place.m)}};
  Json basis = Json::array();
  for (const auto& b : rr.basis) basis.push_back(rf_to_string(f, b));
  j["basis"] = basis;
  Json v_basis = Json::array();
  for (const auto& v : rr.v_basis) v_basis.push_back(rf_to_string(f, v));
  j["v_basis"] = v_basis;
  return j;
}

inline Json curve_summary_json(const WeierstrassCurve& c, const GroupSummary& s) {
  Json j;
  j["p"] = c.field.p;
  j["n"] = c.field.n;
  j["q"] = c.field.q;
  j["t"] = s.trace;
  j["N"] = s.n_points;
  j["cyclic"] = s.cyclic;
  if (s.generator && !s.generator->infinity) {
    j["generator"] = {fq_to_string(c.field, s.generator->x),
                      fq_to_string(c.field, s.generator->y)};
  } else {
    j["generator"] = nullptr;
  }
  j["curve"] = curve_to_string(c);
  if (s.sampling_seed != 0) j["cyclicity_sampling_seed"] = s.sampling_seed;
  return j;
}

}  // namespace ellseq

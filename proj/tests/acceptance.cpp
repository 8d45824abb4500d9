// Acceptance suite: one pass/fail line per criterion, exact tolerances
// pinned in code. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ellseq/analysis.hpp"
#include "ellseq/funcfield.hpp"
#include "ellseq/report.hpp"
#include "ellseq/seqgen.hpp"

using namespace ellseq;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << "FAILED[" << what << "] ";
    }
  }
};

constexpr std::uint64_t kAcceptanceSeed = 0xacce97a7ce5eedull;

// ---------------------------------------------------------------- criterion 1
Outcome bound_table_reproduction() {
  Outcome o;
  // Balance table, corollary form 3 floor(2 sqrt q) + 2 at t = -1, d = 2.
  const std::vector<std::pair<std::uint64_t, std::int64_t>> balance_rows = {
      {81, 56}, {243, 95}, {729, 164}, {2187, 281}};
  for (auto [q, expect] : balance_rows)
    o.require(bound_balance_corollary(q, 2) == expect,
              "balance table q=" + std::to_string(q));
  // Correlation table, corollary form 5 floor(2 sqrt q) + 4.
  const std::vector<std::pair<std::uint64_t, std::int64_t>> cor_rows = {
      {81, 94}, {243, 159}, {729, 274}, {2187, 469}};
  for (auto [q, expect] : cor_rows)
    o.require(bound_correlation_corollary(q, 2) == expect,
              "correlation table q=" + std::to_string(q));
  // Positive-trace table, full bound including |t|.
  o.require(bound_correlation(81, 9, 2) == 103, "tab4 q=81");
  o.require(bound_correlation(243, 27, 2) == 186, "tab4 q=243");
  // The reference table lists 251 for the q = 729 row; the formula gives
  // 301. The mismatch is flagged, not reproduced.
  std::int64_t formula_729 = bound_correlation(729, 27, 2);
  o.require(formula_729 == 301, "tab4 q=729 formula value");
  o.require(formula_729 != 251, "tab4 q=729 flagged as mismatch");
  o.detail << "bound columns reproduced; q=729 row flagged (formula 301 vs listed 251)";
  return o;
}

// ---------------------------------------------------------------- criterion 2
Outcome config_a() {
  Outcome o;
  auto [curve, summary] = search_curve(3, 4, -1);
  Place place = find_place(curve, 2);
  SequenceFamily fam = generate_family(curve, place, FamilyMode::PaperFaithful);
  o.require(fam.length == 81, "length 81");
  o.require(fam.size() == 80, "size 80");
  BalanceReport bal = balance(fam.sequences);
  o.require(bal.delta <= 56, "delta <= 56");
  o.require(bal.delta < 56, "delta strictly below bound");
  CorrelationReport cor = family_correlation(fam.sequences, true);
  o.require(cor.max_auto <= 95, "max_auto <= 95");
  o.require(cor.max_cross_nonzero_delay <= 95, "max_cross_nonzero_delay <= 95");
  o.require(cor.max_auto < 95 && cor.max_cross_nonzero_delay < 95,
            "nonzero-delay correlation strictly below bound");
  LCReport lc = family_lc(fam.sequences);
  o.require(lc.methods_agree, "LC dual-method agreement on all 80");
  bool all_lc_positive = true;
  for (int l : lc.per_sequence) all_lc_positive = all_lc_positive && l >= 1;
  o.require(all_lc_positive, "every LC >= 1");
  o.detail << "measured delta=" << bal.delta << " max_auto=" << cor.max_auto
           << " max_cross_nonzero=" << cor.max_cross_nonzero_delay << " lc_min=" << lc.lc_min
           << " (reference actuals 17/43 came from unspecified generation choices)";
  return o;
}

// ---------------------------------------------------------------- criterion 3
Outcome config_b() {
  Outcome o;
  auto [curve, summary] = search_curve(3, 4, 9);
  Place place = find_place(curve, 2);
  SequenceFamily fam = generate_family(curve, place, FamilyMode::PaperFaithful);
  o.require(fam.length == 91, "length 91");
  o.require(fam.size() == 80, "size 80");
  CorrelationReport cor = family_correlation(fam.sequences, true);
  o.require(cor.max_auto <= 103, "max_auto <= 103");
  o.require(cor.max_cross_nonzero_delay <= 103, "max_cross_nonzero_delay <= 103");

  // Delay-0 duplicate audit: exactly the square-scaling pairs. Square
  // classes have (q-1)/2 = 40 members, so 2 * C(40,2) = 1560 pairs.
  std::vector<std::pair<int, int>> audited = delay0_duplicates(fam.sequences);
  const FieldDescriptor& f = curve.field;
  std::set<std::pair<int, int>> predicted;
  for (std::size_t i = 0; i < fam.coeff_vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.coeff_vectors.size(); ++j) {
      // proportional with square ratio?
      FqElem ci = fq_from_index(f, fam.coeff_vectors[i][0]);
      FqElem cj = fq_from_index(f, fam.coeff_vectors[j][0]);
      FqElem ratio = fq_mul(f, cj, fq_inv(f, ci));
      if (is_square(f, ratio))
        predicted.insert({static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::set<std::pair<int, int>> audited_set(audited.begin(), audited.end());
  o.require(audited_set == predicted, "duplicate pairs are exactly the square-scaling pairs");
  o.require(audited_set.size() == 1560, "1560 duplicate pairs from orbit size 40");
  o.detail << "max_auto=" << cor.max_auto
           << " max_cross_nonzero=" << cor.max_cross_nonzero_delay
           << " duplicate_pairs=" << audited_set.size();
  return o;
}

// ---------------------------------------------------------------- criterion 4
Outcome config_c() {
  Outcome o;
  auto [curve, summary] = search_curve(3, 5, -1);
  Place place = find_place(curve, 2);
  SequenceFamily fam = generate_family(curve, place, FamilyMode::PaperFaithful);
  o.require(fam.length == 243, "length 243");
  o.require(fam.size() == 242, "size 242");
  LCReport lc = family_lc(fam.sequences);
  Rational b = bound_lc(243, -1, 2);
  o.require(b.ceil() == 3, "ceil(147/64) = 3");
  o.require(lc.lc_min >= 3, "lc_min >= 3");
  o.require(lc.methods_agree, "LC dual-method agreement");
  BalanceReport bal = balance(fam.sequences);
  o.require(bal.delta <= 95, "balance <= 95");
  o.detail << "lc_min=" << lc.lc_min << " delta=" << bal.delta;
  return o;
}

// ---------------------------------------------------------------- criterion 5
Outcome place_count_oracle() {
  Outcome o;
  std::uint64_t curves_checked = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    FieldDescriptor f = make_field(p, n);
    EnumerationContext ctx2 = make_enumeration_context(f, 2);
    EnumerationContext ctx3 = make_enumeration_context(f, 3);
    for (std::uint64_t i6 = 0; i6 < f.q; ++i6)
      for (std::uint64_t i4 = 0; i4 < f.q; ++i4)
        for (std::uint64_t i2 = 0; i2 < f.q; ++i2) {
          WeierstrassCurve c;
          try {
            c = make_curve(f, fq_from_index(f, i2), fq_from_index(f, i4),
                           fq_from_index(f, i6));
          } catch (const SingularCurveError&) {
            continue;
          }
          ++curves_checked;
          auto n1 = static_cast<std::int64_t>(
              count_points_view(base_view(c), &ctx2.base_table));
          std::int64_t t = n1 - static_cast<std::int64_t>(f.q) - 1;
          std::int64_t qq = static_cast<std::int64_t>(f.q);
          std::int64_t b2_formula = places_count_formula(f.q, t, 2);
          std::int64_t b3_formula = places_count_formula(f.q, t, 3);
          if (b2_formula != places_count_enumerate(c, 2, ctx2) ||
              b3_formula != places_count_enumerate(c, 3, ctx3) ||
              b2_formula != (qq * qq + qq - t * t - t) / 2 ||
              b3_formula != (qq * qq * qq - qq + t * t * t - 3 * qq * t - t) / 3) {
            o.require(false, "q=" + std::to_string(f.q) + " curve " + curve_to_string(c));
            return o;
          }
        }
  }
  o.detail << curves_checked << " nonsingular curves, d in {2,3}: formula = enumeration = "
           << "closed form";
  return o;
}

// ---------------------------------------------------------------- criterion 6
Outcome serre_sweep() {
  Outcome o;
  std::uint64_t exhaustive = 0, sampled = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    FieldDescriptor f = make_field(p, n);
    QrTable table = make_qr_table(f);
    for (std::uint64_t i6 = 0; i6 < f.q; ++i6)
      for (std::uint64_t i4 = 0; i4 < f.q; ++i4)
        for (std::uint64_t i2 = 0; i2 < f.q; ++i2) {
          WeierstrassCurve c;
          try {
            c = make_curve(f, fq_from_index(f, i2), fq_from_index(f, i4),
                           fq_from_index(f, i6));
          } catch (const SingularCurveError&) {
            continue;
          }
          ++exhaustive;
          auto n_pts = static_cast<std::int64_t>(count_points_view(base_view(c), &table));
          if (std::abs(n_pts - static_cast<std::int64_t>(f.q) - 1) > floor_two_sqrt(f.q)) {
            o.require(false, "Serre bound q=" + std::to_string(f.q));
            return o;
          }
        }
  }
  std::mt19937_64 rng(kAcceptanceSeed);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {5, 2}, {3, 3}, {7, 2}, {3, 4}}) {
    FieldDescriptor f = make_field(p, n);
    QrTable table = make_qr_table(f);
    std::uint64_t done = 0;
    while (done < 1000) {
      WeierstrassCurve c;
      try {
        c = make_curve(f, fq_from_index(f, rng() % f.q), fq_from_index(f, rng() % f.q),
                       fq_from_index(f, rng() % f.q));
      } catch (const SingularCurveError&) {
        continue;
      }
      ++done;
      ++sampled;
      auto n_pts = static_cast<std::int64_t>(count_points_view(base_view(c), &table));
      if (std::abs(n_pts - static_cast<std::int64_t>(f.q) - 1) > floor_two_sqrt(f.q)) {
        o.require(false, "Serre bound sampled q=" + std::to_string(f.q));
        return o;
      }
    }
  }
  o.detail << exhaustive << " curves exhaustive (q <= 13), " << sampled
           << " sampled (q in {25,27,49,81})";
  return o;
}

// ---------------------------------------------------------------- criterion 7
Outcome eta_properties() {
  Outcome o;
  std::uint64_t pairs = 0;
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {3, 1}, {5, 1}, {7, 1}, {3, 2}, {3, 3}, {3, 4}}) {
    FieldDescriptor f = make_field(p, n);
    o.require(eta(f, fq_zero(f)) == 0, "eta(0) = 0 at q=" + std::to_string(f.q));
    std::uint64_t squares = 0;
    for (std::uint64_t i = 1; i < f.q; ++i)
      if (is_square(f, fq_from_index(f, i))) ++squares;
    o.require(squares == (f.q - 1) / 2, "square count at q=" + std::to_string(f.q));
    for (std::uint64_t i = 1; i < f.q && o.pass; ++i) {
      FqElem a = fq_from_index(f, i);
      int ea = eta(f, a);
      for (std::uint64_t j = 1; j < f.q; ++j) {
        FqElem b = fq_from_index(f, j);
        ++pairs;
        if (eta(f, fq_mul(f, a, b)) != (ea ^ eta(f, b))) {
          o.require(false, "multiplicativity at q=" + std::to_string(f.q));
          break;
        }
      }
    }
  }
  o.detail << pairs << " unit pairs across q in {3,5,7,9,27,81}";
  return o;
}

// ---------------------------------------------------------------- criterion 8
WeierstrassCurve find_two_torsion_curve(const FieldDescriptor& f) {
  QrTable table = make_qr_table(f);
  for (std::uint64_t i6 = 0; i6 < f.q; ++i6)
    for (std::uint64_t i4 = 0; i4 < f.q; ++i4)
      for (std::uint64_t i2 = 0; i2 < f.q; ++i2) {
        WeierstrassCurve c;
        try {
          c = make_curve(f, fq_from_index(f, i2), fq_from_index(f, i4), fq_from_index(f, i6));
        } catch (const SingularCurveError&) {
          continue;
        }
        bool has_root = false;
        for (std::uint64_t xi = 0; xi < f.q && !has_root; ++xi)
          has_root = fq_is_zero(f, curve_rhs(base_view(c), fq_from_index(f, xi)));
        if (has_root) continue;
        if (count_points_view(base_view(c), &table) % 3 == 0) continue;
        return c;
      }
  throw std::runtime_error("no two-torsion-carrying curve found");
}

Outcome riemann_roch_certification() {
  Outcome o;
  struct Cfg {
    std::uint64_t p;
    int n;
    std::int64_t t;
    int d;
    PlaceKind kind;
  };
  std::vector<Cfg> cfgs;
  // SPLIT_X and FOLDED_X at d = 2 over q in {5, 7, 9, 27, 81}
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {5, 1}, {7, 1}, {3, 2}, {3, 3}, {3, 4}}) {
    cfgs.push_back({p, n, 1, 2, PlaceKind::SplitX});
    cfgs.push_back({p, n, 1, 2, PlaceKind::FoldedX});
  }
  // SPLIT_X at d = 3
  cfgs.push_back({5, 1, 1, 3, PlaceKind::SplitX});
  cfgs.push_back({7, 1, -1, 3, PlaceKind::SplitX});
  cfgs.push_back({3, 2, 1, 3, PlaceKind::SplitX});
  cfgs.push_back({3, 3, 1, 3, PlaceKind::SplitX});
  cfgs.push_back({3, 4, -5, 3, PlaceKind::SplitX});
  // SPLIT_X at d = 5 (big fields 5^5, 7^5, 3^10)
  cfgs.push_back({5, 1, 1, 5, PlaceKind::SplitX});
  cfgs.push_back({7, 1, 1, 5, PlaceKind::SplitX});
  cfgs.push_back({3, 2, 1, 5, PlaceKind::SplitX});

  int configs_done = 0;
  std::set<PlaceKind> kinds_seen;
  auto check_one = [&](const WeierstrassCurve& curve, const Place& place,
                       const std::string& label) {
    RRBasis rr = rr_basis(curve, place);
    o.require(static_cast<int>(rr.basis.size()) == place.d, label + " dim d");
    o.require(static_cast<int>(rr.v_basis.size()) == place.d - 1, label + " dim V");
    BasisReport rep = verify_basis(curve, rr);
    o.require(rep.all_pass(), label + " verify_basis");
    for (const auto& vf : rr.v_basis)
      o.require(fq_is_zero(curve.field, evaluate(curve, vf, CurvePoint::at_infinity())),
                label + " v(O) = 0");
    std::vector<CurvePoint> pts = enumerate_points_view(base_view(curve));
    try {
      for (const auto& fn : rr.basis)
        for (const CurvePoint& pt : pts) (void)evaluate(curve, fn, pt);
      for (const auto& fn : rr.v_basis)
        for (const CurvePoint& pt : pts) (void)evaluate(curve, fn, pt);
    } catch (const PoleError&) {
      o.require(false, label + " pole-free evaluation");
    }
    ++configs_done;
    kinds_seen.insert(place.kind);
  };

  for (const Cfg& cfg : cfgs) {
    auto [curve, summary] = search_curve(cfg.p, cfg.n, cfg.t);
    std::string label = "q=" + std::to_string(curve.field.q) + ",d=" + std::to_string(cfg.d) +
                        "," + place_kind_name(cfg.kind);
    Place place = find_place(curve, cfg.d, kDefaultMaxQ, cfg.kind);
    o.require(place.kind == cfg.kind, label + " kind");
    o.require(std::gcd<std::uint64_t, std::uint64_t>(cfg.d, summary.n_points) == 1,
              label + " gcd");
    check_one(curve, place, label);
  }
  // TWO_TORSION at d = 3 over q in {5, 7, 9, 27}
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {5, 1}, {7, 1}, {3, 2}, {3, 3}}) {
    FieldDescriptor f = make_field(p, n);
    WeierstrassCurve curve = find_two_torsion_curve(f);
    Place place = find_place(curve, 3, kDefaultMaxQ, PlaceKind::TwoTorsion);
    std::string label = "q=" + std::to_string(f.q) + ",d=3,TWO_TORSION";
    o.require(place.kind == PlaceKind::TwoTorsion, label + " kind");
    check_one(curve, place, label);
  }

  o.require(configs_done >= 20, ">= 20 configurations");
  o.require(kinds_seen.size() == 3, "all three place kinds covered");
  o.detail << configs_done << " configurations across q in {5,7,9,27,81}, d in {2,3,5}, "
           << kinds_seen.size() << " place kinds";
  return o;
}

// ---------------------------------------------------------------- criterion 9
Outcome shift_covariance() {
  Outcome o;
  auto [curve, summary] = search_curve(3, 4, -1);
  Place place = find_place(curve, 2);
  RRBasis rr = rr_basis(curve, place);
  CurveView v = base_view(curve);
  const FieldDescriptor& f = curve.field;
  auto coeffs = enumerate_v_coefficients(f, static_cast<int>(rr.v_basis.size()));
  std::mt19937_64 rng(kAcceptanceSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& cv = coeffs[rng() % coeffs.size()];
    std::uint64_t u = rng() % summary.n_points;
    RationalFunction z = combine_v(f, rr.v_basis, cv);
    BitSequence base = generate_sequence(curve, *summary.generator, z);
    CurvePoint start = scalar_mul(v, u, *summary.generator);
    BitSequence shifted = generate_sequence(curve, *summary.generator, z, start);
    for (int j = 0; j < base.n; ++j) {
      if (shifted.get(j) != base.get(static_cast<int>((j + u) % base.n))) {
        o.require(false, "shift mismatch at u=" + std::to_string(u));
        return o;
      }
    }
  }
  o.detail << "50 random (z, u) pairs: start-point translation equals cyclic shift";
  return o;
}

// --------------------------------------------------------------- criterion 10
Outcome determinism_and_kernels() {
  Outcome o;
  // Byte-identical dumps from two independent generation runs.
  auto make_dump = [] {
    auto [curve, summary] = search_curve(3, 4, -1);
    Place place = find_place(curve, 2);
    return dump_family(generate_family(curve, place, FamilyMode::PaperFaithful));
  };
  std::string d1 = make_dump();
  std::string d2 = make_dump();
  o.require(d1 == d2, "byte-identical dumps");

  // Packed vs naive correlation kernels on 1000 random pairs.
  std::mt19937_64 rng(kAcceptanceSeed);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 256);
    BitSequence a = BitSequence::zeros(n), b = BitSequence::zeros(n);
    for (int j = 0; j < n; ++j) {
      if (rng() & 1) a.set(j, 1);
      if (rng() & 1) b.set(j, 1);
    }
    int t = static_cast<int>(rng() % n);
    if (cross_correlation(a, b, t) != naive_cross_correlation(a, b, t)) {
      o.require(false, "kernel mismatch at trial " + std::to_string(trial));
      return o;
    }
  }
  o.detail << "dumps byte-identical; packed kernel = naive reference on 1000 pairs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const std::vector<Criterion> criteria = {
      {1, "bound-table reproduction", bound_table_reproduction},
      {2, "config A (q=81, t=-1, d=2)", config_a},
      {3, "config B (q=81, t=9, d=2)", config_b},
      {4, "config C (q=243, t=-1, d=2)", config_c},
      {5, "place-count oracle", place_count_oracle},
      {6, "Serre-bound sweep", serre_sweep},
      {7, "eta properties", eta_properties},
      {8, "Riemann-Roch certification", riemann_roch_certification},
      {9, "shift covariance", shift_covariance},
      {10, "determinism and kernel agreement", determinism_and_kernels},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << " (" << c.name
              << "): " << o.detail.str() << " [" << secs << " s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

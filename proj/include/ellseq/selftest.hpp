#pragma once

// Property suites behind the `verify` subcommand: eta multiplicativity,
// the Serre bound sweep, place-count dual methods, linear-complexity dual
// methods, and Riemann-Roch basis certification. The quick scope keeps to
// exhaustive q <= 13 material; full adds the sampled large-q sweeps and the
// q = 243 family check.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellseq/analysis.hpp"
#include "ellseq/funcfield.hpp"
#include "ellseq/seqgen.hpp"

namespace ellseq {

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

enum class VerifyScope { Quick, Full };

namespace selftest {

inline constexpr std::uint64_t kSelftestSeed = 0x5eedf00dcafe1234ull;

inline PropertyResult eta_properties(VerifyScope scope) {
  PropertyResult r;
  r.name = "eta-properties";
  std::vector<std::pair<std::uint64_t, int>> fields = {
      {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}};
  if (scope == VerifyScope::Full) {
    fields.push_back({3, 3});
    fields.push_back({3, 4});
  }
  std::ostringstream detail;
  for (auto [p, n] : fields) {
    FieldDescriptor f = make_field(p, n);
    QrTable table = make_qr_table(f);
    // eta(0) = 0 and table/Euler agreement
    if (eta(f, fq_zero(f)) != 0) {
      r.pass = false;
      detail << "eta(0) != 0 at q=" << f.q << "; ";
    }
    std::uint64_t squares = 0;
    for (std::uint64_t i = 1; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      bool sq = is_square(f, a);
      if (sq != (table.chi[i] > 0)) {
        r.pass = false;
        detail << "table/Euler disagree at q=" << f.q << " i=" << i << "; ";
      }
      if (sq) ++squares;
    }
    if (squares != (f.q - 1) / 2) {
      r.pass = false;
      detail << "square count wrong at q=" << f.q << "; ";
    }
    // multiplicativity on F_q^*
    for (std::uint64_t i = 1; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      for (std::uint64_t j = 1; j < f.q; ++j) {
        FqElem b = fq_from_index(f, j);
        if (eta(f, fq_mul(f, a, b)) != (eta(f, a) ^ eta(f, b))) {
          r.pass = false;
          detail << "multiplicativity fails at q=" << f.q << "; ";
          break;
        }
      }
    }
  }
  r.detail = detail.str().empty() ? "eta multiplicative, square counts exact" : detail.str();
  return r;
}

inline PropertyResult serre_sweep(VerifyScope scope) {
  PropertyResult r;
  r.name = "serre-bound-sweep";
  std::ostringstream detail;
  std::uint64_t curves = 0;
  auto check_field = [&](const FieldDescriptor& f, const QrTable& table, const FqElem& a2,
                         const FqElem& a4, const FqElem& a6) {
    WeierstrassCurve c;
    try {
      c = make_curve(f, a2, a4, a6);
    } catch (const SingularCurveError&) {
      return;
    }
    ++curves;
    auto n = static_cast<std::int64_t>(count_points_view(base_view(c), &table));
    std::int64_t dev = n - static_cast<std::int64_t>(f.q) - 1;
    if (std::abs(dev) > floor_two_sqrt(f.q)) {
      r.pass = false;
      detail << "Serre bound violated over q=" << f.q << " curve " << curve_to_string(c)
             << "; ";
    }
  };
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    FieldDescriptor f = make_field(p, 1);
    QrTable table = make_qr_table(f);
    for (std::uint64_t i6 = 0; i6 < f.q; ++i6)
      for (std::uint64_t i4 = 0; i4 < f.q; ++i4)
        for (std::uint64_t i2 = 0; i2 < f.q; ++i2)
          check_field(f, table, fq_from_index(f, i2), fq_from_index(f, i4),
                      fq_from_index(f, i6));
  }
  {
    FieldDescriptor f9 = make_field(3, 2);
    QrTable table = make_qr_table(f9);
    for (std::uint64_t i6 = 0; i6 < f9.q; ++i6)
      for (std::uint64_t i4 = 0; i4 < f9.q; ++i4)
        for (std::uint64_t i2 = 0; i2 < f9.q; ++i2)
          check_field(f9, table, fq_from_index(f9, i2), fq_from_index(f9, i4),
                      fq_from_index(f9, i6));
  }
  if (scope == VerifyScope::Full) {
    std::mt19937_64 rng(kSelftestSeed);
    for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{5, 2}, {3, 3}, {7, 2}, {3, 4}}) {
      FieldDescriptor f = make_field(p, n);
      QrTable table = make_qr_table(f);
      for (int k = 0; k < 1000; ++k)
        check_field(f, table, fq_from_index(f, rng() % f.q), fq_from_index(f, rng() % f.q),
                    fq_from_index(f, rng() % f.q));
    }
  }
  if (r.pass) {
    detail << curves << " nonsingular curves within the Serre bound";
  }
  r.detail = detail.str();
  return r;
}

inline PropertyResult places_dual_method(VerifyScope scope) {
  PropertyResult r;
  r.name = "place-count-dual-method";
  std::ostringstream detail;
  std::vector<std::pair<std::uint64_t, int>> fields = {{3, 1}, {5, 1}, {7, 1}};
  if (scope == VerifyScope::Full) {
    fields.push_back({3, 2});
    fields.push_back({11, 1});
    fields.push_back({13, 1});
  }
  std::uint64_t checked = 0;
  for (auto [p, n] : fields) {
    FieldDescriptor f = make_field(p, n);
    for (int d : {2, 3}) {
      ExtDescriptor ext = make_ext(f, d);
      QrTable table = ext.big.q <= kQrTableLimit ? make_qr_table(ext.big) : QrTable{};
      QrTable base_table = make_qr_table(f);
      for (std::uint64_t i6 = 0; i6 < f.q && r.pass; ++i6)
        for (std::uint64_t i4 = 0; i4 < f.q && r.pass; ++i4)
          for (std::uint64_t i2 = 0; i2 < f.q && r.pass; ++i2) {
            WeierstrassCurve c;
            try {
              c = make_curve(f, fq_from_index(f, i2), fq_from_index(f, i4),
                             fq_from_index(f, i6));
            } catch (const SingularCurveError&) {
              continue;
            }
            auto n1 = static_cast<std::int64_t>(count_points_view(base_view(c), &base_table));
            std::int64_t t = n1 - static_cast<std::int64_t>(f.q) - 1;
            auto nd = static_cast<std::int64_t>(count_points_view(ext_view(c, ext), &table));
            std::int64_t enumerated = (nd - n1) / d;  // d prime here
            if ((nd - n1) % d != 0 || enumerated != places_count_formula(f.q, t, d)) {
              r.pass = false;
              detail << "B_" << d << " mismatch over q=" << f.q << " curve "
                     << curve_to_string(c) << "; ";
            }
            ++checked;
          }
    }
  }
  if (r.pass) detail << checked << " (curve, d) pairs: formula equals enumeration";
  r.detail = detail.str();
  return r;
}

inline PropertyResult lc_dual_method(VerifyScope scope) {
  PropertyResult r;
  r.name = "linear-complexity-dual-method";
  std::ostringstream detail;
  std::mt19937_64 rng(kSelftestSeed);
  int checked = 0;
  for (int len : {16, 31, 63, 64, 65, 101, 127}) {
    for (int k = 0; k < 40; ++k) {
      BitSequence s = BitSequence::zeros(len);
      for (int j = 0; j < len; ++j)
        if (rng() & 1) s.set(j, 1);
      if (lc_gcd_method(s) != lc_berlekamp_massey(s)) {
        r.pass = false;
        detail << "LC methods disagree at len=" << len << "; ";
      }
      ++checked;
    }
  }
  if (scope == VerifyScope::Full) {
    auto [c, s] = search_curve(3, 5, -1);
    Place pl = find_place(c, 2);
    SequenceFamily fam = generate_family(c, pl, FamilyMode::PaperFaithful);
    LCReport rep = family_lc(fam.sequences);
    checked += static_cast<int>(fam.size());
    if (!rep.methods_agree) {
      r.pass = false;
      detail << "LC methods disagree on the q=243 family; ";
    }
    if (rep.lc_min < bound_lc(243, -1, 2).ceil()) {
      r.pass = false;
      detail << "q=243 family lc_min " << rep.lc_min << " below bound; ";
    }
  }
  if (r.pass) detail << checked << " sequences: gcd method equals Berlekamp-Massey";
  r.detail = detail.str();
  return r;
}

inline PropertyResult basis_certification(VerifyScope scope) {
  PropertyResult r;
  r.name = "riemann-roch-certification";
  std::ostringstream detail;
  struct Cfg {
    std::uint64_t p;
    int n;
    std::int64_t t;
    int d;
  };
  std::vector<Cfg> cfgs = {{5, 1, 1, 2}, {5, 1, 1, 3}, {7, 1, -1, 2}, {7, 1, -1, 3}};
  if (scope == VerifyScope::Full) {
    cfgs.push_back({3, 2, 1, 2});
    cfgs.push_back({3, 2, 1, 3});
    cfgs.push_back({5, 1, 1, 5});
    cfgs.push_back({3, 3, 1, 2});
  }
  int checked = 0;
  for (const Cfg& cfg : cfgs) {
    auto [c, s] = search_curve(cfg.p, cfg.n, cfg.t);
    Place pl = find_place(c, cfg.d);
    RRBasis rr = rr_basis(c, pl);
    BasisReport rep = verify_basis(c, rr);
    ++checked;
    if (!rep.all_pass()) {
      r.pass = false;
      detail << "certification failed at q=" << c.field.q << " d=" << cfg.d << " kind="
             << place_kind_name(pl.kind) << "; ";
    }
    for (const auto& vfun : rr.v_basis) {
      for (const CurvePoint& pt : enumerate_points_view(base_view(c)))
        (void)evaluate(c, vfun, pt);  // must be pole-free everywhere
    }
  }
  if (r.pass) detail << checked << " (curve, place) configurations certified";
  r.detail = detail.str();
  return r;
}

}  // namespace selftest

inline std::vector<PropertyResult> run_selftest(VerifyScope scope) {
  std::vector<PropertyResult> out;
  out.push_back(selftest::eta_properties(scope));
  out.push_back(selftest::serre_sweep(scope));
  out.push_back(selftest::places_dual_method(scope));
  out.push_back(selftest::lc_dual_method(scope));
  out.push_back(selftest::basis_certification(scope));
  return out;
}

}  // namespace ellseq

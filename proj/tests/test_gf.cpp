#include <gtest/gtest.h>

#include <set>

#include "ellseq/ext.hpp"
#include "ellseq/gf.hpp"

using namespace ellseq;

namespace {

// Brute-force irreducibility oracle: trial division by every monic divisor
// of degree 1 .. deg/2. Independent of the Rabin test in the library.
bool irreducible_by_trial_division(const Fp& fp, const FpPoly& f) {
  int deg = fp_poly_deg(f);
  if (deg < 1) return false;
  for (int dd = 1; 2 * dd <= deg; ++dd) {
    std::uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= fp.p;
    for (std::uint64_t r = 0; r < count; ++r) {
      FpPoly div(dd + 1, 0);
      div[dd] = 1;
      std::uint64_t v = r;
      for (int i = 0; i < dd; ++i) {
        div[i] = static_cast<std::uint32_t>(v % fp.p);
        v /= fp.p;
      }
      if (fp_poly_mod(fp, f, div).empty()) return false;
    }
  }
  return true;
}

std::set<std::uint64_t> square_indexes(const FieldDescriptor& f) {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = 0; i < f.q; ++i) {
    FqElem b = fq_from_index(f, i);
    s.insert(fq_index(f, fq_mul(f, b, b)));
  }
  return s;
}

}  // namespace

TEST(MakeField, PrimeFieldAndF81) {
  FieldDescriptor f3 = make_field(3, 1);
  EXPECT_EQ(f3.q, 3u);
  EXPECT_EQ(fp_poly_deg(f3.modulus), 1);
  FieldDescriptor f81 = make_field(3, 4);
  EXPECT_EQ(f81.q, 81u);
  EXPECT_EQ(fp_poly_deg(f81.modulus), 4);
}

TEST(MakeField, RejectsBadParameters) {
  EXPECT_THROW(make_field(2, 3), std::invalid_argument);   // even p
  EXPECT_THROW(make_field(9, 1), std::invalid_argument);   // composite p
  EXPECT_THROW(make_field(15, 1), std::invalid_argument);  // composite odd p
  EXPECT_THROW(make_field(3, 0), std::invalid_argument);
  EXPECT_THROW(make_field(3, 13), std::invalid_argument);  // above 3^12 default limit
  EXPECT_NO_THROW(make_field(3, 13, 3ull * 531441));       // raised limit
}

TEST(MakeField, ModulusIsLexSmallestIrreducible) {
  // Oracle: first irreducible by trial division, scanning monic polynomials
  // in the same low-degree-first lexicographic order.
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{
           {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}, {5, 3}}) {
    FieldDescriptor f = make_field(p, n);
    Fp fp{p};
    EXPECT_TRUE(irreducible_by_trial_division(fp, f.modulus));
    std::uint64_t total = f.q;
    bool before_found = false;
    for (std::uint64_t r = 0; r < total; ++r) {
      FpPoly cand = detail::monic_poly_from_rank(r, p, n);
      if (cand == f.modulus) break;
      if (irreducible_by_trial_division(fp, cand)) {
        before_found = true;
        break;
      }
    }
    EXPECT_FALSE(before_found) << "p=" << p << " n=" << n;
  }
}

TEST(MakeField, RabinAgreesWithTrialDivision) {
  Fp fp{3};
  for (std::uint64_t r = 0; r < 81; ++r) {
    FpPoly cand = detail::monic_poly_from_rank(r, 3, 4);
    EXPECT_EQ(fp_poly_irreducible(fp, cand), irreducible_by_trial_division(fp, cand))
        << fp_poly_to_string(cand);
  }
}

TEST(FieldAxioms, ExhaustiveUpTo27) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {5, 1}, {3, 2}, {3, 3}}) {
    FieldDescriptor f = make_field(p, n);
    FqElem one = fq_one(f);
    for (std::uint64_t i = 0; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      if (i != 0) {
        EXPECT_EQ(fq_mul(f, a, fq_inv(f, a)), one);
      }
      for (std::uint64_t j = 0; j < f.q; ++j) {
        FqElem b = fq_from_index(f, j);
        EXPECT_EQ(fq_mul(f, a, b), fq_mul(f, b, a));
        for (std::uint64_t k = 0; k < f.q; ++k) {
          FqElem c = fq_from_index(f, k);
          EXPECT_EQ(fq_mul(f, fq_mul(f, a, b), c), fq_mul(f, a, fq_mul(f, b, c)));
          EXPECT_EQ(fq_mul(f, a, fq_add(f, b, c)),
                    fq_add(f, fq_mul(f, a, b), fq_mul(f, a, c)));
        }
      }
    }
  }
}

TEST(FieldAxioms, InverseInF7ByHand) {
  FieldDescriptor f7 = make_field(7, 1);
  EXPECT_EQ(fq_inv(f7, fq_from_u64(f7, 3)), fq_from_u64(f7, 5));  // 3 * 5 = 15 = 1
  EXPECT_THROW(fq_inv(f7, fq_zero(f7)), std::domain_error);
}

TEST(Eta, DefinitionalCases) {
  FieldDescriptor f7 = make_field(7, 1);
  EXPECT_EQ(eta(f7, fq_zero(f7)), 0);
  EXPECT_EQ(eta(f7, fq_one(f7)), 0);
  // Squares in F_7 are {0, 1, 2, 4} by enumeration, so eta(3) = 1.
  std::set<std::uint64_t> sq = square_indexes(f7);
  EXPECT_EQ(sq, (std::set<std::uint64_t>{0, 1, 2, 4}));
  EXPECT_EQ(eta(f7, fq_from_u64(f7, 3)), 1);

  FieldDescriptor f3 = make_field(3, 1);
  EXPECT_FALSE(is_square(f3, fq_from_u64(f3, 2)));
  EXPECT_TRUE(is_square(f3, fq_zero(f3)));

  FieldDescriptor f9 = make_field(3, 2);
  EXPECT_EQ(square_indexes(f9).size(), 5u);  // 0 plus (q-1)/2 nonzero squares
}

TEST(Eta, AgreesWithEnumerationOracle) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {7, 1}, {3, 2}, {3, 3}}) {
    FieldDescriptor f = make_field(p, n);
    std::set<std::uint64_t> sq = square_indexes(f);
    for (std::uint64_t i = 0; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      EXPECT_EQ(is_square(f, a), sq.count(i) > 0);
      EXPECT_EQ(eta(f, a) == 0, is_square(f, a));
    }
    std::uint64_t nonzero_squares = sq.size() - 1;
    EXPECT_EQ(nonzero_squares, (f.q - 1) / 2);
  }
}

TEST(Eta, MultiplicativeOnUnits) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 1}, {5, 1}, {3, 2}, {3, 3}}) {
    FieldDescriptor f = make_field(p, n);
    for (std::uint64_t i = 1; i < f.q; ++i)
      for (std::uint64_t j = 1; j < f.q; ++j) {
        FqElem a = fq_from_index(f, i), b = fq_from_index(f, j);
        EXPECT_EQ(eta(f, fq_mul(f, a, b)), eta(f, a) ^ eta(f, b));
      }
  }
}

TEST(Eta, TableAgreesWithEuler) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 4}, {5, 2}, {13, 1}}) {
    FieldDescriptor f = make_field(p, n);
    QrTable t = make_qr_table(f);
    for (std::uint64_t i = 0; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      int chi = fq_is_zero(f, a) ? 0 : (is_square(f, a) ? 1 : -1);
      EXPECT_EQ(chi, t.chi[i]);
    }
  }
}

TEST(Sqrt, DeterministicSmallestRoot) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, int>>{{3, 4}, {5, 2}, {7, 1}, {13, 1}}) {
    FieldDescriptor f = make_field(p, n);
    QrTable t = make_qr_table(f);
    for (std::uint64_t i = 0; i < f.q; ++i) {
      FqElem a = fq_from_index(f, i);
      auto root = fq_sqrt(f, a);
      if (t.chi[i] < 0) {
        EXPECT_FALSE(root.has_value());
        continue;
      }
      ASSERT_TRUE(root.has_value());
      EXPECT_EQ(fq_mul(f, *root, *root), a);
      EXPECT_EQ(fq_index(f, *root), t.sqrt_idx[i]);  // table keeps the smaller root
    }
  }
}

TEST(Enumeration, IndexRoundTrip) {
  FieldDescriptor f = make_field(3, 4);
  for (std::uint64_t i = 0; i < f.q; ++i) EXPECT_EQ(fq_index(f, fq_from_index(f, i)), i);
  EXPECT_THROW(fq_from_index(f, f.q), std::invalid_argument);
}

TEST(Ext, EmbeddingIsFieldHomomorphism) {
  for (auto [p, n, d] : std::vector<std::tuple<std::uint64_t, int, int>>{
           {3, 2, 2}, {3, 1, 3}, {5, 1, 2}, {3, 2, 3}}) {
    FieldDescriptor base = make_field(p, n);
    ExtDescriptor ext = make_ext(base, d);
    EXPECT_EQ(embed(ext, fq_one(base)), fq_one(ext.big));
    for (std::uint64_t i = 0; i < base.q; ++i) {
      FqElem a = fq_from_index(base, i);
      for (std::uint64_t j = 0; j < base.q; ++j) {
        FqElem b = fq_from_index(base, j);
        EXPECT_EQ(embed(ext, fq_add(base, a, b)), fq_add(ext.big, embed(ext, a), embed(ext, b)));
        EXPECT_EQ(embed(ext, fq_mul(base, a, b)), fq_mul(ext.big, embed(ext, a), embed(ext, b)));
      }
    }
  }
}

TEST(Ext, FrobeniusFixesExactlyTheBaseField) {
  FieldDescriptor f9 = make_field(3, 2);
  ExtDescriptor ext = make_ext(f9, 2);  // F_81 over F_9
  std::uint64_t fixed = 0;
  for (std::uint64_t i = 0; i < ext.big.q; ++i) {
    FqElem a = fq_from_index(ext.big, i);
    if (frobenius(ext, a, 1) == a) ++fixed;
  }
  EXPECT_EQ(fixed, f9.q);
  for (std::uint64_t i = 0; i < f9.q; ++i) {
    FqElem a = embed(ext, fq_from_index(f9, i));
    for (int k = 0; k < ext.d; ++k) EXPECT_EQ(frobenius(ext, a, k), a);
    EXPECT_TRUE(in_base_subfield(ext, a));
    EXPECT_EQ(to_base(ext, a), fq_from_index(f9, i));
  }
}

TEST(Ext, FrobeniusBasicIdentities) {
  FieldDescriptor f3 = make_field(3, 1);
  ExtDescriptor ext = make_ext(f3, 2);  // F_9 over F_3: Frobenius is a -> a^3
  for (std::uint64_t i = 0; i < ext.big.q; ++i) {
    FqElem a = fq_from_index(ext.big, i);
    EXPECT_EQ(frobenius(ext, a, 0), a);
    EXPECT_EQ(frobenius(ext, a, 1), fq_pow(ext.big, a, 3));
    EXPECT_EQ(frobenius(ext, frobenius(ext, a, 1), 1), a);  // involution: a^9 = a
  }
  EXPECT_THROW(frobenius(ext, fq_one(ext.big), 2), std::invalid_argument);
  EXPECT_THROW(frobenius(ext, fq_one(ext.big), -1), std::invalid_argument);
}

TEST(Ext, EmbedDoesNotPreserveEta) {
  // 2 is a non-square in F_3 but becomes a square in F_9 (d even).
  FieldDescriptor f3 = make_field(3, 1);
  ExtDescriptor ext = make_ext(f3, 2);
  FqElem two = fq_from_u64(f3, 2);
  EXPECT_EQ(eta(f3, two), 1);
  EXPECT_EQ(eta(ext.big, embed(ext, two)), 0);
}

TEST(Ext, MinimalPolyDegreesAndRoots) {
  FieldDescriptor f9 = make_field(3, 2);
  ExtDescriptor ext = make_ext(f9, 2);  // F_81 over F_9
  for (std::uint64_t i = 0; i < ext.big.q; ++i) {
    FqElem a = fq_from_index(ext.big, i);
    FqPoly m = minimal_poly(ext, a);
    int orbit = frobenius_orbit_size(ext, a);
    EXPECT_EQ(m.deg(), orbit);
    EXPECT_TRUE(orbit == 1 || orbit == 2);
    EXPECT_EQ(m.c.back(), fq_one(f9));
    // m annihilates a and its conjugate over the big field
    FqElem val = fq_zero(ext.big);
    for (std::size_t k = m.c.size(); k-- > 0;)
      val = fq_add(ext.big, fq_mul(ext.big, val, a), embed(ext, m.c[k]));
    EXPECT_TRUE(fq_is_zero(ext.big, val));
    if (orbit == 1) {
      // degree-1 polynomial x - a with a in the embedded base field
      EXPECT_EQ(embed(ext, fq_neg(f9, m.c[0])), a);
    }
  }
}

TEST(Serialization, PolynomialAndFieldStrings) {
  FieldDescriptor f81 = make_field(3, 4);
  std::string s = field_to_string(f81);
  EXPECT_EQ(s.rfind("p=3;n=4;mod=", 0), 0u);
  FqElem a = fq_from_index(f81, 47);
  EXPECT_EQ(fq_from_string(f81, fq_to_string(f81, a)), a);
  EXPECT_THROW(fq_from_string(f81, "1,2,3,4,5"), std::invalid_argument);
  EXPECT_THROW(fq_from_string(f81, "7,0,0,0"), std::invalid_argument);  // digit >= p
  EXPECT_EQ(fp_poly_from_string("2,1,0,0,1", 3), (FpPoly{2, 1, 0, 0, 1}));
}

#pragma once

// Degree-d places of an elliptic function field, the Riemann-Roch space
// L(Q), the complement V = { f in L(Q) : f(O) = 0 }, and evaluation of
// rational functions (a(x) + b(x) y) / c(x) at rational points including O.
//
// A place is realized as the Frobenius orbit of one point over F_{q^d};
// every divisor condition becomes a pointwise condition over F_{q^d},
// expanded to F_q-linear constraints through the power basis of the
// extension. The valuation at O is fixed by v_O(x) = -2, v_O(y) = -3.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/curve.hpp"
#include "ellseq/ext.hpp"
#include "ellseq/fqpoly.hpp"
#include "ellseq/linalg.hpp"

namespace ellseq {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class PlaceKind {
  SplitX,      // x(rep) has degree d; the negated orbit is a distinct place
  FoldedX,     // x(rep) has degree d/2; the orbit pairs (x, y) with (x, -y)
  TwoTorsion,  // y(rep) = 0; x(rep) has degree d
};

inline const char* place_kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::SplitX: return "SPLIT_X";
    case PlaceKind::FoldedX: return "FOLDED_X";
    case PlaceKind::TwoTorsion: return "TWO_TORSION";
  }
  return "?";
}

struct Place {
  int d = 0;
  ExtDescriptor ext;               // F_{q^d} over the curve's field
  CurvePoint rep;                  // orbit representative over F_{q^d}
  std::vector<CurvePoint> orbit;   // the d Frobenius conjugates of rep
  FqPoly m;                        // minimal polynomial of x(rep) over F_q
  int e = 0;                       // deg m; e = d or e = d/2
  PlaceKind kind = PlaceKind::SplitX;
};

// f = (a(x) + b(x) y) / c(x), c monic, no common monic factor of a, b, c.
struct RationalFunction {
  FqPoly a, b, c;
};

inline RationalFunction rf_zero(const FieldDescriptor& f) {
  return RationalFunction{fq_poly_zero(), fq_poly_zero(), fq_poly_one(f)};
}

inline RationalFunction rf_const(const FieldDescriptor& f, const FqElem& v) {
  return RationalFunction{fq_poly_const(f, v), fq_poly_zero(), fq_poly_one(f)};
}

inline bool rf_is_zero(const RationalFunction& r) {
  return r.a.is_zero() && r.b.is_zero();
}

inline bool rf_eq(const RationalFunction& x, const RationalFunction& y) {
  return x.a == y.a && x.b == y.b && x.c == y.c;
}

inline RationalFunction canonicalize(const FieldDescriptor& f, RationalFunction r) {
  fq_poly_trim(f, r.a);
  fq_poly_trim(f, r.b);
  fq_poly_trim(f, r.c);
  if (r.c.is_zero()) throw std::invalid_argument("canonicalize: zero denominator");
  if (rf_is_zero(r)) return rf_zero(f);
  FqPoly g = fq_poly_gcd(f, fq_poly_gcd(f, r.a, r.b), r.c);
  if (g.deg() > 0) {
    r.a = fq_poly_div_exact(f, r.a, g);
    r.b = fq_poly_div_exact(f, r.b, g);
    r.c = fq_poly_div_exact(f, r.c, g);
  }
  FqElem lead_inv = fq_inv(f, r.c.c.back());
  r.a = fq_poly_scale(f, lead_inv, r.a);
  r.b = fq_poly_scale(f, lead_inv, r.b);
  r.c = fq_poly_scale(f, lead_inv, r.c);
  return r;
}

inline RationalFunction rf_add(const FieldDescriptor& f, const RationalFunction& x,
                               const RationalFunction& y) {
  RationalFunction r;
  r.a = fq_poly_add(f, fq_poly_mul(f, x.a, y.c), fq_poly_mul(f, y.a, x.c));
  r.b = fq_poly_add(f, fq_poly_mul(f, x.b, y.c), fq_poly_mul(f, y.b, x.c));
  r.c = fq_poly_mul(f, x.c, y.c);
  return canonicalize(f, r);
}

inline RationalFunction rf_scale(const FieldDescriptor& f, const FqElem& s,
                                 const RationalFunction& x) {
  RationalFunction r{fq_poly_scale(f, s, x.a), fq_poly_scale(f, s, x.b), x.c};
  return canonicalize(f, r);
}

// v_O(f) under v_O(x) = -2, v_O(y) = -3; the two numerator contributions
// have distinct parity, so the minimum is always exact.
inline int v_infinity(const RationalFunction& r) {
  if (rf_is_zero(r)) throw std::invalid_argument("v_infinity of the zero function");
  int v_num = 1 << 20;
  if (!r.a.is_zero()) v_num = std::min(v_num, -2 * r.a.deg());
  if (!r.b.is_zero()) v_num = std::min(v_num, -3 - 2 * r.b.deg());
  return v_num + 2 * r.c.deg();
}

// Evaluate at a rational point of the curve (or any point over the field
// carried by `view`). At O the value is decided by degree bookkeeping.
inline FqElem evaluate_view(const CurveView& view, const RationalFunction& r,
                            const CurvePoint& p) {
  const FieldDescriptor& f = *view.field;
  if (p.infinity) {
    if (rf_is_zero(r)) return fq_zero(f);
    int v = v_infinity(r);
    if (v < 0) throw PoleError("evaluate: pole at the infinity point");
    if (v > 0) return fq_zero(f);
    // v = 0 forces the a-term to dominate (parity rules out the y-term).
    return fq_mul(f, r.a.c.back(), fq_inv(f, r.c.c.back()));
  }
  FqElem den = fq_poly_eval(f, r.c, p.x);
  if (fq_is_zero(f, den)) throw PoleError("evaluate: pole at an affine point");
  FqElem num = fq_add(f, fq_poly_eval(f, r.a, p.x),
                      fq_mul(f, fq_poly_eval(f, r.b, p.x), p.y));
  return fq_mul(f, num, fq_inv(f, den));
}

inline FqElem evaluate(const WeierstrassCurve& curve, const RationalFunction& r,
                       const CurvePoint& p) {
  return evaluate_view(base_view(curve), r, p);
}

// Evaluate over the big field of a place's extension (used by the basis
// certification to check vanishing at conjugate points).
inline FqElem evaluate_numerator_big(const ExtDescriptor& ext, const RationalFunction& r,
                                     const CurvePoint& p_big) {
  const FieldDescriptor& big = ext.big;
  FqElem acc = fq_zero(big);
  for (std::size_t i = r.a.c.size(); i-- > 0;)
    acc = fq_add(big, fq_mul(big, acc, p_big.x), embed(ext, r.a.c[i]));
  FqElem accb = fq_zero(big);
  for (std::size_t i = r.b.c.size(); i-- > 0;)
    accb = fq_add(big, fq_mul(big, accb, p_big.x), embed(ext, r.b.c[i]));
  return fq_add(big, acc, fq_mul(big, accb, p_big.y));
}

namespace detail {
inline Place place_from_rep(const ExtDescriptor& ext, const CurvePoint& rep, int d) {
  Place pl;
  pl.d = d;
  pl.ext = ext;
  pl.rep = rep;
  pl.orbit.reserve(d);
  CurvePoint conj = rep;
  for (int i = 0; i < d; ++i) {
    pl.orbit.push_back(conj);
    conj = CurvePoint::affine(frob1(ext, conj.x), frob1(ext, conj.y));
  }
  pl.m = minimal_poly(ext, rep.x);
  pl.e = pl.m.deg();
  bool y_zero = fq_is_zero(ext.big, rep.y);
  if (pl.e == d)
    pl.kind = y_zero ? PlaceKind::TwoTorsion : PlaceKind::SplitX;
  else if (2 * pl.e == d && !y_zero)
    pl.kind = PlaceKind::FoldedX;
  else
    throw std::logic_error("place_from_rep: inconsistent x-degree for place");
  return pl;
}
}  // namespace detail

// Build the degree-d place generated by a point over F_{q^d} whose
// Frobenius orbit has size exactly d. Validates the orbit size, membership,
// and the gcd(d, #E(F_q)) = 1 requirement of the construction.
inline Place make_place(const WeierstrassCurve& curve, const ExtDescriptor& ext,
                        const CurvePoint& rep) {
  const int d = ext.d;
  if (d < 2) throw std::invalid_argument("make_place: d must be >= 2");
  if (rep.infinity || !is_on_curve(ext_view(curve, ext), rep))
    throw std::invalid_argument("make_place: representative is not an affine curve point");
  int ox = frobenius_orbit_size(ext, rep.x);
  int oy = frobenius_orbit_size(ext, rep.y);
  if (std::lcm(ox, oy) != d)
    throw std::invalid_argument("make_place: representative does not have orbit size d");
  std::uint64_t n_points = count_points_view(base_view(curve));
  if (std::gcd<std::uint64_t, std::uint64_t>(d, n_points) != 1)
    throw std::invalid_argument("make_place: gcd(d, #E(F_q)) must be 1");
  return detail::place_from_rep(ext, rep, d);
}

// First degree-d place in the deterministic point scan over F_{q^d}
// (x index ascending, smaller y root first). Optionally restricted to one
// place kind, which the acceptance suite uses to cover all three.
inline Place find_place(const WeierstrassCurve& curve, int d,
                        std::uint64_t max_q = kDefaultMaxQ,
                        std::optional<PlaceKind> want_kind = std::nullopt) {
  if (d < 2) throw std::invalid_argument("find_place: d must be >= 2");
  std::uint64_t n_points = count_points_view(base_view(curve),
                                             nullptr);
  if (std::gcd<std::uint64_t, std::uint64_t>(d, n_points) != 1)
    throw std::invalid_argument("find_place: gcd(d, #E(F_q)) must be 1");
  ExtDescriptor ext = make_ext(curve.field, d, max_q);
  CurveView v = ext_view(curve, ext);
  const FieldDescriptor& big = ext.big;
  for (std::uint64_t xi = 0; xi < big.q; ++xi) {
    FqElem x = fq_from_index(big, xi);
    FqElem u = curve_rhs(v, x);
    std::vector<CurvePoint> cands;
    if (fq_is_zero(big, u)) {
      cands.push_back(CurvePoint::affine(x, fq_zero(big)));
    } else if (auto root = fq_sqrt(big, u)) {
      cands.push_back(CurvePoint::affine(x, *root));
      cands.push_back(CurvePoint::affine(x, fq_neg(big, *root)));
    }
    for (const CurvePoint& cand : cands) {
      int ox = frobenius_orbit_size(ext, cand.x);
      int oy = frobenius_orbit_size(ext, cand.y);
      if (std::lcm(ox, oy) != d) continue;
      Place pl = detail::place_from_rep(ext, cand, d);
      if (!want_kind || pl.kind == *want_kind) return pl;
    }
  }
  throw std::runtime_error("find_place: no degree-" + std::to_string(d) + " place found");
}

struct RRBasis {
  Place place;
  std::vector<RationalFunction> basis;    // d functions spanning L(Q)
  std::vector<RationalFunction> v_basis;  // d-1 functions spanning V
};

namespace detail {
// F_q-linear conditions "numerator vanishes at p_big" on the ansatz
// coefficients (a_0..a_da, b_0..b_db), appended to rows.
inline void append_vanishing_rows(const ExtDescriptor& ext, const CurvePoint& p_big,
                                  int deg_a, int deg_b, FqMatrix& rows) {
  const FieldDescriptor& big = ext.big;
  int cols = (deg_a + 1) + (deg_b + 1);
  std::vector<std::vector<FqElem>> cond(ext.d, std::vector<FqElem>(cols, fq_zero(ext.base)));
  FqElem xp = fq_one(big);
  for (int s = 0; s <= std::max(deg_a, deg_b); ++s) {
    if (s <= deg_a) {
      std::vector<FqElem> co = coords_over_base(ext, xp);
      for (int j = 0; j < ext.d; ++j) cond[j][s] = co[j];
    }
    if (s <= deg_b) {
      std::vector<FqElem> co = coords_over_base(ext, fq_mul(big, xp, p_big.y));
      for (int j = 0; j < ext.d; ++j) cond[j][deg_a + 1 + s] = co[j];
    }
    xp = fq_mul(big, xp, p_big.x);
  }
  for (auto& row : cond) rows.push_back(std::move(row));
}
}  // namespace detail

// Basis of L(Q) by the linear-system construction, then the complement
// V = ker(evaluation at O). Fails loudly if the dimension is not d.
inline RRBasis rr_basis(const WeierstrassCurve& curve, const Place& place) {
  const FieldDescriptor& f = curve.field;
  const int d = place.d;
  RRBasis out;
  out.place = place;

  if (place.kind == PlaceKind::TwoTorsion) {
    // Denominator m has divisor 2Q - 2dO; the admissible functions are the
    // constants together with x^k y / m, 0 <= k <= d-2.
    out.basis.push_back(rf_const(f, fq_one(f)));
    for (int k = 0; k + 2 <= d; ++k) {
      RationalFunction r{fq_poly_zero(), fq_poly_monomial(f, fq_one(f), k), place.m};
      out.basis.push_back(canonicalize(f, r));
    }
  } else {
    // Ansatz (a(x) + b(x) y) / m with deg a <= e, deg b <= e - 2 plus, for
    // the split kind, vanishing at the negated conjugate representative.
    const int e = place.e;
    const int deg_a = e;
    const int deg_b = e - 2;
    const int cols = (deg_a + 1) + (deg_b + 1);
    FqMatrix rows;
    if (place.kind == PlaceKind::SplitX) {
      CurvePoint neg_rep =
          CurvePoint::affine(place.rep.x, fq_neg(place.ext.big, place.rep.y));
      detail::append_vanishing_rows(place.ext, neg_rep, deg_a, deg_b, rows);
    }
    FqMatrix null = rows.empty()
                        ? FqMatrix{}
                        : fq_mat_nullspace(f, rows, static_cast<std::size_t>(cols));
    if (rows.empty()) {
      null.assign(cols, std::vector<FqElem>(cols, fq_zero(f)));
      for (int i = 0; i < cols; ++i) null[i][i] = fq_one(f);
    }
    if (static_cast<int>(null.size()) != d)
      throw std::logic_error("rr_basis: solution space dimension is not d");
    for (const auto& vec : null) {
      RationalFunction r;
      r.a.c.assign(vec.begin(), vec.begin() + (deg_a + 1));
      if (deg_b >= 0) r.b.c.assign(vec.begin() + (deg_a + 1), vec.end());
      r.c = place.m;
      out.basis.push_back(canonicalize(f, r));
    }
  }
  if (static_cast<int>(out.basis.size()) != d)
    throw std::logic_error("rr_basis: basis size is not d");

  // V = kernel of evaluation at O inside L(Q).
  std::vector<FqElem> vals;
  vals.reserve(d);
  for (const auto& b : out.basis) vals.push_back(evaluate(curve, b, CurvePoint::at_infinity()));
  int pivot = -1;
  for (int i = 0; i < d; ++i) {
    if (!fq_is_zero(f, vals[i])) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) throw std::logic_error("rr_basis: evaluation at O vanished on all of L(Q)");
  FqElem pivot_inv = fq_inv(f, vals[pivot]);
  for (int i = 0; i < d; ++i) {
    if (i == pivot) continue;
    FqElem coeff = fq_mul(f, vals[i], pivot_inv);
    RationalFunction vi = rf_add(f, out.basis[i],
                                 rf_scale(f, fq_neg(f, coeff), out.basis[pivot]));
    out.v_basis.push_back(std::move(vi));
  }
  if (static_cast<int>(out.v_basis.size()) != d - 1)
    throw std::logic_error("rr_basis: complement dimension is not d-1");
  return out;
}

inline const std::vector<RationalFunction>& complement_V(const RRBasis& rr) {
  return rr.v_basis;
}

// Independent certification of an RRBasis.
struct BasisReport {
  struct PerElement {
    bool denominator_roots_ok = false;  // (i) roots of c among orbit x's
    bool o_valuation_ok = false;        // (ii) v_O(f) >= 0
    bool vanishing_ok = false;          // (iii) numerator zero at negated conjugates
  };
  std::vector<PerElement> elements;
  bool dimension_ok = false;
  bool independent_ok = false;
  bool v_basis_vanishes_at_o = false;

  bool all_pass() const {
    if (!dimension_ok || !independent_ok || !v_basis_vanishes_at_o) return false;
    for (const auto& e : elements)
      if (!e.denominator_roots_ok || !e.o_valuation_ok || !e.vanishing_ok) return false;
    return true;
  }
};

inline BasisReport verify_basis(const WeierstrassCurve& curve, const RRBasis& rr) {
  const FieldDescriptor& f = curve.field;
  const Place& pl = rr.place;
  BasisReport rep;
  rep.dimension_ok = static_cast<int>(rr.basis.size()) == pl.d &&
                     static_cast<int>(rr.v_basis.size()) == pl.d - 1;

  for (const auto& b : rr.basis) {
    BasisReport::PerElement pe;
    // (i) every irreducible factor of the denominator is m.
    FqPoly rest = b.c;
    while (rest.deg() > 0) {
      FqPoly g = fq_poly_gcd(f, rest, pl.m);
      if (g.deg() == 0) break;
      rest = fq_poly_div_exact(f, rest, g);
    }
    pe.denominator_roots_ok = rest.deg() == 0;
    // (ii)
    pe.o_valuation_ok = !rf_is_zero(b) && v_infinity(b) >= 0;
    // (iii) for the split kind the numerator must vanish at every negated
    // conjugate; other kinds and denominator-free elements are vacuous.
    if (pl.kind == PlaceKind::SplitX && b.c.deg() > 0) {
      pe.vanishing_ok = true;
      for (const CurvePoint& op : pl.orbit) {
        CurvePoint neg = CurvePoint::affine(op.x, fq_neg(pl.ext.big, op.y));
        if (!fq_is_zero(pl.ext.big, evaluate_numerator_big(pl.ext, b, neg))) {
          pe.vanishing_ok = false;
          break;
        }
      }
    } else {
      pe.vanishing_ok = true;
    }
    rep.elements.push_back(pe);
  }

  // (iv) rank over F_q of the common-denominator coefficient vectors. The
  // common denominator is the lcm of all basis denominators, so this stays
  // well defined even for a corrupted basis that fails condition (i).
  FqPoly common = fq_poly_one(f);
  for (const auto& b : rr.basis) {
    FqPoly g = fq_poly_gcd(f, common, b.c);
    common = fq_poly_mul(f, common, fq_poly_div_exact(f, b.c, g));
  }
  std::size_t width = 0;
  std::vector<std::pair<FqPoly, FqPoly>> nums;
  for (const auto& b : rr.basis) {
    FqPoly mult = fq_poly_div_exact(f, common, b.c);
    FqPoly na = fq_poly_mul(f, b.a, mult);
    FqPoly nb = fq_poly_mul(f, b.b, mult);
    width = std::max({width, na.c.size(), nb.c.size()});
    nums.emplace_back(std::move(na), std::move(nb));
  }
  FqMatrix coeffs;
  for (const auto& [na, nb] : nums) {
    std::vector<FqElem> row(2 * width, fq_zero(f));
    for (std::size_t i = 0; i < na.c.size(); ++i) row[i] = na.c[i];
    for (std::size_t i = 0; i < nb.c.size(); ++i) row[width + i] = nb.c[i];
    coeffs.push_back(std::move(row));
  }
  rep.independent_ok = fq_mat_rank(f, coeffs) == pl.d;

  rep.v_basis_vanishes_at_o = true;
  for (const auto& vfun : rr.v_basis) {
    if (!fq_is_zero(f, evaluate(curve, vfun, CurvePoint::at_infinity()))) {
      rep.v_basis_vanishes_at_o = false;
      break;
    }
  }
  return rep;
}

// Number of rational points (O included) where f vanishes.
inline int count_rational_zeros(const WeierstrassCurve& curve, const RationalFunction& r) {
  if (rf_is_zero(r)) throw std::invalid_argument("count_rational_zeros: zero function");
  int count = 0;
  for (const CurvePoint& p : enumerate_points_view(base_view(curve)))
    if (fq_is_zero(curve.field, evaluate(curve, r, p))) ++count;
  return count;
}

// --- serialization: "a=digits|digits;b=...;c=..." ---

inline std::string rf_to_string(const FieldDescriptor& f, const RationalFunction& r) {
  return "a=" + fq_poly_to_string(f, r.a) + ";b=" + fq_poly_to_string(f, r.b) +
         ";c=" + fq_poly_to_string(f, r.c);
}

inline std::string place_to_string(const Place& pl) {
  return std::to_string(pl.d) + ";" + fq_to_string(pl.ext.big, pl.rep.x) + ";" +
         fq_to_string(pl.ext.big, pl.rep.y);
}

}  // namespace ellseq

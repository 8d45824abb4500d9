#pragma once

// Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over odd-characteristic
// fields: group law, exhaustive point enumeration, trace / cyclicity
// summaries, trace admissibility, and deterministic curve search.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/ext.hpp"
#include "ellseq/gf.hpp"

namespace ellseq {

struct SingularCurveError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SearchExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeierstrassCurve {
  FieldDescriptor field;
  FqElem a2, a4, a6;
};

struct CurvePoint {
  bool infinity = true;
  FqElem x{}, y{};

  static CurvePoint at_infinity() { return CurvePoint{}; }
  static CurvePoint affine(const FqElem& x, const FqElem& y) {
    CurvePoint p;
    p.infinity = false;
    p.x = x;
    p.y = y;
    return p;
  }
  bool operator==(const CurvePoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
};

struct GroupSummary {
  std::uint64_t n_points = 0;
  std::int64_t trace = 0;
  bool cyclic = false;
  std::optional<CurvePoint> generator;
  std::uint64_t sampling_seed = 0;  // 0 when cyclicity was decided exhaustively
};

// The same curve viewed over the base field or over an extension; the group
// law is written once against this.
struct CurveView {
  const FieldDescriptor* field = nullptr;
  FqElem a2, a4, a6;
};

inline CurveView base_view(const WeierstrassCurve& c) {
  return CurveView{&c.field, c.a2, c.a4, c.a6};
}

inline CurveView ext_view(const WeierstrassCurve& c, const ExtDescriptor& ext) {
  return CurveView{&ext.big, embed(ext, c.a2), embed(ext, c.a4), embed(ext, c.a6)};
}

// x^3 + a2 x^2 + a4 x + a6
inline FqElem curve_rhs(const CurveView& v, const FqElem& x) {
  const FieldDescriptor& f = *v.field;
  FqElem r = fq_add(f, x, v.a2);
  r = fq_add(f, fq_mul(f, r, x), v.a4);
  r = fq_add(f, fq_mul(f, r, x), v.a6);
  return r;
}

inline bool is_on_curve(const CurveView& v, const CurvePoint& p) {
  if (p.infinity) return true;
  const FieldDescriptor& f = *v.field;
  return fq_mul(f, p.y, p.y) == curve_rhs(v, p.x);
}

inline WeierstrassCurve make_curve(const FieldDescriptor& field, const FqElem& a2,
                                   const FqElem& a4, const FqElem& a6) {
  if (field.p == 2) throw std::invalid_argument("make_curve: even characteristic");
  WeierstrassCurve c{field, a2, a4, a6};
  // Nonsingular iff the cubic has no repeated root: gcd(f, f') must be
  // constant. In characteristic 3 the derivative can vanish identically
  // (a2 = a4 = 0), in which case x^3 + a6 is a perfect cube and the curve
  // is rejected.
  FqPoly cubic;
  cubic.c = {a6, a4, a2, fq_one(field)};
  fq_poly_trim(field, cubic);
  FqPoly deriv;
  deriv.c = {a4, fq_scale(field, 2, a2), fq_from_u64(field, 3)};
  fq_poly_trim(field, deriv);
  if (deriv.is_zero()) throw SingularCurveError("make_curve: singular curve");
  if (fq_poly_gcd(field, cubic, deriv).deg() != 0)
    throw SingularCurveError("make_curve: singular curve");
  return c;
}

inline CurvePoint negate_point(const CurveView& v, const CurvePoint& p) {
  if (p.infinity) return p;
  return CurvePoint::affine(p.x, fq_neg(*v.field, p.y));
}

inline CurvePoint add_points(const CurveView& v, const CurvePoint& p, const CurvePoint& r) {
  const FieldDescriptor& f = *v.field;
  if (!is_on_curve(v, p) || !is_on_curve(v, r))
    throw std::invalid_argument("add_points: point not on curve");
  if (p.infinity) return r;
  if (r.infinity) return p;
  FqElem lambda;
  if (p.x == r.x) {
    if (p.y == fq_neg(f, r.y)) return CurvePoint::at_infinity();
    // tangent: (3x^2 + 2 a2 x + a4) / (2y)
    FqElem num = fq_scale(f, 3, fq_mul(f, p.x, p.x));
    num = fq_add(f, num, fq_scale(f, 2, fq_mul(f, v.a2, p.x)));
    num = fq_add(f, num, v.a4);
    lambda = fq_mul(f, num, fq_inv(f, fq_scale(f, 2, p.y)));
  } else {
    lambda = fq_mul(f, fq_sub(f, r.y, p.y), fq_inv(f, fq_sub(f, r.x, p.x)));
  }
  FqElem x3 = fq_mul(f, lambda, lambda);
  x3 = fq_sub(f, x3, v.a2);
  x3 = fq_sub(f, x3, p.x);
  x3 = fq_sub(f, x3, r.x);
  FqElem y3 = fq_sub(f, fq_mul(f, lambda, fq_sub(f, p.x, x3)), p.y);
  return CurvePoint::affine(x3, y3);
}

inline CurvePoint scalar_mul(const CurveView& v, std::uint64_t k, const CurvePoint& p) {
  if (!is_on_curve(v, p)) throw std::invalid_argument("scalar_mul: point not on curve");
  CurvePoint acc = CurvePoint::at_infinity();
  CurvePoint base = p;
  while (k > 0) {
    if (k & 1) acc = add_points(v, acc, base);
    base = add_points(v, base, base);
    k >>= 1;
  }
  return acc;
}

// All points over the view's field, x ascending by enumeration index, the
// two y roots ascending, the infinity point last.
inline std::vector<CurvePoint> enumerate_points_view(const CurveView& v) {
  const FieldDescriptor& f = *v.field;
  std::vector<CurvePoint> pts;
  for (std::uint64_t xi = 0; xi < f.q; ++xi) {
    FqElem x = fq_from_index(f, xi);
    FqElem u = curve_rhs(v, x);
    if (fq_is_zero(f, u)) {
      pts.push_back(CurvePoint::affine(x, fq_zero(f)));
      continue;
    }
    std::optional<FqElem> root = fq_sqrt(f, u);
    if (!root) continue;
    pts.push_back(CurvePoint::affine(x, *root));
    pts.push_back(CurvePoint::affine(x, fq_neg(f, *root)));
  }
  pts.push_back(CurvePoint::at_infinity());
  return pts;
}

inline std::vector<CurvePoint> enumerate_points(const WeierstrassCurve& c, int over_degree = 1,
                                                std::uint64_t max_q = kDefaultMaxQ) {
  if (over_degree == 1) return enumerate_points_view(base_view(c));
  ExtDescriptor ext = make_ext(c.field, over_degree, max_q);
  return enumerate_points_view(ext_view(c, ext));
}

// Point count by quadratic-character sums; no square roots required.
inline std::uint64_t count_points_view(const CurveView& v, const QrTable* table = nullptr) {
  const FieldDescriptor& f = *v.field;
  std::uint64_t n = 1;  // infinity
  for (std::uint64_t xi = 0; xi < f.q; ++xi) {
    FqElem x = fq_from_index(f, xi);
    FqElem u = curve_rhs(v, x);
    int chi;
    if (table)
      chi = table->chi[fq_index(f, u)];
    else
      chi = fq_is_zero(f, u) ? 0 : (is_square(f, u) ? 1 : -1);
    n += static_cast<std::uint64_t>(1 + chi);
  }
  return n;
}

namespace detail {
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t point_order(const CurveView& v, const CurvePoint& p, std::uint64_t n,
                                 const std::vector<std::uint64_t>& primes) {
  std::uint64_t o = n;
  for (std::uint64_t l : primes)
    while (o % l == 0 && scalar_mul(v, o / l, p).infinity) o /= l;
  return o;
}
}  // namespace detail

inline constexpr std::uint64_t kExhaustiveOrderLimit = 10000;
inline constexpr std::uint64_t kCyclicitySamplingSeed = 0x9e3779b97f4a7c15ull;

inline GroupSummary group_summary(const WeierstrassCurve& c) {
  CurveView v = base_view(c);
  std::vector<CurvePoint> pts = enumerate_points_view(v);
  GroupSummary s;
  s.n_points = pts.size();
  s.trace = static_cast<std::int64_t>(s.n_points) - static_cast<std::int64_t>(c.field.q) - 1;
  std::vector<std::uint64_t> primes = detail::prime_factors(s.n_points);

  if (s.n_points <= kExhaustiveOrderLimit) {
    for (const CurvePoint& p : pts) {
      if (detail::point_order(v, p, s.n_points, primes) == s.n_points) {
        s.cyclic = true;
        s.generator = p;
        break;
      }
    }
    return s;
  }

  // Large groups: seeded random sampling with lcm accumulation. A sampled
  // lcm equal to n proves the exponent is n (a point of order n exists);
  // anything less is inconclusive and falls back to the exhaustive scan.
  s.sampling_seed = kCyclicitySamplingSeed;
  std::mt19937_64 rng(s.sampling_seed);
  std::uint64_t lcm = 1;
  for (int tries = 0; tries < 64 && lcm != s.n_points; ++tries) {
    const CurvePoint& p = pts[rng() % pts.size()];
    std::uint64_t o = detail::point_order(v, p, s.n_points, primes);
    lcm = lcm / std::gcd(lcm, o) * o;
  }
  for (const CurvePoint& p : pts) {
    if (detail::point_order(v, p, s.n_points, primes) == s.n_points) {
      s.cyclic = true;
      s.generator = p;
      break;
    }
  }
  return s;
}

// Trace admissibility for cyclic curves (Waterhouse conditions restricted to
// the classes that always admit a cyclic group).
inline bool is_admissible_trace(std::uint64_t p, int n, std::int64_t t) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p) || n < 1) return false;
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  std::uint64_t abs_t = static_cast<std::uint64_t>(t < 0 ? -t : t);
  // 1) |t| <= 2 sqrt(q), gcd(t, p) = 1
  if (t != 0 && abs_t % p != 0 && abs_t * abs_t <= 4 * q) return true;
  // 2) t = 0 with n odd, or n even and q != -1 mod 4
  if (t == 0 && (n % 2 == 1 || q % 4 != 3)) return true;
  // 3) t = +-sqrt(q) for even n with p != 1 mod 3;
  //    t = +-p^{(n+1)/2} for odd n with p = 3
  if (n % 2 == 0 && p % 3 != 1) {
    std::uint64_t r = isqrt_u64(q);
    if (abs_t == r) return true;
  }
  if (n % 2 == 1 && p == 3) {
    std::uint64_t r = 1;
    for (int i = 0; i < (n + 1) / 2; ++i) r *= p;
    if (abs_t == r) return true;
  }
  return false;
}

// First curve in odometer order over (a2, a4, a6) with q + 1 + t points and
// a cyclic group; a2 is the fastest digit.
inline std::pair<WeierstrassCurve, GroupSummary> search_curve(
    std::uint64_t p, int n, std::int64_t t, std::uint64_t max_q = kDefaultMaxQ) {
  if (!is_admissible_trace(p, n, t))
    throw std::invalid_argument("search_curve: inadmissible trace");
  FieldDescriptor field = make_field(p, n, max_q);
  QrTable table = field.q <= kQrTableLimit ? make_qr_table(field) : QrTable{};
  const QrTable* tp = field.q <= kQrTableLimit ? &table : nullptr;
  std::uint64_t target =
      static_cast<std::uint64_t>(static_cast<std::int64_t>(field.q) + 1 + t);
  for (std::uint64_t i6 = 0; i6 < field.q; ++i6) {
    FqElem a6 = fq_from_index(field, i6);
    for (std::uint64_t i4 = 0; i4 < field.q; ++i4) {
      FqElem a4 = fq_from_index(field, i4);
      for (std::uint64_t i2 = 0; i2 < field.q; ++i2) {
        FqElem a2 = fq_from_index(field, i2);
        WeierstrassCurve c;
        try {
          c = make_curve(field, a2, a4, a6);
        } catch (const SingularCurveError&) {
          continue;
        }
        if (count_points_view(base_view(c), tp) != target) continue;
        GroupSummary s = group_summary(c);
        if (s.cyclic) return {c, s};
      }
    }
  }
  throw SearchExhaustedError("search_curve: no cyclic curve with requested trace");
}

// --- serialization: "p;n;mod;a2;a4;a6" with comma-digit polynomials ---

inline std::string curve_to_string(const WeierstrassCurve& c) {
  return std::to_string(c.field.p) + ";" + std::to_string(c.field.n) + ";" +
         fp_poly_to_string(c.field.modulus) + ";" + fq_to_string(c.field, c.a2) + ";" +
         fq_to_string(c.field, c.a4) + ";" + fq_to_string(c.field, c.a6);
}

inline WeierstrassCurve curve_from_string(const std::string& s,
                                          std::uint64_t max_q = kDefaultMaxQ) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t sep = s.find(';', start);
    if (sep == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, sep - start));
    start = sep + 1;
  }
  if (parts.size() != 6) throw std::invalid_argument("curve string needs 6 fields: " + s);
  std::uint64_t p = std::stoull(parts[0]);
  int n = std::stoi(parts[1]);
  FieldDescriptor field = make_field(p, n, max_q);
  FpPoly mod = fp_poly_from_string(parts[2], p);
  if (mod != field.modulus)
    throw std::invalid_argument("curve string modulus does not match canonical modulus");
  return make_curve(field, fq_from_string(field, parts[3]), fq_from_string(field, parts[4]),
                    fq_from_string(field, parts[5]));
}

}  // namespace ellseq

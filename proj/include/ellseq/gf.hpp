#pragma once

// F_q = F_{p^n} for odd p: elements are coefficient vectors over F_p reduced
// modulo a fixed monic irreducible, with deterministic element enumeration
// (odometer order on coefficient vectors) and the quadratic residue map eta.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/fp.hpp"

namespace ellseq {

inline constexpr std::uint64_t kDefaultMaxQ = 531441;  // 3^12
inline constexpr int kMaxExtDeg = 24;

struct FieldDescriptor {
  std::uint64_t p = 0;
  int n = 0;
  std::uint64_t q = 0;  // p^n
  FpPoly modulus;       // monic, degree n

  Fp fp() const { return Fp{p}; }
  bool operator==(const FieldDescriptor& o) const {
    return p == o.p && n == o.n && modulus == o.modulus;
  }
};

// One field element: n coefficients over F_p, low degree first, rest zero.
struct FqElem {
  std::array<std::uint32_t, kMaxExtDeg> c{};
  bool operator==(const FqElem& o) const { return c == o.c; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }
};

namespace detail {
// Monic degree-n polynomials in lexicographic order, constant term compared
// first. rank indexes that order.
inline FpPoly monic_poly_from_rank(std::uint64_t rank, std::uint64_t p, int n) {
  FpPoly f(n + 1, 0);
  f[n] = 1;
  for (int i = 0; i < n; ++i) {
    std::uint64_t weight = 1;
    for (int j = 0; j < n - 1 - i; ++j) weight *= p;
    f[i] = static_cast<std::uint32_t>((rank / weight) % p);
  }
  return f;
}
}  // namespace detail

inline FieldDescriptor make_field(std::uint64_t p, int n,
                                  std::uint64_t max_q = kDefaultMaxQ) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    throw std::invalid_argument("make_field: p must be an odd prime");
  if (n < 1) throw std::invalid_argument("make_field: n must be >= 1");
  if (n > kMaxExtDeg) throw std::invalid_argument("make_field: extension degree too large");
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    if (q > max_q / p) throw std::invalid_argument("make_field: size limit exceeded");
    q *= p;
  }
  if (q > max_q) throw std::invalid_argument("make_field: size limit exceeded");

  FieldDescriptor fd;
  fd.p = p;
  fd.n = n;
  fd.q = q;
  Fp fp{p};
  std::uint64_t candidates = q;  // p^n choices of the n non-leading coefficients
  for (std::uint64_t r = 0; r < candidates; ++r) {
    FpPoly f = detail::monic_poly_from_rank(r, p, n);
    if (n > 1 && f[0] == 0) continue;  // divisible by x
    if (fp_poly_irreducible(fp, f)) {
      fd.modulus = std::move(f);
      return fd;
    }
  }
  throw std::logic_error("make_field: no irreducible modulus found");
}

inline FqElem fq_zero(const FieldDescriptor&) { return FqElem{}; }

inline FqElem fq_one(const FieldDescriptor&) {
  FqElem e;
  e.c[0] = 1;
  return e;
}

inline bool fq_is_zero(const FieldDescriptor& f, const FqElem& a) {
  for (int i = 0; i < f.n; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

// Constant embedding of a residue mod p.
inline FqElem fq_from_u64(const FieldDescriptor& f, std::uint64_t v) {
  FqElem e;
  e.c[0] = static_cast<std::uint32_t>(v % f.p);
  return e;
}

// The class of x; for n = 1 this is the zero residue (modulus is x itself).
inline FqElem fq_generator(const FieldDescriptor& f) {
  FqElem e;
  if (f.n >= 2)
    e.c[1] = 1;
  else
    e.c[0] = static_cast<std::uint32_t>(f.p - (f.modulus[0] % f.p)) % f.p;
  return e;
}

inline std::uint64_t fq_index(const FieldDescriptor& f, const FqElem& a) {
  std::uint64_t idx = 0;
  for (int i = f.n; i-- > 0;) idx = idx * f.p + a.c[i];
  return idx;
}

inline FqElem fq_from_index(const FieldDescriptor& f, std::uint64_t idx) {
  FqElem e;
  for (int i = 0; i < f.n; ++i) {
    e.c[i] = static_cast<std::uint32_t>(idx % f.p);
    idx /= f.p;
  }
  if (idx != 0) throw std::invalid_argument("fq_from_index: index out of range");
  return e;
}

inline FqElem fq_add(const FieldDescriptor& f, const FqElem& a, const FqElem& b) {
  Fp fp = f.fp();
  FqElem r;
  for (int i = 0; i < f.n; ++i) r.c[i] = fp.add(a.c[i], b.c[i]);
  return r;
}

inline FqElem fq_sub(const FieldDescriptor& f, const FqElem& a, const FqElem& b) {
  Fp fp = f.fp();
  FqElem r;
  for (int i = 0; i < f.n; ++i) r.c[i] = fp.sub(a.c[i], b.c[i]);
  return r;
}

inline FqElem fq_neg(const FieldDescriptor& f, const FqElem& a) {
  Fp fp = f.fp();
  FqElem r;
  for (int i = 0; i < f.n; ++i) r.c[i] = fp.neg(a.c[i]);
  return r;
}

inline FqElem fq_scale(const FieldDescriptor& f, std::uint32_t s, const FqElem& a) {
  Fp fp = f.fp();
  FqElem r;
  for (int i = 0; i < f.n; ++i) r.c[i] = fp.mul(s, a.c[i]);
  return r;
}

inline FqElem fq_mul(const FieldDescriptor& f, const FqElem& a, const FqElem& b) {
  Fp fp = f.fp();
  const int n = f.n;
  std::array<std::uint32_t, 2 * kMaxExtDeg> buf{};
  for (int i = 0; i < n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.c[j] == 0) continue;
      buf[i + j] = fp.add(buf[i + j], fp.mul(a.c[i], b.c[j]));
    }
  }
  // reduce by the monic modulus: x^n == -(lower part)
  for (int k = 2 * n - 2; k >= n; --k) {
    std::uint32_t t = buf[k];
    if (t == 0) continue;
    buf[k] = 0;
    for (int i = 0; i < n; ++i)
      buf[k - n + i] = fp.sub(buf[k - n + i], fp.mul(t, f.modulus[i]));
  }
  FqElem r;
  for (int i = 0; i < n; ++i) r.c[i] = buf[i];
  return r;
}

inline FqElem fq_pow(const FieldDescriptor& f, FqElem a, std::uint64_t e) {
  FqElem r = fq_one(f);
  while (e > 0) {
    if (e & 1) r = fq_mul(f, r, a);
    a = fq_mul(f, a, a);
    e >>= 1;
  }
  return r;
}

// Inverse by extended Euclid on the coefficient polynomials.
inline FqElem fq_inv(const FieldDescriptor& f, const FqElem& a) {
  if (fq_is_zero(f, a)) throw std::domain_error("fq_inv of zero");
  Fp fp = f.fp();
  FpPoly r0 = f.modulus;
  FpPoly r1(a.c.begin(), a.c.begin() + f.n);
  fp_poly_trim(r1);
  FpPoly t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly q, rem;
    fp_poly_divmod(fp, r0, r1, q, rem);
    FpPoly t2 = fp_poly_sub(fp, t0, fp_poly_mul(fp, q, t1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant gcd
  std::uint32_t s = fp.inv(r0[0]);
  FqElem out;
  for (std::size_t i = 0; i < t0.size(); ++i) out.c[i] = fp.mul(t0[i], s);
  return out;
}

// Euler criterion; a = 0 counts as a square.
inline bool is_square(const FieldDescriptor& f, const FqElem& a) {
  if (fq_is_zero(f, a)) return true;
  FqElem e = fq_pow(f, a, (f.q - 1) / 2);
  return e == fq_one(f);
}

// Quadratic residue map: 0 on squares (including 0), 1 on non-squares.
inline int eta(const FieldDescriptor& f, const FqElem& a) {
  return is_square(f, a) ? 0 : 1;
}

// Deterministic square root: returns the root with the smaller enumeration
// index, or nullopt for non-squares. Tonelli-Shanks with the first
// non-square (in enumeration order) as the auxiliary non-residue.
inline std::optional<FqElem> fq_sqrt(const FieldDescriptor& f, const FqElem& a) {
  if (fq_is_zero(f, a)) return fq_zero(f);
  if (!is_square(f, a)) return std::nullopt;
  std::uint64_t m = f.q - 1;
  int e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  FqElem root;
  if (e == 1) {
    root = fq_pow(f, a, (f.q + 1) / 4);
  } else {
    FqElem z;
    std::uint64_t zi = 1;
    for (;; ++zi) {
      z = fq_from_index(f, zi);
      if (!is_square(f, z)) break;
    }
    FqElem cc = fq_pow(f, z, m);
    FqElem t = fq_pow(f, a, m);
    FqElem r = fq_pow(f, a, (m + 1) / 2);
    int s = e;
    while (!(t == fq_one(f))) {
      int i = 0;
      FqElem t2 = t;
      while (!(t2 == fq_one(f))) {
        t2 = fq_mul(f, t2, t2);
        ++i;
      }
      FqElem b = cc;
      for (int j = 0; j < s - i - 1; ++j) b = fq_mul(f, b, b);
      r = fq_mul(f, r, b);
      cc = fq_mul(f, b, b);
      t = fq_mul(f, t, cc);
      s = i;
    }
    root = r;
  }
  FqElem other = fq_neg(f, root);
  return fq_index(f, root) <= fq_index(f, other) ? root : other;
}

// Precomputed character and square root tables, for fields below the size
// threshold. chi: 0 for zero, +1 square, -1 non-square; sqrt_idx: index of
// the smaller root, only meaningful where chi >= 0.
struct QrTable {
  std::vector<std::int8_t> chi;
  std::vector<std::uint32_t> sqrt_idx;
};

inline constexpr std::uint64_t kQrTableLimit = 1ull << 16;

inline QrTable make_qr_table(const FieldDescriptor& f) {
  if (f.q > kQrTableLimit)
    throw std::invalid_argument("make_qr_table: field too large for table");
  QrTable t;
  t.chi.assign(f.q, -1);
  t.sqrt_idx.assign(f.q, 0);
  t.chi[0] = 0;
  for (std::uint64_t i = 1; i < f.q; ++i) {
    FqElem b = fq_from_index(f, i);
    FqElem sq = fq_mul(f, b, b);
    std::uint64_t si = fq_index(f, sq);
    if (t.chi[si] <= 0) {
      t.chi[si] = 1;
      t.sqrt_idx[si] = static_cast<std::uint32_t>(i);
    } else {
      t.sqrt_idx[si] = std::min(t.sqrt_idx[si], static_cast<std::uint32_t>(i));
    }
  }
  return t;
}

// --- serialization ---

inline std::string fq_to_string(const FieldDescriptor& f, const FqElem& a) {
  FpPoly digits(a.c.begin(), a.c.begin() + f.n);
  return fp_poly_to_string(digits);
}

inline FqElem fq_from_string(const FieldDescriptor& f, const std::string& s) {
  FpPoly digits = fp_poly_from_string(s, f.p);
  if (fp_poly_deg(digits) >= f.n)
    throw std::invalid_argument("element has too many digits: " + s);
  FqElem e;
  for (std::size_t i = 0; i < digits.size(); ++i) e.c[i] = digits[i];
  return e;
}

inline std::string field_to_string(const FieldDescriptor& f) {
  return "p=" + std::to_string(f.p) + ";n=" + std::to_string(f.n) +
         ";mod=" + fp_poly_to_string(f.modulus);
}

}  // namespace ellseq

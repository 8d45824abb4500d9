#pragma once

// Degree-d extension F_{q^d} over F_q = F_{p^n}, realized as F_{p^{nd}} with
// a deterministic embedding of the base field. Supplies the q-power
// Frobenius, coordinates of big-field elements over the base, and minimal
// polynomials; this is what degree-d places are built from.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ellseq/fqpoly.hpp"
#include "ellseq/gf.hpp"

namespace ellseq {

struct ExtDescriptor {
  FieldDescriptor base;  // F_q
  int d = 0;
  FieldDescriptor big;   // F_{q^d} = F_{p^{nd}}
  FqElem embed_image;    // image of the base generator: a root of base.modulus
  std::vector<FqElem> embed_pows;  // embed_image^0 .. ^{n-1}
  FpMatrix frob_mat;               // F_p-linear matrix of a -> a^q, (nd x nd)
  FpMatrix coord_mat;              // inverse of the product basis g^k * gamma^j
};

namespace detail {
inline std::vector<std::uint32_t> fq_coord_vec(const FieldDescriptor& f, const FqElem& a) {
  return std::vector<std::uint32_t>(a.c.begin(), a.c.begin() + f.n);
}
inline FqElem fq_from_coord_vec(const std::vector<std::uint32_t>& v) {
  FqElem e;
  for (std::size_t i = 0; i < v.size(); ++i) e.c[i] = v[i];
  return e;
}
}  // namespace detail

namespace detail {
// One q-power Frobenius step, no range restriction.
inline FqElem frob1(const ExtDescriptor& ext, const FqElem& a) {
  Fp fp = ext.big.fp();
  return fq_from_coord_vec(fp_mat_apply(fp, ext.frob_mat, fq_coord_vec(ext.big, a)));
}
}  // namespace detail

inline FqElem embed(const ExtDescriptor& ext, const FqElem& a) {
  FqElem r = fq_zero(ext.big);
  for (int i = 0; i < ext.base.n; ++i)
    if (a.c[i] != 0) r = fq_add(ext.big, r, fq_scale(ext.big, a.c[i], ext.embed_pows[i]));
  return r;
}

// a^{q^k} for 0 <= k < d, via the precomputed F_p-linear Frobenius matrix.
inline FqElem frobenius(const ExtDescriptor& ext, const FqElem& a, int k) {
  if (k < 0 || k >= ext.d) throw std::invalid_argument("frobenius: power out of range");
  FqElem v = a;
  for (int i = 0; i < k; ++i) v = detail::frob1(ext, v);
  return v;
}

inline int frobenius_orbit_size(const ExtDescriptor& ext, const FqElem& a) {
  FqElem v = a;
  for (int k = 1; k <= ext.d; ++k) {
    v = detail::frob1(ext, v);
    if (v == a) return k;
  }
  throw std::logic_error("frobenius_orbit_size: orbit does not close within d");
}

// Coordinates of u over the base field w.r.t. the power basis
// {1, gamma, ..., gamma^{d-1}} of the big field, gamma the class of x.
inline std::vector<FqElem> coords_over_base(const ExtDescriptor& ext, const FqElem& u) {
  Fp fp = ext.big.fp();
  std::vector<std::uint32_t> w =
      fp_mat_apply(fp, ext.coord_mat, detail::fq_coord_vec(ext.big, u));
  std::vector<FqElem> out(ext.d);
  for (int j = 0; j < ext.d; ++j)
    for (int k = 0; k < ext.base.n; ++k) out[j].c[k] = w[j * ext.base.n + k];
  return out;
}

inline bool in_base_subfield(const ExtDescriptor& ext, const FqElem& u) {
  std::vector<FqElem> cs = coords_over_base(ext, u);
  for (int j = 1; j < ext.d; ++j)
    if (!fq_is_zero(ext.base, cs[j])) return false;
  return true;
}

// Preimage under embed; u must lie in the embedded copy of the base field.
inline FqElem to_base(const ExtDescriptor& ext, const FqElem& u) {
  std::vector<FqElem> cs = coords_over_base(ext, u);
  for (int j = 1; j < ext.d; ++j)
    if (!fq_is_zero(ext.base, cs[j]))
      throw std::domain_error("to_base: element is not in the base subfield");
  return cs[0];
}

inline ExtDescriptor make_ext(const FieldDescriptor& base, int d,
                              std::uint64_t max_q = kDefaultMaxQ) {
  if (d < 1) throw std::invalid_argument("make_ext: d must be >= 1");
  ExtDescriptor ext;
  ext.base = base;
  ext.d = d;
  ext.big = make_field(base.p, base.n * d, max_q);
  Fp fp{base.p};
  const int m = ext.big.n;  // n*d

  // Frobenius a -> a^q as a matrix: column i is (gamma^q)^i.
  FqElem gq = fq_pow(ext.big, fq_generator(ext.big), base.q);
  ext.frob_mat.assign(m, std::vector<std::uint32_t>(m, 0));
  FqElem col = fq_one(ext.big);
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < m; ++r) ext.frob_mat[r][i] = col.c[r];
    col = fq_mul(ext.big, col, gq);
  }

  // The embedded base field is the kernel of a -> a^q - a. Roots of the base
  // modulus live there; the embedding sends the base generator to the
  // smallest such root in enumeration order.
  FpMatrix fixed = ext.frob_mat;
  for (int i = 0; i < m; ++i) fixed[i][i] = fp.sub(fixed[i][i], 1);
  FpMatrix kernel = fp_mat_kernel(fp, fixed);
  if (static_cast<int>(kernel.size()) != base.n)
    throw std::logic_error("make_ext: fixed subfield has wrong dimension");

  std::uint64_t combos = base.q;
  bool found = false;
  std::uint64_t best_idx = 0;
  FqElem best;
  for (std::uint64_t t = 0; t < combos; ++t) {
    std::uint64_t tt = t;
    FqElem cand = fq_zero(ext.big);
    for (std::size_t kv = 0; kv < kernel.size(); ++kv) {
      auto dig = static_cast<std::uint32_t>(tt % base.p);
      tt /= base.p;
      if (dig != 0)
        cand = fq_add(ext.big, cand, fq_scale(ext.big, dig, detail::fq_from_coord_vec(kernel[kv])));
    }
    // Horner-evaluate the base modulus at cand.
    FqElem val = fq_zero(ext.big);
    for (int i = fp_poly_deg(base.modulus); i >= 0; --i) {
      val = fq_mul(ext.big, val, cand);
      val = fq_add(ext.big, val, fq_from_u64(ext.big, base.modulus[i]));
    }
    if (fq_is_zero(ext.big, val)) {
      std::uint64_t idx = fq_index(ext.big, cand);
      if (!found || idx < best_idx) {
        found = true;
        best_idx = idx;
        best = cand;
      }
    }
  }
  if (!found) throw std::logic_error("make_ext: base modulus has no root in big field");
  ext.embed_image = best;
  ext.embed_pows.resize(base.n);
  ext.embed_pows[0] = fq_one(ext.big);
  for (int i = 1; i < base.n; ++i)
    ext.embed_pows[i] = fq_mul(ext.big, ext.embed_pows[i - 1], ext.embed_image);

  // Product basis g^k gamma^j, column index j*n + k; invert for coordinates.
  FpMatrix prod(m, std::vector<std::uint32_t>(m, 0));
  FqElem gj = fq_one(ext.big);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < base.n; ++k) {
      FqElem bvec = fq_mul(ext.big, ext.embed_pows[k], gj);
      for (int r = 0; r < m; ++r) prod[r][j * base.n + k] = bvec.c[r];
    }
    gj = fq_mul(ext.big, gj, fq_generator(ext.big));
  }
  ext.coord_mat = fp_mat_inverse(fp, prod);
  return ext;
}

// Monic minimal polynomial of a over the base field: the product of
// (x - conjugate) over the Frobenius orbit, with coefficients pulled back.
inline FqPoly minimal_poly(const ExtDescriptor& ext, const FqElem& a) {
  int k = frobenius_orbit_size(ext, a);
  std::vector<FqElem> acc{fq_one(ext.big)};  // poly over big field, low first
  FqElem conj = a;
  for (int i = 0; i < k; ++i) {
    std::vector<FqElem> next(acc.size() + 1, fq_zero(ext.big));
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] = fq_add(ext.big, next[j + 1], acc[j]);
      next[j] = fq_sub(ext.big, next[j], fq_mul(ext.big, acc[j], conj));
    }
    acc = std::move(next);
    conj = detail::frob1(ext, conj);
  }
  FqPoly m;
  m.c.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) m.c[i] = to_base(ext, acc[i]);
  return m;
}

}  // namespace ellseq

#pragma once

// Dense polynomials with coefficients in F_q, low degree first. Degrees stay
// tiny here (bounded by the place degree), so everything is schoolbook.

#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/gf.hpp"

namespace ellseq {

struct FqPoly {
  std::vector<FqElem> c;  // no trailing zero coefficients

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const FqPoly& o) const { return c == o.c; }
};

inline void fq_poly_trim(const FieldDescriptor& f, FqPoly& a) {
  while (!a.c.empty() && fq_is_zero(f, a.c.back())) a.c.pop_back();
}

inline FqPoly fq_poly_zero() { return {}; }

inline FqPoly fq_poly_const(const FieldDescriptor& f, const FqElem& v) {
  FqPoly r;
  if (!fq_is_zero(f, v)) r.c.push_back(v);
  return r;
}

inline FqPoly fq_poly_one(const FieldDescriptor& f) { return fq_poly_const(f, fq_one(f)); }

// x - r
inline FqPoly fq_poly_linear(const FieldDescriptor& f, const FqElem& r) {
  FqPoly out;
  out.c = {fq_neg(f, r), fq_one(f)};
  return out;
}

// coefficient monomial v * x^k
inline FqPoly fq_poly_monomial(const FieldDescriptor& f, const FqElem& v, int k) {
  FqPoly r;
  if (fq_is_zero(f, v)) return r;
  r.c.assign(k + 1, fq_zero(f));
  r.c[k] = v;
  return r;
}

inline FqPoly fq_poly_add(const FieldDescriptor& f, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), fq_zero(f));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    FqElem x = i < a.c.size() ? a.c[i] : fq_zero(f);
    FqElem y = i < b.c.size() ? b.c[i] : fq_zero(f);
    r.c[i] = fq_add(f, x, y);
  }
  fq_poly_trim(f, r);
  return r;
}

inline FqPoly fq_poly_sub(const FieldDescriptor& f, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), fq_zero(f));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    FqElem x = i < a.c.size() ? a.c[i] : fq_zero(f);
    FqElem y = i < b.c.size() ? b.c[i] : fq_zero(f);
    r.c[i] = fq_sub(f, x, y);
  }
  fq_poly_trim(f, r);
  return r;
}

inline FqPoly fq_poly_mul(const FieldDescriptor& f, const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FqPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, fq_zero(f));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (fq_is_zero(f, a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = fq_add(f, r.c[i + j], fq_mul(f, a.c[i], b.c[j]));
  }
  fq_poly_trim(f, r);
  return r;
}

inline FqPoly fq_poly_scale(const FieldDescriptor& f, const FqElem& s, const FqPoly& a) {
  FqPoly r;
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.push_back(fq_mul(f, s, x));
  fq_poly_trim(f, r);
  return r;
}

inline void fq_poly_divmod(const FieldDescriptor& f, FqPoly num, const FqPoly& den,
                           FqPoly& quot, FqPoly& rem) {
  if (den.is_zero()) throw std::domain_error("fq_poly_divmod: division by zero");
  fq_poly_trim(f, num);
  quot.c.assign(num.c.size() > den.c.size() ? num.c.size() - den.c.size() + 1 : 1,
                fq_zero(f));
  FqElem lead_inv = fq_inv(f, den.c.back());
  while (num.c.size() >= den.c.size() && !num.is_zero()) {
    FqElem k = fq_mul(f, num.c.back(), lead_inv);
    std::size_t shift = num.c.size() - den.c.size();
    quot.c[shift] = k;
    for (std::size_t i = 0; i < den.c.size(); ++i)
      num.c[shift + i] = fq_sub(f, num.c[shift + i], fq_mul(f, k, den.c[i]));
    fq_poly_trim(f, num);
  }
  fq_poly_trim(f, quot);
  rem = std::move(num);
}

inline FqPoly fq_poly_mod(const FieldDescriptor& f, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  fq_poly_divmod(f, a, b, q, r);
  return r;
}

inline FqPoly fq_poly_div_exact(const FieldDescriptor& f, const FqPoly& a, const FqPoly& b) {
  FqPoly q, r;
  fq_poly_divmod(f, a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("fq_poly_div_exact: nonzero remainder");
  return q;
}

inline FqPoly fq_poly_make_monic(const FieldDescriptor& f, const FqPoly& a) {
  if (a.is_zero()) return a;
  return fq_poly_scale(f, fq_inv(f, a.c.back()), a);
}

inline FqPoly fq_poly_gcd(const FieldDescriptor& f, FqPoly a, FqPoly b) {
  fq_poly_trim(f, a);
  fq_poly_trim(f, b);
  while (!b.is_zero()) {
    FqPoly r = fq_poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fq_poly_make_monic(f, a);
}

inline FqElem fq_poly_eval(const FieldDescriptor& f, const FqPoly& a, const FqElem& x) {
  FqElem r = fq_zero(f);
  for (std::size_t i = a.c.size(); i-- > 0;) r = fq_add(f, fq_mul(f, r, x), a.c[i]);
  return r;
}

inline std::string fq_poly_to_string(const FieldDescriptor& f, const FqPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (i) s += '|';
    s += fq_to_string(f, a.c[i]);
  }
  return s;
}

}  // namespace ellseq

#pragma once

// Just enough F_2[x] to measure periodic linear complexity two independent
// ways: N - deg gcd(x^N - 1, S(x)), and Berlekamp-Massey on the doubled
// bit stream.

#include <cstdint>
#include <vector>

#include "ellseq/seqgen.hpp"

namespace ellseq {

using F2Poly = std::vector<std::uint64_t>;  // bit i = coefficient of x^i

inline int f2_deg(const F2Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i]) return static_cast<int>(i * 64 + 63 - __builtin_clzll(a[i]));
  return -1;
}

inline bool f2_get(const F2Poly& a, int i) {
  std::size_t word = static_cast<std::size_t>(i) >> 6;
  return word < a.size() && ((a[word] >> (i & 63)) & 1);
}

inline void f2_xor_shifted(F2Poly& a, const F2Poly& b, int shift) {
  int word_shift = shift >> 6, bit_shift = shift & 63;
  std::size_t need = b.size() + word_shift + 1;
  if (a.size() < need) a.resize(need, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i + word_shift] ^= b[i] << bit_shift;
    if (bit_shift) a[i + word_shift + 1] ^= b[i] >> (64 - bit_shift);
  }
}

inline F2Poly f2_mod(F2Poly a, const F2Poly& b) {
  int db = f2_deg(b);
  if (db < 0) throw std::domain_error("f2_mod: division by zero polynomial");
  for (int da = f2_deg(a); da >= db; da = f2_deg(a)) f2_xor_shifted(a, b, da - db);
  return a;
}

inline F2Poly f2_gcd(F2Poly a, F2Poly b) {
  while (f2_deg(b) >= 0) {
    F2Poly r = f2_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline F2Poly f2_x_pow_plus_one(int n) {
  F2Poly f(static_cast<std::size_t>(n / 64) + 1, 0);
  f[0] |= 1;
  f[n >> 6] ^= 1ull << (n & 63);
  return f;
}

// Linear complexity via N - deg gcd(x^N - 1, S(x)); 0 for the zero sequence.
inline int lc_gcd_method(const BitSequence& s) {
  if (s.weight() == 0) return 0;
  F2Poly sx = s.w;
  return s.n - f2_deg(f2_gcd(f2_x_pow_plus_one(s.n), sx));
}

// Berlekamp-Massey on the 2N-term periodized stream.
inline int lc_berlekamp_massey(const BitSequence& s) {
  const int n2 = 2 * s.n;
  std::vector<std::uint8_t> bits(n2);
  for (int i = 0; i < n2; ++i) bits[i] = static_cast<std::uint8_t>(s.get(i % s.n));

  std::vector<std::uint8_t> c(n2 + 1, 0), b(n2 + 1, 0);
  c[0] = b[0] = 1;
  int l = 0, m = -1;
  for (int i = 0; i < n2; ++i) {
    std::uint8_t disc = bits[i];
    for (int j = 1; j <= l; ++j) disc ^= static_cast<std::uint8_t>(c[j] & bits[i - j]);
    if (disc == 0) continue;
    std::vector<std::uint8_t> t = c;
    int shift = i - m;
    for (int j = 0; j + shift <= n2; ++j) c[j + shift] ^= b[j];
    if (2 * l <= i) {
      l = i + 1 - l;
      m = i;
      b = std::move(t);
    }
  }
  return l;
}

}  // namespace ellseq

#pragma once

// Measurement side of the artifact: exact correlation maxima over a family
// (bit-packed XOR + popcount kernel with a naive reference path), balance,
// linear complexity by two methods, every bound formula, and place counting
// both by the Frobenius power-sum formula and by enumeration.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/curve.hpp"
#include "ellseq/ext.hpp"
#include "ellseq/f2poly.hpp"
#include "ellseq/seqgen.hpp"

namespace ellseq {

using int128 = __int128;

namespace detail {
inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
inline std::int64_t to_i64(int128 v) {
  if (v > int128(INT64_MAX) || v < int128(INT64_MIN))
    throw std::overflow_error("result does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}
}  // namespace detail

// --- packed correlation kernel ---

// The 2N-bit doubled copy of a sequence, so any rotation is a bit window.
struct DoubledBits {
  int n = 0;
  std::vector<std::uint64_t> w;
};

inline DoubledBits make_doubled(const BitSequence& s) {
  DoubledBits d;
  d.n = s.n;
  d.w.assign(static_cast<std::size_t>((2 * s.n + 63) / 64) + 1, 0);
  for (int j = 0; j < 2 * s.n; ++j) {
    if (s.get(j % s.n)) d.w[j >> 6] |= 1ull << (j & 63);
  }
  return d;
}

// Hamming weight of u XOR rot(v, t), reading rot(v, t) as the window
// [t, t+n) of the doubled copy.
inline int xor_rot_weight(const BitSequence& u, const DoubledBits& v, int t) {
  const int words = static_cast<int>(u.w.size());
  const int word_shift = t >> 6, bit_shift = t & 63;
  int acc = 0;
  for (int i = 0; i < words; ++i) {
    std::uint64_t win = v.w[i + word_shift] >> bit_shift;
    if (bit_shift) win |= v.w[i + word_shift + 1] << (64 - bit_shift);
    std::uint64_t x = win ^ u.w[i];
    if (i == words - 1 && (u.n & 63)) x &= (1ull << (u.n & 63)) - 1;
    acc += __builtin_popcountll(x);
  }
  return acc;
}

// A_u(s) = sum_j (-1)^{s_j + s_{j+u}} = N - 2 wt(s xor rot(s, u)).
inline std::int64_t autocorrelation(const BitSequence& s, int u) {
  if (u < 0 || u >= s.n) throw std::invalid_argument("autocorrelation: delay out of range");
  DoubledBits d = make_doubled(s);
  return static_cast<std::int64_t>(s.n) - 2LL * xor_rot_weight(s, d, u);
}

inline std::int64_t cross_correlation(const BitSequence& u, const BitSequence& v, int t) {
  if (u.n != v.n) throw std::invalid_argument("cross_correlation: length mismatch");
  if (t < 0 || t >= u.n) throw std::invalid_argument("cross_correlation: delay out of range");
  DoubledBits d = make_doubled(v);
  return static_cast<std::int64_t>(u.n) - 2LL * xor_rot_weight(u, d, t);
}

// Naive double-loop reference; the packed kernel must agree with this.
inline std::int64_t naive_cross_correlation(const BitSequence& u, const BitSequence& v,
                                            int t) {
  std::int64_t acc = 0;
  for (int j = 0; j < u.n; ++j)
    acc += (u.get(j) ^ v.get((j + t) % v.n)) ? -1 : 1;
  return acc;
}

struct CorrelationReport {
  std::int64_t max_auto = 0;                // max |A_u|, 1 <= u <= N-1
  std::int64_t max_cross = 0;               // max |C_t|, 0 <= t <= N-1
  std::int64_t max_cross_nonzero_delay = 0; // max |C_t|, 1 <= t <= N-1
  std::int64_t cor = 0;
  bool include_zero_delay = true;
  int auto_seq = -1, auto_delay = 0;
  int cross_i = -1, cross_j = -1, cross_delay = 0;
  int cross_nz_i = -1, cross_nz_j = -1, cross_nz_delay = 0;
};

inline CorrelationReport family_correlation(const std::vector<BitSequence>& seqs,
                                            bool include_zero_delay) {
  if (seqs.empty()) throw std::invalid_argument("family_correlation: empty family");
  const int n = seqs[0].n;
  CorrelationReport rep;
  rep.include_zero_delay = include_zero_delay;
  std::vector<DoubledBits> doubled;
  doubled.reserve(seqs.size());
  for (const auto& s : seqs) {
    if (s.n != n) throw std::invalid_argument("family_correlation: length mismatch");
    doubled.push_back(make_doubled(s));
  }
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (int u = 1; u < n; ++u) {
      std::int64_t a = n - 2 * xor_rot_weight(seqs[i], doubled[i], u);
      if (std::abs(a) > rep.max_auto) {
        rep.max_auto = std::abs(a);
        rep.auto_seq = static_cast<int>(i);
        rep.auto_delay = u;
      }
    }
  }
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = i + 1; j < seqs.size(); ++j) {
      for (int t = 0; t < n; ++t) {
        std::int64_t c = n - 2 * xor_rot_weight(seqs[i], doubled[j], t);
        std::int64_t mag = std::abs(c);
        if (mag > rep.max_cross) {
          rep.max_cross = mag;
          rep.cross_i = static_cast<int>(i);
          rep.cross_j = static_cast<int>(j);
          rep.cross_delay = t;
        }
        if (t >= 1 && mag > rep.max_cross_nonzero_delay) {
          rep.max_cross_nonzero_delay = mag;
          rep.cross_nz_i = static_cast<int>(i);
          rep.cross_nz_j = static_cast<int>(j);
          rep.cross_nz_delay = t;
        }
      }
    }
  }
  rep.cor = std::max(rep.max_auto,
                     include_zero_delay ? rep.max_cross : rep.max_cross_nonzero_delay);
  return rep;
}

// Pairs of bit-identical sequences (these are exactly where the delay-0
// cross-correlation reaches N).
inline std::vector<std::pair<int, int>> delay0_duplicates(
    const std::vector<BitSequence>& seqs) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    for (std::size_t j = i + 1; j < seqs.size(); ++j)
      if (seqs[i] == seqs[j]) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

struct BalanceReport {
  std::vector<std::int64_t> per_sequence;  // |#1s - #0s|
  std::int64_t delta = 0;                  // max over the family
  int witness = -1;
};

inline BalanceReport balance(const std::vector<BitSequence>& seqs) {
  if (seqs.empty()) throw std::invalid_argument("balance: empty family");
  BalanceReport rep;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    std::int64_t diff = std::abs(static_cast<std::int64_t>(2 * seqs[i].weight()) -
                                 static_cast<std::int64_t>(seqs[i].n));
    rep.per_sequence.push_back(diff);
    if (diff > rep.delta) {
      rep.delta = diff;
      rep.witness = static_cast<int>(i);
    }
  }
  return rep;
}

// Periodic linear complexity; the gcd method is authoritative and the
// Berlekamp-Massey value must match it.
inline int linear_complexity(const BitSequence& s) {
  if (s.n == 0) throw std::invalid_argument("linear_complexity: empty sequence");
  int by_gcd = lc_gcd_method(s);
  int by_bm = lc_berlekamp_massey(s);
  if (by_gcd != by_bm)
    throw std::logic_error("linear_complexity: gcd and Berlekamp-Massey disagree");
  return by_gcd;
}

struct LCReport {
  std::vector<int> per_sequence;
  int lc_min = 0;
  int witness = -1;
  bool methods_agree = true;
};

inline LCReport family_lc(const std::vector<BitSequence>& seqs) {
  if (seqs.empty()) throw std::invalid_argument("family_lc: empty family");
  LCReport rep;
  rep.lc_min = INT32_MAX;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    int by_gcd = lc_gcd_method(seqs[i]);
    if (by_gcd != lc_berlekamp_massey(seqs[i])) rep.methods_agree = false;
    rep.per_sequence.push_back(by_gcd);
    if (by_gcd < rep.lc_min) {
      rep.lc_min = by_gcd;
      rep.witness = static_cast<int>(i);
    }
  }
  return rep;
}

// --- bound formulas ---

inline std::int64_t floor_two_sqrt(std::uint64_t q) {
  return static_cast<std::int64_t>(isqrt_u64(4 * q));
}

// (d+1) floor(2 sqrt q) + |t| + d
inline std::int64_t bound_balance(std::uint64_t q, std::int64_t t, int d) {
  return (d + 1) * floor_two_sqrt(q) + std::abs(t) + d;
}

// (2d+1) floor(2 sqrt q) + |t| + 2d
inline std::int64_t bound_correlation(std::uint64_t q, std::int64_t t, int d) {
  return (2 * d + 1) * floor_two_sqrt(q) + std::abs(t) + 2 * d;
}

// Corollary-form variants with the |t| term dropped (at d = 2: balance
// 3 floor(2 sqrt q) + 2, correlation 5 floor(2 sqrt q) + 4). Reported
// alongside the main bounds for table comparison.
inline std::int64_t bound_balance_corollary(std::uint64_t q, int d) {
  return (d + 1) * floor_two_sqrt(q) + d;
}
inline std::int64_t bound_correlation_corollary(std::uint64_t q, int d) {
  return (2 * d + 1) * floor_two_sqrt(q) + 2 * d;
}

// Exact unreduced rational, compared by cross-multiplication.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0

  std::int64_t ceil() const {
    if (num >= 0) return (num + den - 1) / den;
    return -((-num) / den);
  }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// (q + 1 + 2t - d - (d+1) floor(2 sqrt q)) / (d + d floor(2 sqrt q));
// may be <= 0 at small q, in which case the bound is vacuous.
inline Rational bound_lc(std::uint64_t q, std::int64_t t, int d) {
  std::int64_t w = floor_two_sqrt(q);
  Rational r;
  r.num = static_cast<std::int64_t>(q) + 1 + 2 * t - d - (d + 1) * w;
  r.den = d + d * w;
  return r;
}

// --- place counting ---

inline int mobius(int n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be positive");
  int result = 1;
  for (int f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    n /= f;
    if (n % f == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

namespace detail {
// Closed form S_r = sum_i (-1)^{r-i} (r-i-1)! r / ((r-2i)! i!) t^{r-2i} q^i.
inline int128 power_sum_closed_form(std::int64_t t, std::uint64_t q, int r) {
  int128 acc = 0;
  for (int i = 0; 2 * i <= r; ++i) {
    std::uint64_t num = 1;
    for (int k = 2; k <= r - i - 1; ++k) num *= k;  // (r-i-1)!
    num *= static_cast<std::uint64_t>(r);
    std::uint64_t den = 1;
    for (int k = 2; k <= r - 2 * i; ++k) den *= k;  // (r-2i)!
    for (int k = 2; k <= i; ++k) den *= k;          // i!
    if (num % den != 0) throw std::logic_error("power_sum_closed_form: non-integer coefficient");
    int128 term = static_cast<int128>(num / den);
    for (int k = 0; k < r - 2 * i; ++k) term = checked_mul(term, t);
    for (int k = 0; k < i; ++k) term = checked_mul(term, static_cast<int128>(q));
    if ((r - i) % 2 != 0) term = -term;
    acc = checked_add(acc, term);
  }
  return acc;
}

inline int128 power_sum_recurrence(std::int64_t t, std::uint64_t q, int r) {
  int128 s_prev = 2, s_cur = -t;  // S_0, S_1
  if (r == 0) return s_prev;
  for (int k = 2; k <= r; ++k) {
    int128 s_next = checked_sub(checked_mul(int128(-t), s_cur),
                                checked_mul(int128(q), s_prev));
    s_prev = s_cur;
    s_cur = s_next;
  }
  return s_cur;
}
}  // namespace detail

// S_r with S_0 = 2, S_1 = -t, S_r = -t S_{r-1} - q S_{r-2}; sign convention
// fixed by B_1 = q + 1 - S_1 = q + 1 + t. The recurrence and the closed form
// are both evaluated and must agree.
inline std::int64_t frobenius_power_sum(std::int64_t t, std::uint64_t q, int r) {
  if (r < 0) throw std::invalid_argument("frobenius_power_sum: r must be >= 0");
  int128 by_rec = detail::power_sum_recurrence(t, q, r);
  if (r >= 1 && by_rec != detail::power_sum_closed_form(t, q, r))
    throw std::logic_error("frobenius_power_sum: recurrence and closed form disagree");
  return detail::to_i64(by_rec);
}

// B_d = (1/d) sum_{r | d} mu(d/r) (q^r + 1 - S_r).
inline std::int64_t places_count_formula(std::uint64_t q, std::int64_t t, int d) {
  if (d < 1) throw std::invalid_argument("places_count_formula: d must be >= 1");
  int128 acc = 0;
  for (int r = 1; r <= d; ++r) {
    if (d % r != 0) continue;
    int mu = mobius(d / r);
    if (mu == 0) continue;
    int128 qr = 1;
    for (int k = 0; k < r; ++k) qr = detail::checked_mul(qr, static_cast<int128>(q));
    int128 nr = detail::checked_add(detail::checked_sub(qr, detail::power_sum_recurrence(t, q, r)), 1);
    acc = detail::checked_add(acc, mu > 0 ? nr : -nr);
  }
  if (acc % d != 0)
    throw std::logic_error("places_count_formula: Mobius sum is not divisible by d");
  return detail::to_i64(acc / d);
}

// Cached extensions and character tables for repeated place counting over
// one base field (the exhaustive curve sweeps reuse these).
struct EnumerationContext {
  FieldDescriptor field;
  QrTable base_table;
  std::vector<std::pair<ExtDescriptor, QrTable>> exts;  // one per r >= 2 needed

  const std::pair<ExtDescriptor, QrTable>* find(int r) const {
    for (const auto& e : exts)
      if (e.first.d == r) return &e;
    return nullptr;
  }
};

inline EnumerationContext make_enumeration_context(const FieldDescriptor& field, int d,
                                                   std::uint64_t max_q = kDefaultMaxQ) {
  EnumerationContext ctx;
  ctx.field = field;
  ctx.base_table = field.q <= kQrTableLimit ? make_qr_table(field) : QrTable{};
  for (int r = 2; r <= d; ++r) {
    if (d % r != 0) continue;
    ExtDescriptor ext = make_ext(field, r, max_q);
    QrTable table = ext.big.q <= kQrTableLimit ? make_qr_table(ext.big) : QrTable{};
    ctx.exts.emplace_back(std::move(ext), std::move(table));
  }
  return ctx;
}

// Independent oracle: count Frobenius orbits of size exactly d among the
// curve's points over F_{q^d}, from enumerated subfield point counts.
inline std::int64_t places_count_enumerate(const WeierstrassCurve& curve, int d,
                                           const EnumerationContext& ctx) {
  if (d < 1) throw std::invalid_argument("places_count_enumerate: d must be >= 1");
  std::vector<int> divisors;
  for (int r = 1; r <= d; ++r)
    if (d % r == 0) divisors.push_back(r);

  std::vector<std::int64_t> point_counts(divisors.size());
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    int r = divisors[i];
    if (r == 1) {
      const QrTable* tp = ctx.base_table.chi.empty() ? nullptr : &ctx.base_table;
      point_counts[i] = static_cast<std::int64_t>(count_points_view(base_view(curve), tp));
    } else {
      const auto* entry = ctx.find(r);
      if (!entry) throw std::invalid_argument("places_count_enumerate: context lacks r=" +
                                              std::to_string(r));
      const QrTable* tp = entry->second.chi.empty() ? nullptr : &entry->second;
      point_counts[i] =
          static_cast<std::int64_t>(count_points_view(ext_view(curve, entry->first), tp));
    }
  }
  // exact-degree counts: e_r = N_r - sum_{s | r, s < r} e_s
  std::vector<std::int64_t> exact(divisors.size());
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    std::int64_t e = point_counts[i];
    for (std::size_t jj = 0; jj < i; ++jj)
      if (divisors[i] % divisors[jj] == 0) e -= exact[jj];
    exact[i] = e;
  }
  std::int64_t full = exact.back();
  if (full % d != 0)
    throw std::logic_error("places_count_enumerate: point degrees do not split into orbits");
  return full / d;
}

inline std::int64_t places_count_enumerate(const WeierstrassCurve& curve, int d,
                                           std::uint64_t max_q = kDefaultMaxQ) {
  return places_count_enumerate(curve, d, make_enumeration_context(curve.field, d, max_q));
}

}  // namespace ellseq

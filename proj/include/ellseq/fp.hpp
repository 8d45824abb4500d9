#pragma once

// Arithmetic mod an odd prime p, dense polynomials over F_p, and the small
// integer helpers (exact isqrt, primality) the rest of the library leans on.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellseq {

// floor(sqrt(x)) in pure integer arithmetic.
inline std::uint64_t isqrt_u64(std::uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

// Scalar arithmetic mod p. p is assumed to fit comfortably below 2^31 so
// products never overflow uint64.
struct Fp {
  std::uint64_t p;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p) s -= p;
    return static_cast<std::uint32_t>(s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return b <= a ? a - b : static_cast<std::uint32_t>(a + p - b);
  }
  std::uint32_t neg(std::uint32_t a) const {
    return a == 0 ? 0 : static_cast<std::uint32_t>(p - a);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % static_cast<std::uint32_t>(p);
    std::uint32_t base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv of zero");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = a;
    while (new_r != 0) {
      std::int64_t qq = r / new_r;
      std::int64_t tmp = t - qq * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - qq * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(t);
  }
};

// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_poly_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_poly_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FpPoly fp_poly_add(const Fp& fp, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t x = i < a.size() ? a[i] : 0;
    std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = fp.add(x, y);
  }
  fp_poly_trim(r);
  return r;
}

inline FpPoly fp_poly_sub(const Fp& fp, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t x = i < a.size() ? a[i] : 0;
    std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = fp.sub(x, y);
  }
  fp_poly_trim(r);
  return r;
}

inline FpPoly fp_poly_mul(const Fp& fp, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = fp.add(r[i + j], fp.mul(a[i], b[j]));
  }
  fp_poly_trim(r);
  return r;
}

// Division with remainder; divisor need not be monic.
inline void fp_poly_divmod(const Fp& fp, FpPoly num, const FpPoly& den,
                           FpPoly& quot, FpPoly& rem) {
  if (den.empty()) throw std::domain_error("fp_poly_divmod: division by zero");
  fp_poly_trim(num);
  quot.assign(num.size() > den.size() ? num.size() - den.size() + 1 : 1, 0);
  std::uint32_t lead_inv = fp.inv(den.back());
  while (num.size() >= den.size() && !num.empty()) {
    std::uint32_t c = fp.mul(num.back(), lead_inv);
    std::size_t shift = num.size() - den.size();
    quot[shift] = c;
    for (std::size_t i = 0; i < den.size(); ++i)
      num[shift + i] = fp.sub(num[shift + i], fp.mul(c, den[i]));
    fp_poly_trim(num);
  }
  fp_poly_trim(quot);
  rem = std::move(num);
}

inline FpPoly fp_poly_mod(const Fp& fp, const FpPoly& num, const FpPoly& den) {
  FpPoly q, r;
  fp_poly_divmod(fp, num, den, q, r);
  return r;
}

inline FpPoly fp_poly_gcd(const Fp& fp, FpPoly a, FpPoly b) {
  while (!b.empty()) {
    FpPoly r = fp_poly_mod(fp, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint32_t s = fp.inv(a.back());
    for (auto& c : a) c = fp.mul(c, s);
  }
  return a;
}

inline std::uint32_t fp_poly_eval(const Fp& fp, const FpPoly& f, std::uint32_t x) {
  std::uint32_t r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = fp.add(fp.mul(r, x), f[i]);
  return r;
}

inline FpPoly fp_poly_mulmod(const Fp& fp, const FpPoly& a, const FpPoly& b,
                             const FpPoly& mod) {
  return fp_poly_mod(fp, fp_poly_mul(fp, a, b), mod);
}

// x^e mod `mod` by square and multiply.
inline FpPoly fp_poly_xpowmod(const Fp& fp, std::uint64_t e, const FpPoly& mod) {
  FpPoly result{1};
  FpPoly base = fp_poly_mod(fp, FpPoly{0, 1}, mod);
  while (e > 0) {
    if (e & 1) result = fp_poly_mulmod(fp, result, base, mod);
    base = fp_poly_mulmod(fp, base, base, mod);
    e >>= 1;
  }
  return result;
}

// Rabin's test: monic f of degree k is irreducible over F_p iff
// x^{p^k} = x (mod f) and gcd(x^{p^{k/l}} - x, f) = 1 for every prime l | k.
inline bool fp_poly_irreducible(const Fp& fp, const FpPoly& f) {
  int k = fp_poly_deg(f);
  if (k < 1) return false;
  if (k == 1) return true;

  // Frobenius iterates: frob[j] = x^{p^j} mod f, built by applying the p-th
  // power map (a linear map once x^{p*i} tables are known) j times.
  std::vector<FpPoly> xp_pows(k);  // x^{p*i} mod f for i < k
  xp_pows[0] = FpPoly{1};
  FpPoly xp = fp_poly_xpowmod(fp, fp.p, f);
  for (int i = 1; i < k; ++i) xp_pows[i] = fp_poly_mulmod(fp, xp_pows[i - 1], xp, f);
  auto frob_apply = [&](const FpPoly& g) {
    FpPoly r;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0) continue;
      FpPoly term = xp_pows[i];
      for (auto& c : term) c = fp.mul(c, g[i]);
      r = fp_poly_add(fp, r, term);
    }
    return r;
  };

  std::vector<FpPoly> frob(k + 1);
  frob[0] = FpPoly{0, 1};
  for (int j = 1; j <= k; ++j) frob[j] = frob_apply(frob[j - 1]);

  const FpPoly x{0, 1};
  if (fp_poly_sub(fp, frob[k], x) != FpPoly{}) return false;
  int rest = k;
  for (int l = 2; l <= rest; ++l) {
    if (rest % l != 0) continue;
    while (rest % l == 0) rest /= l;
    FpPoly diff = fp_poly_sub(fp, frob[k / l], x);
    if (fp_poly_deg(fp_poly_gcd(fp, diff, f)) != 0) return false;
  }
  return true;
}

inline std::string fp_poly_to_string(const FpPoly& f) {
  std::ostringstream os;
  if (f.empty()) return "0";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ',';
    os << f[i];
  }
  return os.str();
}

inline FpPoly fp_poly_from_string(const std::string& s, std::uint64_t p) {
  FpPoly f;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("bad polynomial digits: " + s);
    std::uint64_t v = std::stoull(tok);
    if (v >= p) throw std::invalid_argument("polynomial digit out of range: " + tok);
    f.push_back(static_cast<std::uint32_t>(v));
  }
  fp_poly_trim(f);
  return f;
}

// --- small dense linear algebra over F_p (row major) ---

using FpMatrix = std::vector<std::vector<std::uint32_t>>;

// In-place reduced row echelon form; returns pivot column per pivot row.
inline std::vector<int> fp_mat_rref(const Fp& fp, FpMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    std::uint32_t s = fp.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = fp.mul(m[r][j], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint32_t f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = fp.sub(m[i][j], fp.mul(f, m[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

// Kernel basis of m (as column vectors), from the RREF free columns.
inline FpMatrix fp_mat_kernel(const Fp& fp, FpMatrix m) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<int> pivots = fp_mat_rref(fp, m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  FpMatrix basis;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[fc] = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = fp.neg(m[pr][fc]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a square matrix; throws if singular.
inline FpMatrix fp_mat_inverse(const Fp& fp, const FpMatrix& m) {
  std::size_t n = m.size();
  FpMatrix aug(n, std::vector<std::uint32_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<int> pivots = fp_mat_rref(fp, aug);
  if (pivots.size() != n || static_cast<std::size_t>(pivots.back()) != n - 1)
    throw std::domain_error("fp_mat_inverse: singular matrix");
  FpMatrix inv(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline std::vector<std::uint32_t> fp_mat_apply(const Fp& fp, const FpMatrix& m,
                                               const std::vector<std::uint32_t>& v) {
  std::vector<std::uint32_t> r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += std::uint64_t(m[i][j]) * v[j];
    r[i] = static_cast<std::uint32_t>(acc % fp.p);
  }
  return r;
}

}  // namespace ellseq

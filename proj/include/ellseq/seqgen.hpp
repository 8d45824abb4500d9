#pragma once

// Sequence family generation: enumerate V \ {0}, map each function z to the
// binary sequence s_j = eta(z([j]P)) with P_0 = O, and optionally collapse
// the square-scaling duplicates (z and c^2 z always produce identical bits).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellseq/curve.hpp"
#include "ellseq/funcfield.hpp"

namespace ellseq {

struct DumpFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bit-packed binary sequence, bit j at word j/64, bit j%64.
struct BitSequence {
  int n = 0;
  std::vector<std::uint64_t> w;

  static BitSequence zeros(int n) {
    BitSequence s;
    s.n = n;
    s.w.assign((n + 63) / 64, 0);
    return s;
  }
  int get(int j) const { return static_cast<int>((w[j >> 6] >> (j & 63)) & 1); }
  void set(int j, int bit) {
    if (bit)
      w[j >> 6] |= (1ull << (j & 63));
    else
      w[j >> 6] &= ~(1ull << (j & 63));
  }
  int weight() const {
    int acc = 0;
    for (std::uint64_t word : w) acc += __builtin_popcountll(word);
    return acc;
  }
  bool operator==(const BitSequence& o) const { return n == o.n && w == o.w; }
  bool operator<(const BitSequence& o) const { return w < o.w; }
};

enum class FamilyMode { PaperFaithful, Deduped };

inline const char* family_mode_name(FamilyMode m) {
  return m == FamilyMode::PaperFaithful ? "PAPER_FAITHFUL" : "DEDUPED";
}

inline FamilyMode family_mode_from_string(const std::string& s) {
  if (s == "PAPER_FAITHFUL") return FamilyMode::PaperFaithful;
  if (s == "DEDUPED") return FamilyMode::Deduped;
  throw std::invalid_argument("unknown family mode: " + s);
}

struct SequenceFamily {
  std::uint64_t length = 0;  // N = q + 1 + t
  FamilyMode mode = FamilyMode::PaperFaithful;
  std::vector<BitSequence> sequences;

  WeierstrassCurve curve;
  std::int64_t trace = 0;
  Place place;
  CurvePoint generator;
  std::vector<RationalFunction> v_basis;
  // Coefficient vector of each emitted z over v_basis (enumeration indexes).
  std::vector<std::vector<std::uint64_t>> coeff_vectors;

  std::uint64_t size() const { return sequences.size(); }
};

// All nonzero F_q-linear combinations of the V-basis in odometer order over
// the coefficient vectors (first coefficient spins fastest).
inline std::vector<std::vector<std::uint64_t>> enumerate_v_coefficients(
    const FieldDescriptor& f, int dim) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> idx(dim, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= f.q;
  out.reserve(total - 1);
  for (std::uint64_t r = 1; r < total; ++r) {
    std::uint64_t t = r;
    for (int i = 0; i < dim; ++i) {
      idx[i] = t % f.q;
      t /= f.q;
    }
    out.push_back(idx);
  }
  return out;
}

inline RationalFunction combine_v(const FieldDescriptor& f,
                                  const std::vector<RationalFunction>& v_basis,
                                  const std::vector<std::uint64_t>& coeffs) {
  RationalFunction z = rf_zero(f);
  for (std::size_t k = 0; k < v_basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    z = rf_add(f, z, rf_scale(f, fq_from_index(f, coeffs[k]), v_basis[k]));
  }
  return z;
}

inline std::vector<RationalFunction> enumerate_nonzero_V(
    const FieldDescriptor& f, const std::vector<RationalFunction>& v_basis) {
  std::vector<RationalFunction> out;
  for (const auto& coeffs : enumerate_v_coefficients(f, static_cast<int>(v_basis.size())))
    out.push_back(combine_v(f, v_basis, coeffs));
  return out;
}

namespace detail {
inline std::vector<CurvePoint> translation_points(const WeierstrassCurve& curve,
                                                  const CurvePoint& gen,
                                                  std::uint64_t n_points,
                                                  const CurvePoint& start) {
  CurveView v = base_view(curve);
  std::vector<CurvePoint> pts;
  pts.reserve(n_points);
  CurvePoint cur = start;
  for (std::uint64_t j = 0; j < n_points; ++j) {
    pts.push_back(cur);
    cur = add_points(v, cur, gen);
  }
  return pts;
}

inline BitSequence sequence_from_points(const WeierstrassCurve& curve,
                                        const RationalFunction& z,
                                        const std::vector<CurvePoint>& pts,
                                        const QrTable* table) {
  BitSequence s = BitSequence::zeros(static_cast<int>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    FqElem val = evaluate(curve, z, pts[j]);
    int bit;
    if (table)
      bit = table->chi[fq_index(curve.field, val)] < 0 ? 1 : 0;
    else
      bit = eta(curve.field, val);
    if (bit) s.set(static_cast<int>(j), 1);
  }
  return s;
}
}  // namespace detail

// s_j = eta(z([j]P + start)), j = 0 .. N-1; with the default start = O the
// index origin is P_0 = O.
inline BitSequence generate_sequence(const WeierstrassCurve& curve, const CurvePoint& gen,
                                     const RationalFunction& z,
                                     const CurvePoint& start = CurvePoint::at_infinity()) {
  CurveView v = base_view(curve);
  if (!is_on_curve(v, gen)) throw std::invalid_argument("generate_sequence: bad generator");
  std::uint64_t n_points = count_points_view(v);
  std::vector<CurvePoint> pts = detail::translation_points(curve, gen, n_points, start);
  return detail::sequence_from_points(curve, z, pts, nullptr);
}

// Orbit representative of a coefficient vector under multiplication by
// nonzero squares: the orbit member with the smallest odometer rank.
inline bool is_square_class_representative(const FieldDescriptor& f,
                                           const std::vector<std::uint64_t>& coeffs) {
  std::vector<FqElem> vec(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) vec[i] = fq_from_index(f, coeffs[i]);
  auto rank_of = [&](const std::vector<FqElem>& v) {
    std::uint64_t r = 0;
    for (std::size_t i = v.size(); i-- > 0;) r = r * f.q + fq_index(f, v[i]);
    return r;
  };
  std::uint64_t own = rank_of(vec);
  for (std::uint64_t mi = 1; mi < f.q; ++mi) {
    FqElem mu = fq_from_index(f, mi);
    if (!is_square(f, mu)) continue;
    std::vector<FqElem> scaled(vec.size());
    for (std::size_t i = 0; i < vec.size(); ++i) scaled[i] = fq_mul(f, mu, vec[i]);
    if (rank_of(scaled) < own) return false;
  }
  return true;
}

inline SequenceFamily generate_family(const WeierstrassCurve& curve, const Place& place,
                                      FamilyMode mode) {
  const FieldDescriptor& f = curve.field;
  GroupSummary summary = group_summary(curve);
  if (!summary.cyclic)
    throw std::invalid_argument("generate_family: curve group is not cyclic");
  if (std::gcd<std::uint64_t, std::uint64_t>(place.d, summary.n_points) != 1)
    throw std::invalid_argument("generate_family: gcd(d, #E(F_q)) must be 1");

  RRBasis rr = rr_basis(curve, place);
  SequenceFamily fam;
  fam.length = summary.n_points;
  fam.mode = mode;
  fam.curve = curve;
  fam.trace = summary.trace;
  fam.place = place;
  fam.generator = *summary.generator;
  fam.v_basis = rr.v_basis;

  QrTable table = f.q <= kQrTableLimit ? make_qr_table(f) : QrTable{};
  const QrTable* tp = f.q <= kQrTableLimit ? &table : nullptr;
  std::vector<CurvePoint> pts = detail::translation_points(
      curve, fam.generator, summary.n_points, CurvePoint::at_infinity());

  for (const auto& coeffs :
       enumerate_v_coefficients(f, static_cast<int>(rr.v_basis.size()))) {
    if (mode == FamilyMode::Deduped && !is_square_class_representative(f, coeffs)) continue;
    RationalFunction z = combine_v(f, rr.v_basis, coeffs);
    fam.sequences.push_back(detail::sequence_from_points(curve, z, pts, tp));
    fam.coeff_vectors.push_back(coeffs);
  }

  if (mode == FamilyMode::Deduped) {
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& s : fam.sequences)
      if (!seen.insert(s.w).second)
        throw std::logic_error("generate_family: deduped sequences are not distinct");
  }
  return fam;
}

inline std::uint64_t distinct_sequence_count(const SequenceFamily& fam) {
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& s : fam.sequences) seen.insert(s.w);
  return seen.size();
}

// --- dump format ---
// One header line "# p=..;n=..;t=..;d=..;curve=..;place=..;mode=..", then one
// '0'/'1' line per sequence in family order. Values may themselves contain
// ';' (never '='), so parsing splits on ';' and glues '='-free segments back
// onto the previous value.

inline std::string dump_family(const SequenceFamily& fam) {
  std::ostringstream os;
  os << "# p=" << fam.curve.field.p << ";n=" << fam.curve.field.n << ";t=" << fam.trace
     << ";d=" << fam.place.d << ";curve=" << curve_to_string(fam.curve)
     << ";place=" << place_to_string(fam.place) << ";mode=" << family_mode_name(fam.mode)
     << "\n";
  for (const auto& s : fam.sequences) {
    std::string line(s.n, '0');
    for (int j = 0; j < s.n; ++j)
      if (s.get(j)) line[j] = '1';
    os << line << "\n";
  }
  return os.str();
}

struct DumpData {
  std::uint64_t p = 0;
  int n = 0;
  std::int64_t t = 0;
  int d = 0;
  std::string curve_str, place_str;
  FamilyMode mode = FamilyMode::PaperFaithful;
  std::vector<BitSequence> sequences;
};

inline DumpData parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
    throw DumpFormatError("dump: missing header line");
  std::string header = line.substr(1);
  while (!header.empty() && header.front() == ' ') header.erase(header.begin());

  std::vector<std::pair<std::string, std::string>> kv;
  std::size_t start = 0;
  while (start <= header.size()) {
    std::size_t sep = header.find(';', start);
    std::string seg = header.substr(start, sep == std::string::npos ? sep : sep - start);
    std::size_t eq = seg.find('=');
    if (eq == std::string::npos) {
      if (kv.empty()) throw DumpFormatError("dump: malformed header segment: " + seg);
      kv.back().second += ";" + seg;
    } else {
      kv.emplace_back(seg.substr(0, eq), seg.substr(eq + 1));
    }
    if (sep == std::string::npos) break;
    start = sep + 1;
  }

  DumpData out;
  bool have_p = false, have_n = false, have_t = false, have_d = false, have_mode = false;
  try {
    for (const auto& [k, v] : kv) {
      if (k == "p") {
        out.p = std::stoull(v);
        have_p = true;
      } else if (k == "n") {
        out.n = std::stoi(v);
        have_n = true;
      } else if (k == "t") {
        out.t = std::stoll(v);
        have_t = true;
      } else if (k == "d") {
        out.d = std::stoi(v);
        have_d = true;
      } else if (k == "curve") {
        out.curve_str = v;
      } else if (k == "place") {
        out.place_str = v;
      } else if (k == "mode") {
        out.mode = family_mode_from_string(v);
        have_mode = true;
      } else {
        throw DumpFormatError("dump: unknown header key: " + k);
      }
    }
  } catch (const DumpFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw DumpFormatError(std::string("dump: bad header value: ") + e.what());
  }
  if (!have_p || !have_n || !have_t || !have_d || !have_mode ||
      out.curve_str.empty() || out.place_str.empty())
    throw DumpFormatError("dump: header is missing required keys");

  std::uint64_t q = 1;
  for (int i = 0; i < out.n; ++i) q *= out.p;
  std::int64_t expect_n = static_cast<std::int64_t>(q) + 1 + out.t;
  if (expect_n <= 0) throw DumpFormatError("dump: inconsistent length parameters");

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (static_cast<std::int64_t>(line.size()) != expect_n)
      throw DumpFormatError("dump: sequence line has wrong length");
    BitSequence s = BitSequence::zeros(static_cast<int>(line.size()));
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '1')
        s.set(static_cast<int>(j), 1);
      else if (line[j] != '0')
        throw DumpFormatError("dump: sequence line has a character other than 0/1");
    }
    out.sequences.push_back(std::move(s));
  }
  if (out.sequences.empty()) throw DumpFormatError("dump: no sequences");
  return out;
}

}  // namespace ellseq

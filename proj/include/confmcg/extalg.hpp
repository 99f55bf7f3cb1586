#pragma once

// The exterior algebra Lambda[x_1..x_n] over Q, the Lefschetz map
// Phi(z) = z ^ omega on Lambda[x_1..x_2g], and bases of its kernel K and
// cokernel V.
//
// Monomials are bitmasks (bit i-1 <-> x_i). Degree slices list the masks of
// a fixed popcount in increasing integer order.

#include <confmcg/freegroup.hpp>
#include <confmcg/matrix.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace confmcg {

using Mask = std::uint32_t;

inline constexpr int kMaxExteriorRank = 24;

inline int popcount(Mask m) { return std::popcount(m); }

/// Sign of x_a ^ x_b relative to x_{a|b}; 0 when a and b overlap.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Mask bb = b; bb; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

class ExtElem {
 public:
  ExtElem() = default;
  explicit ExtElem(int rank) : rank_(rank) {
    if (rank < 0 || rank > kMaxExteriorRank) throw RankMismatch("exterior algebra rank out of range");
  }

  static ExtElem one(int rank) { return monomial(rank, 0, 1); }
  static ExtElem monomial(int rank, Mask m, const Rational& c = 1) {
    ExtElem e(rank);
    e.add(m, c);
    return e;
  }
  /// x_i, 1-based.
  static ExtElem generator(int rank, int i) {
    if (i < 1 || i > rank) throw IndexOutOfRange("exterior generator index out of range");
    return monomial(rank, Mask{1} << (i - 1));
  }

  int rank() const { return rank_; }
  const std::map<Mask, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(Mask m, const Rational& c) {
    if (rank_ < 32 && (m >> rank_) != 0) throw IndexOutOfRange("monomial outside the exterior algebra");
    if (c == 0) return;
    Rational& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }

  /// Degree-k part.
  ExtElem homogeneous(int k) const {
    ExtElem e(rank_);
    for (const auto& [m, c] : terms_)
      if (popcount(m) == k) e.terms_.emplace(m, c);
    return e;
  }

  /// Degree if homogeneous, -1 for zero, throws otherwise.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      if (d >= 0 && popcount(m) != d) throw DegreeOutOfRange("element is not homogeneous");
      d = popcount(m);
    }
    return d;
  }

  ExtElem& operator+=(const ExtElem& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  ExtElem& operator-=(const ExtElem& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend ExtElem operator+(ExtElem a, const ExtElem& b) { return a += b; }
  friend ExtElem operator-(ExtElem a, const ExtElem& b) { return a -= b; }
  friend ExtElem operator*(const Rational& s, ExtElem a) {
    if (s == 0) return ExtElem(a.rank_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }

  friend bool operator==(const ExtElem&, const ExtElem&) = default;

 private:
  void check(const ExtElem& o) const {
    if (o.rank_ != rank_) throw RankMismatch("exterior algebra ranks differ");
  }

  int rank_ = 0;
  std::map<Mask, Rational> terms_;
};

inline ExtElem wedge(const ExtElem& u, const ExtElem& v) {
  if (u.rank() != v.rank()) throw RankMismatch("wedge: ranks differ");
  ExtElem out(u.rank());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms())
      if (int s = wedge_sign(a, b)) out.add(a | b, s > 0 ? ca * cb : Rational(-(ca * cb)));
  return out;
}

inline std::string monomial_string(Mask m) {
  if (m == 0) return "1";
  std::string s;
  for (Mask mm = m; mm; mm &= mm - 1) s += "x" + std::to_string(std::countr_zero(mm) + 1);
  return s;
}

inline std::string to_string(const ExtElem& e) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational mag = abs(c);
    s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (m == 0)
      s += to_string(mag);
    else {
      if (mag != 1) s += to_string(mag) + "*";
      s += monomial_string(m);
    }
    first = false;
  }
  return s;
}

/// omega = x1x2 + x3x4 + ... in Lambda[x_1..x_2g].
inline ExtElem omega(int genus) {
  if (genus < 0) throw DegreeOutOfRange("negative genus");
  ExtElem w(2 * genus);
  for (int k = 0; k < genus; ++k) w.add(Mask{3} << (2 * k), 1);
  return w;
}

/// A bivector viewed as a degree-2 exterior element.
inline ExtElem from_bivector(const Bivector& b) {
  ExtElem e(b.rank());
  for (const auto& [key, c] : b.terms()) e.add((Mask{1} << (key.first - 1)) | (Mask{1} << (key.second - 1)), c);
  return e;
}

/// Images of every monomial under the algebra map x_i -> sum_j M(j,i) x_j.
/// Entry [mask] is the image of x_mask; built as image[m] = image[m - top] ^ L_top.
inline std::vector<ExtElem> exterior_power_images(const IntMatrix& m) {
  if (m.rows != m.cols) throw RankMismatch("exterior_power_images needs a square matrix");
  const int n = m.cols;
  if (n > 20) throw RankMismatch("exterior_power_images: rank too large");
  std::vector<ExtElem> lin;
  for (int i = 0; i < n; ++i) {
    ExtElem e(n);
    for (int j = 0; j < n; ++j)
      if (m.at(j, i) != 0) e.add(Mask{1} << j, Rational(m.at(j, i)));
    lin.push_back(std::move(e));
  }
  std::vector<ExtElem> img(std::size_t{1} << n, ExtElem(n));
  img[0] = ExtElem::one(n);
  for (Mask mask = 1; mask < (Mask{1} << n); ++mask) {
    int top = 31 - std::countl_zero(mask);
    img[mask] = wedge(img[mask & ~(Mask{1} << top)], lin[static_cast<std::size_t>(top)]);
  }
  return img;
}

inline ExtElem pushforward(const ExtElem& e, const std::vector<ExtElem>& images) {
  ExtElem out(e.rank());
  for (const auto& [m, c] : e.terms()) out += c * images.at(m);
  return out;
}

// ---------------------------------------------------------------------------
// Degree slices.

struct DegreeSlice {
  int rank = 0;
  int degree = 0;
  std::vector<Mask> masks;  // increasing

  int index_of(Mask m) const {
    auto it = std::lower_bound(masks.begin(), masks.end(), m);
    if (it == masks.end() || *it != m) return -1;
    return static_cast<int>(it - masks.begin());
  }
  int size() const { return static_cast<int>(masks.size()); }
};

inline DegreeSlice degree_slice(int rank, int k) {
  if (rank < 0 || rank > kMaxExteriorRank) throw RankMismatch("degree_slice: rank out of range");
  DegreeSlice s{rank, k, {}};
  if (k < 0 || k > rank) return s;
  for (Mask m = 0; m < (Mask{1} << rank); ++m)
    if (popcount(m) == k) s.masks.push_back(m);
  return s;
}

inline RatVector to_coords(const ExtElem& e, const DegreeSlice& s) {
  RatVector v(s.masks.size());
  for (const auto& [m, c] : e.terms()) {
    int i = s.index_of(m);
    if (i < 0) throw DegreeOutOfRange("element has terms outside the degree slice");
    v[static_cast<std::size_t>(i)] = c;
  }
  return v;
}

inline ExtElem from_coords(const RatVector& v, const DegreeSlice& s) {
  ExtElem e(s.rank);
  for (std::size_t i = 0; i < v.size(); ++i) e.add(s.masks[i], v[i]);
  return e;
}

/// Matrix of Phi : Lambda^k -> Lambda^{k+2} on Lambda[x_1..x_2g].
inline RatMatrix phi_matrix(int genus, int k) {
  const int n = 2 * genus;
  if (genus < 0 || k < 0 || k > n) throw DegreeOutOfRange("phi_matrix: degree out of range");
  DegreeSlice src = degree_slice(n, k), dst = degree_slice(n, k + 2);
  RatMatrix m(dst.size(), src.size());
  ExtElem w = omega(genus);
  for (int j = 0; j < src.size(); ++j) {
    ExtElem img = wedge(ExtElem::monomial(n, src.masks[static_cast<std::size_t>(j)]), w);
    for (const auto& [mask, c] : img.terms()) m(dst.index_of(mask), j) = c;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Kernel and cokernel of Phi.

/// V^k = Lambda^k / (omega ^ Lambda^{k-2}) and K^k = ker(Phi on Lambda^k).
struct LefschetzPiece {
  int genus = 0;
  int degree = 0;
  DegreeSlice slice;

  // Cokernel: RREF of the image of Phi (rows = image vectors).
  RatMatrix image_rref;
  std::vector<int> image_pivots;
  std::vector<int> v_columns;  // non-pivot monomial indices, one per V-class

  // Kernel: standard nullspace basis, indexed by free columns.
  std::vector<RatVector> k_basis;
  std::vector<int> k_columns;

  int dim_v() const { return static_cast<int>(v_columns.size()); }
  int dim_k() const { return static_cast<int>(k_basis.size()); }

  /// Coordinates of the class of z in V^k.
  RatVector v_coords(const ExtElem& z) const {
    RatVector v = to_coords(z, slice);
    for (std::size_t r = 0; r < image_pivots.size(); ++r) {
      const int p = image_pivots[r];
      Rational f = v[static_cast<std::size_t>(p)];
      if (f == 0) continue;
      for (int c = 0; c < slice.size(); ++c)
        if (image_rref(static_cast<int>(r), c) != 0) v[static_cast<std::size_t>(c)] -= f * image_rref(static_cast<int>(r), c);
    }
    RatVector out;
    out.reserve(v_columns.size());
    for (int c : v_columns) out.push_back(v[static_cast<std::size_t>(c)]);
    return out;
  }

  /// Coordinates of z in K^k; throws InternalError if z is not in ker Phi.
  RatVector k_coords(const ExtElem& z) const {
    if (!wedge(z, omega(genus)).is_zero()) throw InternalError("element is not in the kernel of Phi");
    RatVector v = to_coords(z, slice);
    RatVector out;
    RatVector check(v.size());
    for (std::size_t b = 0; b < k_basis.size(); ++b) {
      const Rational& c = v[static_cast<std::size_t>(k_columns[b])];
      out.push_back(c);
      if (c != 0)
        for (std::size_t t = 0; t < v.size(); ++t) check[t] += c * k_basis[b][t];
    }
    if (check != v) throw InternalError("kernel coordinates do not reconstruct the element");
    return out;
  }

  ExtElem v_representative(int idx) const {
    return ExtElem::monomial(slice.rank, slice.masks.at(static_cast<std::size_t>(v_columns.at(static_cast<std::size_t>(idx)))));
  }
  ExtElem k_element(int idx) const { return from_coords(k_basis.at(static_cast<std::size_t>(idx)), slice); }
};

inline std::shared_ptr<const LefschetzPiece> build_lefschetz_piece(int genus, int k) {
  const int n = 2 * genus;
  if (genus < 0 || k < 0 || k > n) throw DegreeOutOfRange("Lefschetz piece: degree out of range");
  auto p = std::make_shared<LefschetzPiece>();
  p->genus = genus;
  p->degree = k;
  p->slice = degree_slice(n, k);

  if (k >= 2) {
    Echelon e = rref(phi_matrix(genus, k - 2).transpose());
    p->image_rref = std::move(e.r);
    p->image_pivots = std::move(e.pivots);
  } else {
    p->image_rref = RatMatrix(0, p->slice.size());
  }
  std::vector<bool> piv(static_cast<std::size_t>(p->slice.size()), false);
  for (int c : p->image_pivots) piv[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < p->slice.size(); ++c)
    if (!piv[static_cast<std::size_t>(c)]) p->v_columns.push_back(c);

  RatMatrix phi = phi_matrix(genus, k);
  Echelon ek = rref(phi);
  std::vector<bool> kpiv(static_cast<std::size_t>(phi.cols()), false);
  for (int c : ek.pivots) kpiv[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < phi.cols(); ++c)
    if (!kpiv[static_cast<std::size_t>(c)]) p->k_columns.push_back(c);
  p->k_basis = nullspace(phi);
  for (const RatVector& z : p->k_basis)
    if (!is_zero(phi * z)) throw InternalError("kernel basis vector not annihilated by Phi");
  return p;
}

/// Build-once cache, safe for concurrent callers.
inline std::shared_ptr<const LefschetzPiece> lefschetz_piece(int genus, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const LefschetzPiece>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({genus, k}); it != cache.end()) return it->second;
  }
  auto built = build_lefschetz_piece(genus, k);
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{genus, k}, std::move(built)).first->second;
}

inline std::vector<ExtElem> cokernel_basis(int genus, int k) {
  auto p = lefschetz_piece(genus, k);
  std::vector<ExtElem> out;
  for (int i = 0; i < p->dim_v(); ++i) out.push_back(p->v_representative(i));
  return out;
}

inline std::vector<ExtElem> kernel_basis(int genus, int k) {
  auto p = lefschetz_piece(genus, k);
  std::vector<ExtElem> out;
  for (int i = 0; i < p->dim_k(); ++i) out.push_back(p->k_element(i));
  return out;
}

enum class LefschetzSpace { V, K };

/// z times basis class `idx` of V^k or K^k, in coordinates of degree k + deg z.
inline RatVector module_action(const ExtElem& z, int idx, LefschetzSpace space, int genus, int k) {
  if (z.rank() != 2 * genus) throw RankMismatch("module_action: rank differs from 2g");
  const int d = z.is_zero() ? 0 : z.degree();
  auto src = lefschetz_piece(genus, k);
  if (k + d > 2 * genus) return {};
  auto dst = lefschetz_piece(genus, k + d);
  if (space == LefschetzSpace::V) return dst->v_coords(wedge(z, src->v_representative(idx)));
  return dst->k_coords(wedge(z, src->k_element(idx)));
}

}  // namespace confmcg

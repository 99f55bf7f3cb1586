#pragma once

// The crossed homomorphism xi, the Johnson action on A_n = Lambda[x] (x) Q[y],
// the Johnson representation on H + Lambda^2 H and its quotient by omega,
// and the Koszul differential d_K(y_i) = x_i.

#include <confmcg/extalg.hpp>
#include <confmcg/freegroup.hpp>
#include <confmcg/matrix.hpp>
#include <confmcg/nielsen.hpp>

#include <map>
#include <string>
#include <vector>

namespace confmcg {

// ---------------------------------------------------------------------------
// xi(phi)(e_i) = content(phi(alpha_i)).

struct XiMap {
  int source_rank = 0;
  int target_rank = 0;
  std::vector<Bivector> values;  // values[i-1] = xi(e_i)

  const Bivector& operator()(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }

  /// Linear extension to an integer vector.
  Bivector operator()(const IntVector& v) const {
    if (static_cast<int>(v.size()) != source_rank) throw RankMismatch("XiMap: vector length differs from source rank");
    Bivector b(target_rank);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) b += values[i] * Rational(v[i]);
    return b;
  }

  bool is_zero() const {
    for (const Bivector& b : values)
      if (!b.is_zero()) return false;
    return true;
  }

  friend bool operator==(const XiMap&, const XiMap&) = default;
};

inline XiMap xi(const FreeHom& f) {
  XiMap x{f.source_rank(), f.target_rank(), {}};
  for (const Word& w : f.images()) x.values.push_back(content(w));
  return x;
}

inline std::string to_string(const XiMap& x) {
  std::string s;
  for (int i = 1; i <= x.source_rank; ++i) {
    if (i > 1) s += "; ";
    s += "e" + std::to_string(i) + " -> " + to_string(x(i));
  }
  return s;
}

// ---------------------------------------------------------------------------
// A_n = Lambda[x_1..x_n] (x) Q[y_1..y_n]. The y's are even and central.

struct AMonomial {
  std::vector<int> y;  // exponents
  Mask x = 0;
  friend bool operator==(const AMonomial&, const AMonomial&) = default;
  friend auto operator<=>(const AMonomial&, const AMonomial&) = default;
};

class APoly {
 public:
  APoly() = default;
  explicit APoly(int rank) : rank_(rank) {}

  static APoly one(int rank) { return monomial(rank, AMonomial{std::vector<int>(static_cast<std::size_t>(rank), 0), 0}, 1); }
  static APoly monomial(int rank, AMonomial m, const Rational& c) {
    APoly p(rank);
    p.add(std::move(m), c);
    return p;
  }
  static APoly x(int rank, int i) {
    AMonomial m{std::vector<int>(static_cast<std::size_t>(rank), 0), Mask{1} << (i - 1)};
    return monomial(rank, std::move(m), 1);
  }
  static APoly y(int rank, int i) {
    AMonomial m{std::vector<int>(static_cast<std::size_t>(rank), 0), 0};
    m.y.at(static_cast<std::size_t>(i - 1)) = 1;
    return monomial(rank, std::move(m), 1);
  }
  static APoly from_ext(const ExtElem& e) {
    APoly p(e.rank());
    for (const auto& [mask, c] : e.terms()) p.add(AMonomial{std::vector<int>(static_cast<std::size_t>(e.rank()), 0), mask}, c);
    return p;
  }

  int rank() const { return rank_; }
  const std::map<AMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(AMonomial m, const Rational& c) {
    if (static_cast<int>(m.y.size()) != rank_) throw RankMismatch("APoly: monomial rank mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  APoly& operator+=(const APoly& o) {
    if (o.rank_ != rank_) throw RankMismatch("APoly ranks differ");
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  friend APoly operator+(APoly a, const APoly& b) { return a += b; }
  friend APoly operator-(APoly a, const APoly& b) { return a += b * Rational(-1); }
  friend APoly operator*(APoly a, const Rational& s) {
    if (s == 0) return APoly(a.rank_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }

  friend APoly operator*(const APoly& a, const APoly& b) {
    if (a.rank_ != b.rank_) throw RankMismatch("APoly ranks differ");
    APoly out(a.rank_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = wedge_sign(ma.x, mb.x);
        if (!s) continue;
        AMonomial m{ma.y, ma.x | mb.x};
        for (std::size_t i = 0; i < m.y.size(); ++i) m.y[i] += mb.y[i];
        out.add(std::move(m), s > 0 ? ca * cb : Rational(-(ca * cb)));
      }
    return out;
  }

  friend bool operator==(const APoly&, const APoly&) = default;

 private:
  int rank_ = 0;
  std::map<AMonomial, Rational> terms_;
};

inline std::string to_string(const APoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < m.y.size(); ++i) {
      if (m.y[i] == 0) continue;
      mono += "y" + std::to_string(i + 1);
      if (m.y[i] > 1) mono += "^" + std::to_string(m.y[i]);
    }
    if (m.x) mono += monomial_string(m.x);
    Rational mag = abs(c);
    s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mono.empty())
      s += to_string(mag);
    else
      s += (mag != 1 ? to_string(mag) + "*" : std::string()) + mono;
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// J(phi): x_i -> sum_j M_ji x_j,  y_i -> sum_j M_ji y_j + xi(phi)(e_i).

struct JohnsonEndo {
  IntMatrix matrix;  // target x source
  XiMap xi_map;

  int source_rank() const { return matrix.cols; }
  int target_rank() const { return matrix.rows; }

  APoly image_x(int i) const {
    APoly p(target_rank());
    for (int j = 1; j <= target_rank(); ++j)
      if (std::int64_t c = matrix.at(j - 1, i - 1)) p += APoly::x(target_rank(), j) * Rational(c);
    return p;
  }

  APoly image_y(int i) const {
    APoly p(target_rank());
    for (int j = 1; j <= target_rank(); ++j)
      if (std::int64_t c = matrix.at(j - 1, i - 1)) p += APoly::y(target_rank(), j) * Rational(c);
    return p + APoly::from_ext(from_bivector(xi_map(i)));
  }

  /// Algebra map A_source -> A_target.
  APoly operator()(const APoly& a) const {
    if (a.rank() != source_rank()) throw RankMismatch("JohnsonEndo applied to the wrong rank");
    APoly out(target_rank());
    std::vector<APoly> ys, xs;
    for (int i = 1; i <= source_rank(); ++i) {
      ys.push_back(image_y(i));
      xs.push_back(image_x(i));
    }
    for (const auto& [m, c] : a.terms()) {
      APoly t = APoly::one(target_rank());
      for (std::size_t i = 0; i < m.y.size(); ++i)
        for (int e = 0; e < m.y[i]; ++e) t = t * ys[i];
      for (Mask mm = m.x; mm; mm &= mm - 1) t = t * xs[static_cast<std::size_t>(std::countr_zero(mm))];
      out += t * c;
    }
    return out;
  }
};

inline JohnsonEndo johnson_endo(const FreeHom& f) { return {abelianization_matrix(f), xi(f)}; }

// ---------------------------------------------------------------------------
// Johnson representation on J = H + Lambda^2 H (reduced: H + Lambda^2 H / <omega>).

struct JohnsonRepElement {
  int h_dim = 0;
  bool reduced = false;
  RatMatrix matrix;
};

/// Requires phi invertible: pass the inverse, or let a bounded Nielsen search find one.
inline JohnsonRepElement johnson_rep(const FreeHom& phi, bool reduced, const FreeHom* inverse = nullptr) {
  const int n = phi.source_rank();
  if (phi.target_rank() != n) throw RankMismatch("johnson_rep needs an endomorphism");
  if (inverse) {
    if (!is_inverse_pair(phi, *inverse)) throw NotInvertible("supplied inverse does not invert the map");
  } else if (!find_inverse(phi)) {
    throw NotInvertible("invertibility unverified: no inverse found within the search budget");
  }
  const IntMatrix m = abelianization_matrix(phi);
  const XiMap x = xi(phi);
  DegreeSlice l2 = degree_slice(n, 2);
  std::vector<ExtElem> img = exterior_power_images(m);

  if (!reduced) {
    const int dim = n + l2.size();
    RatMatrix r(dim, dim);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) r(j, i) = Rational(m.at(j, i));
      RatVector xv = to_coords(from_bivector(x(i + 1)), l2);
      for (int a = 0; a < l2.size(); ++a) r(n + a, i) = xv[static_cast<std::size_t>(a)];
    }
    for (int b = 0; b < l2.size(); ++b) {
      RatVector col = to_coords(img[l2.masks[static_cast<std::size_t>(b)]], l2);
      for (int a = 0; a < l2.size(); ++a) r(n + a, n + b) = col[static_cast<std::size_t>(a)];
    }
    return {n, false, std::move(r)};
  }

  if (n % 2 != 0 || n < 2) throw DegreeOutOfRange("reduced Johnson representation needs n = 2g with g >= 1");
  const int g = n / 2;
  ExtElem w = omega(g);
  if (pushforward(w, img) != w) throw NotSymplectic("map does not preserve omega; quotient by omega undefined");
  auto v2 = lefschetz_piece(g, 2);
  const int dim = n + v2->dim_v();
  RatMatrix r(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(j, i) = Rational(m.at(j, i));
    RatVector xv = v2->v_coords(from_bivector(x(i + 1)));
    for (int a = 0; a < v2->dim_v(); ++a) r(n + a, i) = xv[static_cast<std::size_t>(a)];
  }
  for (int b = 0; b < v2->dim_v(); ++b) {
    RatVector col = v2->v_coords(pushforward(v2->v_representative(b), img));
    for (int a = 0; a < v2->dim_v(); ++a) r(n + a, n + b) = col[static_cast<std::size_t>(a)];
  }
  return {n, true, std::move(r)};
}

// ---------------------------------------------------------------------------
// Koszul differential on A_n: d(x_i) = 0, d(y_i) = x_i, extended as a derivation.
// With mu = 2m-1: |x| = (mu,(1)), |y| = (2mu,(2)). A monomial with y-degree p
// and q x's sits in degree mu(2p+q) and weight 2p+q; d_K maps (p,q) to (p-1,q+1).

struct KoszulDifferential {
  int n = 0;
  int m = 1;

  int mu() const { return 2 * m - 1; }

  APoly operator()(const APoly& a) const {
    if (a.rank() != n) throw RankMismatch("d_K applied to the wrong rank");
    APoly out(n);
    for (const auto& [mono, c] : a.terms())
      for (int i = 0; i < n; ++i) {
        const int e = mono.y[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        const Mask bit = Mask{1} << i;
        if (mono.x & bit) continue;
        AMonomial r{mono.y, mono.x | bit};
        r.y[static_cast<std::size_t>(i)] -= 1;
        int s = wedge_sign(bit, mono.x);
        out.add(std::move(r), Rational(e * s) * c);
      }
    return out;
  }
};

inline KoszulDifferential koszul_differential(int n, int m) {
  if (n < 1) throw RankMismatch("koszul_differential needs n >= 1");
  if (m < 1) throw DegreeOutOfRange("sphere parameter m must be >= 1");
  return {n, m};
}

/// Monomials of A_n with y-degree p and q x's, in a fixed order.
inline std::vector<AMonomial> koszul_slice(int n, int p, int q) {
  std::vector<AMonomial> out;
  if (p < 0 || q < 0 || q > n) return out;
  std::vector<std::vector<int>> ys;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      ys.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  if (n > 0) rec(rec, 0, p);
  DegreeSlice xs = degree_slice(n, q);
  for (const auto& y : ys)
    for (Mask x : xs.masks) out.push_back({y, x});
  return out;
}

/// Matrix of d_K : (p,q) -> (p-1,q+1).
inline RatMatrix koszul_matrix(const KoszulDifferential& d, int p, int q) {
  auto src = koszul_slice(d.n, p, q);
  auto dst = koszul_slice(d.n, p - 1, q + 1);
  std::map<AMonomial, int> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = static_cast<int>(i);
  RatMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    APoly img = d(APoly::monomial(d.n, src[j], 1));
    for (const auto& [mono, c] : img.terms()) m(index.at(mono), static_cast<int>(j)) = c;
  }
  return m;
}

struct KoszulSlice {
  int p = 0;  // y-degree
  int q = 0;  // number of x's
  int degree = 0;
  int weight = 0;
  int chain_dim = 0;
  int rank_out = 0;  // rank of d leaving (p,q)
  int rank_in = 0;   // rank of d arriving at (p,q)
  int kernel_dim() const { return chain_dim - rank_out; }
  int cokernel_dim() const { return chain_dim - rank_in; }
  int homology_dim() const { return chain_dim - rank_out - rank_in; }
};

/// Every (p,q) slice with degree mu(2p+q) <= degree_cap.
inline std::vector<KoszulSlice> koszul_slices(int n, int m, int degree_cap) {
  KoszulDifferential d = koszul_differential(n, m);
  std::vector<KoszulSlice> out;
  for (int w = 0; d.mu() * w <= degree_cap; ++w)
    for (int q = 0; q <= std::min(n, w); ++q) {
      if ((w - q) % 2 != 0) continue;
      const int p = (w - q) / 2;
      KoszulSlice s{p, q, d.mu() * w, w, static_cast<int>(koszul_slice(n, p, q).size()), 0, 0};
      if (s.chain_dim == 0) continue;
      s.rank_out = p > 0 && q < n ? rank(koszul_matrix(d, p, q)) : 0;
      s.rank_in = q > 0 ? rank(koszul_matrix(d, p + 1, q - 1)) : 0;
      out.push_back(s);
    }
  return out;
}

/// Homology dimension per display degree 0..degree_cap.
inline std::vector<int> koszul_homology_dims(int n, int m, int degree_cap) {
  std::vector<int> dims(static_cast<std::size_t>(std::max(degree_cap, -1) + 1), 0);
  for (const KoszulSlice& s : koszul_slices(n, m, degree_cap)) dims[static_cast<std::size_t>(s.degree)] += s.homology_dim();
  return dims;
}

/// Dimensions of ker d_K (x) coker d_K[mu+1,(1)], keyed by (degree, weight).
inline std::map<std::pair<int, int>, int> free_maps_dims(int n, int m, int degree_cap) {
  std::map<std::pair<int, int>, int> dims;
  const int mu = 2 * m - 1;
  for (const KoszulSlice& s : koszul_slices(n, m, degree_cap)) {
    if (s.kernel_dim() > 0) dims[{s.degree, s.weight}] += s.kernel_dim();
    if (s.cokernel_dim() > 0 && s.degree + mu + 1 <= degree_cap) dims[{s.degree + mu + 1, s.weight + 1}] += s.cokernel_dim();
  }
  return dims;
}

/// Free graded-commutative algebra on 2g generators of degree m-1:
/// dims[d] for d = 0..degree_cap.
inline std::vector<Integer> em_space_dims(int genus, int m, int r, int degree_cap) {
  (void)r;  // weight label only
  if (m < 2) throw DegreeOutOfRange("em_space_dims needs m >= 2");
  if (genus < 0) throw DegreeOutOfRange("negative genus");
  std::vector<Integer> dims(static_cast<std::size_t>(std::max(degree_cap, -1) + 1), 0);
  const int e = m - 1;
  for (int k = 0; k * e <= degree_cap; ++k)
    dims[static_cast<std::size_t>(k * e)] = k == 0 ? Integer(1) : (e % 2 == 1) ? binomial(2 * genus, k) : binomial(2 * genus + k - 1, k);
  return dims;
}

}  // namespace confmcg

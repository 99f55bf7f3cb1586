#pragma once

// H^i(C_n(S_{g,1}); Q) as the bidegree (i,(n)) part of
//   Q[y_1..y_2g, w] (x) ( V (x) 1  +  K (x) v ),
// with |x| = (1,(1)), |y| = (2,(2)), |w| = (0,(1)), |v| = (1,(2)), and
// representation matrices of mapping classes on these slices.

#include <confmcg/extalg.hpp>
#include <confmcg/johnson.hpp>
#include <confmcg/mcg.hpp>

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace confmcg {

enum class ClassKind { V, K };  // K classes carry the factor v

struct RMonomial {
  int a = 0;              // w exponent
  std::vector<int> beta;  // y exponents, length 2g
  ClassKind kind = ClassKind::V;
  int k = 0;    // exterior degree of the class
  int cls = 0;  // index in the V^k or K^k basis

  int y_degree() const {
    int s = 0;
    for (int e : beta) s += e;
    return s;
  }
  int degree() const { return 2 * y_degree() + (kind == ClassKind::K ? 1 : 0) + k; }
  int weight() const { return a + 2 * y_degree() + k + (kind == ClassKind::K ? 2 : 0); }

  auto key() const { return std::tie(a, beta, kind, k, cls); }
  friend bool operator==(const RMonomial& x, const RMonomial& y) { return x.key() == y.key(); }
};

inline std::string to_string(const RMonomial& m) {
  std::string s;
  if (m.a > 0) s += m.a == 1 ? "w" : "w^" + std::to_string(m.a);
  for (std::size_t i = 0; i < m.beta.size(); ++i) {
    if (m.beta[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += "y" + std::to_string(i + 1);
    if (m.beta[i] > 1) s += "^" + std::to_string(m.beta[i]);
  }
  if (!s.empty()) s += " ";
  s += (m.kind == ClassKind::V ? "V" : "K") + std::to_string(m.k) + "[" + std::to_string(m.cls) + "]";
  if (m.kind == ClassKind::K) s += " v";
  return s;
}

/// All y-exponent vectors of total degree b in descending lexicographic order.
inline std::vector<std::vector<int>> y_exponents(int nvars, int b) {
  std::vector<std::vector<int>> out;
  if (b < 0) return out;
  if (nvars == 0) {
    if (b == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, b);
  return out;
}

struct SliceBasis {
  int genus = 0;
  int i = 0;
  int n = 0;
  std::vector<RMonomial> monomials;

  int size() const { return static_cast<int>(monomials.size()); }

  int index_of(const RMonomial& m) const {
    for (std::size_t j = 0; j < monomials.size(); ++j)
      if (monomials[j] == m) return static_cast<int>(j);
    return -1;
  }
};

/// Ordered by w-exponent, then y-exponents (descending lex), then V before K, then class index.
inline SliceBasis slice_basis(int genus, int i, int n) {
  if (genus < 0 || i < 0 || n < 0) throw DegreeOutOfRange("slice_basis: negative index");
  SliceBasis s{genus, i, n, {}};
  const int r = 2 * genus;
  struct Part {
    int a;
    ClassKind kind;
  };
  // K-classes have the smaller w exponent (n-i-1), so they come first.
  for (Part part : {Part{n - i - 1, ClassKind::K}, Part{n - i, ClassKind::V}}) {
    if (part.a < 0) continue;
    for (int b = 0; 2 * b <= i; ++b) {
      const int k = i - 2 * b - (part.kind == ClassKind::K ? 1 : 0);
      if (k < 0 || k > r) continue;
      auto piece = lefschetz_piece(genus, k);
      const int dim = part.kind == ClassKind::V ? piece->dim_v() : piece->dim_k();
      if (dim == 0) continue;
      for (const auto& beta : y_exponents(r, b))
        for (int c = 0; c < dim; ++c) s.monomials.push_back({part.a, beta, part.kind, k, c});
    }
  }
  std::stable_sort(s.monomials.begin(), s.monomials.end(), [](const RMonomial& x, const RMonomial& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.beta != y.beta) return x.beta > y.beta;
    if (x.kind != y.kind) return x.kind == ClassKind::V;
    if (x.k != y.k) return x.k < y.k;
    return x.cls < y.cls;
  });
  for (const RMonomial& m : s.monomials)
    if (m.degree() != i || m.weight() != n) throw InternalError("slice monomial has the wrong bidegree");
  return s;
}

/// dims[i][n] = dim H^i(C_n(S_{g,1}); Q).
inline std::vector<std::vector<int>> dims_table(int genus, int i_max, int n_max) {
  if (genus < 0 || i_max < 0 || n_max < 0) throw DegreeOutOfRange("dims_table: negative bound");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(i_max + 1), std::vector<int>(static_cast<std::size_t>(n_max + 1), 0));
  for (int i = 0; i <= i_max; ++i)
    for (int n = 0; n <= n_max; ++n) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] = slice_basis(genus, i, n).size();
  return t;
}

struct RepMatrix {
  SliceBasis basis;
  RatMatrix matrix;
};

/// Matrix of phi on the slice; column j is the image of basis element j.
inline RepMatrix act(const MappingClass& phi, const SliceBasis& basis) {
  if (phi.genus != basis.genus) throw GenusMismatch("act: mapping class and slice have different genus");
  const int g = basis.genus;
  const int r = 2 * g;
  const IntMatrix& mat = phi.symplectic;
  const XiMap x = xi(phi.phi);
  std::vector<ExtElem> xis;
  for (int i = 1; i <= r; ++i) xis.push_back(from_bivector(x(i)));
  const std::vector<ExtElem> lam = exterior_power_images(mat);

  // y^beta -> sum_gamma y^gamma (x) lambda_gamma
  using Expansion = std::map<std::vector<int>, ExtElem>;
  std::map<std::vector<int>, Expansion> cache;
  auto expand = [&](const std::vector<int>& beta) -> const Expansion& {
    auto it = cache.find(beta);
    if (it != cache.end()) return it->second;
    Expansion cur{{std::vector<int>(static_cast<std::size_t>(r), 0), ExtElem::one(r)}};
    for (int i = 0; i < r; ++i)
      for (int e = 0; e < beta[static_cast<std::size_t>(i)]; ++e) {
        Expansion nxt;
        for (const auto& [gamma, l] : cur) {
          for (int j = 0; j < r; ++j) {
            std::int64_t c = mat.at(j, i);
            if (c == 0) continue;
            auto g2 = gamma;
            ++g2[static_cast<std::size_t>(j)];
            auto [slot, fresh] = nxt.try_emplace(g2, ExtElem(r));
            slot->second += Rational(c) * l;
          }
          ExtElem lx = wedge(l, xis[static_cast<std::size_t>(i)]);
          if (!lx.is_zero()) {
            auto [slot, fresh] = nxt.try_emplace(gamma, ExtElem(r));
            slot->second += lx;
          }
        }
        cur = std::move(nxt);
      }
    return cache.emplace(beta, std::move(cur)).first->second;
  };

  std::map<std::tuple<int, std::vector<int>, ClassKind, int, int>, int> index;
  for (int j = 0; j < basis.size(); ++j) {
    const RMonomial& m = basis.monomials[static_cast<std::size_t>(j)];
    index[{m.a, m.beta, m.kind, m.k, m.cls}] = j;
  }

  RatMatrix out(basis.size(), basis.size());
  for (int col = 0; col < basis.size(); ++col) {
    const RMonomial& m = basis.monomials[static_cast<std::size_t>(col)];
    auto src = lefschetz_piece(g, m.k);
    const ExtElem cls = pushforward(m.kind == ClassKind::V ? src->v_representative(m.cls) : src->k_element(m.cls), lam);
    for (const auto& [gamma, l] : expand(m.beta)) {
      if (l.is_zero()) continue;
      const int dl = l.degree();
      const int k2 = m.k + dl;
      if (k2 > r) continue;
      auto dst = lefschetz_piece(g, k2);
      const ExtElem prod = wedge(l, cls);
      const RatVector coords = m.kind == ClassKind::V ? dst->v_coords(prod) : dst->k_coords(prod);
      for (std::size_t c = 0; c < coords.size(); ++c) {
        if (coords[c] == 0) continue;
        auto it = index.find({m.a, gamma, m.kind, k2, static_cast<int>(c)});
        if (it == index.end()) throw InternalError("act produced a term outside the slice");
        out(it->second, col) += coords[c];
      }
    }
  }
  return {basis, std::move(out)};
}

inline Rational character(const MappingClass& phi, int genus, int i, int n) {
  return act(phi, slice_basis(genus, i, n)).matrix.trace();
}

/// Degree dictionary between the m = 1 and general-m gradings.
inline int regrade(int m, int i, int n) {
  if (m < 1) throw DegreeOutOfRange("regrade needs m >= 1");
  return i + (2 * m - 2) * n;
}

/// True iff phi acts as the identity on every slice with i <= i_max, n <= n_max.
/// Requires phi(alpha_j) = alpha_j h_j with each h_j certified in gamma_3.
inline bool j2_trivial_check(const MappingClass& phi, int i_max, int n_max) {
  const int r = 2 * phi.genus;
  for (int j = 1; j <= r; ++j) {
    Word h = Word::generator(r, j, -1) * phi.phi.image(j);
    if (!lcs_member_witness(h, 2))
      throw CertificateMissing("no double-commutator certificate for h_" + std::to_string(j) + " = " + to_string(h));
  }
  for (int i = 0; i <= i_max; ++i)
    for (int n = 0; n <= n_max; ++n)
      if (!act(phi, slice_basis(phi.genus, i, n)).matrix.is_identity()) return false;
  return true;
}

}  // namespace confmcg

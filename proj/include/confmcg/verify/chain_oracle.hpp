#pragma once

// Brute-force referee for the slice dimensions: homology of the full complex
//   Q[y_1..y_2g, w] (x) Lambda[x_1..x_2g, v],  d(v) = 2 omega,
// computed from explicit monomials and integer (fraction-free) elimination.
// Shares no code with the V/K route beyond GMP integers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace confmcg::verify {

/// Rank by fraction-free Bareiss elimination.
inline int bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  mpz_class prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(rank)]);
    const auto& p = a[static_cast<std::size_t>(rank)];
    for (int r = rank + 1; r < rows; ++r) {
      auto& row = a[static_cast<std::size_t>(r)];
      const mpz_class f = row[static_cast<std::size_t>(c)];
      for (int k = c; k < cols; ++k) {
        mpz_class v = p[static_cast<std::size_t>(c)] * row[static_cast<std::size_t>(k)] - f * p[static_cast<std::size_t>(k)];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        row[static_cast<std::size_t>(k)] = v;
      }
    }
    prev = p[static_cast<std::size_t>(c)];
    ++rank;
  }
  return rank;
}

struct ChainSlice {
  long long chain_dim = 0;
  long long rank_out = 0;  // d : (i,n) -> (i+1,n)
  long long rank_in = 0;   // d : (i-1,n) -> (i,n)
  long long homology() const { return chain_dim - rank_out - rank_in; }
};

namespace detail {

inline std::vector<std::vector<int>> compositions(int parts, int total) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == parts - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, total);
  return out;
}

inline std::vector<std::uint32_t> subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (__builtin_popcount(s) == k) out.push_back(s);
  return out;
}

// Sign of moving the letters of b past those of a into sorted position.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  for (int j = 0; j < 32; ++j)
    if (b >> j & 1u)
      for (int i = j + 1; i < 32; ++i)
        if (a >> i & 1u) ++inv;
  return inv % 2 ? -1 : 1;
}

// Rank of d on the (w^a y^beta) block: x_S v -> (-1)^|S| 2 x_S omega, |S| = k.
inline int block_rank(int genus, int k) {
  const int r = 2 * genus;
  auto src = subsets(r, k);
  auto dst = subsets(r, k + 2);
  if (src.empty() || dst.empty()) return 0;
  std::map<std::uint32_t, std::size_t> at;
  for (std::size_t t = 0; t < dst.size(); ++t) at[dst[t]] = t;
  std::vector<std::vector<mpz_class>> m(dst.size(), std::vector<mpz_class>(src.size(), 0));
  for (std::size_t s = 0; s < src.size(); ++s)
    for (int h = 0; h < genus; ++h) {
      const std::uint32_t pair = 3u << (2 * h);
      if (src[s] & pair) continue;
      const int sign = (k % 2 ? -1 : 1) * merge_sign(src[s], pair);
      m[at.at(src[s] | pair)][s] += 2 * sign;
    }
  return bareiss_rank(std::move(m));
}

// Monomials w^a y^beta x_S v^eps of bidegree (i,(n)), grouped by (a, beta, eps).
inline long long slice_dim(int genus, int i, int n) {
  const int r = 2 * genus;
  long long dim = 0;
  for (int eps = 0; eps <= 1; ++eps)
    for (int b = 0; 2 * b + eps <= i; ++b) {
      const int k = i - 2 * b - eps;
      const int a = n - 2 * b - k - 2 * eps;
      if (a < 0 || k > r) continue;
      dim += static_cast<long long>(compositions(r, b).size() * subsets(r, k).size());
    }
  return dim;
}

inline long long rank_out(int genus, int i, int n) {
  // only v-monomials map nontrivially; each (a, beta) block separately
  const int r = 2 * genus;
  long long rk = 0;
  for (int b = 0; 2 * b + 1 <= i; ++b) {
    const int k = i - 2 * b - 1;
    const int a = n - 2 * b - k - 2;
    if (a < 0 || k > r) continue;
    for (std::size_t blk = 0; blk < compositions(r, b).size(); ++blk) rk += block_rank(genus, k);
  }
  return rk;
}

}  // namespace detail

inline ChainSlice chain_slice(int genus, int i, int n) {
  ChainSlice s;
  if (i < 0 || n < 0) return s;
  s.chain_dim = detail::slice_dim(genus, i, n);
  s.rank_out = detail::rank_out(genus, i, n);
  s.rank_in = i > 0 ? detail::rank_out(genus, i - 1, n) : 0;
  return s;
}

inline long long chain_homology_dim(int genus, int i, int n) { return chain_slice(genus, i, n).homology(); }

}  // namespace confmcg::verify

#pragma once

// Bounded search for the inverse of an endomorphism of F_n by Nielsen moves.
//
// The image tuple (u_1..u_n) is transformed by u_i <- u_i u_j^{+-1} and
// u_i <- u_j^{+-1} u_i while tracking words t_i with u_i = f(t_i). Once the
// tuple is a signed permutation of the generators, the t_i give the inverse.
// A failure means "not found within the budget", never "not invertible".

#include <confmcg/freegroup.hpp>

#include <deque>
#include <optional>
#include <set>
#include <vector>

namespace confmcg {

struct NielsenOptions {
  int max_steps = 4096;            // greedy moves overall
  std::size_t max_states = 20000;  // per plateau-escape search
  int slack = 2;                   // allowed total-length increase while escaping
};

inline bool is_inverse_pair(const FreeHom& f, const FreeHom& g) {
  return f.source_rank() == f.target_rank() && g.source_rank() == f.source_rank() &&
         g.target_rank() == f.source_rank() && compose(f, g).is_identity() && compose(g, f).is_identity();
}

namespace detail {

struct NielsenState {
  std::vector<Word> u;
  std::vector<Word> t;

  std::size_t total() const {
    std::size_t s = 0;
    for (const Word& w : u) s += w.size();
    return s;
  }
};

// Applies move (i, j, sign, left) to a copy of s.
inline NielsenState nielsen_move(const NielsenState& s, std::size_t i, std::size_t j, int sign, bool left) {
  NielsenState r = s;
  Word uj = sign > 0 ? s.u[j] : s.u[j].inverse();
  Word tj = sign > 0 ? s.t[j] : s.t[j].inverse();
  if (left) {
    r.u[i] = uj * s.u[i];
    r.t[i] = tj * s.t[i];
  } else {
    r.u[i] = s.u[i] * uj;
    r.t[i] = s.t[i] * tj;
  }
  return r;
}

template <class F>
void for_each_move(const NielsenState& s, F&& visit) {
  const std::size_t n = s.u.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int sign : {1, -1})
        for (bool left : {false, true}) visit(i, j, sign, left);
    }
}

inline bool is_signed_permutation(const std::vector<Word>& u) {
  std::vector<bool> seen(u.size() + 1, false);
  for (const Word& w : u) {
    if (w.size() != 1) return false;
    int g = w[0].gen;
    if (seen[static_cast<std::size_t>(g)]) return false;
    seen[static_cast<std::size_t>(g)] = true;
  }
  return true;
}

// BFS over states with total <= bound + slack until a strictly shorter one appears.
inline std::optional<NielsenState> escape_plateau(const NielsenState& start, const NielsenOptions& opt) {
  const std::size_t base = start.total();
  std::set<std::vector<Word>> seen{start.u};
  std::deque<NielsenState> queue{start};
  while (!queue.empty()) {
    NielsenState s = std::move(queue.front());
    queue.pop_front();
    std::optional<NielsenState> found;
    for_each_move(s, [&](std::size_t i, std::size_t j, int sign, bool left) {
      if (found || seen.size() >= opt.max_states) return;
      NielsenState r = nielsen_move(s, i, j, sign, left);
      std::size_t tot = r.total();
      if (tot < base) {
        found = std::move(r);
        return;
      }
      if (tot > base + static_cast<std::size_t>(opt.slack)) return;
      if (seen.insert(r.u).second) queue.push_back(std::move(r));
    });
    if (found) return found;
    if (seen.size() >= opt.max_states) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Searches for g with f o g = g o f = id. The result is always verified.
inline std::optional<FreeHom> find_inverse(const FreeHom& f, const NielsenOptions& opt = {}) {
  const int n = f.source_rank();
  if (f.target_rank() != n) return std::nullopt;
  detail::NielsenState s{f.images(), FreeHom::identity(n).images()};
  for (const Word& w : s.u)
    if (w.empty()) return std::nullopt;  // a generator maps to 1

  for (int step = 0; step < opt.max_steps && !detail::is_signed_permutation(s.u); ++step) {
    // Greedy: the single move with the largest length drop.
    std::size_t best_drop = 0;
    std::optional<detail::NielsenState> best;
    detail::for_each_move(s, [&](std::size_t i, std::size_t j, int sign, bool left) {
      std::size_t before = s.u[i].size();
      Word uj = sign > 0 ? s.u[j] : s.u[j].inverse();
      std::size_t after = (left ? uj * s.u[i] : s.u[i] * uj).size();
      if (after < before && before - after > best_drop) {
        best_drop = before - after;
        best = detail::nielsen_move(s, i, j, sign, left);
      }
    });
    if (!best) best = detail::escape_plateau(s, opt);
    if (!best) return std::nullopt;
    s = std::move(*best);
    for (const Word& w : s.u)
      if (w.empty()) return std::nullopt;
  }
  if (!detail::is_signed_permutation(s.u)) return std::nullopt;

  std::vector<Word> inv(static_cast<std::size_t>(n), Word(n));
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const Letter l = s.u[i][0];
    inv[static_cast<std::size_t>(l.gen - 1)] = l.sign > 0 ? s.t[i] : s.t[i].inverse();
  }
  FreeHom g(n, n, std::move(inv));
  if (!is_inverse_pair(f, g)) return std::nullopt;
  return g;
}

}  // namespace confmcg

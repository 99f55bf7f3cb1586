#pragma once

// Commutator certificates in free groups.
//
// A certificate is an explicit product of bracket expressions that evaluates
// to a given word. Bracket weight is additive ([a,b] has weight |a|+|b|, a
// plain word has weight 1), so a product of terms of weight >= k lies in the
// k-th term gamma_k of the lower central series. Certificates are always
// re-evaluated and compared against the word before being reported.

#include <confmcg/freegroup.hpp>

#include <climits>
#include <list>
#include <memory>
#include <optional>
#include <vector>

namespace confmcg {

class CommTerm;
using CommTermPtr = std::shared_ptr<const CommTerm>;

class CommTerm {
 public:
  static CommTermPtr element(Word w) { return std::shared_ptr<const CommTerm>(new CommTerm(std::move(w))); }

  static CommTermPtr bracket(CommTermPtr a, CommTermPtr b) {
    Word v = commutator(a->value(), b->value());
    int wt = a->weight() + b->weight();
    return std::shared_ptr<const CommTerm>(new CommTerm(std::move(a), std::move(b), std::move(v), wt));
  }

  static CommTermPtr inverse(CommTermPtr a) {
    auto t = std::shared_ptr<CommTerm>(new CommTerm(*a));
    t->inverted_ = !a->inverted_;
    t->value_ = a->value().inverse();
    return t;
  }

  bool is_bracket() const { return left_ != nullptr; }
  bool inverted() const { return inverted_; }
  const CommTermPtr& left() const { return left_; }
  const CommTermPtr& right() const { return right_; }
  int weight() const { return weight_; }
  const Word& value() const { return value_; }

  std::string to_string() const {
    if (!is_bracket()) return "(" + confmcg::to_string(value_) + ")";
    std::string s = "[" + left_->to_string() + ", " + right_->to_string() + "]";
    return inverted_ ? s + "^-1" : s;
  }

 private:
  explicit CommTerm(Word w) : value_(std::move(w)), weight_(1) {}
  CommTerm(CommTermPtr a, CommTermPtr b, Word v, int wt)
      : left_(std::move(a)), right_(std::move(b)), value_(std::move(v)), weight_(wt) {}

  CommTermPtr left_;
  CommTermPtr right_;
  Word value_;
  int weight_ = 1;
  bool inverted_ = false;
};

/// Ordered product of bracket terms.
struct CommutatorProduct {
  int rank = 0;
  std::vector<CommTermPtr> factors;

  Word evaluate() const {
    Word w(rank);
    for (const auto& f : factors) w.append(f->value());
    return w;
  }

  /// Smallest factor weight; INT_MAX for the empty product.
  int weight() const {
    int m = INT_MAX;
    for (const auto& f : factors) m = std::min(m, f->weight());
    return m;
  }
};

inline bool certifies(const CommutatorProduct& cert, const Word& w, int min_weight) {
  return cert.rank == w.rank() && cert.weight() >= min_weight && cert.evaluate() == w;
}

/// Writes w in [F,F] as a product of brackets [x_k, A_k] with x_k a letter,
/// using x A x^-1 B = [x, A] * (A B). Empty optional when [w] != 0.
inline std::optional<CommutatorProduct> commutator_decomposition(const Word& w) {
  for (std::int64_t e : abelianize(w))
    if (e != 0) return std::nullopt;
  CommutatorProduct cert{w.rank(), {}};
  std::vector<Letter> cur = w.letters();
  while (!cur.empty()) {
    const Letter x = cur.front();
    std::size_t q = 1;
    while (q < cur.size() && !(cur[q] == x.inverse())) ++q;
    if (q == cur.size()) throw InternalError("commutator_decomposition: no inverse letter in a balanced word");
    std::vector<Letter> a(cur.begin() + 1, cur.begin() + static_cast<std::ptrdiff_t>(q));
    Word aw = Word::reduce(w.rank(), a);
    if (!aw.empty())
      cert.factors.push_back(CommTerm::bracket(CommTerm::element(Word::reduce(w.rank(), std::span(&x, 1))),
                                               CommTerm::element(aw)));
    std::vector<Letter> rest = std::move(a);
    rest.insert(rest.end(), cur.begin() + static_cast<std::ptrdiff_t>(q) + 1, cur.end());
    cur = Word::reduce(w.rank(), rest).letters();
  }
  return cert;
}

/// j : [F,F] -> Lambda^2 Z^n, the homomorphism with j([a,b]) = [a]^[b].
/// Computed from an explicit commutator decomposition, not from content.
inline Bivector commutator_class(const Word& w) {
  auto cert = commutator_decomposition(w);
  if (!cert) throw TauUndefined("word is not in the commutator subgroup: " + to_string(w));
  Bivector b(w.rank());
  for (const auto& f : cert->factors) b += Bivector::wedge(abelianize(f->left()->value()), abelianize(f->right()->value()));
  return b;
}

namespace detail {

struct CollectItem {
  CommTermPtr term;
  bool basic = false;
  int i = 0, j = 0, eps = 0;  // basic: [a_i, a_j]^eps with i<j
};

// conj_p([x,y]) for single letters x,y as (high term, basic item) pieces.
inline void push_letter_bracket(int rank, const Word& prefix, Letter x, Letter y, std::list<CollectItem>& out) {
  if (x.gen == y.gen) return;  // [a,a^{+-1}] is trivial
  Word X = Word::generator(rank, x.gen), Y = Word::generator(rank, y.gen);
  // [x,y] = conj_G([P,Q]) with P,Q positive letters.
  Word g(rank);
  int p = x.gen, q = y.gen;
  if (x.sign < 0 && y.sign > 0) {
    g = X.inverse();
    std::swap(p, q);
  } else if (x.sign > 0 && y.sign < 0) {
    g = Y.inverse();
    std::swap(p, q);
  } else if (x.sign < 0 && y.sign < 0) {
    g = Y.inverse() * X.inverse();
  }
  int eps = 1;
  if (p > q) {
    std::swap(p, q);
    eps = -1;
  }
  CommTermPtr basic = CommTerm::bracket(CommTerm::element(Word::generator(rank, p)), CommTerm::element(Word::generator(rank, q)));
  if (eps < 0) basic = CommTerm::inverse(basic);
  Word conj = prefix * g;
  // conj_G(c) = [G, c] * c
  if (!conj.empty()) out.push_back({CommTerm::bracket(CommTerm::element(conj), basic), false, 0, 0, 0});
  out.push_back({basic, true, p, q, eps});
}

}  // namespace detail

/// Writes w in gamma_3 = [F,[F,F]] as a product of terms of weight >= 3.
/// Empty optional when w is not in [F,F] or its class j(w) is nonzero.
inline std::optional<CommutatorProduct> double_commutator_decomposition(const Word& w) {
  auto first = commutator_decomposition(w);
  if (!first) return std::nullopt;
  // gamma_2/gamma_3 is Lambda^2 H, so a nonzero class settles it; collecting would only blow up
  if (!commutator_class(w).is_zero()) return std::nullopt;
  const int rank = w.rank();

  std::list<detail::CollectItem> items;
  for (const auto& f : first->factors) {
    // [x, y_1...y_r] = prod_t conj_{y_1..y_{t-1}}([x, y_t])
    const Letter x = f->left()->value()[0];
    Word prefix(rank);
    for (const Letter& y : f->right()->value().letters()) {
      detail::push_letter_bracket(rank, prefix, x, y, items);
      prefix.push_back(y);
    }
  }

  // Cancel basic brackets pairwise. Moving a basic x right past y uses
  // x y = [x,y] y x, leaving only a weight >= 3 term behind.
  for (;;) {
    auto xit = std::find_if(items.begin(), items.end(), [](const auto& it) { return it.basic; });
    if (xit == items.end()) break;
    auto partner = std::next(xit);
    while (partner != items.end() &&
           !(partner->basic && partner->i == xit->i && partner->j == xit->j && partner->eps == -xit->eps))
      ++partner;
    if (partner == items.end()) return std::nullopt;  // j(w) != 0
    while (std::next(xit) != partner) {
      auto yit = std::next(xit);
      items.insert(xit, {CommTerm::bracket(xit->term, yit->term), false, 0, 0, 0});
      items.splice(xit, items, yit);
    }
    items.erase(partner);
    items.erase(xit);
  }

  CommutatorProduct cert{rank, {}};
  for (auto& it : items) cert.factors.push_back(it.term);
  if (!certifies(cert, w, 3)) throw InternalError("double_commutator_decomposition produced a bad certificate");
  return cert;
}

/// One-sided membership certificate for the lower central series:
/// depth 1 asks for a product of commutators, depth 2 for a product of
/// commutators of weight >= 3. `true` is backed by a verified certificate;
/// `false` carries no information.
inline bool lcs_member_witness(const Word& w, int depth) {
  if (depth == 1) {
    auto c = commutator_decomposition(w);
    return c && certifies(*c, w, 2);
  }
  if (depth == 2) return double_commutator_decomposition(w).has_value();
  throw DegreeOutOfRange("lcs_member_witness supports depth 1 or 2");
}

}  // namespace confmcg

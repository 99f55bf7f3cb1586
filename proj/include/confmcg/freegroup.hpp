#pragma once

// Words in the free group F_n on alpha_1..alpha_n, homomorphisms between
// free groups, abelianization, and the content map F_n -> Lambda^2 Z^n.

#include <confmcg/errors.hpp>
#include <confmcg/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace confmcg {

/// One signed generator alpha_gen^sign, gen is 1-based.
struct Letter {
  int gen = 1;
  int sign = 1;

  constexpr Letter inverse() const { return {gen, -sign}; }
  constexpr bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }
  friend constexpr bool operator==(const Letter&, const Letter&) = default;
  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

/// A freely reduced word in F_rank. Construction always reduces.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {
    if (rank < 0) throw RankMismatch("negative free group rank");
  }

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(int rank, std::span<const Letter> letters) {
    Word w(rank);
    for (const Letter& l : letters) w.push_back(l);
    return w;
  }

  static Word generator(int rank, int gen, int sign = 1) {
    Letter l{gen, sign};
    return reduce(rank, std::span<const Letter>(&l, 1));
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    Word r(rank_);
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inverse());
    return r;
  }

  /// Appends with cancellation against the current tail.
  void push_back(const Letter& l) {
    if (l.gen < 1 || l.gen > rank_ || (l.sign != 1 && l.sign != -1))
      throw IndexOutOfRange("letter a" + std::to_string(l.gen) + " outside F_" + std::to_string(rank_));
    if (!letters_.empty() && letters_.back().cancels(l))
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  void append(const Word& w) {
    if (w.rank_ != rank_) throw RankMismatch("word ranks differ");
    for (const Letter& l : w.letters_) push_back(l);
  }

  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

inline Word reduce(int rank, std::span<const Letter> letters) { return Word::reduce(rank, letters); }

inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

/// zeta_g = [a1,a2][a3,a4]...[a_{2g-1},a_{2g}] in F_{2g}.
inline Word boundary_word(int genus) {
  if (genus < 0) throw RankMismatch("negative genus");
  const int n = 2 * genus;
  Word z(n);
  for (int k = 0; k < genus; ++k) {
    Word a = Word::generator(n, 2 * k + 1), b = Word::generator(n, 2 * k + 2);
    z.append(commutator(a, b));
  }
  return z;
}

// ---------------------------------------------------------------------------
// Text syntax: whitespace separated tokens a<j> or a<j>^-1, "1" is the identity.

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += 'a' + std::to_string(w[i].gen);
    if (w[i].sign < 0) s += "^-1";
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << to_string(w); }

inline Word parse_word(const std::string& text, int rank) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> letters;
  bool saw_identity = false;
  while (in >> tok) {
    if (tok == "1") {
      saw_identity = true;
      continue;
    }
    if (tok.size() < 2 || tok[0] != 'a') throw ParseError("bad word token '" + tok + "'", 0);
    std::string body = tok.substr(1);
    int sign = 1;
    if (auto caret = body.find('^'); caret != std::string::npos) {
      std::string exp = body.substr(caret + 1);
      if (exp == "-1")
        sign = -1;
      else if (exp != "1")
        throw ParseError("unsupported exponent in '" + tok + "'", 0);
      body = body.substr(0, caret);
    }
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("bad generator index in '" + tok + "'", 0);
    int gen = std::stoi(body);
    if (gen < 1 || gen > rank)
      throw IndexOutOfRange("generator a" + body + " outside F_" + std::to_string(rank));
    letters.push_back({gen, sign});
  }
  if (saw_identity && !letters.empty()) throw ParseError("'1' mixed with letters", 0);
  return Word::reduce(rank, letters);
}

// ---------------------------------------------------------------------------
// Homomorphisms F_n -> F_m, given by the images of the generators.

class FreeHom {
 public:
  FreeHom() = default;
  FreeHom(int source_rank, int target_rank, std::vector<Word> images)
      : source_(source_rank), target_(target_rank), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != source_)
      throw RankMismatch("FreeHom needs " + std::to_string(source_) + " images");
    for (const Word& w : images_)
      if (w.rank() != target_) throw RankMismatch("image word lives in the wrong free group");
  }

  static FreeHom identity(int n) {
    std::vector<Word> im;
    for (int i = 1; i <= n; ++i) im.push_back(Word::generator(n, i));
    return FreeHom(n, n, std::move(im));
  }

  int source_rank() const { return source_; }
  int target_rank() const { return target_; }
  /// Image of alpha_i, i is 1-based.
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<Word>& images() const { return images_; }

  bool is_identity() const { return source_ == target_ && *this == identity(source_); }

  friend bool operator==(const FreeHom&, const FreeHom&) = default;
  friend auto operator<=>(const FreeHom&, const FreeHom&) = default;

 private:
  int source_ = 0;
  int target_ = 0;
  std::vector<Word> images_;
};

inline Word apply(const FreeHom& f, const Word& w) {
  if (w.rank() != f.source_rank()) throw RankMismatch("apply: word rank differs from source rank");
  Word out(f.target_rank());
  for (const Letter& l : w.letters()) {
    const Word& im = f.image(l.gen);
    if (l.sign > 0) {
      for (const Letter& x : im.letters()) out.push_back(x);
    } else {
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it) out.push_back(it->inverse());
    }
  }
  return out;
}

/// f o g, i.e. apply g first.
inline FreeHom compose(const FreeHom& f, const FreeHom& g) {
  if (g.target_rank() != f.source_rank()) throw RankMismatch("compose: target of g differs from source of f");
  std::vector<Word> im;
  im.reserve(g.images().size());
  for (const Word& w : g.images()) im.push_back(apply(f, w));
  return FreeHom(g.source_rank(), f.target_rank(), std::move(im));
}

inline std::string to_string(const FreeHom& f) {
  std::string s;
  for (int i = 1; i <= f.source_rank(); ++i) {
    if (i > 1) s += "; ";
    s += "a" + std::to_string(i) + " -> " + to_string(f.image(i));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Abelianization.

using IntVector = std::vector<std::int64_t>;

/// Column-major integer matrix: cols[i] is the image of e_{i+1}.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<IntVector> columns;

  std::int64_t at(int r, int c) const { return columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]; }

  static IntMatrix identity(int n) {
    IntMatrix m{n, n, std::vector<IntVector>(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), 0))};
    for (int i = 0; i < n; ++i) m.columns[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
  }

  IntVector operator*(const IntVector& v) const {
    if (static_cast<int>(v.size()) != cols) throw RankMismatch("IntMatrix*vector size mismatch");
    IntVector out(static_cast<std::size_t>(rows), 0);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r)
        out[static_cast<std::size_t>(r)] =
            checked_add(out[static_cast<std::size_t>(r)], checked_mul(at(r, c), v[static_cast<std::size_t>(c)]));
    return out;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw RankMismatch("IntMatrix product size mismatch");
    IntMatrix m{rows, o.cols, {}};
    for (const IntVector& c : o.columns) m.columns.push_back(*this * c);
    return m;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntVector abelianize(const Word& w) {
  IntVector v(static_cast<std::size_t>(w.rank()), 0);
  for (const Letter& l : w.letters()) v[static_cast<std::size_t>(l.gen - 1)] += l.sign;
  return v;
}

/// [f] : Z^n -> Z^m, column i is the abelianized image of alpha_i.
inline IntMatrix abelianization_matrix(const FreeHom& f) {
  IntMatrix m{f.target_rank(), f.source_rank(), {}};
  for (const Word& w : f.images()) m.columns.push_back(abelianize(w));
  return m;
}

// ---------------------------------------------------------------------------
// Bivectors: elements of Lambda^2 Q^n, keyed by pairs i<j (1-based).

class Bivector {
 public:
  using Key = std::pair<int, int>;

  Bivector() = default;
  explicit Bivector(int rank) : rank_(rank) {}

  int rank() const { return rank_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int i, int j) const {
    if (i == j) return 0;
    Rational s = i < j ? 1 : -1;
    auto it = terms_.find(i < j ? Key{i, j} : Key{j, i});
    return it == terms_.end() ? Rational(0) : s * it->second;
  }

  /// Adds c * e_i ^ e_j, normalizing to i<j.
  void add(int i, int j, const Rational& c) {
    if (i < 1 || j < 1 || i > rank_ || j > rank_) throw IndexOutOfRange("bivector index out of range");
    if (i == j || c == 0) return;
    Key k = i < j ? Key{i, j} : Key{j, i};
    Rational& slot = terms_[k];
    slot += i < j ? c : Rational(-c);
    if (slot == 0) terms_.erase(k);
  }

  /// u ^ v for vectors in Z^n.
  static Bivector wedge(const IntVector& u, const IntVector& v) {
    if (u.size() != v.size()) throw RankMismatch("wedge of vectors of different length");
    Bivector b(static_cast<int>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0 && i != j)
          b.add(static_cast<int>(i + 1), static_cast<int>(j + 1), Rational(u[i]) * Rational(v[j]));
    }
    return b;
  }

  Bivector& operator+=(const Bivector& o) {
    if (o.rank_ != rank_) throw RankMismatch("bivector ranks differ");
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  Bivector& operator-=(const Bivector& o) { return *this += o * Rational(-1); }
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator*(Bivector a, const Rational& s) {
    if (s == 0) return Bivector(a.rank_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
  }
  friend Bivector operator*(const Rational& s, Bivector a) { return std::move(a) * s; }
  Bivector operator-() const { return *this * Rational(-1); }

  /// Lambda^2 of an integer matrix (rank m x n) applied to this bivector.
  Bivector pushforward(const IntMatrix& m) const {
    if (m.cols != rank_) throw RankMismatch("pushforward: matrix does not act on this rank");
    Bivector out(m.rows);
    for (const auto& [k, c] : terms_) {
      out += wedge(m.columns[static_cast<std::size_t>(k.first - 1)], m.columns[static_cast<std::size_t>(k.second - 1)]) * c;
    }
    return out;
  }

  friend bool operator==(const Bivector&, const Bivector&) = default;

 private:
  int rank_ = 0;
  std::map<Key, Rational> terms_;
};

inline std::string to_string(const Bivector& b) {
  if (b.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : b.terms()) {
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (mag != 1) s += to_string(mag) + "*";
    s += "e" + std::to_string(k.first) + "^e" + std::to_string(k.second);
    first = false;
  }
  return s;
}

/// omega = e1^e2 + ... + e_{2g-1}^e_{2g} in Lambda^2 Q^{2g}.
inline Bivector symplectic_bivector(int genus) {
  Bivector b(2 * genus);
  for (int k = 0; k < genus; ++k) b.add(2 * k + 1, 2 * k + 2, 1);
  return b;
}

// ---------------------------------------------------------------------------
// Content: c(w) = sum over letter positions i<j of [w_i] ^ [w_j].

/// Content of an arbitrary (possibly unreduced) spelling.
inline Bivector content(int rank, std::span<const Letter> letters) {
  Bivector c(rank);
  IntVector prefix(static_cast<std::size_t>(rank), 0);
  for (const Letter& l : letters) {
    if (l.gen < 1 || l.gen > rank) throw IndexOutOfRange("content: letter outside F_n");
    for (int i = 1; i <= rank; ++i) {
      std::int64_t p = prefix[static_cast<std::size_t>(i - 1)];
      if (p != 0 && i != l.gen) c.add(i, l.gen, Rational(p * l.sign));
    }
    prefix[static_cast<std::size_t>(l.gen - 1)] += l.sign;
  }
  return c;
}

inline Bivector content(const Word& w) { return content(w.rank(), w.letters()); }

}  // namespace confmcg

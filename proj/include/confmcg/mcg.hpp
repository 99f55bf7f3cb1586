#pragma once

// Mapping classes of the genus-g surface with one boundary component, as
// automorphisms of F_2g fixing zeta = [a1,a2]...[a_{2g-1},a_{2g}].

#include <confmcg/commutators.hpp>
#include <confmcg/freegroup.hpp>
#include <confmcg/johnson.hpp>
#include <confmcg/nielsen.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace confmcg {

/// The block-diagonal form with g blocks [[0,1],[-1,0]].
inline IntMatrix standard_symplectic_form(int genus) {
  const int n = 2 * genus;
  IntMatrix w{n, n, std::vector<IntVector>(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), 0))};
  for (int k = 0; k < genus; ++k) {
    w.columns[static_cast<std::size_t>(2 * k + 1)][static_cast<std::size_t>(2 * k)] = 1;
    w.columns[static_cast<std::size_t>(2 * k)][static_cast<std::size_t>(2 * k + 1)] = -1;
  }
  return w;
}

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t{m.cols, m.rows, std::vector<IntVector>(static_cast<std::size_t>(m.rows), IntVector(static_cast<std::size_t>(m.cols), 0))};
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) t.columns[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.at(r, c);
  return t;
}

inline bool is_symplectic(const IntMatrix& m, int genus) {
  const IntMatrix w = standard_symplectic_form(genus);
  return m.rows == 2 * genus && m.cols == 2 * genus && transpose(m) * w * m == w;
}

/// <u,v> with <e_{2k-1}, e_{2k}> = 1.
inline std::int64_t symplectic_pairing(const IntVector& u, const IntVector& v) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k + 1 < u.size(); k += 2) s = checked_add(s, checked_mul(u[k], v[k + 1]) - checked_mul(u[k + 1], v[k]));
  return s;
}

/// x -> x + <x,gamma> gamma.
inline IntMatrix transvection(const IntVector& gamma) {
  const int n = static_cast<int>(gamma.size());
  IntMatrix t = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    IntVector e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    std::int64_t p = symplectic_pairing(e, gamma);
    for (int j = 0; j < n; ++j)
      t.columns[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += p * gamma[static_cast<std::size_t>(j)];
  }
  return t;
}

struct MappingClass {
  int genus = 0;
  FreeHom phi;
  std::optional<FreeHom> inverse;
  IntMatrix symplectic;  // abelianization matrix, checked symplectic

  bool is_torelli() const { return symplectic == IntMatrix::identity(2 * genus); }
};

/// Checks zeta-fixing and the symplectic condition.
inline MappingClass validate(const FreeHom& phi, int genus, std::optional<FreeHom> inverse = std::nullopt) {
  if (genus < 0) throw RankMismatch("negative genus");
  if (phi.source_rank() != 2 * genus || phi.target_rank() != 2 * genus)
    throw RankMismatch("mapping class of genus " + std::to_string(genus) + " must act on F_" + std::to_string(2 * genus));
  const Word z = boundary_word(genus);
  Word img = apply(phi, z);
  if (img != z) throw BoundaryNotFixed("boundary word not fixed; image is " + to_string(img), to_string(img));
  IntMatrix m = abelianization_matrix(phi);
  if (!is_symplectic(m, genus)) throw NotSymplectic("abelianization matrix is not symplectic");
  if (inverse && !is_inverse_pair(phi, *inverse)) throw NotInvertible("supplied inverse does not invert the map");
  return MappingClass{genus, phi, std::move(inverse), std::move(m)};
}

inline MappingClass identity_class(int genus) {
  FreeHom id = FreeHom::identity(2 * genus);
  return validate(id, genus, id);
}

/// a o b (b applied first).
inline MappingClass product(const MappingClass& a, const MappingClass& b) {
  if (a.genus != b.genus) throw GenusMismatch("product of mapping classes of different genus");
  std::optional<FreeHom> inv;
  if (a.inverse && b.inverse) inv = compose(*b.inverse, *a.inverse);
  return MappingClass{a.genus, compose(a.phi, b.phi), std::move(inv), a.symplectic * b.symplectic};
}

inline MappingClass inverse(const MappingClass& a) {
  std::optional<FreeHom> inv = a.inverse;
  if (!inv) inv = find_inverse(a.phi);
  if (!inv) throw NotInvertible("invertibility unverified: no inverse found within the search budget");
  return validate(*inv, a.genus, a.phi);
}

/// alpha_i -> w alpha_i w^-1.
inline FreeHom conjugation_by(const Word& w, int genus) {
  const int n = 2 * genus;
  if (w.rank() != n) throw RankMismatch("conjugating word lives in the wrong free group");
  std::vector<Word> im;
  for (int i = 1; i <= n; ++i) im.push_back(w * Word::generator(n, i) * w.inverse());
  return FreeHom(n, n, std::move(im));
}

/// tau(phi)(e_i) = j(phi(alpha_i) alpha_i^-1), j the commutator-pairing class.
inline std::vector<Bivector> tau(const MappingClass& m) {
  if (!m.is_torelli()) throw TauUndefined("tau undefined: element is not in the Torelli group");
  std::vector<Bivector> out;
  const int n = 2 * m.genus;
  for (int i = 1; i <= n; ++i) {
    Word c = m.phi.image(i) * Word::generator(n, i, -1);
    if (!lcs_member_witness(c, 1)) throw TauUndefined("tau undefined for this presentation: no commutator certificate for " + to_string(c));
    out.push_back(commutator_class(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog files.
//
//   genus: <g>
//   NAME:            # provenance
//     a1 -> <word>
//     ...            (2g lines)
//   NAME: a1 -> <word>; a2 -> <word>; ...     (single-line form)
//
// `#` starts a comment; `1` is the empty word.

struct CatalogEntry {
  std::string name;
  std::string provenance;
  MappingClass element;
};

struct TwistCatalog {
  int genus = 0;
  std::vector<CatalogEntry> entries;  // file order

  const CatalogEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// "a<i> -> <word>"; returns the 1-based index.
inline int parse_image_line(const std::string& text, int rank, int line, std::vector<std::optional<Word>>& images) {
  auto arrow = text.find("->");
  if (arrow == std::string::npos) throw ParseError("expected 'a<i> -> <word>'", line);
  std::string lhs = trim(text.substr(0, arrow));
  if (lhs.size() < 2 || lhs[0] != 'a' || !std::all_of(lhs.begin() + 1, lhs.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad generator '" + lhs + "'", line);
  int i = std::stoi(lhs.substr(1));
  if (i < 1 || i > rank) throw ParseError("generator " + lhs + " outside F_" + std::to_string(rank), line);
  if (images[static_cast<std::size_t>(i - 1)]) throw ParseError("image of " + lhs + " given twice", line);
  try {
    images[static_cast<std::size_t>(i - 1)] = parse_word(text.substr(arrow + 2), rank);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  } catch (const IndexOutOfRange& e) {
    throw ParseError(e.what(), line);
  }
  return i;
}

}  // namespace detail

/// Parses and validates a catalog. Validation errors name the entry.
inline TwistCatalog parse_catalog(std::istream& in) {
  TwistCatalog cat;
  bool have_genus = false;
  std::string raw;
  int line = 0;

  struct Pending {
    std::string name, provenance;
    int line = 0;
    std::vector<std::optional<Word>> images;
    int count = 0;
  };
  std::optional<Pending> cur;

  auto finish = [&]() {
    if (!cur) return;
    const int n = 2 * cat.genus;
    if (cur->count != n)
      throw ParseError("entry " + cur->name + " has " + std::to_string(cur->count) + " images, expected " + std::to_string(n), cur->line);
    std::vector<Word> im;
    for (auto& w : cur->images) im.push_back(*w);
    FreeHom phi(n, n, std::move(im));
    try {
      MappingClass m = validate(phi, cat.genus);
      m.inverse = find_inverse(phi);
      if (!m.inverse) throw NotInvertible("invertibility unverified: no inverse found within the search budget");
      cat.entries.push_back({cur->name, cur->provenance, std::move(m)});
    } catch (const BoundaryNotFixed& e) {
      throw BoundaryNotFixed("entry " + cur->name + ": " + e.what(), e.image_word);
    } catch (const NotSymplectic& e) {
      throw NotSymplectic("entry " + cur->name + ": " + e.what());
    } catch (const NotInvertible& e) {
      throw NotInvertible("entry " + cur->name + ": " + e.what());
    }
    cur.reset();
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string comment;
    if (auto h = raw.find('#'); h != std::string::npos) {
      comment = detail::trim(raw.substr(h + 1));
      raw = raw.substr(0, h);
    }
    std::string text = detail::trim(raw);
    if (text.empty()) continue;

    if (!have_genus) {
      if (text.rfind("genus:", 0) != 0) throw ParseError("expected 'genus: <int>' header", line);
      std::string v = detail::trim(text.substr(6));
      if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad genus '" + v + "'", line);
      cat.genus = std::stoi(v);
      have_genus = true;
      continue;
    }

    auto colon = text.find(':');
    auto arrow = text.find("->");
    if (colon != std::string::npos && (arrow == std::string::npos || colon < arrow)) {
      finish();
      std::string name = detail::trim(text.substr(0, colon));
      if (!detail::valid_name(name)) throw ParseError("bad entry name '" + name + "'", line);
      if (cat.find(name)) throw ParseError("duplicate entry " + name, line);
      cur = Pending{name, comment, line, std::vector<std::optional<Word>>(static_cast<std::size_t>(2 * cat.genus)), 0};
      std::string rest = detail::trim(text.substr(colon + 1));
      if (!rest.empty()) {
        std::stringstream parts(rest);
        std::string part;
        while (std::getline(parts, part, ';')) {
          if (detail::trim(part).empty()) continue;
          detail::parse_image_line(part, 2 * cat.genus, line, cur->images);
          ++cur->count;
        }
        finish();
      }
      continue;
    }
    if (!cur) throw ParseError("image line outside an entry", line);
    detail::parse_image_line(text, 2 * cat.genus, line, cur->images);
    if (++cur->count > 2 * cat.genus) throw ParseError("too many images for entry " + cur->name, line);
  }
  finish();
  return cat;  // no header at all: the empty catalog
}

inline TwistCatalog parse_catalog(const std::string& text) {
  std::istringstream in(text);
  return parse_catalog(in);
}

inline TwistCatalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file " + path);
  return parse_catalog(in);
}

/// Product expression "X1*X2^-1*X3" (X1 o X2^-1 o X3, rightmost applied first);
/// "1" is the identity.
inline MappingClass evaluate_product(const TwistCatalog& cat, const std::string& expr) {
  MappingClass acc = identity_class(cat.genus);
  std::string e = detail::trim(expr);
  if (e.empty()) throw ParseError("empty product expression", 0);
  if (e == "1") return acc;
  std::stringstream parts(e);
  std::string tok;
  while (std::getline(parts, tok, '*')) {
    tok = detail::trim(tok);
    bool inv = false;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    const CatalogEntry* ent = cat.find(tok);
    if (!ent) throw ParseError("unknown catalog entry '" + tok + "'", 0);
    acc = product(acc, inv ? inverse(ent->element) : ent->element);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Breadth-first search over catalog products.

struct SearchHit {
  std::string word;  // "X1*X2^-1*..." or "1"
  int length = 0;
  MappingClass element;
};

struct SearchOptions {
  /// Stop after the first level that contains a hit satisfying this.
  std::function<bool(const SearchHit&)> stop_after_level_with;
  std::size_t max_nodes = 2'000'000;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // by length, then lexicographic
  int levels_completed = 0;
  bool truncated = false;  // node budget exhausted before reaching L
};

/// Products of catalog letters (labels sorted, each followed by its inverse)
/// up to length L, deduplicated by automorphism; returns those with identity
/// symplectic matrix.
inline SearchResult torelli_search(const TwistCatalog& cat, int max_length, const SearchOptions& opt = {}) {
  struct Letter {
    std::string label;
    MappingClass m;
  };
  std::vector<Letter> letters;
  {
    std::vector<const CatalogEntry*> sorted;
    for (const auto& e : cat.entries) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->name < b->name; });
    for (auto* e : sorted) {
      letters.push_back({e->name, e->element});
      letters.push_back({e->name + "^-1", inverse(e->element)});
    }
  }

  SearchResult res;
  struct Node {
    std::string word;
    MappingClass m;
  };
  std::set<std::vector<Word>> seen;
  std::vector<Node> level{{"1", identity_class(cat.genus)}};
  seen.insert(level[0].m.phi.images());
  res.hits.push_back({"1", 0, level[0].m});
  bool stop = opt.stop_after_level_with && opt.stop_after_level_with(res.hits[0]);

  for (int len = 1; len <= max_length && !stop; ++len) {
    std::vector<Node> next;
    for (const Node& node : level) {
      for (const Letter& l : letters) {
        if (seen.size() >= opt.max_nodes) {
          res.truncated = true;
          return res;
        }
        MappingClass m = product(node.m, l.m);
        if (!seen.insert(m.phi.images()).second) continue;
        std::string w = node.word == "1" ? l.label : node.word + "*" + l.label;
        if (m.is_torelli()) {
          res.hits.push_back({w, len, m});
          if (opt.stop_after_level_with && opt.stop_after_level_with(res.hits.back())) stop = true;
        }
        next.push_back({std::move(w), std::move(m)});
      }
    }
    level = std::move(next);
    res.levels_completed = len;
  }
  if (!stop) res.levels_completed = max_length;
  return res;
}

/// Index i with xi(phi)(e_i) outside Q*omega, or 0 if there is none.
inline int nonsymplectic_index(const MappingClass& m) {
  const Bivector w = symplectic_bivector(m.genus);
  const XiMap x = xi(m.phi);
  for (int i = 1; i <= 2 * m.genus; ++i) {
    const Bivector& b = x(i);
    // rank of {b, omega} is 2 unless b is a rational multiple of omega
    Rational s = b.coeff(1, 2);
    if (b != w * s) return i;
  }
  return 0;
}

struct NonsymplecticWitness {
  SearchHit hit;
  int index = 0;
  Bivector value;
};

inline NonsymplecticWitness nonsymplectic_witness(const TwistCatalog& cat, int max_length, const SearchOptions& base = {}) {
  if (cat.genus < 2) throw DegreeOutOfRange("nonsymplectic_witness needs genus >= 2");
  SearchOptions opt = base;
  opt.stop_after_level_with = [](const SearchHit& h) { return nonsymplectic_index(h.element) != 0; };
  SearchResult r = torelli_search(cat, max_length, opt);
  for (const SearchHit& h : r.hits)
    if (int i = nonsymplectic_index(h.element)) return {h, i, xi(h.element.phi)(i)};
  throw NotFoundWithinBound("no Torelli element with xi outside Q*omega up to length " + std::to_string(max_length), max_length);
}

}  // namespace confmcg

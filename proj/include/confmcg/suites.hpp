#pragma once

// Seeded verification suites. Each returns a report; the CLI `check`
// command and the acceptance binary both run these.

#include <confmcg/cohomology.hpp>
#include <confmcg/commutators.hpp>
#include <confmcg/extalg.hpp>
#include <confmcg/freegroup.hpp>
#include <confmcg/johnson.hpp>
#include <confmcg/mcg.hpp>
#include <confmcg/verify/chain_oracle.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifndef CONFMCG_DATA_DIR
#define CONFMCG_DATA_DIR "data"
#endif

namespace confmcg {

// ---------------------------------------------------------------------------
// Random inputs.

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Unreduced letter sequence.
  std::vector<Letter> letters(int rank, int len) {
    std::vector<Letter> out;
    for (int k = 0; k < len; ++k) out.push_back({uniform(1, rank), uniform(0, 1) ? 1 : -1});
    return out;
  }

  Word word(int rank, int max_len) {
    auto l = letters(rank, uniform(0, max_len));
    return Word::reduce(rank, l);
  }

  FreeHom hom(int source, int target, int max_len) {
    std::vector<Word> im;
    for (int i = 0; i < source; ++i) im.push_back(word(target, max_len));
    return FreeHom(source, target, std::move(im));
  }

  /// Product of elementary Nielsen automorphisms; returns (phi, phi^-1).
  std::pair<FreeHom, FreeHom> automorphism(int rank, int moves) {
    FreeHom f = FreeHom::identity(rank), g = FreeHom::identity(rank);
    for (int s = 0; s < moves; ++s) {
      auto [e, ei] = elementary(rank);
      f = compose(f, e);
      g = compose(ei, g);
    }
    return {f, g};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::pair<FreeHom, FreeHom> elementary(int rank) {
    std::vector<Word> im = FreeHom::identity(rank).images(), inv = im;
    const int i = uniform(1, rank);
    int kind = rank >= 2 ? uniform(0, 2) : 0;
    if (kind == 0) {  // a_i -> a_i^-1
      im[static_cast<std::size_t>(i - 1)] = Word::generator(rank, i, -1);
      inv = im;
    } else {
      int j = uniform(1, rank - 1);
      if (j >= i) ++j;
      const int e = uniform(0, 1) ? 1 : -1;
      Word ai = Word::generator(rank, i), aj = Word::generator(rank, j, e), ajinv = Word::generator(rank, j, -e);
      if (kind == 1) {  // a_i -> a_i a_j^e
        im[static_cast<std::size_t>(i - 1)] = ai * aj;
        inv[static_cast<std::size_t>(i - 1)] = ai * ajinv;
      } else {  // a_i -> a_j^e a_i
        im[static_cast<std::size_t>(i - 1)] = aj * ai;
        inv[static_cast<std::size_t>(i - 1)] = ajinv * ai;
      }
    }
    return {FreeHom(rank, rank, im), FreeHom(rank, rank, inv)};
  }

  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 1;
  int genus = 2;
  int search_length = 12;
  std::string data_dir = CONFMCG_DATA_DIR;

  std::string catalog_path(int g) const { return data_dir + "/catalog_g" + std::to_string(g) + ".txt"; }
};

struct SuiteReport {
  explicit SuiteReport(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  long long cases = 0;
  std::vector<std::string> notes;  // extra output lines (witnesses etc.)
  std::string failure;             // first counterexample

  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

namespace suites {

inline SuiteReport content_properties(const SuiteConfig& cfg, int cases = 10000) {
  SuiteReport r{"content-properties"};
  Random rnd(cfg.seed);
  for (int t = 0; t < cases && r.pass; ++t) {
    const int n = rnd.uniform(1, 6);
    auto raw = rnd.letters(n, rnd.uniform(0, 40));
    Word w = Word::reduce(n, raw);
    // insert a cancelling pair somewhere
    std::vector<Letter> padded = raw;
    Letter l{rnd.uniform(1, n), 1};
    auto pos = padded.begin() + rnd.uniform(0, static_cast<int>(padded.size()));
    pos = padded.insert(pos, l.inverse());
    padded.insert(pos, l);
    if (content(n, raw) != content(w) || content(n, padded) != content(w)) r.fail("well-definedness: " + to_string(w));
    Word a = rnd.word(n, 40), b = rnd.word(n, 40), c = rnd.word(n, 40);
    if (content(a.inverse()) != -content(a)) r.fail("inverse rule: " + to_string(a));
    if (content(a * b) != content(a) + content(b) + Bivector::wedge(abelianize(a), abelianize(b)))
      r.fail("product rule: " + to_string(a) + " | " + to_string(b));
    if (content(commutator(a, b)) != Bivector::wedge(abelianize(a), abelianize(b)) * Rational(2))
      r.fail("commutator rule: " + to_string(a) + " | " + to_string(b));
    if (!content(commutator(a, commutator(b, c))).is_zero()) r.fail("double commutator: " + to_string(a));
    ++r.cases;
  }
  return r;
}

inline SuiteReport boundary_content(const SuiteConfig&) {
  SuiteReport r{"boundary-content"};
  for (int g = 1; g <= 6; ++g, ++r.cases)
    if (content(boundary_word(g)) != symplectic_bivector(g) * Rational(2)) r.fail("g=" + std::to_string(g));
  return r;
}

inline SuiteReport functor_law(const SuiteConfig& cfg, int pairs = 1000) {
  SuiteReport r{"functor-law"};
  Random rnd(cfg.seed);
  for (int t = 0; t < pairs && r.pass; ++t) {
    const int n = rnd.uniform(1, 4), m = rnd.uniform(1, 4), k = rnd.uniform(1, 4);
    FreeHom phi = rnd.hom(n, m, 8), psi = rnd.hom(m, k, 8);
    FreeHom comp = compose(psi, phi);
    JohnsonEndo jc = johnson_endo(comp), jp = johnson_endo(phi), js = johnson_endo(psi);
    for (int i = 1; i <= n; ++i) {
      if (jc(APoly::x(n, i)) != js(jp(APoly::x(n, i))) || jc(APoly::y(n, i)) != js(jp(APoly::y(n, i))))
        r.fail("J(psi o phi) != J(psi) J(phi) for phi = " + to_string(phi) + ", psi = " + to_string(psi));
      IntVector e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i - 1)] = 1;
      Bivector lhs = xi(comp)(i);
      Bivector rhs = xi(psi)(abelianization_matrix(phi) * e) + xi(phi)(i).pushforward(abelianization_matrix(psi));
      if (lhs != rhs) r.fail("crossed homomorphism identity for phi = " + to_string(phi) + ", psi = " + to_string(psi));
    }
    ++r.cases;
  }
  return r;
}

inline SuiteReport inner_automorphism(const SuiteConfig&) {
  SuiteReport r{"inner-automorphism"};
  for (int n = 2; n <= 6; ++n) {
    FreeHom phi = [&] {
      std::vector<Word> im;
      Word a1 = Word::generator(n, 1);
      for (int i = 1; i <= n; ++i) im.push_back(a1 * Word::generator(n, i) * a1.inverse());
      return FreeHom(n, n, im);
    }();
    JohnsonEndo j = johnson_endo(phi);
    for (int i = 2; i <= n; ++i, ++r.cases) {
      APoly expect = APoly::y(n, i) + APoly::x(n, 1) * APoly::x(n, i) * Rational(2);
      if (j(APoly::y(n, i)) != expect) r.fail("n=" + std::to_string(n) + " i=" + std::to_string(i) + ": " + to_string(j(APoly::y(n, i))));
    }
  }
  return r;
}

inline SuiteReport koszul(const SuiteConfig&) {
  SuiteReport r{"koszul"};
  for (int n = 1; n <= 4; ++n) {
    // every (p,q) with y-degree p <= 4
    KoszulDifferential d = koszul_differential(n, 1);
    for (int p = 0; p <= 4; ++p)
      for (int q = 0; q <= n; ++q, ++r.cases) {
        auto src = koszul_slice(n, p, q);
        if (src.empty()) continue;
        const int out = p > 0 && q < n ? rank(koszul_matrix(d, p, q)) : 0;
        const int in = q > 0 ? rank(koszul_matrix(d, p + 1, q - 1)) : 0;
        const int h = static_cast<int>(src.size()) - out - in;
        if (h != (p == 0 && q == 0 ? 1 : 0))
          r.fail("n=" + std::to_string(n) + " (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ") homology " + std::to_string(h));
        if (p >= 2 && q + 2 <= n) {
          RatMatrix dd = koszul_matrix(d, p - 1, q + 1) * koszul_matrix(d, p, q);
          if (dd != RatMatrix(dd.rows(), dd.cols())) r.fail("d_K^2 != 0 at n=" + std::to_string(n));
        }
      }
  }
  return r;
}

inline SuiteReport lefschetz(const SuiteConfig&) {
  SuiteReport r{"lefschetz"};
  for (int g = 0; g <= 5; ++g)
    for (int k = 0; k <= 2 * g; ++k, ++r.cases) {
      auto p = lefschetz_piece(g, k);
      auto dual = lefschetz_piece(g, 2 * g - k);
      const std::string at = "g=" + std::to_string(g) + " k=" + std::to_string(k);
      if (p->dim_v() != dual->dim_k()) r.fail("dim V^k != dim K^{2g-k} at " + at);
      if (k > g && p->dim_v() != 0) r.fail("V nonzero above g at " + at);
      if (k < g && p->dim_k() != 0) r.fail("K nonzero below g at " + at);
      const int rk_in = k >= 2 ? rank(phi_matrix(g, k - 2)) : 0;
      if (p->dim_v() + rk_in != binomial(2 * g, k)) r.fail("dim V + rank != binomial at " + at);
      if (p->dim_k() != binomial(2 * g, k) - rank(phi_matrix(g, k))) r.fail("dim K != binomial - rank at " + at);
    }
  return r;
}

inline SuiteReport oracle_equivalence(const SuiteConfig&, int g_max = 3, int i_max = 8, int n_max = 6) {
  SuiteReport r{"oracle-equivalence"};
  for (int g = 0; g <= g_max; ++g)
    for (int n = 0; n <= n_max; ++n)
      for (int i = 0; i <= i_max; ++i, ++r.cases) {
        const long long structured = slice_basis(g, i, n).size();
        const long long brute = verify::chain_homology_dim(g, i, n);
        if (structured != brute)
          r.fail("g=" + std::to_string(g) + " i=" + std::to_string(i) + " n=" + std::to_string(n) + ": " + std::to_string(structured) +
                 " vs " + std::to_string(brute));
      }
  return r;
}

inline SuiteReport known_patterns(const SuiteConfig&) {
  SuiteReport r{"known-patterns"};
  auto t0 = dims_table(0, 6, 6);
  for (int n = 0; n <= 6; ++n)
    for (int i = 0; i <= 6; ++i, ++r.cases) {
      const int expect = i == 0 ? 1 : (i == 1 && n >= 2 ? 1 : 0);
      if (t0[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] != expect)
        r.fail("g=0 H^" + std::to_string(i) + "(C_" + std::to_string(n) + ")");
    }
  auto t1 = dims_table(1, 4, 1);
  const int surface[] = {1, 2, 0, 0, 0};
  for (int i = 0; i <= 4; ++i, ++r.cases)
    if (t1[static_cast<std::size_t>(i)][1] != surface[i]) r.fail("g=1 n=1 H^" + std::to_string(i));
  for (int g = 0; g <= 4; ++g, ++r.cases) {
    const int expect = static_cast<int>(2 * g + binomial(2 * g, 2).get_si() - 1);
    if (g >= 1 && slice_basis(g, 2, 2).size() != expect) r.fail("dim H^2(C_2) at g=" + std::to_string(g));
  }
  for (int g = 0; g <= 4; ++g)
    for (int n = 0; n <= 6; ++n)
      for (int i = 2 * n + 1; i <= 2 * n + 3; ++i, ++r.cases)
        if (slice_basis(g, i, n).size() != 0) r.fail("nonzero above 2n at g=" + std::to_string(g));
  return r;
}

/// Search result plus witness for the non-symplecticity criterion.
struct WitnessRun {
  TwistCatalog catalog;
  SearchResult search;
  std::optional<NonsymplecticWitness> witness;
};

inline WitnessRun run_witness_search(const SuiteConfig& cfg) {
  WitnessRun w{load_catalog(cfg.catalog_path(cfg.genus)), {}, std::nullopt};
  SearchOptions opt;
  opt.stop_after_level_with = [](const SearchHit& h) { return nonsymplectic_index(h.element) != 0; };
  w.search = torelli_search(w.catalog, cfg.search_length, opt);
  for (const SearchHit& h : w.search.hits)
    if (int i = nonsymplectic_index(h.element)) {
      w.witness = NonsymplecticWitness{h, i, xi(h.element.phi)(i)};
      break;
    }
  return w;
}

inline SuiteReport nonsymplectic(const SuiteConfig& cfg, const WitnessRun& run) {
  SuiteReport r{"nonsymplectic"};
  r.cases = static_cast<long long>(run.search.hits.size());
  if (!run.witness) {
    r.fail("no witness up to length " + std::to_string(cfg.search_length));
    return r;
  }
  const auto& w = *run.witness;
  r.notes.push_back("witness " + w.hit.word + " (length " + std::to_string(w.hit.length) + ")");
  r.notes.push_back("xi(e" + std::to_string(w.index) + ") = " + to_string(w.value));
  if (!w.hit.element.is_torelli()) r.fail("witness is not Torelli");
  // rank of {xi(e_i), omega} must be 2
  RatMatrix pair(2, static_cast<int>(degree_slice(2 * cfg.genus, 2).size()));
  DegreeSlice l2 = degree_slice(2 * cfg.genus, 2);
  RatVector a = to_coords(from_bivector(w.value), l2), b = to_coords(omega(cfg.genus), l2);
  for (int c = 0; c < l2.size(); ++c) {
    pair(0, c) = a[static_cast<std::size_t>(c)];
    pair(1, c) = b[static_cast<std::size_t>(c)];
  }
  if (rank(pair) != 2) r.fail("xi value lies in Q*omega");
  if (act(w.hit.element, slice_basis(cfg.genus, 2, 2)).matrix.is_identity()) r.fail("act is the identity on slice (2,(2))");
  if (johnson_rep(w.hit.element.phi, false, &*w.hit.element.inverse).matrix.is_identity()) r.fail("Johnson representation is trivial");
  return r;
}

inline SuiteReport xi_tau(const WitnessRun& run) {
  SuiteReport r{"xi-tau"};
  for (const SearchHit& h : run.search.hits) {
    auto t = tau(h.element);
    XiMap x = xi(h.element.phi);
    for (int i = 1; i <= 2 * h.element.genus; ++i)
      if (x(i) != t[static_cast<std::size_t>(i - 1)] * Rational(2)) r.fail("xi != 2 tau for " + h.word);
    ++r.cases;
  }
  return r;
}

/// J(2)-style inputs for genus g: conjugation by zeta, catalog elements whose
/// images all have the form alpha_i h_i with h_i double-commutator certified,
/// and their conjugates by catalog letters.
inline std::vector<std::pair<std::string, MappingClass>> j2_inputs(const SuiteConfig& cfg, int g) {
  std::vector<std::pair<std::string, MappingClass>> out;
  FreeHom cz = conjugation_by(boundary_word(g), g);
  out.push_back({"conj(zeta)", validate(cz, g, conjugation_by(boundary_word(g).inverse(), g))});
  if (g == 0) return out;
  TwistCatalog cat = load_catalog(cfg.catalog_path(g));
  auto certified = [&](const MappingClass& m) {
    for (int i = 1; i <= 2 * g; ++i)
      if (!lcs_member_witness(Word::generator(2 * g, i, -1) * m.phi.image(i), 2)) return false;
    return true;
  };
  std::vector<std::pair<std::string, MappingClass>> base;
  for (const auto& e : cat.entries)
    if (certified(e.element)) base.push_back({e.name, e.element});
  for (const auto& [name, m] : base) {
    out.push_back({name, m});
    for (const auto& e : cat.entries) {
      if (e.name == name) continue;
      MappingClass c = product(product(e.element, m), inverse(e.element));
      if (certified(c)) out.push_back({e.name + "*" + name + "*" + e.name + "^-1", c});
    }
  }
  return out;
}

inline SuiteReport j2_trivial(const SuiteConfig& cfg, int i_max = 4, int n_max = 4) {
  SuiteReport r{"j2-trivial"};
  for (int g = 0; g <= 2; ++g)
    for (const auto& [name, m] : j2_inputs(cfg, g)) {
      ++r.cases;
      if (!j2_trivial_check(m, i_max, n_max)) r.fail("nontrivial action of " + name + " at g=" + std::to_string(g));
    }
  return r;
}

/// act(phi psi) = act(phi) act(psi) on random catalog products.
inline SuiteReport group_law(const SuiteConfig& cfg, int products = 100) {
  SuiteReport r{"group-law"};
  Random rnd(cfg.seed);
  std::vector<TwistCatalog> cats;
  for (int g = 1; g <= 2; ++g) cats.push_back(load_catalog(cfg.catalog_path(g)));
  auto random_element = [&](const TwistCatalog& cat) {
    MappingClass m = identity_class(cat.genus);
    const int len = rnd.uniform(1, 3);
    for (int s = 0; s < len; ++s) {
      const auto& e = cat.entries[static_cast<std::size_t>(rnd.uniform(0, static_cast<int>(cat.entries.size()) - 1))];
      m = product(m, rnd.uniform(0, 1) ? e.element : inverse(e.element));
    }
    return m;
  };
  for (int t = 0; r.cases < products && r.pass; ++t) {
    const TwistCatalog& cat = cats[static_cast<std::size_t>(t % 2)];
    MappingClass a = random_element(cat), b = random_element(cat);
    MappingClass ab = product(a, b);
    int i = rnd.uniform(0, 4), n = rnd.uniform(0, 4);
    SliceBasis s = slice_basis(cat.genus, i, n);
    if (s.size() > 50) continue;
    if (act(ab, s).matrix != act(a, s).matrix * act(b, s).matrix)
      r.fail("g=" + std::to_string(cat.genus) + " slice (" + std::to_string(i) + "," + std::to_string(n) + ")");
    ++r.cases;
  }
  return r;
}

struct SuiteEntry {
  std::string name;
  std::function<SuiteReport(const SuiteConfig&)> run;
};

inline std::vector<SuiteEntry> registry() {
  return {
      {"content-properties", [](const SuiteConfig& c) { return content_properties(c); }},
      {"boundary-content", [](const SuiteConfig& c) { return boundary_content(c); }},
      {"functor-law", [](const SuiteConfig& c) { return functor_law(c); }},
      {"inner-automorphism", [](const SuiteConfig& c) { return inner_automorphism(c); }},
      {"koszul", [](const SuiteConfig& c) { return koszul(c); }},
      {"lefschetz", [](const SuiteConfig& c) { return lefschetz(c); }},
      {"oracle-equivalence", [](const SuiteConfig& c) { return oracle_equivalence(c); }},
      {"known-patterns", [](const SuiteConfig& c) { return known_patterns(c); }},
      {"nonsymplectic", [](const SuiteConfig& c) { return nonsymplectic(c, run_witness_search(c)); }},
      {"xi-tau", [](const SuiteConfig& c) { return xi_tau(run_witness_search(c)); }},
      {"j2-trivial", [](const SuiteConfig& c) { return j2_trivial(c); }},
      {"group-law", [](const SuiteConfig& c) { return group_law(c); }},
  };
}

}  // namespace suites
}  // namespace confmcg

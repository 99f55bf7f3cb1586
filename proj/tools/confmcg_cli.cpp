// confmcg: dimension tables, representation matrices, content/xi evaluation,
// catalog validation and the verification suites.

#include <confmcg/confmcg.hpp>
#include <confmcg/suites.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace confmcg;
using nlohmann::json;

enum class Format { Plain, Csv, Json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "plain") return Format::Plain;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw UsageError("unknown format '" + s + "' (plain, csv, json)");
}

TwistCatalog open_catalog(const std::string& given, int genus) {
  std::string path = given.empty() ? std::string(CONFMCG_DATA_DIR) + "/catalog_g" + std::to_string(genus) + ".txt" : given;
  if (!std::filesystem::exists(path)) {
    if (given.empty() && genus == 0) return TwistCatalog{};
    throw UsageError("catalog not found: " + path);
  }
  TwistCatalog cat = load_catalog(path);
  if (cat.entries.empty() && cat.genus == 0) cat.genus = genus;
  if (cat.genus != genus)
    throw UsageError("catalog " + path + " has genus " + std::to_string(cat.genus) + ", expected " + std::to_string(genus));
  return cat;
}

std::string basis_label(const RMonomial& m) {
  std::string s;
  if (m.a > 0) s += m.a == 1 ? "w" : "w^" + std::to_string(m.a);
  for (std::size_t i = 0; i < m.beta.size(); ++i) {
    if (m.beta[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += "y" + std::to_string(i + 1);
    if (m.beta[i] > 1) s += "^" + std::to_string(m.beta[i]);
  }
  auto piece = lefschetz_piece(static_cast<int>(m.beta.size()) / 2, m.k);
  std::string cls;
  if (m.kind == ClassKind::V) {
    if (m.k > 0) cls = to_string(piece->v_representative(m.cls));
  } else {
    ExtElem z = piece->k_element(m.cls);
    cls = (z == ExtElem::one(z.rank()) ? std::string() : "(" + to_string(z) + ")") + "v";
  }
  if (!cls.empty()) s += (s.empty() ? "" : " ") + cls;
  return s.empty() ? "1" : s;
}

int cmd_dims(int g, int imax, int nmax, Format fmt) {
  if (g < 0 || imax < 0 || nmax < 0) throw UsageError("--g, --imax and --nmax must be non-negative");
  auto t = dims_table(g, imax, nmax);
  if (fmt == Format::Json) {
    std::cout << json{{"command", "dims"}, {"g", g}, {"imax", imax}, {"nmax", nmax}, {"table", t}}.dump() << "\n";
    return 0;
  }
  if (fmt == Format::Csv) {
    std::cout << "i";
    for (int n = 0; n <= nmax; ++n) std::cout << ",n=" << n;
    std::cout << "\n";
    for (int i = 0; i <= imax; ++i) {
      std::cout << i;
      for (int n = 0; n <= nmax; ++n) std::cout << "," << t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
      std::cout << "\n";
    }
    return 0;
  }
  std::cout << "# dim H^i(C_n(S_{" << g << ",1}); Q), rows i = 0.." << imax << ", columns n = 0.." << nmax << "\n";
  std::cout << "i\\n";
  for (int n = 0; n <= nmax; ++n) std::cout << "\t" << n;
  std::cout << "\n";
  for (int i = 0; i <= imax; ++i) {
    std::cout << i;
    for (int n = 0; n <= nmax; ++n) std::cout << "\t" << t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
    std::cout << "\n";
  }
  return 0;
}

int cmd_rep(const std::string& phi_expr, int g, int i, int n, const std::string& catalog, Format fmt) {
  if (g < 0 || i < 0 || n < 0) throw UsageError("--g, --i and --n must be non-negative");
  TwistCatalog cat = open_catalog(catalog, g);
  MappingClass phi = evaluate_product(cat, phi_expr);
  RepMatrix rep = act(phi, slice_basis(g, i, n));
  const int d = rep.basis.size();
  std::vector<std::string> labels;
  for (const auto& m : rep.basis.monomials) labels.push_back(basis_label(m));

  if (fmt == Format::Json) {
    json rows = json::array();
    for (int r = 0; r < d; ++r) {
      json row = json::array();
      for (int c = 0; c < d; ++c) row.push_back(to_string(rep.matrix(r, c)));
      rows.push_back(row);
    }
    std::cout << json{{"command", "rep"}, {"phi", phi_expr}, {"g", g}, {"i", i}, {"n", n}, {"basis", labels}, {"matrix", rows}}.dump()
              << "\n";
    return 0;
  }
  const char* sep = fmt == Format::Csv ? "," : "\t";
  if (fmt == Format::Plain) {
    std::cout << "# phi = " << phi_expr << " acting on H^" << i << "(C_" << n << "(S_{" << g << ",1}); Q), dim " << d << "\n";
    std::cout << "# columns are images of basis elements; the basis is this tool's choice\n";
    std::cout << "# basis:";
    for (const auto& l : labels) std::cout << " [" << l << "]";
    std::cout << "\n";
  }
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) std::cout << (c ? sep : "") << to_string(rep.matrix(r, c));
    std::cout << "\n";
  }
  return 0;
}

int cmd_content(const std::string& word, int n) {
  if (n <= 0) {
    n = 1;
    std::istringstream in(word);
    std::string tok;
    while (in >> tok)
      if (tok.size() > 1 && tok[0] == 'a') {
        std::string digits = tok.substr(1, tok.find('^') == std::string::npos ? std::string::npos : tok.find('^') - 1);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) n = std::max(n, std::stoi(digits));
      }
  }
  std::cout << to_string(content(parse_word(word, n))) << "\n";
  return 0;
}

int cmd_xi(const std::string& phi_expr, int g, const std::string& catalog, Format fmt) {
  TwistCatalog cat = open_catalog(catalog, g);
  MappingClass phi = evaluate_product(cat, phi_expr);
  XiMap x = xi(phi.phi);
  if (fmt == Format::Json) {
    json vals = json::array();
    for (int i = 1; i <= 2 * g; ++i) vals.push_back(to_string(x(i)));
    std::cout << json{{"command", "xi"}, {"phi", phi_expr}, {"g", g}, {"xi", vals}}.dump() << "\n";
    return 0;
  }
  for (int i = 1; i <= 2 * g; ++i) std::cout << "xi(e" << i << ") = " << to_string(x(i)) << "\n";
  return 0;
}

int cmd_validate(const std::string& catalog, int g) {
  TwistCatalog cat = open_catalog(catalog, g);
  std::cout << "# genus " << cat.genus << ", " << cat.entries.size() << " entries, all validated\n";
  for (const auto& e : cat.entries) {
    std::cout << e.name << "\t";
    const IntMatrix& m = e.element.symplectic;
    for (int r = 0; r < m.rows; ++r) {
      std::cout << (r ? ";" : "[");
      for (int c = 0; c < m.cols; ++c) std::cout << (c ? " " : "") << m.at(r, c);
    }
    std::cout << "]" << (e.provenance.empty() ? "" : "\t# " + e.provenance) << "\n";
  }
  return 0;
}

int cmd_check(const std::string& suite, std::uint64_t seed, int g, int L, Format fmt) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.genus = g;
  cfg.search_length = L;
  auto reg = suites::registry();
  std::vector<suites::SuiteEntry> chosen;
  for (auto& e : reg)
    if (suite == "all" || e.name == suite) chosen.push_back(e);
  if (chosen.empty()) {
    std::string names;
    for (auto& e : reg) names += " " + e.name;
    throw UsageError("unknown suite '" + suite + "'; available: all" + names);
  }
  bool ok = true;
  if (fmt == Format::Plain) std::cout << "# check suite=" << suite << " seed=" << seed << " g=" << g << " L=" << L << "\n";
  for (auto& e : chosen) {
    SuiteReport r = e.run(cfg);
    ok = ok && r.pass;
    if (fmt == Format::Json) {
      std::cout << json{{"suite", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"seed", seed}, {"notes", r.notes}, {"failure", r.failure}}.dump()
                << "\n";
    } else if (fmt == Format::Csv) {
      std::cout << r.name << "," << (r.pass ? "PASS" : "FAIL") << "," << r.cases << "," << seed << "\n";
    } else {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases << "\n";
      for (const auto& note : r.notes) std::cout << "  " << note << "\n";
      if (!r.pass) std::cout << "  first failure: " << r.failure << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational cohomology of configuration spaces of S_{g,1} as a mapping class group representation"};
  app.require_subcommand(1);
  app.footer(
      "Product expressions: X1*X2^-1*X3 composes catalog entries, the rightmost is applied first\n"
      "(X1*X2 = X1 o X2). '1' is the identity. Exit codes: 0 ok, 1 suite failure, 2 usage error.");

  std::string format = "plain", catalog, phi = "1", word, suite = "all";
  int g = 1, imax = 4, nmax = 4, i = 0, n = 0, content_n = 0, L = 12;
  std::uint64_t seed = 1;

  auto* dims = app.add_subcommand("dims", "table of dim H^i(C_n(S_{g,1}); Q)");
  dims->add_option("--g", g, "genus")->required();
  dims->add_option("--imax", imax, "largest degree i");
  dims->add_option("--nmax", nmax, "largest number of points n");
  dims->add_option("--format", format, "plain | csv | json");

  auto* rep = app.add_subcommand("rep", "matrix of a catalog product on the slice (i,(n))");
  rep->add_option("--phi", phi, "product expression over catalog entries")->required();
  rep->add_option("--g", g, "genus")->required();
  rep->add_option("--i", i, "degree")->required();
  rep->add_option("--n", n, "number of points")->required();
  rep->add_option("--catalog", catalog, "catalog file (default: bundled catalog for the genus)");
  rep->add_option("--format", format, "plain | csv | json");

  auto* cont = app.add_subcommand("content", "content of a word, as a bivector");
  cont->add_option("--word", word, "word, e.g. \"a1 a2 a1^-1\"; 1 is the empty word")->required();
  cont->add_option("--n", content_n, "free group rank (default: largest index in the word)");

  auto* xic = app.add_subcommand("xi", "xi of a catalog product, one line per basis vector");
  xic->add_option("--phi", phi, "product expression over catalog entries")->required();
  xic->add_option("--g", g, "genus")->required();
  xic->add_option("--catalog", catalog, "catalog file");
  xic->add_option("--format", format, "plain | json");

  auto* val = app.add_subcommand("validate", "load and validate a catalog, print symplectic matrices");
  val->add_option("--g", g, "genus")->required();
  val->add_option("--catalog", catalog, "catalog file");

  auto* chk = app.add_subcommand("check", "run verification suites");
  chk->add_option("--suite", suite, "suite name or 'all'");
  chk->add_option("--seed", seed, "seed for randomized suites");
  chk->add_option("--g", g, "genus for the Torelli search suites")->default_val(2);
  chk->add_option("--L", L, "search length bound");
  chk->add_option("--format", format, "plain | csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Format fmt = parse_format(format);
    if (*dims) return cmd_dims(g, imax, nmax, fmt);
    if (*rep) return cmd_rep(phi, g, i, n, catalog, fmt);
    if (*cont) return cmd_content(word, content_n);
    if (*xic) return cmd_xi(phi, g, catalog, fmt);
    if (*val) return cmd_validate(catalog, g);
    if (*chk) return cmd_check(suite, seed, g, L, fmt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const confmcg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// taut: enumerate classes, search for invariant equations, check and reduce
// gwi files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "taut/canonical.hpp"
#include "taut/enumerate.hpp"
#include "taut/errors.hpp"
#include "taut/gwi.hpp"
#include "taut/linalg.hpp"
#include "taut/operators.hpp"
#include "taut/relations.hpp"
#include "taut/solver.hpp"

namespace fs = std::filesystem;
using namespace taut;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kMissingData = 3 };

struct Config {
  std::string registry;
  int g = -1, n = -1, k = -1;
  int lmax = -1;
  bool symmetrize = false;
  bool no_symmetrize = false;
  bool boundary_only = false;
  bool kappa = false;
  bool quiet = false;
  std::string out;
  std::string file;
  std::string basis;
  std::string points;
  bool allow_incomplete = false;
  int expected = -1;
};

std::unique_ptr<RelationRegistry> open_registry(const Config& c) {
  std::string root = c.registry;
  if (root.empty())
    if (const char* env = std::getenv("TAUT_REGISTRY_DIR")) root = env;
  if (root.empty()) return std::make_unique<RelationRegistry>();
  return std::make_unique<RelationRegistry>(fs::path(root));
}

void require_ambient(const Config& c) {
  if (c.g < 0 || c.n < 0 || c.k < 0) throw InputError("-g, -n and -k must be non-negative");
  if (2 * c.g - 2 + c.n <= 0)
    throw InputError("M_{" + std::to_string(c.g) + "," + std::to_string(c.n) + "} bar is not stable");
}

std::vector<int> all_points(int n) {
  std::vector<int> p;
  for (int i = 1; i <= n; ++i) p.push_back(i);
  return p;
}

EnumerateOptions enumerate_options(const Config& c, bool symmetrize) {
  EnumerateOptions o;
  o.decorations = c.boundary_only ? Decorations::None : c.kappa ? Decorations::PsiKappa : Decorations::Psi;
  if (symmetrize) o.symmetrize_points = all_points(c.n);
  return o;
}

FormalSum class_of(const CanonicalForm& rep, const std::vector<int>& points) {
  if (!points.empty()) return symmetrize(to_graph(rep), points);
  FormalSum f;
  f.add(rep, Rational(1));
  return f;
}

std::string form_string(const SparseVector& v) {
  LinearForm f;
  for (const auto& [i, q] : v) f += LinearForm::unknown(i, q);
  return to_string(f);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_enumerate(const Config& c) {
  require_ambient(c);
  const auto opts = enumerate_options(c, c.symmetrize);
  const auto classes = enumerate(c.g, c.n, c.k, opts);
  Output out(c.out);
  for (const auto& cls : classes) out.stream() << to_gwi(cls) << "\n";
  out.stream() << "# " << classes.size() << " classes\n";
  return kOk;
}

int cmd_find(const Config& c) {
  require_ambient(c);
  const bool sym = !c.no_symmetrize;
  const auto opts = enumerate_options(c, sym);
  const auto reps = enumerate(c.g, c.n, c.k, opts);
  auto registry = open_registry(c);

  std::vector<FormalSum> classes;
  for (const auto& r : reps) classes.push_back(class_of(r, opts.symmetrize_points));
  std::cout << "CLASSES " << classes.size() << "\n";
  for (std::size_t i = 0; i < reps.size(); ++i) std::cout << "CLASS c" << i + 1 << " " << to_gwi(reps[i]) << "\n";

  const int bound = lemma1_bound(c.g, c.n, c.k);
  if (bound < 1 || classes.empty()) {
    std::cout << "TOP_CODIMENSION equations here are inductive data\n";
    std::cout << "CANDIDATES 0\n";
    return kOk;
  }
  const int lmax = c.lmax > 0 ? std::min(c.lmax, bound) : bound;

  const SymbolicSum e = general_element(classes);
  const LinearSystem sys = invariance_system(e, 1, lmax, *registry);
  if (!c.quiet)
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      const auto& p = sys.provenance[r];
      std::cout << "ROW l=" << p.l << " " << p.ambient << " | " << to_gwi(p.basis_graph) << " | "
                << form_string(sys.rows[r]) << "\n";
    }
  std::cout << "ROWS " << sys.rows.size() << "\n";
  std::cout << "RANK " << rank(sys.rows) << "\n";
  const auto solutions = solve_nullspace(sys);
  std::cout << "NULLSPACE dim=" << solutions.size() << "\n";

  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  int found = 0;
  for (const auto& cand : filter_trivial(solutions, classes, *registry)) {
    if (cand.trivial) {
      std::cout << "TRIVIAL " << form_string(cand.coefficients) << "\n";
      continue;
    }
    ++found;
    fs::create_directories(dir);
    const fs::path path = dir / ("g" + std::to_string(c.g) + "n" + std::to_string(c.n) + "k" + std::to_string(c.k) +
                                 "_" + std::to_string(found) + ".gwi");
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << "# convention: glued-half-edges\n";
    f << "# ambient: g=" << c.g << " n=" << c.n << " k=" << c.k << "\n";
    f << "# coefficients: " << form_string(cand.coefficients) << "\n";
    f << to_gwi(cand.equation) << "\n";
    std::cout << "EQUATION " << form_string(cand.coefficients) << "\n";
    std::cout << "CANDIDATE " << path.string() << "\n";
  }
  std::cout << "CANDIDATES " << found << "\n";
  return kOk;
}

int cmd_check(const Config& c) {
  const FormalSum e = read_sum_file(c.file);
  if (e.is_zero()) throw InputError(c.file + " holds the empty sum");
  const Ambient amb = ambient_of(e);
  const int k = codimension_of(e);
  auto registry = open_registry(c);
  const int bound = lemma1_bound(amb.genus, static_cast<int>(amb.labels.size()), k);
  const int lmax = c.lmax > 0 ? c.lmax : std::max(1, bound);
  int status = kOk;
  for (const auto& r : check_invariance(e, 1, lmax, *registry)) {
    std::cout << "l=" << r.l << (r.zero ? " ZERO" : " NONZERO") << (r.vacuous ? " (vacuous)" : "") << "\n";
    for (const auto& t : r.residual)
      std::cout << "  RESIDUAL " << to_string(t.coefficient) << " " << t.ambient << " | " << to_gwi(t.basis_graph)
                << "\n";
    if (!r.zero) status = kCheckFailed;
  }
  return status;
}

struct NamedSum {
  std::string name;
  FormalSum sum;
};

std::vector<NamedSum> read_basis(const std::string& path) {
  std::vector<NamedSum> out;
  for (const auto& line : read_gwi_file(path).lines) {
    NamedSum b;
    std::string text = line;
    const auto colon = line.find(':');
    if (colon != std::string::npos && line.find('<') > colon) {
      b.name = line.substr(0, colon);
      b.name.erase(b.name.find_last_not_of(' ') + 1);
      text = line.substr(colon + 1);
    } else {
      b.name = "b" + std::to_string(out.size() + 1);
    }
    b.sum = parse_sum(text);
    out.push_back(std::move(b));
  }
  if (out.empty()) throw InputError(path + " lists no basis elements");
  return out;
}

FormalSum reduce_with(const RelationRegistry& registry, const FormalSum& e, bool allow_incomplete) {
  FormalSum nf = registry.normal_form(e, false);
  // Zero modulo a subset of the relations is already a proof of vanishing.
  if (nf.is_zero() || allow_incomplete) return nf;
  return registry.normal_form(e, true);
}

int cmd_reduce(const Config& c) {
  const FormalSum e = read_sum_file(c.file);
  auto registry = open_registry(c);
  const FormalSum nf = reduce_with(*registry, e, c.allow_incomplete);
  if (c.basis.empty()) {
    std::cout << (nf.is_zero() ? "ZERO" : to_gwi(nf)) << "\n";
    return kOk;
  }
  const auto basis = read_basis(c.basis);
  std::map<CanonicalForm, int> key;
  std::vector<SparseVector> rows;
  auto put = [&](const FormalSum& f, int column) {
    for (const auto& [g, q] : f) {
      auto [it, inserted] = key.emplace(g, static_cast<int>(rows.size()));
      if (inserted) rows.emplace_back();
      rows[it->second][column] = q;
    }
  };
  const int m = static_cast<int>(basis.size());
  for (int j = 0; j < m; ++j) put(reduce_with(*registry, basis[j].sum, c.allow_incomplete), j);
  put(nf, m);
  const auto kernel = nullspace(rows, m + 1);
  std::optional<SparseVector> hit;
  for (const auto& v : kernel) {
    if (!v.count(m)) throw InputError("basis elements in " + c.basis + " are linearly dependent");
    hit = v;
  }
  const std::string name = fs::path(c.file).stem().string();
  if (!hit) {
    std::cout << name << " NOT_IN_SPAN\n";
    return kCheckFailed;
  }
  const Rational scale = -hit->at(m);
  std::string rhs;
  for (const auto& [j, q] : *hit) {
    if (j == m) continue;
    const Rational x = q / scale;
    const Rational a = abs(x);
    if (rhs.empty())
      rhs = (sgn(x) < 0 ? "-" : "");
    else
      rhs += sgn(x) < 0 ? " - " : " + ";
    rhs += (a == 1 ? "" : to_string(a) + "*") + basis[j].name;
  }
  std::cout << name << " = " << (rhs.empty() ? "0" : rhs) << "\n";
  return kOk;
}

int cmd_rank(const Config& c) {
  require_ambient(c);
  const auto opts = enumerate_options(c, c.symmetrize);
  auto registry = open_registry(c);
  std::map<CanonicalForm, int> column;
  RowReducer reducer;
  int count = 0;
  for (const auto& rep : enumerate(c.g, c.n, c.k, opts)) {
    ++count;
    SparseVector row;
    for (const auto& [g, q] : registry->normal_form(class_of(rep, opts.symmetrize_points), false))
      row[column.emplace(g, static_cast<int>(column.size())).first->second] = q;
    reducer.insert(row);
  }
  std::cout << "CLASSES " << count << "\n";
  std::cout << "KNOWN_RANK " << reducer.rank() << "\n";
  std::cout << "COMPLETE " << (registry->is_complete(c.g, c.n, c.k) ? "yes" : "no") << "\n";
  if (c.expected >= 0) {
    if (c.expected > reducer.rank())
      throw InputError("expected rank " + std::to_string(c.expected) + " exceeds the rank modulo known relations");
    std::cout << "EXPECTED_RANK " << c.expected << "\n";
    std::cout << "NEW_EQUATIONS " << reducer.rank() - c.expected << "\n";
  }
  return kOk;
}

int cmd_symmetrize(const Config& c) {
  const FormalSum e = read_sum_file(c.file);
  std::vector<int> points;
  if (c.points.empty()) {
    points = ambient_of(e).labels;
  } else {
    std::stringstream ss(c.points);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        points.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw InputError("bad point list '" + c.points + "'");
      }
    }
  }
  Output out(c.out);
  out.stream() << to_gwi(symmetrize(e, points)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for and verify tautological equations by R-invariance"};
  app.require_subcommand(1);
  Config c;

  auto ambient = [&c](CLI::App* s) {
    s->add_option("-g", c.g, "genus")->required();
    s->add_option("-n", c.n, "number of marked points")->required();
    s->add_option("-k", c.k, "codimension")->required();
    s->add_flag("--boundary-only", c.boundary_only, "undecorated strata only");
    s->add_flag("--kappa", c.kappa, "also decorate vertices with kappa classes");
  };
  auto registry = [&c](CLI::App* s) {
    s->add_option("--registry", c.registry, "directory of imported relations (default $TAUT_REGISTRY_DIR)");
  };

  auto* en = app.add_subcommand("enumerate", "list decorated classes of codimension k");
  ambient(en);
  en->add_flag("--symmetrize", c.symmetrize, "one representative per S_n orbit");
  en->add_option("--out", c.out, "write to a file instead of stdout");

  auto* fi = app.add_subcommand("find", "solve the invariance system for new equations");
  ambient(fi);
  registry(fi);
  fi->add_option("--lmax", c.lmax, "largest l (default 3g-3+n-k)");
  fi->add_flag("--symmetrize", c.symmetrize, "sum over S_n orbits (default)");
  fi->add_flag("--no-symmetrize", c.no_symmetrize, "use the full unsymmetrized space");
  fi->add_option("--out", c.out, "directory for candidate files (default .)");
  fi->add_flag("-q,--quiet", c.quiet, "omit ROW lines");

  auto* ch = app.add_subcommand("check", "apply r_l and reduce modulo known relations");
  ch->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  registry(ch);
  ch->add_option("--lmax", c.lmax, "largest l (default 3g-3+n-k, at least 1)");

  auto* re = app.add_subcommand("reduce", "print the normal form of a sum");
  re->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  registry(re);
  re->add_option("--basis", c.basis, "express the result over the sums in this file")->check(CLI::ExistingFile);
  re->add_flag("--allow-incomplete", c.allow_incomplete, "reduce modulo known relations even if incomplete");

  auto* ra = app.add_subcommand("rank", "rank of the classes modulo known relations");
  ambient(ra);
  registry(ra);
  ra->add_flag("--symmetrize", c.symmetrize, "one class per S_n orbit");
  ra->add_option("--expected", c.expected, "known rank of R^k, e.g. from Betti numbers");

  auto* sy = app.add_subcommand("symmetrize", "sum a gwi file over all permutations of its points");
  sy->add_option("file", c.file)->required()->check(CLI::ExistingFile);
  sy->add_option("--points", c.points, "comma-separated labels to permute (default all)");
  sy->add_option("--out", c.out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*en) return cmd_enumerate(c);
    if (*fi) return cmd_find(c);
    if (*ch) return cmd_check(c);
    if (*re) return cmd_reduce(c);
    if (*ra) return cmd_rank(c);
    if (*sy) return cmd_symmetrize(c);
  } catch (const InductiveDataMissing& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissingData;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

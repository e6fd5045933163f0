// hmskit: command-line front end.
//
// Exit codes: 0 success or match, 1 mismatch, 2 parse error,
// 3 domain error or unsupported input, 4 resource limit, 5 internal error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmskit/hmskit.hpp"

namespace {

using namespace hmskit;

struct Options {
  std::string input;
  std::string group;
  std::string ops;
  int window = 4;
  std::string json_path;
  std::string cache_dir;
  unsigned threads = 1;
  bool quiet = false;
  bool no_cache = false;
};

void note(const Options& o, const std::string& msg) {
  if (!o.quiet) std::cerr << "hmskit: " << msg << '\n';
}

void emit(const Options& o, const ojson& j) {
  const std::string text = j.dump();
  std::cout << text << '\n';
  if (!o.json_path.empty()) {
    std::ofstream out(o.json_path, std::ios::trunc);
    if (!out) fail(ErrorKind::resource, "cannot write " + o.json_path);
    out << text << '\n';
  }
}

ojson header(const std::string& command, const Options& o) {
  ojson j;
  j["schema"] = schema_version;
  j["command"] = command;
  j["input"] = o.input;
  return j;
}

std::string polynomial_text(const InvertiblePolynomial& p) { return p.W().to_string(p.variable_names()); }

ojson atoms_json(const InvertiblePolynomial& p) {
  ojson a = ojson::array();
  for (const auto& at : p.atoms()) a.push_back(at.name());
  return a;
}

int cmd_grade(const Options& o) {
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  ojson j = header("grade", o);
  j["polynomial"] = polynomial_text(p);
  j["atoms"] = atoms_json(p);
  const ojson g = grading_json(p.grading());
  for (auto it = g.begin(); it != g.end(); ++it) j[it.key()] = it.value();
  emit(o, j);
  return 0;
}

int cmd_generators(const Options& o) {
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  Collection<Rat> c = exceptional_collection(p);
  ojson j = header("generators", o);
  j["polynomial"] = polynomial_text(p);
  j["count"] = c.size();
  ojson objs = ojson::array();
  const auto names = p.variable_names();
  for (std::size_t i = 0; i < c.size(); ++i) {
    ojson e;
    e["label"] = c.labels[i];
    ojson v = ojson::array();
    for (auto x : c.vertices[i]) v.push_back(x + 1);
    e["vertex"] = std::move(v);
    e["factorization"] = mf_json(c.objects[i], names);
    objs.push_back(std::move(e));
  }
  j["objects"] = std::move(objs);
  emit(o, j);
  return 0;
}

std::string default_cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("HMSKIT_CACHE_DIR"); env && *env) return env;
  return ".hmskit-cache";
}

/// B-side table of c, through the cache.
template <ExactField F>
ExtTable cached_table(const Options& o, const nlohmann::json& request, const Collection<F>& c) {
  std::optional<ResultCache> cache;
  std::string key;
  if (!o.no_cache) {
    cache.emplace(default_cache_dir(o));
    key = ResultCache::key(request);
    if (auto hit = cache->get(key)) {
      try {
        ExtTable t = ext_table_from_json(hit->at("table"));
        if (t.objects == c.labels && t.kmin == -o.window && t.kmax == o.window) {
          note(o, "cache hit " + key.substr(0, 12));
          return t;
        }
      } catch (const std::exception&) {
      }
      note(o, "ignoring stale cache entry " + key.substr(0, 12));
    }
  }
  const auto start = std::chrono::steady_clock::now();
  ExtTable t = ext_table(c.objects, c.labels, -o.window, o.window, o.threads);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  note(o, "computed " + std::to_string(c.size()) + "x" + std::to_string(c.size()) + " table in " +
              std::to_string(ms) + " ms");
  if (cache) {
    nlohmann::json entry;
    entry["version"] = tool_version;
    entry["request"] = request;
    entry["table"] = nlohmann::json::parse(ext_table_json(t).dump());
    cache->put(key, entry);
  }
  return t;
}

int cmd_verify(const Options& o) {
  if (o.window < 0 || o.window > 64) fail(ErrorKind::domain, "window must lie in [0, 64]");
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  nlohmann::json request;
  request["command"] = "verify";
  request["version"] = tool_version;
  request["matrix"] = nlohmann::json::parse(matrix_json(p.exponents().matrix()).dump());
  request["window"] = o.window;
  VerificationReport r;
  std::vector<std::string> quivers;
  if (!o.group.empty()) {
    const ExponentMatrix d4(atom_matrix(AtomKind::D, 4));
    SymmetryGroup G = parse_group(o.group, p.nvars());
    if (!(p.exponents() == d4))
      fail(ErrorKind::unsupported, "group-graded verification is implemented for x^3 + x*y^2 only");
    GradingContext M = m_grading(p.exponents(), G);
    Collection<GaussRat> c = m_graded_d4_collection();
    if (!same_grading(M, c.objects[0].grading()))
      fail(ErrorKind::unsupported, "group-graded verification needs M = Z with deg x = deg y = 1 (G = <J>)");
    request["group"] = G.to_string();
    request["field"] = "Q(i)";
    r = make_report(o.input, c, cached_table(o, request, c));
    quivers.push_back("D4");
  } else {
    Collection<Rat> c = exceptional_collection(p);
    if (c.size() > 512) fail(ErrorKind::resource, "collection too large");
    r = make_report(o.input, c, cached_table(o, request, c));
    for (const auto& a : p.atoms()) quivers.push_back(a.kind == AtomKind::A ? a.name() : "D" + std::to_string(a.rank));
  }
  ojson j = report_json(r, quivers);
  emit(o, j);
  if (!r.match()) note(o, "tables differ");
  return r.match() ? 0 : 1;
}

int cmd_transpose(const Options& o) {
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  SymmetryGroup G = parse_group(o.group, p.nvars());
  SymmetryGroup Gt = krawitz_transpose(p.exponents(), G);
  InvertiblePolynomial q = transpose(p);
  auto m_json = [](const ExponentMatrix& A, const SymmetryGroup& H) -> ojson {
    if (!H.contains(j_element(A).J)) return nullptr;
    return grading_json(m_grading(A, H));
  };
  ojson j = header("transpose", o);
  j["polynomial"] = polynomial_text(p);
  j["group"] = group_json(G);
  j["is_sl"] = is_sl(G);
  ojson t;
  t["matrix"] = matrix_json(q.exponents().matrix());
  t["polynomial"] = polynomial_text(q);
  t["group"] = group_json(Gt);
  t["is_sl"] = is_sl(Gt);
  j["transpose"] = std::move(t);
  ojson m;
  m["input"] = m_json(p.exponents(), G);
  m["transpose"] = m_json(q.exponents(), Gt);
  j["m_grading"] = std::move(m);
  emit(o, j);
  return 0;
}

int cmd_gmax(const Options& o) {
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  SymmetryGroup G = gmax(p.exponents());
  JData jd = j_element(p.exponents());
  ojson j = header("gmax", o);
  j["polynomial"] = polynomial_text(p);
  const ojson gj = group_json(G);
  for (auto it = gj.begin(); it != gj.end(); ++it) j[it.key()] = it.value();
  ojson phi = ojson::array();
  for (const auto& f : jd.phi) phi.push_back(f.get_str());
  j["phi"] = std::move(phi);
  j["ell"] = to_int64(jd.ell);
  j["J"] = symmetry_json(jd.J);
  emit(o, j);
  return 0;
}

/// Gram matrix of the simple objects of the tensor model.
IntMatrix model_gram(const InvertiblePolynomial& p) {
  IntMatrix g = IntMatrix::identity(1);
  for (const auto& a : p.atoms()) {
    IntMatrix f = euler_form(dynkin_quiver(a.kind, a.rank));
    IntMatrix k(g.rows() * f.rows(), g.cols() * f.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t u = 0; u < f.rows(); ++u)
          for (std::size_t v = 0; v < f.cols(); ++v) k(i * f.rows() + u, j * f.cols() + v) = g(i, j) * f(u, v);
    g = std::move(k);
  }
  return g;
}

int cmd_mutate(const Options& o) {
  InvertiblePolynomial p = parse_polynomial_input(o.input);
  IntMatrix g = model_gram(p);
  ojson j = header("mutate", o);
  j["gram"] = matrix_json(g);
  j["coxeter_polynomial"] = polynomial_string(coxeter_polynomial(g));
  ojson ops = ojson::array();
  std::string list = o.ops;
  for (char& ch : list)
    if (ch == ',') ch = ' ';
  std::istringstream in(list);
  for (std::string op; in >> op;) {
    if (op.size() < 2 || (op[0] != 'L' && op[0] != 'R'))
      fail(ErrorKind::parse, "bad mutation '" + op + "' (expected L<i> or R<i>)");
    std::size_t pos = 0;
    try {
      pos = std::stoul(op.substr(1));
    } catch (const std::exception&) {
      fail(ErrorKind::parse, "bad mutation position in '" + op + "'");
    }
    g = mutate_collection(g, pos, op[0] == 'L' ? MutationDirection::left : MutationDirection::right);
    ops.push_back(op);
  }
  j["ops"] = std::move(ops);
  j["result"] = matrix_json(g);
  j["result_coxeter_polynomial"] = polynomial_string(coxeter_polynomial(g));
  emit(o, j);
  return 0;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::domain: return 3;
    case ErrorKind::unsupported: return 3;
    case ErrorKind::resource: return 4;
  }
  return 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded matrix factorizations of invertible polynomials against Dynkin quiver models"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--window", o.window, "shift window |k| <= N for Ext tables")->capture_default_str();
  app.add_option("--json", o.json_path, "also write the JSON output to this path");
  app.add_option("--cache-dir", o.cache_dir, "cache directory (default $HMSKIT_CACHE_DIR or ./.hmskit-cache)");
  app.add_option("--threads", o.threads, "worker threads for Ext tables")->capture_default_str();
  app.add_flag("--quiet", o.quiet, "no diagnostics on stderr");
  app.add_flag("--no-cache", o.no_cache, "neither read nor write the cache");

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "atom expression such as \"D4t+A2\" or a JSON exponent matrix")->required();
  };
  int (*run)(const Options&) = nullptr;
  CLI::App* grade = app.add_subcommand("grade", "grading group L of W");
  input(grade);
  grade->callback([&] { run = cmd_grade; });
  CLI::App* gens = app.add_subcommand("generators", "exceptional collection as matrix factorizations");
  input(gens);
  gens->callback([&] { run = cmd_generators; });
  CLI::App* verify = app.add_subcommand("verify", "compare the B-side Ext table with the quiver model");
  input(verify);
  verify->add_option("--group", o.group, "symmetry group, e.g. \"1/3,1/3\", for the M-graded D4 example");
  verify->callback([&] { run = cmd_verify; });
  CLI::App* tr = app.add_subcommand("transpose", "transpose pair (A^T, G*) and M-gradings");
  input(tr);
  tr->add_option("--group", o.group, "generators \"r1,...,rn;...\"")->required();
  tr->callback([&] { run = cmd_transpose; });
  CLI::App* gm = app.add_subcommand("gmax", "maximal diagonal symmetry group and J");
  input(gm);
  gm->callback([&] { run = cmd_gmax; });
  CLI::App* mu = app.add_subcommand("mutate", "braid mutations of the Gram matrix of the simple objects");
  input(mu);
  mu->add_option("--ops", o.ops, "mutations such as \"L1,R2\" (1-based positions)");
  mu->callback([&] { run = cmd_mutate; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(o);
  } catch (const Error& e) {
    std::cerr << "hmskit: error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "hmskit: error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "hmskit: internal error: " << e.what() << '\n';
    return 5;
  }
}

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pgarcs/arc.hpp"
#include "pgarcs/isomorphism.hpp"
#include "pgarcs/line_types.hpp"
#include "pgarcs/pencil.hpp"
#include "pgarcs/planar.hpp"
#include "pgarcs/proofs.hpp"
#include "pgarcs/solver.hpp"

#ifndef PGARCS_VERSION
#define PGARCS_VERSION "0.0.0"
#endif

using namespace pgarcs;
using nlohmann::json;

namespace {

enum Exit { kVerified = 0, kRefuted = 1, kUndecided = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::string kSourceDir = PGARCS_SOURCE_DIR;

// Configuration of one invocation; the fingerprint is FNV-1a over "key=value\n" in key order.
struct Config {
  std::string command;
  std::map<std::string, std::string> values;

  template <class T>
  void set(const std::string& k, const T& v) {
    std::ostringstream os;
    os << v;
    values[k] = os.str();
  }
  std::string fingerprint() const {
    uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
    };
    feed(command + "\n");
    for (const auto& [k, v] : values) feed(k + "=" + v + "\n");
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }
  std::string header() const { return "# pgarcs " + std::string(PGARCS_VERSION) + " " + command + " config " + fingerprint() + "\n"; }
  json tool() const { return {{"name", "pgarcs"}, {"version", PGARCS_VERSION}, {"command", command}, {"config", fingerprint()}, {"options", values}}; }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + s);
    }
    if (used != tok.size()) throw UsageError("not an integer list: " + s);
    out.push_back(v);
  }
  return out;
}

Lambda parse_lambda(const std::string& s) {
  auto v = parse_ints(s);
  if (v.size() != 4) throw UsageError("point distribution needs four values: " + s);
  return {v[0], v[1], v[2], v[3]};
}

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

template <class C>
std::string join_nums(const C& xs, const char* sep = ",") {
  std::ostringstream os;
  bool first = true;
  for (auto x : xs) {
    os << (first ? "" : sep) << x;
    first = false;
  }
  return os.str();
}

// .genmat files carry "genmat q=.. k=..", arc files "arc v=.. q=..".
Arc load_arc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  int q = 0, k = 0;
  if (std::sscanf(header.c_str(), "genmat q=%d k=%d", &q, &k) == 2)
    return read_generator_file(path, ProjectiveSpace::build(k, q));
  return read_arc_file(path);
}

void check_target(int target, int q, int t) {
  if (target <= 0 || target % q != t % q)
    throw UsageError("cardinality " + std::to_string(target) + " is not congruent to " + std::to_string(t) + " mod " +
                     std::to_string(q));
}

std::vector<DualCandidate> exceptional_duals(const std::string& data_dir) {
  auto S = ProjectiveSpace::build(4, 5);
  std::vector<DualCandidate> out;
  for (int card : {128, 143, 168}) {
    std::string name = "exceptional" + std::to_string(card);
    out.push_back({name, read_generator_file(data_dir + "/" + name + ".genmat", S, card), false});
  }
  return out;
}

std::map<int, int> read_class_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::map<int, int> out;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    int card, m, mh, classes;
    if (is >> card >> m >> mh >> classes) out[card] = classes;
  }
  return out;
}

// ---------------------------------------------------------------------------------------------

struct ClassifyArgs {
  int q = 5, t = 3, card = 0, jobs = 0;
  bool all = false, signatures = false;
  long long max_nodes = 2'000'000'000;
  std::string library_out, golden_counts, golden_signatures, out;
};

int cmd_classify(const ClassifyArgs& a) {
  if (a.t < 1 || a.t >= a.q) throw UsageError("t must lie in 1..q-1");
  const int lo = a.t * (a.q + 1), hi = a.t * (a.q * a.q + a.q + 1);
  std::vector<int> cards;
  if (a.all) {
    for (int c = lo; c <= hi; c += a.q) cards.push_back(c);
  } else {
    check_target(a.card, a.q, a.t);
    cards.push_back(a.card);
  }
  const bool q5t3 = a.q == 5 && a.t == 3;
  if (!a.library_out.empty() && !(a.all && q5t3)) throw UsageError("--library-out needs --all with q 5 and t 3");
  Config cfg{"classify-planar", {}};
  cfg.set("q", a.q), cfg.set("t", a.t), cfg.set("cards", join_nums(cards)), cfg.set("max_nodes", a.max_nodes);

  PlanarClassifyOptions opt;
  opt.max_nodes = a.max_nodes;
  std::vector<PlanarClassification> res(cards.size());
  unsigned jobs = a.jobs > 0 ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, cards.size());
  // Largest cardinalities first: they dominate the running time.
  std::vector<size_t> order(cards.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  std::mutex mu;
  size_t next = 0;
  auto worker = [&] {
    for (;;) {
      size_t i;
      {
        std::lock_guard lk(mu);
        if (next == order.size()) return;
        i = order[next++];
      }
      res[i] = classify_strong_planar(a.q, a.t, cards[i], opt);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream os;
  os << cfg.header() << "card\tclasses\tcomplete\tnodes\n";
  bool complete = true;
  for (const auto& r : res) {
    os << r.card << '\t' << r.classes.size() << '\t' << (r.complete ? "yes" : "no") << '\t' << r.nodes << '\n';
    complete = complete && r.complete;
  }
  bool match = true;
  std::string counts_path = a.golden_counts.empty() && q5t3 ? kSourceDir + "/golden/planar_class_counts.tsv" : a.golden_counts;
  if (!counts_path.empty()) {
    auto want = read_class_counts(counts_path);
    int bad = 0;
    for (const auto& r : res) {
      auto it = want.find(r.card);
      if (it == want.end() || it->second != static_cast<int>(r.classes.size())) {
        ++bad;
        os << "# golden mismatch card " << r.card << ": expected " << (it == want.end() ? -1 : it->second) << ", got "
           << r.classes.size() << '\n';
      }
    }
    os << "# golden counts " << (bad ? "MISMATCH" : "match") << " (" << counts_path << ")\n";
    match = bad == 0;
  }
  if (a.signatures) {
    if (!q5t3) throw UsageError("signature census needs q 5 and t 3");
    std::vector<Arc> reps;
    for (const auto& r : res) reps.insert(reps.end(), r.classes.begin(), r.classes.end());
    auto got = signature_census(reps);
    os << "# signature census\n";
    for (const auto& s : got) {
      os << s.card;
      for (int x : s.types) os << '\t' << x;
      for (int x : s.lambda) os << '\t' << x;
      os << '\t' << s.classes << '\n';
    }
    std::string sig_path = a.golden_signatures.empty() ? kSourceDir + "/golden/planar_signatures.tsv" : a.golden_signatures;
    auto want = read_signature_table(sig_path);
    std::vector<PlanarSignature> want_sel;
    for (const auto& s : want)
      if (std::find(cards.begin(), cards.end(), s.card) != cards.end()) want_sel.push_back(s);
    bool ok = want_sel == got;
    os << "# golden signatures " << (ok ? "match" : "MISMATCH") << " (" << got.size() << " rows, expected " << want_sel.size()
       << ")\n";
    match = match && ok;
  }
  if (!a.library_out.empty() && complete) {
    ResidualLibrary lib;
    lib.plane = ProjectiveSpace::build(3, 5);
    for (const auto& r : res) lib.by_card[r.card] = r.classes;
    lib.write(a.library_out);
    os << "# library written to " << a.library_out << '\n';
  }
  if (a.out.empty())
    std::cout << os.str();
  else
    write_text(a.out, os.str());
  if (!complete) return kUndecided;
  return match ? kVerified : kRefuted;
}

// ---------------------------------------------------------------------------------------------

struct EngineArgs {
  std::string library = kSourceDir + "/residuals/q5t3";
  int target = 0;
  std::vector<std::string> exclude_lambda;
  bool preset = false, cluster = false;
  long long node_cap = 200'000'000;
  std::string json_out;
};

EngineOptions engine_options(const EngineArgs& a) {
  EngineOptions opt;
  opt.enumeration_node_cap = a.node_cap;
  opt.allow_cluster_scale = a.cluster;
  return opt;
}

void check_engine_target(const EngineArgs& a) {
  check_target(a.target, 5, 3);
  if (a.target < 18 || a.target > 468) throw UsageError("target outside 18..468");
  if (a.target >= 178 && a.target <= 273 && !a.cluster)
    throw UsageError("targets 178..273 are cluster-scale runs; pass --allow-cluster-scale");
}

std::vector<Lambda> excluded_lambdas(const EngineArgs& a) {
  std::vector<Lambda> ex;
  if (a.preset) ex = preset_lambda_exclusions(a.target);
  for (const auto& s : a.exclude_lambda) ex.push_back(parse_lambda(s));
  return ex;
}

void print_report(const ExclusionReport& r, std::ostream& os) {
  os << "target " << r.target << ": " << (r.empty ? "EMPTY" : (r.complete ? "SURVIVORS" : "UNDECIDED")) << '\n';
  if (r.empty) return;
  os << "line types (" << r.line_types.size() << "): " << join(r.line_types) << '\n';
  os << "pencils (" << r.pencils.size() << "):\n";
  for (const auto& p : r.pencils) os << "  " << p << '\n';
  os << "residuals (" << r.residuals.size() << "), cardinalities " << join_nums(r.residual_cards) << ":\n";
  for (const auto& p : r.residuals) os << "  " << p << '\n';
}

int cmd_exclude(const EngineArgs& a) {
  check_engine_target(a);
  auto ex = excluded_lambdas(a);
  Config cfg{"exclude", {}};
  cfg.set("target", a.target), cfg.set("node_cap", a.node_cap), cfg.set("cluster", a.cluster);
  std::vector<std::string> exs;
  for (auto& l : ex) exs.push_back(join_nums(l));
  cfg.set("excluded_lambda", join(exs, ";"));
  auto lib = ResidualLibrary::read(a.library);
  auto u = PencilUniverse::build(lib);
  auto t0 = std::chrono::steady_clock::now();
  auto r = run_fixpoint(u, a.target, engine_options(a), ex);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << cfg.header();
  print_report(r, std::cout);
  std::cout << "# seconds " << std::fixed << std::setprecision(2) << dt << '\n';
  if (!a.json_out.empty()) {
    json j = json::parse(json_certificate(r));
    j["tool"] = cfg.tool();
    write_text(a.json_out, j.dump(2) + "\n");
  }
  if (!r.complete) return kUndecided;
  return r.empty ? kVerified : kRefuted;
}

int cmd_full_pencils(const EngineArgs& a, const std::string& type_name, int center) {
  check_engine_target(a);
  int type = line_type_by_name(type_name);
  if (type < 0) throw UsageError("unknown line type " + type_name);
  if (center < 0 || center > 3 || !kLineTypes[type].contains(center))
    throw UsageError("line type " + type_name + " has no point of multiplicity " + std::to_string(center));
  Config cfg{"full-pencils", {}};
  cfg.set("target", a.target), cfg.set("type", type_name), cfg.set("center", center), cfg.set("node_cap", a.node_cap);
  auto lib = ResidualLibrary::read(a.library);
  auto u = PencilUniverse::build(lib);
  auto s = init_state(u, a.target);
  for (const auto& l : excluded_lambdas(a)) s.excluded_lambda.push_back(l);
  run_cheap_fixpoint(s);
  std::cout << cfg.header();
  if (!s.type_alive[type]) {
    std::cout << "line type " << type_name << " already excluded at target " << a.target << '\n';
    return kVerified;
  }
  auto list = enumerate_full_pencils(s, type, center, engine_options(a));
  int alive = 0;
  for (size_t i = 0; i < list.full_id.size(); ++i) {
    const auto& f = s.fulls[list.full_id[i]];
    std::cout << (list.alive[i] ? "alive " : "dead  ") << f.str() << '\n';
    alive += list.alive[i] != 0;
  }
  std::cout << "# " << list.full_id.size() << " candidates, " << alive << " alive, nodes " << list.nodes
            << (list.complete ? "" : ", INCOMPLETE") << '\n';
  return list.complete ? kVerified : kUndecided;
}

int cmd_lambda_exclude(const EngineArgs& a, const std::string& lambda) {
  check_engine_target(a);
  Lambda l = parse_lambda(lambda);
  if (l[0] + l[1] + l[2] + l[3] != 156 || l[1] + 2 * l[2] + 3 * l[3] != a.target)
    throw UsageError("point distribution must sum to 156 points and to the target");
  Config cfg{"lambda-exclude", {}};
  cfg.set("target", a.target), cfg.set("lambda", join_nums(l)), cfg.set("node_cap", a.node_cap);
  auto lib = ResidualLibrary::read(a.library);
  auto u = PencilUniverse::build(lib);
  auto r = lambda_exclude(u, a.target, l, engine_options(a), excluded_lambdas(a));
  std::cout << cfg.header();
  std::cout << "lambda (" << join_nums(l) << ") at target " << a.target << ": "
            << (r.excluded ? "excluded" : (r.complete ? "not excluded" : "undecided")) << '\n';
  if (!r.excluded) print_report(r.report, std::cout);
  if (!a.json_out.empty()) {
    json j = json::parse(json_certificate(r.report));
    j["tool"] = cfg.tool();
    j["lambda"] = l;
    write_text(a.json_out, j.dump(2) + "\n");
  }
  if (!r.complete) return kUndecided;
  return r.excluded ? kVerified : kRefuted;
}

// ---------------------------------------------------------------------------------------------

struct ProveArgs {
  std::string library = kSourceDir + "/residuals/q5t3";
  std::string data = kSourceDir + "/data";
  std::string json_out;
  bool no_ilp = false, quiet = false;
  long long ilp_nodes = 50'000'000;
};

int cmd_prove(const ProveArgs& a, bool variant_103) {
  Config cfg{variant_103 ? "prove-103" : "prove-104", {}};
  cfg.set("use_ilp", !a.no_ilp), cfg.set("ilp_nodes", a.ilp_nodes);
  auto lib = ResidualLibrary::read(a.library);
  ProofInputs in;
  in.library = &lib;
  in.nonlifted = exceptional_duals(a.data);
  in.filter.use_ilp = !a.no_ilp;
  in.filter.ilp_nodes = a.ilp_nodes;
  auto log = variant_103 ? prove_103_22(in) : prove_no_104_22(in);
  std::cout << cfg.header();
  if (!a.quiet) std::cout << log.transcript();
  std::cout << (log.concluded ? "CONCLUDED: " : "NOT CONCLUDED: ") << log.conclusion << '\n';
  if (!a.json_out.empty()) {
    json j = json::parse(log.to_json());
    j["tool"] = cfg.tool();
    write_text(a.json_out, j.dump(2) + "\n");
  }
  return log.concluded ? kVerified : kRefuted;
}

// ---------------------------------------------------------------------------------------------

int cmd_verify_arc(const std::string& path, int t, int s, int expect_card) {
  Arc a = load_arc(path);
  const auto& S = a.geom();
  Config cfg{"verify-arc", {}};
  cfg.set("path", path), cfg.set("t", t), cfg.set("s", s), cfg.set("expect_card", expect_card);
  std::cout << cfg.header();
  std::cout << "space PG(" << S.v() - 1 << "," << S.q() << "), cardinality " << a.cardinality() << '\n';
  bool ok = true;
  if (expect_card > 0 && a.cardinality() != expect_card) {
    std::cout << "cardinality differs from the expected " << expect_card << '\n';
    ok = false;
  }
  auto res = line_residue(a);
  const bool tmod = is_t_mod_q(a, t), strong = is_strong(a, t);
  std::cout << "line residue " << (res ? std::to_string(*res) : std::string("none")) << ", (" << t << " mod " << S.q()
            << ")-arc " << (tmod ? "yes" : "no") << ", strong " << (strong ? "yes" : "no") << '\n';
  ok = ok && strong;
  if (strong) {
    auto lp = lifting_points(a, t);
    std::cout << "lifting points " << lp.size() << (lp.empty() ? " (non-lifted)" : " (lifted)") << '\n';
    std::cout << "full hyperplane in support " << (has_full_hyperplane(a) ? "yes" : "no") << '\n';
  }
  std::cout << "standard equations " << (standard_equations_hold(a) ? "hold" : "FAIL") << '\n';
  std::vector<std::string> sp, la;
  for (auto [i, n] : spectrum(a)) sp.push_back("a_" + std::to_string(i) + "=" + std::to_string(n));
  for (auto [j, n] : lambda_distribution(a)) la.push_back("lambda_" + std::to_string(j) + "=" + std::to_string(n));
  std::cout << "spectrum " << join(sp) << '\n' << "points " << join(la) << '\n';
  if (s > 0) {
    auto hm = a.hyperplane_multiplicities();
    int mx = *std::max_element(hm.begin(), hm.end());
    std::cout << "(" << a.cardinality() << "," << s << ")-arc " << (mx <= s ? "yes" : "no") << '\n';
    ok = ok && mx <= s;
  }
  if (strong && t == 3 && S.v() == 4 && S.q() == 5) {
    auto st = line_statistics(a);
    std::cout << "line types:\n";
    for (int ty = 0; ty < kNumLineTypes; ++ty)
      if (st.count[ty]) std::cout << "  " << kLineTypes[ty].name << '\t' << st.count[ty] << '\t' << st.hyperplane_string(ty) << '\n';
    auto sk = skeleton_of(a);
    std::cout << "point line distributions:\n";
    for (const auto& f : sk.fulls) std::cout << "  " << f.str() << '\n';
  } else if (strong && t == 3 && S.v() == 3 && S.q() == 5) {
    auto c = line_type_census(a);
    std::cout << "line types:";
    for (int ty = 0; ty < kNumLineTypes; ++ty)
      if (c[ty]) std::cout << ' ' << kLineTypes[ty].name << '^' << c[ty];
    std::cout << '\n';
  }
  return ok ? kVerified : kRefuted;
}

int cmd_aut(const std::string& path, long long max_nodes) {
  Arc a = load_arc(path);
  Config cfg{"aut", {}};
  cfg.set("path", path), cfg.set("max_nodes", max_nodes);
  SearchBudget b;
  b.max_nodes = max_nodes;
  auto r = automorphism_order(a, b);
  std::cout << cfg.header();
  if (!r.decided) {
    std::cout << "undecided after " << r.nodes << " nodes\n";
    return kUndecided;
  }
  std::cout << "projective order " << r.order << '\n'
            << "linear order " << r.linear_order << '\n'
            << "orbit lengths " << join_nums(r.orbit_lengths, " ") << '\n'
            << "nodes " << r.nodes << '\n';
  return kVerified;
}

int cmd_dualize(const std::string& path, int s, int t, const std::string& out) {
  Arc a = load_arc(path);
  Arc d = sigma_dual(a, s, t);
  if (out.empty())
    std::cout << format_arc(d);
  else
    write_arc_file(d, out);
  std::cerr << "dual cardinality " << d.cardinality() << ", strong (" << t << " mod " << a.geom().q() << ")-arc "
            << (is_strong(d, t) ? "yes" : "no") << '\n';
  return kVerified;
}

int cmd_lift(const std::string& path, int t, int point, const std::string& out) {
  Arc base = load_arc(path);
  auto ambient = ProjectiveSpace::build(base.geom().v() + 1, base.geom().q());
  if (point >= ambient->num_points()) throw UsageError("lifting point index out of range");
  Arc l = lift(base, ambient, point, t);
  if (out.empty())
    std::cout << format_arc(l);
  else
    write_arc_file(l, out);
  std::cerr << "lifted cardinality " << l.cardinality() << ", lifting points " << lifting_points(l, t).size() << '\n';
  return kVerified;
}

// ---------------------------------------------------------------------------------------------

struct LpArgs {
  std::string model = "strong";
  std::string library = kSourceDir + "/residuals/q5t3";
  int target = 0, residual_card = 0, residual_class = 1, line_cap = 3, plane_cap = 15, fixed_plane = 0;
  std::string line_values;
  bool affine_leader = false;
  std::string dual;
  int n = 104, s = 22;
  std::string out, branching = "auto";
  bool solve = false;
  long long enumerate_limit = 0;
  long long max_nodes = 2'000'000'000;
};

int cmd_export_lp(const LpArgs& a) {
  Config cfg{"export-lp", {}};
  cfg.set("model", a.model);
  auto S = ProjectiveSpace::build(4, 5);
  LinearModel m;
  bool strong = a.model == "strong";
  if (strong) {
    check_target(a.target, 5, 3);
    auto lib = ResidualLibrary::read(a.library);
    auto it = lib.by_card.find(a.residual_card);
    if (it == lib.by_card.end()) throw UsageError("no residual classes of cardinality " + std::to_string(a.residual_card));
    if (a.residual_class < 1 || a.residual_class > static_cast<int>(it->second.size()))
      throw UsageError("residual class index out of range 1.." + std::to_string(it->second.size()));
    StrongArcModelSpec spec;
    spec.target = a.target;
    spec.line_cap = a.line_cap;
    spec.plane_cap = a.plane_cap;
    spec.line_values = parse_ints(a.line_values);
    spec.fixed_plane = a.fixed_plane;
    spec.residual = it->second[a.residual_class - 1];
    spec.affine_leader = a.affine_leader;
    m = build_strong_arc_model(spec, S);
    cfg.set("target", a.target), cfg.set("residual", std::to_string(a.residual_card) + "#" + std::to_string(a.residual_class));
    cfg.set("line_cap", a.line_cap), cfg.set("plane_cap", a.plane_cap), cfg.set("line_values", a.line_values);
    cfg.set("affine_leader", a.affine_leader), cfg.set("fixed_plane", a.fixed_plane);
  } else if (a.model == "dual") {
    if (a.dual.empty()) throw UsageError("--dual is required for the dual model");
    Arc d = load_arc(a.dual);
    DualModelSpec spec;
    spec.n = a.n;
    spec.s = a.s;
    m = build_dual_model(d, spec);
    cfg.set("dual", a.dual), cfg.set("n", a.n), cfg.set("s", a.s);
  } else {
    throw UsageError("--model is strong or dual");
  }
  SolverOptions opt;
  opt.max_nodes = a.max_nodes;
  if (a.branching == "row" || (a.branching == "auto" && !strong))
    opt.branching = Branching::TightestRow;
  else if (a.branching != "smallest" && a.branching != "auto")
    throw UsageError("--branching is auto, smallest or row");
  cfg.set("branching", opt.branching == Branching::TightestRow ? "row" : "smallest"), cfg.set("max_nodes", a.max_nodes);

  std::string lp = "\\ " + cfg.header().substr(2) + export_lp(m);
  if (!a.out.empty())
    write_text(a.out, lp);
  else if (!a.solve && a.enumerate_limit == 0)
    std::cout << lp;
  if (!a.solve && a.enumerate_limit == 0) return kVerified;

  std::cout << cfg.header() << "variables " << m.num_vars() << ", constraints " << m.constraints().size() << '\n';
  if (a.enumerate_limit > 0) {
    auto r = enumerate(m, a.enumerate_limit, opt);
    std::cout << "solutions " << r.solutions.size() << ", nodes " << r.nodes << (r.complete ? ", complete" : ", INCOMPLETE") << '\n';
    std::vector<Arc> arcs;
    for (const auto& sol : r.solutions)
      arcs.push_back(strong ? strong_model_solution_arc(m, sol, S) : dual_model_solution_arc(m, sol, S));
    auto cls = isomorphism_classes(arcs, 3);
    for (size_t i = 0; i < cls.size(); ++i)
      std::cout << "class " << i + 1 << ": cardinality " << cls[i].representative.cardinality() << ", "
                << (cls[i].lifted ? "lifted" : "non-lifted") << ", " << cls[i].solutions << " solutions\n";
    return r.complete ? kVerified : kUndecided;
  }
  auto r = solve(m, opt);
  std::cout << "status " << to_string(r.status) << ", nodes " << r.nodes << '\n';
  if (r.status == SolveStatus::Feasible) {
    std::cout << format_solutions(m, {r.witness});
    return kRefuted;
  }
  return r.status == SolveStatus::Infeasible ? kVerified : kUndecided;
}

// ---------------------------------------------------------------------------------------------

int cmd_eta(int m, const std::string& allowed, int n, int s, const std::string& golden) {
  ArcParameters par;
  par.n = n;
  par.s = s;
  if (m < 0 || m > s) throw UsageError("m outside 0..s");
  std::vector<int> al = allowed.empty() ? narrowed_allowed(m, par) : parse_ints(allowed);
  Config cfg{"eta-table", {}};
  cfg.set("m", m), cfg.set("n", n), cfg.set("s", s), cfg.set("allowed", join_nums(al));
  auto t = eta_table(m, al, par);
  std::cout << cfg.header() << t.str();
  if (golden.empty()) return kVerified;
  std::ifstream in(golden);
  if (!in) throw std::runtime_error("cannot open " + golden);
  std::string line;
  std::getline(in, line);
  int rows = 0, bad = 0;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    int gm, i, j;
    long long eta;
    std::string w;
    if (!(is >> gm >> i >> j >> eta >> w) || gm != m) continue;
    ++rows;
    auto it = t.entries.find({i, j});
    std::string got = it == t.entries.end() ? "" : join_nums(it->second.witness);
    if (t.eta(i, j) != eta || got != w) {
      ++bad;
      std::cout << "# golden mismatch (" << i << "," << j << "): expected " << eta << " " << w << ", got " << t.eta(i, j) << " "
                << got << '\n';
    }
  }
  std::cout << "# golden " << rows << " rows, " << (bad ? "MISMATCH" : "match") << '\n';
  return bad ? kRefuted : kVerified;
}

int cmd_spectra(int n, int s, int q, int two_mod_q) {
  Config cfg{"spectra", {}};
  if (two_mod_q > 0) {
    cfg.set("two_mod_q", two_mod_q);
    std::cout << cfg.header() << "n\ta_2\ta_q+2\ta_2q+2\tlambda_0\tlambda_1\tlambda_2\tcase\n";
    for (const auto& r : two_mod_q_spectra(two_mod_q))
      std::cout << r.n << '\t' << r.a2 << '\t' << r.aq2 << '\t' << r.a2q2 << '\t' << r.lambda0 << '\t' << r.lambda1 << '\t'
                << r.lambda2 << '\t' << (r.case_label ? std::to_string(r.case_label) : std::string("extra")) << '\n';
    return kVerified;
  }
  if (n <= 0 || s <= 0) throw UsageError("--n and --s, or --two-mod-q, are required");
  cfg.set("n", n), cfg.set("s", s), cfg.set("q", q);
  std::cout << cfg.header() << planar_spectrum_family(n, s, q).str() << '\n';
  return kVerified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong (t mod q)-arcs and (n,s)-arcs in PG(2,q) and PG(3,q)"};
  app.set_version_flag("--version", std::string("pgarcs ") + PGARCS_VERSION);
  app.require_subcommand(1);
  std::function<int()> run;

  ClassifyArgs ca;
  auto* c = app.add_subcommand("classify-planar", "classify strong (t mod q)-arcs in PG(2,q)");
  c->add_option("--q", ca.q, "field order")->check(CLI::IsMember({3, 4, 5, 7}));
  c->add_option("--t", ca.t, "line residue");
  auto* card_opt = c->add_option("--card", ca.card, "cardinality");
  auto* all_opt = c->add_flag("--all", ca.all, "every cardinality t(q+1) .. t(q^2+q+1)");
  card_opt->excludes(all_opt);
  c->add_flag("--signatures", ca.signatures, "print and diff the signature census");
  c->add_option("--jobs", ca.jobs, "worker threads, 0 = available cores");
  c->add_option("--max-nodes", ca.max_nodes, "search node cap per cardinality");
  c->add_option("--library-out", ca.library_out, "write the residual library (q 5, t 3, --all)");
  c->add_option("--golden-counts", ca.golden_counts, "class count table to diff against");
  c->add_option("--golden-signatures", ca.golden_signatures, "signature table to diff against");
  c->add_option("--out", ca.out, "report file");
  c->callback([&] {
    if (!ca.all && ca.card == 0) throw CLI::ValidationError("--card or --all is required");
    run = [&] { return cmd_classify(ca); };
  });

  EngineArgs ea;
  auto engine_opts = [&](CLI::App* s) {
    s->add_option("--target", ea.target, "cardinality of the spatial arc")->required();
    s->add_option("--library", ea.library, "residual library directory");
    s->add_option("--exclude-lambda", ea.exclude_lambda, "point distribution a,b,c,d excluded beforehand");
    s->add_flag("--preset-lambdas", ea.preset, "apply the point distributions known to be excluded at this target");
    s->add_flag("--allow-cluster-scale", ea.cluster, "permit targets 178..273");
    s->add_option("--node-cap", ea.node_cap, "enumeration node cap");
    s->add_option("--json", ea.json_out, "certificate file");
  };
  auto* ex = app.add_subcommand("exclude", "exclusion engine for non-lifted strong (3 mod 5)-arcs in PG(3,5)");
  engine_opts(ex);
  ex->callback([&] { run = [&] { return cmd_exclude(ea); }; });

  std::string fp_type;
  int fp_center = 0;
  auto* fp = app.add_subcommand("full-pencils", "full point-line configurations for a line type and centre");
  engine_opts(fp);
  fp->add_option("--type", fp_type, "line type name, e.g. A1")->required();
  fp->add_option("--center", fp_center, "centre multiplicity")->required();
  fp->callback([&] { run = [&] { return cmd_full_pencils(ea, fp_type, fp_center); }; });

  std::string le_lambda;
  auto* le = app.add_subcommand("lambda-exclude", "try to exclude one point distribution");
  engine_opts(le);
  le->add_option("--lambda", le_lambda, "point distribution a,b,c,d")->required();
  le->callback([&] { run = [&] { return cmd_lambda_exclude(ea, le_lambda); }; });

  ProveArgs pa;
  auto prove_opts = [&](CLI::App* s) {
    s->add_option("--library", pa.library, "residual library directory");
    s->add_option("--data", pa.data, "directory with the exceptional arcs");
    s->add_option("--json", pa.json_out, "proof log file");
    s->add_flag("--no-ilp", pa.no_ilp, "skip the dual ILP step of the candidate filter");
    s->add_option("--ilp-nodes", pa.ilp_nodes, "node cap per dual ILP");
    s->add_flag("--quiet", pa.quiet, "only print the conclusion");
  };
  auto* p4 = app.add_subcommand("prove-104", "non-existence of (104,22)-arcs in PG(3,5)");
  prove_opts(p4);
  p4->callback([&] { run = [&] { return cmd_prove(pa, false); }; });
  auto* p3 = app.add_subcommand("prove-103", "(103,22)-arcs in PG(3,5) have a plane of size 3, 8, 13 or 18");
  prove_opts(p3);
  p3->callback([&] { run = [&] { return cmd_prove(pa, true); }; });

  std::string path, out;
  int t = 3, s = 0, expect_card = 0, point = -1;
  long long max_nodes = SearchBudget{}.max_nodes;
  auto* va = app.add_subcommand("verify-arc", "properties of an arc or generator matrix file");
  va->add_option("path", path, "arc or .genmat file")->required()->check(CLI::ExistingFile);
  va->add_option("--t", t, "line residue");
  va->add_option("--s", s, "maximal hyperplane multiplicity to check");
  va->add_option("--expect-card", expect_card, "expected cardinality");
  va->callback([&] { run = [&] { return cmd_verify_arc(path, t, s, expect_card); }; });

  auto* au = app.add_subcommand("aut", "automorphism group order");
  au->add_option("path", path, "arc or .genmat file")->required()->check(CLI::ExistingFile);
  au->add_option("--max-nodes", max_nodes, "search node cap");
  au->callback([&] { run = [&] { return cmd_aut(path, max_nodes); }; });

  auto* du = app.add_subcommand("dualize", "sigma-dual of an (n,s)-arc");
  du->add_option("path", path, "arc or .genmat file")->required()->check(CLI::ExistingFile);
  du->add_option("--s", s, "maximal hyperplane multiplicity")->required();
  du->add_option("--t", t, "dual residue");
  du->add_option("--out", out, "output arc file");
  du->callback([&] { run = [&] { return cmd_dualize(path, s, t, out); }; });

  auto* li = app.add_subcommand("lift", "lift an arc one dimension up");
  li->add_option("path", path, "arc or .genmat file")->required()->check(CLI::ExistingFile);
  li->add_option("--t", t, "apex multiplicity");
  li->add_option("--point", point, "lifting point index in the ambient space, default (1,0,..,0)");
  li->add_option("--out", out, "output arc file");
  li->callback([&] { run = [&] { return cmd_lift(path, t, point, out); }; });

  LpArgs la;
  auto* lp = app.add_subcommand("export-lp", "write, solve or enumerate an ILP model");
  lp->add_option("--model", la.model, "strong or dual");
  lp->add_option("--library", la.library, "residual library directory");
  lp->add_option("--target", la.target, "strong model: cardinality");
  lp->add_option("--residual-card", la.residual_card, "strong model: cardinality of the prescribed plane");
  lp->add_option("--residual-class", la.residual_class, "strong model: 1-based class index in the library");
  lp->add_option("--line-cap", la.line_cap, "strong model: bound for y_L");
  lp->add_option("--plane-cap", la.plane_cap, "strong model: bound for z_H");
  lp->add_option("--line-values", la.line_values, "strong model: admissible non-zero y_L values, e.g. 1,3");
  lp->add_option("--fixed-plane", la.fixed_plane, "strong model: index of the prescribed plane");
  lp->add_flag("--affine-leader", la.affine_leader, "strong model: translation symmetry breaking");
  lp->add_option("--dual", la.dual, "dual model: dual arc file");
  lp->add_option("--n", la.n, "dual model: n");
  lp->add_option("--s", la.s, "dual model: s");
  lp->add_option("--out", la.out, "LP file, stdout when absent");
  lp->add_option("--branching", la.branching, "auto, smallest or row");
  lp->add_flag("--solve", la.solve, "run the in-tree solver");
  lp->add_option("--enumerate", la.enumerate_limit, "enumerate up to this many solutions and classify them");
  lp->add_option("--max-nodes", la.max_nodes, "solver node cap");
  lp->callback([&] { run = [&] { return cmd_export_lp(la); }; });

  int em = 0, en = 104, es = 22;
  std::string e_allowed, e_golden;
  auto* et = app.add_subcommand("eta-table", "upper bounds for the hyperplane contribution per line class");
  et->add_option("--m", em, "multiplicity of H_0")->required();
  et->add_option("--allowed", e_allowed, "allowed plane multiplicities, default the narrowed set");
  et->add_option("--n", en, "n");
  et->add_option("--s", es, "s");
  et->add_option("--golden", e_golden, "eta table file to diff against");
  et->callback([&] { run = [&] { return cmd_eta(em, e_allowed, en, es, e_golden); }; });

  int sn = 0, ss = 0, sq = 5, two = 0;
  auto* sp = app.add_subcommand("spectra", "spectra solving the planar standard equations");
  sp->add_option("--n", sn, "n");
  sp->add_option("--s", ss, "s");
  sp->add_option("--q", sq, "q");
  sp->add_option("--two-mod-q", two, "list the strong (2 mod q) spectra for this q instead");
  sp->callback([&] { run = [&] { return cmd_spectra(sn, ss, sq, two); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}

#include "pgarcs/proofs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pgarcs/isomorphism.hpp"
#include "pgarcs/solver.hpp"

namespace pgarcs {

using nlohmann::json;

int residual_bound(int n, int s, int q, int m) {
  if (m > s) throw std::invalid_argument("residual_bound: m > s");
  long long num = static_cast<long long>(s) * q + m - n;
  if (num < 0) return -1;
  return static_cast<int>(num / q);
}

long long AffineExpr::eval(const std::vector<int>& params) const {
  if (!integral_at(params)) throw std::domain_error("AffineExpr: value not integral");
  long long v = constant;
  for (size_t k = 0; k < coef.size(); ++k) v += coef[k] * params[k];
  return v / den;
}

bool AffineExpr::integral_at(const std::vector<int>& params) const {
  long long v = constant;
  for (size_t k = 0; k < coef.size(); ++k) v += coef[k] * params[k];
  return v % den == 0;
}

namespace {

struct Frac {
  long long p = 0, d = 1;
  static Frac of(long long p, long long d = 1) {
    if (d < 0) p = -p, d = -d;
    long long g = std::gcd(p < 0 ? -p : p, d);
    if (g == 0) g = 1;
    return {p / g, d / g};
  }
  Frac operator-(const Frac& o) const { return of(p * o.d - o.p * d, d * o.d); }
  Frac operator*(const Frac& o) const { return of(p * o.p, d * o.d); }
  Frac operator/(const Frac& o) const { return of(p * o.d, d * o.p); }
  bool zero() const { return p == 0; }
};

// a_i rendered as "a3 = 13 - 10a0 - 3a2".
std::string affine_str(int i, const AffineExpr& e, const std::vector<int>& params) {
  std::ostringstream os;
  os << "a" << i << " = ";
  bool first = true;
  if (e.den != 1) os << "(";
  if (e.constant != 0 || std::all_of(e.coef.begin(), e.coef.end(), [](long long c) { return c == 0; })) {
    os << e.constant;
    first = false;
  }
  for (size_t k = 0; k < params.size(); ++k) {
    long long c = e.coef[k];
    if (c == 0) continue;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    long long a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << "a" << params[k];
    first = false;
  }
  if (e.den != 1) os << ")/" << e.den;
  return os.str();
}

}  // namespace

std::string SpectrumFamily::str() const {
  std::ostringstream os;
  os << "(" << n << "," << s << ")-arcs in PG(2," << q << "):";
  for (int i : forced_zero) os << " a" << i << " = 0;";
  for (int i = 0; i <= s; ++i) {
    if (std::find(params.begin(), params.end(), i) != params.end()) continue;
    if (std::find(forced_zero.begin(), forced_zero.end(), i) != forced_zero.end()) continue;
    os << " " << affine_str(i, a[i], params) << ";";
  }
  for (size_t k = 0; k < params.size(); ++k)
    os << " " << ranges[k].first << " <= a" << params[k] << " <= " << ranges[k].second << ";";
  os << " " << instances.size() << " instance(s)";
  return os.str();
}

// Projective arcs only: the three standard equations in a_0..a_s with the point counts
// of a set. One free parameter is taken from the top index, several from the bottom.
SpectrumFamily planar_spectrum_family(int n, int s, int q) {
  if (n < 0 || s < 0 || s > q + 1 || n > q * q + q + 1) throw std::invalid_argument("planar_spectrum_family: unsupported (n,s)");
  SpectrumFamily fam;
  fam.n = n, fam.s = s, fam.q = q;
  const long long lines = static_cast<long long>(q) * q + q + 1;
  std::vector<int> cols;
  for (int i = 0; i <= s; ++i) {
    if (i > n || (i >= 1 && residual_bound(n, s, q, i) < 1))
      fam.forced_zero.push_back(i);
    else
      cols.push_back(i);
  }
  // Rows: sum a_i = lines, sum i a_i = (q+1) n, sum C(i,2) a_i = C(n,2).
  std::vector<std::vector<Frac>> M(3, std::vector<Frac>(cols.size() + 1));
  for (size_t c = 0; c < cols.size(); ++c) {
    M[0][c] = Frac::of(1);
    M[1][c] = Frac::of(cols[c]);
    M[2][c] = Frac::of(binom2(cols[c]));
  }
  M[0].back() = Frac::of(lines);
  M[1].back() = Frac::of(static_cast<long long>(q + 1) * n);
  M[2].back() = Frac::of(binom2(n));
  const int rank_cap = std::min<int>(3, static_cast<int>(cols.size()));
  const int dof = static_cast<int>(cols.size()) - rank_cap;
  std::vector<size_t> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  if (dof == 1) std::rotate(order.begin(), order.end() - 1, order.end());
  // Pivot on the non-free columns first, in ascending index order.
  std::vector<size_t> pivot_order(order.begin() + dof, order.end());
  std::sort(pivot_order.begin(), pivot_order.end());
  size_t r = 0;
  std::vector<size_t> pivcols;
  for (size_t c : pivot_order) {
    size_t pr = r;
    while (pr < 3 && M[pr][c].zero()) ++pr;
    if (pr == 3) continue;
    std::swap(M[pr], M[r]);
    Frac inv = Frac::of(1) / M[r][c];
    for (auto& x : M[r]) x = x * inv;
    for (size_t o = 0; o < 3; ++o) {
      if (o == r || M[o][c].zero()) continue;
      Frac f = M[o][c];
      for (size_t k = 0; k < M[o].size(); ++k) M[o][k] = M[o][k] - f * M[r][k];
    }
    pivcols.push_back(c);
    if (++r == 3) break;
  }
  for (size_t o = r; o < 3; ++o) {
    bool allzero = true;
    for (size_t c = 0; c < cols.size(); ++c) allzero = allzero && M[o][c].zero();
    if (allzero && !M[o].back().zero()) {
      fam.a.assign(s + 1, AffineExpr{});
      return fam;  // inconsistent: no spectrum at all
    }
  }
  std::vector<size_t> freecols;
  for (size_t c = 0; c < cols.size(); ++c)
    if (std::find(pivcols.begin(), pivcols.end(), c) == pivcols.end()) freecols.push_back(c);
  for (size_t c : freecols) fam.params.push_back(cols[c]);
  const size_t np = freecols.size();
  fam.a.assign(s + 1, AffineExpr{0, std::vector<long long>(np, 0), 1});
  for (size_t k = 0; k < np; ++k) fam.a[cols[freecols[k]]].coef[k] = 1;
  for (size_t row = 0; row < pivcols.size(); ++row) {
    long long den = M[row].back().d;
    for (size_t c : freecols) den = std::lcm(den, M[row][c].d);
    AffineExpr e;
    e.den = den;
    e.constant = M[row].back().p * (den / M[row].back().d);
    for (size_t c : freecols) e.coef.push_back(-M[row][c].p * (den / M[row][c].d));
    long long g = den;
    g = std::gcd(g, e.constant < 0 ? -e.constant : e.constant);
    for (auto c : e.coef) g = std::gcd(g, c < 0 ? -c : c);
    if (g > 1) {
      e.den /= g;
      e.constant /= g;
      for (auto& c : e.coef) c /= g;
    }
    fam.a[cols[pivcols[row]]] = e;
  }
  // Every non-negative integral instance; each parameter is a line count.
  std::vector<int> p(np, 0);
  std::vector<std::pair<int, int>> rg(np, {INT32_MAX, INT32_MIN});
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == np) {
      std::vector<int> inst(s + 1, 0);
      for (int i = 0; i <= s; ++i) {
        if (!fam.a[i].integral_at(p)) return;
        long long v = fam.a[i].eval(p);
        if (v < 0) return;
        inst[i] = static_cast<int>(v);
      }
      for (size_t t = 0; t < np; ++t) rg[t] = {std::min(rg[t].first, p[t]), std::max(rg[t].second, p[t])};
      fam.instances.push_back(inst);
      return;
    }
    for (int v = 0; v <= lines; ++v) {
      p[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  for (size_t t = 0; t < np; ++t) fam.ranges.push_back(rg[t].first > rg[t].second ? std::pair{0, -1} : rg[t]);
  return fam;
}

long long ArcParameters::contribution_rhs() const {
  const long long k0 = gaussian_point_count(k, q), k1 = gaussian_point_count(k - 1, q), k2 = gaussian_point_count(k - 2, q);
  return binom2(s) * k0 - static_cast<long long>(n) * (s - 1) * k1 + binom2(n) * k2;
}

bool ArcParameters::plane_admits_line(int x, int i) const {
  if (i < 0 || i > x || x > s) return false;
  const int r = residual_bound(n, s, q, x);
  if (i > r) return false;
  // A point of the line has multiplicity at least one; the plane must allow it.
  return i == 0 || residual_bound(x, r, q, i) >= 1;
}

long long EtaTable::eta(int i, int j) const {
  auto it = entries.find({i, j});
  return it == entries.end() ? 0 : it->second.eta;
}

std::string EtaTable::str() const {
  std::ostringstream os;
  os << "K(H0) = " << m << ", dual value " << dual_h0 << "\n";
  os << "i\tj\teta\twitness\n";
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const auto& e = it->second;
    os << e.i << "\t" << e.j << "\t" << e.eta << "\t(";
    for (int h = 0; h < 6; ++h) os << (h ? "," : "") << e.witness[h];
    os << ")\n";
  }
  return os.str();
}

// Exhaustive over descending 5-tuples of allowed multiplicities for the other planes
// through a line of H0; ties keep the lexicographically largest tuple.
EtaTable eta_table(int m, const std::vector<int>& allowed, const ArcParameters& par) {
  EtaTable t;
  t.par = par;
  t.m = m;
  t.dual_h0 = par.dual_value(m);
  t.allowed = allowed;
  std::sort(t.allowed.begin(), t.allowed.end(), std::greater<>());
  t.allowed.erase(std::unique(t.allowed.begin(), t.allowed.end()), t.allowed.end());
  const int nb = par.q;
  if (nb != 5) throw std::invalid_argument("eta_table: witness tuples are sized for q = 5");
  const auto& al = t.allowed;
  for (int i = 0; i <= residual_bound(par.n, par.s, par.q, m); ++i) {
    if (!par.plane_admits_line(m, i)) continue;
    const int need = par.n + par.q * i - m;
    std::array<int, 5> tup{};
    std::function<void(size_t, size_t, int)> rec = [&](size_t pos, size_t from, int rest) {
      if (pos == 5) {
        if (rest != 0) return;
        int j = t.dual_h0;
        long long e = 0;
        for (int x : tup) j += par.dual_value(x), e += binom2(par.s - x);
        std::array<int, 6> w{m, tup[0], tup[1], tup[2], tup[3], tup[4]};
        auto [it, fresh] = t.entries.try_emplace({i, j}, EtaEntry{i, j, e, w});
        auto& slot = it->second;
        if (!fresh && (e > slot.eta || (e == slot.eta && w > slot.witness))) slot = {i, j, e, w};
        return;
      }
      for (size_t k = from; k < al.size(); ++k) {
        int x = al[k];
        if (x > rest) continue;
        if (x * static_cast<int>(5 - pos) < rest) break;  // descending: the rest cannot catch up
        if (!par.plane_admits_line(x, i)) continue;
        tup[pos] = x;
        rec(pos + 1, k, rest - x);
      }
    };
    rec(0, 0, need);
  }
  return t;
}

std::string ProofLog::to_json() const {
  json j;
  j["concluded"] = concluded;
  j["conclusion"] = conclusion;
  j["steps"] = json::array();
  for (const auto& s : steps) {
    j["steps"].push_back({{"rule", s.rule},
                          {"tag", s.tag},
                          {"kind", s.kind},
                          {"inputs", s.inputs.empty() ? json::object() : json::parse(s.inputs)},
                          {"conclusion", s.conclusion},
                          {"holds", s.holds}});
  }
  return j.dump(2);
}

std::string ProofLog::transcript() const {
  std::ostringstream os;
  int k = 1;
  for (const auto& s : steps) {
    os << k++ << ". [" << s.kind << "] " << s.tag << " (" << s.rule << "): " << s.conclusion << (s.holds ? "" : "  ** FAILED **")
       << "\n";
  }
  os << (concluded ? "CONCLUDED: " : "NOT CONCLUDED: ") << conclusion << "\n";
  return os.str();
}

namespace {

// Per line class i: achievable (eta sum, dual sum) of distributing b_i lines over the
// present j values, reduced to the best dual sum per eta sum.
struct Choice {
  long long dual = 0;
  std::map<std::pair<int, int>, int> split;
};
using Front = std::map<long long, Choice>;

Front line_class_front(int i, int bi, const EtaTable& t) {
  std::vector<std::pair<int, long long>> opts;  // (j, eta)
  for (const auto& [key, e] : t.entries)
    if (key.first == i) opts.push_back({key.second, e.eta});
  Front f;
  if (bi == 0) {
    f[0] = Choice{};
    return f;
  }
  if (opts.empty()) return f;
  std::vector<int> cnt(opts.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t k, int rest) {
    if (k + 1 == opts.size()) {
      cnt[k] = rest;
      long long e = 0, d = 0;
      for (size_t u = 0; u < opts.size(); ++u) e += cnt[u] * opts[u].second, d += static_cast<long long>(cnt[u]) * (opts[u].first - t.dual_h0);
      auto it = f.find(e);
      if (it == f.end() || d > it->second.dual) {
        Choice c{d, {}};
        for (size_t u = 0; u < opts.size(); ++u)
          if (cnt[u]) c.split[{i, opts[u].first}] = cnt[u];
        f[e] = std::move(c);
      }
      return;
    }
    for (int v = 0; v <= rest; ++v) {
      cnt[k] = v;
      rec(k + 1, rest - v);
    }
  };
  rec(0, bi);
  return f;
}

std::string vec_json(const std::vector<int>& v) { return json(v).dump(); }

}  // namespace

const std::vector<int>& exclusion_order() {
  static const std::vector<int> order{1, 0, 4, 5, 6, 9, 10, 11, 22};
  return order;
}

std::vector<int> narrowed_allowed(int m, const ArcParameters& par) {
  auto gaps = planar_gap_values(par);
  const auto& order = exclusion_order();
  auto pos = std::find(order.begin(), order.end(), m);
  if (pos == order.end()) pos = order.begin();
  std::vector<int> out;
  for (int x = 0; x <= par.s; ++x) {
    if (std::find(gaps.begin(), gaps.end(), x) != gaps.end()) continue;
    if (std::find(order.begin(), pos, x) != pos) continue;
    out.push_back(x);
  }
  return out;
}

ExclusionResult exclusion_infeasible(int m, const std::vector<int>& allowed, const ArcParameters& par, int min_dual_card) {
  ExclusionResult res;
  res.m = m;
  const EtaTable t = eta_table(m, allowed, par);
  const int r = residual_bound(par.n, par.s, par.q, m);
  const SpectrumFamily fam = planar_spectrum_family(m, r, par.q);
  const long long need = par.contribution_rhs() - binom2(par.s - m);
  bool feasible = false;
  for (const auto& b : fam.instances) {
    // Max-plus combination over line classes keyed by eta sum.
    Front acc;
    acc[0] = Choice{};
    bool dead = false;
    for (int i = 0; i <= fam.s && !dead; ++i) {
      Front f = line_class_front(i, b[i], t);
      if (f.empty()) {
        dead = true;
        break;
      }
      Front nxt;
      for (const auto& [e1, c1] : acc)
        for (const auto& [e2, c2] : f) {
          ++res.candidates;
          long long e = e1 + e2, d = c1.dual + c2.dual;
          auto it = nxt.find(e);
          if (it == nxt.end() || d > it->second.dual) {
            Choice c{d, c1.split};
            c.split.insert(c2.split.begin(), c2.split.end());
            nxt[e] = std::move(c);
          }
        }
      acc = std::move(nxt);
    }
    if (dead) continue;
    for (const auto& [e, c] : acc) {
      long long card = t.dual_h0 + c.dual;
      if (e >= need && card >= min_dual_card) {
        if (!feasible || card > res.witness_dual_card) {
          res.witness = c.split;
          res.witness_spectrum = b;
          res.witness_contribution = e + binom2(par.s - m);
          res.witness_dual_card = card;
        }
        feasible = true;
      }
    }
  }
  res.infeasible = !feasible;
  json in{{"m", m},
          {"allowed", allowed},
          {"dual_value_H0", t.dual_h0},
          {"contribution_rhs", par.contribution_rhs()},
          {"min_dual_card", min_dual_card},
          {"spectrum_family", fam.str()},
          {"eta_entries", t.entries.size()}};
  res.step.rule = "exclusion_infeasible";
  res.step.tag = "no " + std::to_string(m) + "-plane";
  res.step.kind = "computed";
  res.step.inputs = in.dump();
  res.step.holds = res.infeasible;
  if (res.infeasible) {
    res.step.conclusion = "a_" + std::to_string(m) + " = 0: the contribution and dual-cardinality inequalities are jointly infeasible";
  } else {
    std::ostringstream os;
    os << "no contradiction: spectrum " << vec_json(res.witness_spectrum) << " with";
    for (const auto& [k, v] : res.witness) os << " b(" << k.first << "," << k.second << ")=" << v;
    os << " reaches contribution " << res.witness_contribution << " and dual cardinality " << res.witness_dual_card;
    res.step.conclusion = os.str();
  }
  return res;
}

A1Check check_a1(const ArcParameters& par, const std::vector<int>& allowed, std::optional<int> neighbour_cap) {
  A1Check c;
  std::vector<int> al = allowed;
  if (al.empty())
    for (int x = 0; x <= par.s; ++x) al.push_back(x);
  if (neighbour_cap) {
    c.neighbour_cap = *neighbour_cap;
  } else {
    c.neighbour_cap = -1;
    for (int x : al)
      if (par.plane_admits_line(x, 1)) c.neighbour_cap = std::max(c.neighbour_cap, x);
  }
  // Planes through a 1-line L of a 1-plane H0: #K = sum K(H_h) - q K(L).
  c.bound = 1 + par.q * c.neighbour_cap - par.q * 1;
  c.excluded = c.bound < par.n;
  c.step.rule = "check_a1";
  c.step.tag = "no 1-plane";
  c.step.kind = "computed";
  c.step.inputs = json{{"n", par.n}, {"neighbour_cap", c.neighbour_cap}}.dump();
  c.step.holds = c.excluded;
  c.step.conclusion = "#K <= 1 + " + std::to_string(par.q) + "*" + std::to_string(c.neighbour_cap) + " - " + std::to_string(par.q) +
                      " = " + std::to_string(c.bound) + (c.excluded ? " < " : " >= ") + std::to_string(par.n);
  return c;
}

bool has_threefold_line_plane(const Arc& dual) {
  const auto& S = dual.geom();
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    std::vector<int> pts;
    bool ok = true;
    for (int p : S.hyperplane_points(h)) {
      int v = dual[p];
      if (v == 0) continue;
      if (v != 3) {
        ok = false;
        break;
      }
      pts.push_back(p);
    }
    if (!ok || static_cast<int>(pts.size()) != S.q() + 1) continue;
    int l = S.line_through(pts[0], pts[1]);
    const auto& lp = S.line_points(l);
    if (std::all_of(pts.begin(), pts.end(), [&](int p) { return std::find(lp.begin(), lp.end(), p) != lp.end(); })) return true;
  }
  return false;
}

bool has_full_hyperplane(const Arc& a) {
  const auto& S = a.geom();
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    const auto& pts = S.hyperplane_points(h);
    if (std::all_of(pts.begin(), pts.end(), [&](int p) { return a[p] > 0; })) return true;
  }
  return false;
}

ContributionIdentity hyperplane_contribution(const Arc& a, int s) {
  const auto& S = a.geom();
  const int k = S.v(), q = S.q();
  const long long n = a.cardinality();
  ContributionIdentity c;
  for (int x : a.hyperplane_multiplicities()) {
    if (x > s) throw std::invalid_argument("hyperplane_contribution: hyperplane above s");
    c.lhs += binom2(s - x);
  }
  long long pw = 1;
  for (int e = 0; e < k - 2; ++e) pw *= q;
  long long lam = 0;
  for (int p = 0; p < S.num_points(); ++p) lam += binom2(a[p]);
  c.rhs = binom2(s) * gaussian_point_count(k, q) - n * (s - 1) * gaussian_point_count(k - 1, q) +
          binom2(n) * gaussian_point_count(k - 2, q) + pw * lam;
  return c;
}

bool hyperplane_contribution_identity(const Arc& a, int s) { return hyperplane_contribution(a, s).holds(); }

int max_planar_arc(int r, int q) {
  // Largest (n,r)-arcs of PG(2,5): a point, an oval, the known maxima for r = 3, 4 and an affine plane.
  static const int m5[] = {0, 1, 6, 11, 16, 25};
  if (q != 5 || r < 0 || r > 5) throw std::invalid_argument("max_planar_arc: only PG(2,5), r <= 5");
  return m5[r];
}

std::vector<int> planar_gap_values(const ArcParameters& par) {
  std::vector<int> gaps;
  for (int x = 0; x <= par.s; ++x) {
    int r = residual_bound(par.n, par.s, par.q, x);
    if (r < 0 || x > max_planar_arc(std::min(r, par.q), par.q)) gaps.push_back(x);
  }
  return gaps;
}

std::vector<DualCandidate> dual_candidates(const ResidualLibrary& lib, const std::vector<DualCandidate>& nonlifted, int max_card) {
  std::vector<DualCandidate> out;
  auto space = ProjectiveSpace::build(4, lib.plane->q());
  for (const auto& [card, arcs] : lib.by_card) {
    if (5 * card + 3 > max_card) continue;
    for (size_t k = 0; k < arcs.size(); ++k)
      out.push_back({"lift-" + std::to_string(card) + "-" + std::to_string(k + 1), lift(arcs[k], space), true});
  }
  for (const auto& c : nonlifted)
    if (c.arc.cardinality() <= max_card) out.push_back(c);
  return out;
}

DualFilterResult filter_dual_candidates(const std::vector<DualCandidate>& cands, const ArcParameters& par, int max_card,
                                        const DualFilterOptions& opt) {
  DualFilterResult r;
  int full = 0, three = 0, ilp = 0;
  json rejected = json::array();
  for (const auto& c : cands) {
    std::string why;
    if (has_full_hyperplane(c.arc)) {
      why = "full hyperplane in support";
      ++full;
    } else if (has_threefold_line_plane(c.arc)) {
      why = "plane meeting the dual in a threefold line";
      ++three;
    } else if (opt.use_ilp) {
      DualModelSpec spec;
      spec.n = par.n;
      spec.s = par.s;
      auto model = build_dual_model(c.arc, spec);
      SolverOptions so;
      so.max_nodes = opt.ilp_nodes;
      so.branching = Branching::TightestRow;
      auto sr = solve(model, so);
      ProofStep st;
      st.rule = "dual_model";
      st.tag = "no arc over dual " + c.name;
      st.kind = "computed";
      st.inputs = json{{"candidate", c.name}, {"card", c.arc.cardinality()}, {"lifted", c.lifted}, {"nodes", sr.nodes}}.dump();
      st.holds = sr.status == SolveStatus::Infeasible;
      st.conclusion = std::string("dual model ") + to_string(sr.status);
      r.steps.push_back(st);
      if (st.holds) {
        why = "dual model infeasible";
        ++ilp;
      }
    }
    if (why.empty())
      r.survivors.push_back(c);
    else
      rejected.push_back({{"candidate", c.name}, {"reason", why}});
  }
  r.concluded = r.survivors.empty();
  r.lower_bound = max_card + 1;
  while (r.lower_bound % par.q != 3 % par.q) ++r.lower_bound;
  ProofStep sum;
  sum.rule = "filter_dual_candidates";
  sum.tag = "dual cardinality above " + std::to_string(max_card);
  sum.kind = "computed";
  json surv = json::array();
  for (const auto& s : r.survivors) surv.push_back(s.name);
  sum.inputs = json{{"candidates", cands.size()},
                    {"max_card", max_card},
                    {"rejected_full_hyperplane", full},
                    {"rejected_threefold", three},
                    {"rejected_ilp", ilp},
                    {"survivors", surv}}
                   .dump();
  sum.holds = r.concluded;
  sum.conclusion = r.concluded ? "no dual candidate of cardinality <= " + std::to_string(max_card) + " remains"
                               : std::to_string(r.survivors.size()) + " candidate(s) survive";
  r.steps.push_back(sum);
  return r;
}

namespace {

ProofStep step(std::string rule, std::string tag, std::string kind, json inputs, std::string conclusion, bool holds) {
  return {std::move(rule), std::move(tag), std::move(kind), inputs.dump(), std::move(conclusion), holds};
}

// Facts shared by both arguments: line and point bounds, forbidden plane sizes,
// quasi-divisibility and the threefold-line argument. Returns the allowed plane sizes.
std::vector<int> basic_facts(const ArcParameters& par, ProofLog& log, bool& ok) {
  const int q = par.q;
  const int lines_through_point = static_cast<int>(gaussian_point_count(par.k - 1, q));
  const int g2 = residual_bound(par.n, par.s, q, par.s);
  std::vector<int> line_bound;
  for (int m = 0; m <= par.s; ++m) line_bound.push_back(residual_bound(par.n, par.s, q, m));
  log.add(step("residual_bound", "line bound in an m-plane", "computed", {{"n", par.n}, {"s", par.s}, {"bounds", line_bound}},
               "a line of an m-plane has multiplicity at most floor((" + std::to_string(par.s * q - par.n) + " + m)/" +
                   std::to_string(q) + "); gamma_2 = " + std::to_string(g2),
               true));
  // A point of multiplicity g: #K <= g + (lines through it) * (gamma_2 - g).
  int g1 = 0;
  for (int g = 1; g <= g2; ++g)
    if (g + lines_through_point * (g2 - g) >= par.n) g1 = g;
  bool g_ok = g1 == 1;
  log.add(step("point_bound", "projective arc", "computed", {{"gamma_2", g2}, {"lines_through_point", lines_through_point}},
               "gamma_1 = " + std::to_string(g1), g_ok));
  log.add(step("max_planar_arc", "largest planar arcs", "citation",
               {{"m_r", {max_planar_arc(1, q), max_planar_arc(2, q), max_planar_arc(3, q), max_planar_arc(4, q), max_planar_arc(5, q)}}},
               "largest (n,r)-arcs in PG(2,5) for r = 1..5", true));
  auto gaps = planar_gap_values(par);
  std::vector<int> allowed;
  for (int x = 0; x <= par.s; ++x)
    if (std::find(gaps.begin(), gaps.end(), x) == gaps.end()) allowed.push_back(x);
  log.add(step("planar_gap_values", "forbidden plane multiplicities", "computed", {{"gaps", gaps}},
               "no plane has multiplicity in " + json(gaps).dump(), true));
  ok = ok && g_ok;
  return allowed;
}

bool quasi_divisible_step(const ArcParameters& par, const std::vector<int>& allowed, ProofLog& log) {
  const int t = 3;
  bool qd = std::all_of(allowed.begin(), allowed.end(), [&](int x) { return par.dual_value(x) <= t; });
  log.add(step("quasi_divisible", "dual is a strong (3 mod 5)-arc", "computed", {{"allowed", allowed}, {"t", t}},
               qd ? "every plane multiplicity x has (s - x) mod q <= 3, so the sigma-dual is a strong (3 mod 5)-arc"
                  : "some admissible plane multiplicity leaves the residue window",
               qd));
  bool top = std::all_of(allowed.begin(), allowed.end(), [&](int x) { return par.dual_value(x) != 0 || x == par.s; });
  log.add(step("dual_zero_is_maximal", "dual value 0 means a maximal plane", "computed", {{"allowed", allowed}},
               top ? "the only admissible x with (s - x) mod q = 0 is s" : "a non-maximal plane has dual value 0", top));
  return qd && top;
}

// The planes through P off the line L all have dual value 0, hence multiplicity s.
bool threefold_step(const ArcParameters& par, ProofLog& log) {
  const int q = par.q;
  const long long through_p = gaussian_point_count(par.k - 1, q), through_l = gaussian_point_count(par.k - 2, q);
  const long long extra = through_p - through_l;
  // sum_{H > P} K(H) = (q+1) n + q^2 K(P), sum_{H > L} K(H) = n + q K(L).
  bool solvable = false;
  const int g1 = 1, g2 = residual_bound(par.n, par.s, q, par.s);
  for (int kp = 0; kp <= g1; ++kp)
    for (int kl = 0; kl <= g2; ++kl)
      if (static_cast<long long>(q + 1) * par.n + static_cast<long long>(q) * q * kp == extra * par.s + par.n + static_cast<long long>(q) * kl)
        solvable = true;
  log.add(step("threefold_line_plane", "no plane of the dual restricting to a threefold line", "computed",
               {{"planes_off_line", extra}, {"n", par.n}, {"s", par.s}},
               solvable ? "the counting identity has a solution" : "6n + 25K(P) = 25s + n + 5K(L) has no solution with K(P) <= 1",
               !solvable));
  return !solvable;
}

}  // namespace

ProofLog prove_no_104_22(const ProofInputs& in) {
  ProofLog log;
  ArcParameters par;
  if (!in.library) throw std::invalid_argument("prove_no_104_22: residual library required");
  bool ok = true;
  auto allowed = basic_facts(par, log, ok);
  ok = quasi_divisible_step(par, allowed, log) && ok;
  ok = threefold_step(par, log) && ok;
  log.add(step("axiom", "no (105,22)-arc in PG(3,5)", "axiom", json::object(),
               "a dual with a full hyperplane in its support would extend the arc to a (105,22)-arc", true));

  // Route 1: every dual candidate against the dual model.
  log.add(step("classification", "strong (3 mod 5)-arcs of PG(3,5)", "citation",
               {{"nonlifted", [&] {
                   json a = json::array();
                   for (const auto& c : in.nonlifted) a.push_back({{"name", c.name}, {"card", c.arc.cardinality()}});
                   return a;
                 }()}},
               "every strong (3 mod 5)-arc is lifted, has a full hyperplane, is one of the given non-lifted arcs, or has "
               "cardinality 178..273",
               true));
  log.add(step("axiom", "no non-lifted dual of cardinality 178..273", "axiom", {{"range", {178, 273}}},
               "non-lifted strong (3 mod 5)-arcs without a full hyperplane of cardinality 178..273 do not exist "
               "(cluster-scale campaign, not rerun)",
               true));
  const int max_lift = 5 * 93 + 3;
  auto all = dual_candidates(*in.library, in.nonlifted, max_lift);
  if (!in.dual_route_all_lifts)
    all.erase(std::remove_if(all.begin(), all.end(), [&](const DualCandidate& c) { return c.lifted && c.arc.cardinality() > in.classified_up_to; }),
              all.end());
  auto route1 = filter_dual_candidates(all, par, max_lift, in.filter);
  bool r1 = route1.concluded;
  for (auto& s : route1.steps) log.add(s);
  log.add(step("route", "dual model route", "computed", {{"candidates", all.size()}},
               r1 ? "no dual admits a (104,22)-arc" : "route incomplete", r1));

  // Route 2: lower bound on the dual, then the plane multiplicities one by one.
  auto small = dual_candidates(*in.library, in.nonlifted, in.classified_up_to);
  auto lb = filter_dual_candidates(small, par, in.classified_up_to, in.filter);
  for (auto& s : lb.steps) log.add(s);
  bool r2 = lb.concluded;
  if (lb.lower_bound != 163) r2 = false;
  log.add(step("dual_lower_bound", "dual cardinality at least " + std::to_string(lb.lower_bound), "computed",
               {{"classified_up_to", in.classified_up_to}},
               "classification covers cardinality <= " + std::to_string(in.classified_up_to) + "; the next admissible value is " +
                   std::to_string(lb.lower_bound),
               lb.concluded));
  auto a1 = check_a1(par, allowed);
  log.add(a1.step);
  r2 = r2 && a1.excluded;
  allowed.erase(std::remove(allowed.begin(), allowed.end(), 1), allowed.end());
  for (int m : {0, 4, 5, 6, 9, 10, 11, 22}) {
    auto ex = exclusion_infeasible(m, allowed, par, lb.lower_bound);
    log.add(ex.step);
    r2 = r2 && ex.infeasible;
    if (!ex.infeasible) break;
    allowed.erase(std::remove(allowed.begin(), allowed.end(), m), allowed.end());
  }
  const int s_max = allowed.empty() ? 0 : *std::max_element(allowed.begin(), allowed.end());
  const long long g = griesmer_bound(par.k, par.n - s_max, par.q);
  const bool gr = s_max < par.s && g > par.n;
  log.add(step("griesmer", "no (104," + std::to_string(s_max) + ")-arc", "computed",
               {{"remaining", allowed}, {"k", par.k}, {"d", par.n - s_max}, {"griesmer", g}},
               "no " + std::to_string(par.s) + "-plane remains; a code [" + std::to_string(par.n) + "," + std::to_string(par.k) + "," +
                   std::to_string(par.n - s_max) + "]_5 needs length >= " + std::to_string(g),
               gr));
  r2 = r2 && gr;
  log.add(step("route", "plane multiplicity route", "computed", json::object(),
               r2 ? "every plane multiplicity is excluded" : "route incomplete", r2));
  log.concluded = ok && r1 && r2;
  log.conclusion = log.concluded ? "no (104,22)-arc in PG(3,5) exists" : "proof incomplete";
  return log;
}

ProofLog prove_103_22(const ProofInputs& in) {
  ProofLog log;
  ArcParameters par;
  par.n = 103;
  if (!in.library) throw std::invalid_argument("prove_103_22: residual library required");
  bool ok = true;
  auto allowed = basic_facts(par, log, ok);
  const std::vector<int> assumed{3, 8, 13, 18};
  for (int x : assumed) allowed.erase(std::remove(allowed.begin(), allowed.end(), x), allowed.end());
  log.add(step("assumption", "no plane of multiplicity 3, 8, 13 or 18", "axiom", {{"excluded", assumed}},
               "assumed for contradiction", true));
  ok = quasi_divisible_step(par, allowed, log) && ok;
  ok = threefold_step(par, log) && ok;
  log.add(step("citation", "no (104,22)-arc in PG(3,5)", "citation", json::object(),
               "a dual with a full hyperplane in its support would extend the arc to a (104,22)-arc", true));
  log.add(step("axiom", "no non-lifted dual of cardinality 178..273", "axiom", {{"range", {178, 273}}},
               "non-lifted strong (3 mod 5)-arcs without a full hyperplane of cardinality 178..273 do not exist", true));
  const int max_lift = 5 * 93 + 3;
  auto all = dual_candidates(*in.library, in.nonlifted, max_lift);
  auto f = filter_dual_candidates(all, par, max_lift, in.filter);
  for (auto& s : f.steps) log.add(s);
  log.concluded = ok && f.concluded;
  log.conclusion = log.concluded ? "every (103,22)-arc in PG(3,5) has a plane of multiplicity 3, 8, 13 or 18" : "proof incomplete";
  return log;
}

}  // namespace pgarcs

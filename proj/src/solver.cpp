#include "pgarcs/solver.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pgarcs {

int LinearModel::add_var(std::string name, int lo, int hi, std::string tag) {
  if (lo > hi) throw std::invalid_argument("variable " + name + " has empty domain");
  if (index_.count(name)) throw std::invalid_argument("duplicate variable " + name);
  index_[name] = static_cast<int>(vars_.size());
  vars_.push_back({std::move(name), lo, hi, true, std::move(tag)});
  return static_cast<int>(vars_.size()) - 1;
}

void LinearModel::add_constraint(std::string name, std::vector<Term> terms, Relation rel, long long rhs) {
  // Merge repeated variables and drop zero coefficients.
  std::map<int, int> merged;
  for (auto t : terms) merged[t.var] += t.coef;
  std::vector<Term> out;
  for (auto [v, c] : merged)
    if (c) out.push_back({v, c});
  cons_.push_back({std::move(name), std::move(out), rel, rhs});
}

int LinearModel::var(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void LinearModel::fix(int v, int value) {
  if (value < vars_.at(v).lo || value > vars_.at(v).hi)
    throw std::invalid_argument("fixing " + vars_[v].name + " outside its bounds");
  vars_[v].lo = vars_[v].hi = value;
}

void LinearModel::validate() const {
  for (const auto& c : cons_)
    for (auto t : c.terms)
      if (t.var < 0 || t.var >= num_vars()) throw std::invalid_argument("constraint " + c.name + " references an undeclared variable");
}

bool satisfies(const LinearModel& m, const std::vector<int>& values) {
  if (static_cast<int>(values.size()) != m.num_vars()) return false;
  for (int v = 0; v < m.num_vars(); ++v)
    if (values[v] < m.vars()[v].lo || values[v] > m.vars()[v].hi) return false;
  for (const auto& c : m.constraints()) {
    long long s = 0;
    for (auto t : c.terms) s += static_cast<long long>(t.coef) * values[t.var];
    if (c.rel == Relation::Eq && s != c.rhs) return false;
    if (c.rel == Relation::Le && s > c.rhs) return false;
    if (c.rel == Relation::Ge && s < c.rhs) return false;
  }
  return true;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    default: return "undecided";
  }
}

namespace {

long long floor_div(long long a, long long b) {
  long long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}
long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

long long mod(long long a, long long d) { return ((a % d) + d) % d; }

// A linear form whose activity range [mn, mx] is kept current under bound changes.
struct Group {
  std::vector<Term> terms;
  long long mn = 0, mx = 0;
  long long widest = 0;  // largest |coef| * (hi - lo) at the root; ranges only shrink
};

struct Row {
  int full = -1;  // group of all terms
  bool eq = true; // otherwise sum <= rhs
  long long rhs = 0;
  // Residue reasoning: for each modulus d, the terms whose coefficient d does not divide
  // (all smaller than d in absolute value) against those it divides.
  struct Split {
    long long modulus = 0;
    int low = -1, high = -1;
  };
  std::vector<Split> splits;
  bool contradictory = false;
};

class Search {
 public:
  Search(const LinearModel& m, const SolverOptions& opt) : opt_(opt) {
    const int n = m.num_vars();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) { return m.vars()[a].name < m.vars()[b].name; });
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order_[i]] = i;
    lo_.resize(n);
    hi_.resize(n);
    for (int i = 0; i < n; ++i) {
      lo_[i] = m.vars()[order_[i]].lo;
      hi_[i] = m.vars()[order_[i]].hi;
    }
    member_.resize(n);
    watch_.resize(n);
    for (const auto& c : m.constraints()) {
      Row r;
      int sign = c.rel == Relation::Ge ? -1 : 1;
      r.eq = c.rel == Relation::Eq;
      r.rhs = sign * c.rhs;
      std::vector<Term> terms;
      for (auto t : c.terms) terms.push_back({pos[t.var], sign * t.coef});
      std::sort(terms.begin(), terms.end(), [](Term a, Term b) { return a.var < b.var; });
      int g = 0;
      for (auto t : terms) g = std::gcd(g, std::abs(t.coef));
      if (g > 1) {
        if (r.eq && r.rhs % g != 0) r.contradictory = true;
        for (auto& t : terms) t.coef /= g;
        r.rhs = r.eq ? r.rhs / g : floor_div(r.rhs, g);
      }
      if (terms.empty() && ((r.eq && r.rhs != 0) || (!r.eq && r.rhs < 0))) r.contradictory = true;
      if (r.eq) {
        std::set<int> cands;
        for (auto t : terms)
          if (std::abs(t.coef) >= 2) cands.insert(std::abs(t.coef));
        for (int d : cands) {
          std::vector<Term> low, high;
          bool proper = true;
          for (auto t : terms) {
            if (t.coef % d == 0) {
              high.push_back(t);
            } else {
              low.push_back(t);
              proper = proper && std::abs(t.coef) < d;
            }
          }
          if (proper && !low.empty()) r.splits.push_back({d, add_group(std::move(low)), add_group(std::move(high))});
        }
      }
      r.full = add_group(std::move(terms));
      const int id = static_cast<int>(rows_.size());
      for (auto t : groups_[r.full].terms) watch_[t.var].push_back(id);
      rows_.push_back(std::move(r));
    }
    queued_.assign(rows_.size(), 0);
    open_in_row_.assign(rows_.size(), 0);
    for (size_t c = 0; c < rows_.size(); ++c)
      for (auto t : groups_[rows_[c].full].terms) open_in_row_[c] += lo_[t.var] != hi_[t.var];
  }

  int num_vars() const { return static_cast<int>(lo_.size()); }

  // Returns false on budget exhaustion.
  bool run(long long limit) {
    limit_ = limit;
    for (const auto& r : rows_)
      if (r.contradictory) return true;
    for (size_t c = 0; c < rows_.size(); ++c) push(static_cast<int>(c));
    dfs();
    return !budget_out_;
  }

  std::vector<std::vector<int>> solutions;  // canonical order
  long long nodes = 0;
  bool stopped_by_limit = false;

  std::vector<int> to_model_order(const std::vector<int>& canon) const {
    std::vector<int> out(canon.size());
    for (size_t i = 0; i < canon.size(); ++i) out[order_[i]] = canon[i];
    return out;
  }

 private:
  int add_group(std::vector<Term> terms) {
    Group g;
    g.terms = std::move(terms);
    const int id = static_cast<int>(groups_.size());
    for (auto t : g.terms) {
      long long a = static_cast<long long>(t.coef) * lo_[t.var], b = static_cast<long long>(t.coef) * hi_[t.var];
      g.mn += std::min(a, b);
      g.mx += std::max(a, b);
      g.widest = std::max(g.widest, std::abs(b - a));
      member_[t.var].push_back({id, t.coef});
    }
    groups_.push_back(std::move(g));
    return id;
  }

  void push(int c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      queue_.push_back(c);
    }
  }

  void move_bounds(int v, int nl, int nh) {
    for (auto [g, c] : member_[v]) {
      long long a0 = static_cast<long long>(c) * lo_[v], b0 = static_cast<long long>(c) * hi_[v];
      long long a1 = static_cast<long long>(c) * nl, b1 = static_cast<long long>(c) * nh;
      groups_[g].mn += std::min(a1, b1) - std::min(a0, b0);
      groups_[g].mx += std::max(a1, b1) - std::max(a0, b0);
    }
    const int delta = (nl == nh) - (lo_[v] == hi_[v]);
    if (delta)
      for (int c : watch_[v]) open_in_row_[c] -= delta;
    lo_[v] = nl;
    hi_[v] = nh;
  }

  bool set_bounds(int v, long long lo, long long hi) {
    if (lo <= lo_[v] && hi >= hi_[v]) return true;
    int nl = static_cast<int>(std::max<long long>(lo, lo_[v]));
    int nh = static_cast<int>(std::min<long long>(hi, hi_[v]));
    if (nl > nh) return false;
    trail_.push_back({v, lo_[v], hi_[v]});
    move_bounds(v, nl, nh);
    for (int c : watch_[v]) push(c);
    return true;
  }

  // Enforces L <= sum <= U on a group by bound tightening.
  bool enforce(int gi, long long L, long long U) {
    for (;;) {
      const Group& g = groups_[gi];
      if (g.mn > U || g.mx < L) return false;
      if (g.widest <= std::min(U - g.mn, g.mx - L)) return true;
      bool changed = false;
      for (auto t : g.terms) {
        if (lo_[t.var] == hi_[t.var]) continue;
        long long a = static_cast<long long>(t.coef) * lo_[t.var], b = static_cast<long long>(t.coef) * hi_[t.var];
        long long omn = g.mn - std::min(a, b), omx = g.mx - std::max(a, b);
        long long lowA = L - omx, highA = U - omn;
        long long nl, nh;
        if (t.coef > 0) {
          nl = ceil_div(lowA, t.coef);
          nh = floor_div(highA, t.coef);
        } else {
          nl = ceil_div(highA, t.coef);
          nh = floor_div(lowA, t.coef);
        }
        if (nl > lo_[t.var] || nh < hi_[t.var]) {
          if (!set_bounds(t.var, nl, nh)) return false;
          changed = true;
        }
      }
      if (!changed) return true;
    }
  }

  bool propagate_row(const Row& r) {
    constexpr long long kInf = 1LL << 60;
    if (!r.eq) return enforce(r.full, -kInf, r.rhs);
    if (!enforce(r.full, r.rhs, r.rhs)) return false;
    for (const auto& sp : r.splits) {
      const Group &lo = groups_[sp.low], &hi = groups_[sp.high];
      long long tl = std::max(lo.mn, r.rhs - hi.mx), th = std::min(lo.mx, r.rhs - hi.mn);
      const long long d = sp.modulus, want = mod(r.rhs, d);
      tl += mod(want - tl, d);
      th -= mod(th - want, d);
      if (tl > th) return false;
      if (!enforce(sp.low, tl, th) || !enforce(sp.high, r.rhs - th, r.rhs - tl)) return false;
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      int c = queue_.back();
      queue_.pop_back();
      queued_[c] = 0;
      if (!propagate_row(rows_[c])) {
        for (int k : queue_) queued_[k] = 0;
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      auto [v, l, h] = trail_.back();
      trail_.pop_back();
      move_bounds(v, l, h);
    }
  }

  int pick() const {
    if (opt_.branching == Branching::TightestRow) {
      int row = -1;
      for (size_t c = 0; c < rows_.size(); ++c) {
        if (!rows_[c].eq) continue;
        int k = open_in_row_[c];
        if (k > 0 && (row < 0 || k < open_in_row_[row])) row = static_cast<int>(c);
      }
      if (row >= 0) {
        int best = -1;
        for (auto t : groups_[rows_[row].full].terms) {
          int v = t.var;
          if (lo_[v] != hi_[v] && (best < 0 || hi_[v] - lo_[v] < hi_[best] - lo_[best])) best = v;
        }
        return best;
      }
    }
    int best = -1;
    for (int v = 0; v < num_vars(); ++v) {
      if (lo_[v] == hi_[v]) continue;
      if (best < 0 || hi_[v] - lo_[v] < hi_[best] - lo_[best]) {
        best = v;
        if (hi_[v] - lo_[v] == 1) break;
      }
    }
    return best;
  }

  bool done() const { return budget_out_ || (limit_ >= 0 && static_cast<long long>(solutions.size()) >= limit_); }

  void dfs() {
    if (done()) return;
    if (++nodes > opt_.max_nodes) {
      budget_out_ = true;
      return;
    }
    if (!propagate()) return;
    int v = pick();
    if (v < 0) {
      solutions.push_back(lo_);
      if (limit_ >= 0 && static_cast<long long>(solutions.size()) >= limit_) stopped_by_limit = true;
      return;
    }
    const int l = lo_[v], h = hi_[v];
    for (int val = l; val <= h && !done(); ++val) {
      size_t mark = trail_.size();
      set_bounds(v, val, val);  // val lies in the current domain
      dfs();
      undo(mark);
    }
  }

  SolverOptions opt_;
  std::vector<int> order_;  // canonical index -> model index
  std::vector<int> lo_, hi_;
  std::vector<Group> groups_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<int, int>>> member_;  // var -> (group, coef)
  std::vector<std::vector<int>> watch_;                   // var -> rows
  std::vector<int> queue_;
  std::vector<char> queued_;
  std::vector<int> open_in_row_;
  std::vector<std::tuple<int, int, int>> trail_;
  long long limit_ = -1;
  bool budget_out_ = false;
};

}  // namespace

SolveResult solve(const LinearModel& m, const SolverOptions& opt) {
  m.validate();
  Search s(m, opt);
  SolveResult r;
  bool finished = s.run(1);
  r.nodes = s.nodes;
  if (!s.solutions.empty()) {
    r.status = SolveStatus::Feasible;
    r.witness = s.to_model_order(s.solutions.front());
    if (!satisfies(m, r.witness)) throw std::logic_error("solver produced a point violating the model");
  } else {
    r.status = finished ? SolveStatus::Infeasible : SolveStatus::Undecided;
  }
  return r;
}

EnumerateResult enumerate(const LinearModel& m, long long limit, const SolverOptions& opt) {
  m.validate();
  Search s(m, opt);
  EnumerateResult r;
  bool finished = s.run(limit);
  r.nodes = s.nodes;
  r.limit_reached = s.stopped_by_limit;
  r.complete = finished && !s.stopped_by_limit;
  for (const auto& c : s.solutions) {
    r.solutions.push_back(s.to_model_order(c));
    if (!satisfies(m, r.solutions.back())) throw std::logic_error("solver produced a point violating the model");
  }
  std::sort(r.solutions.begin(), r.solutions.end());
  r.solutions.erase(std::unique(r.solutions.begin(), r.solutions.end()), r.solutions.end());
  return r;
}

std::string export_lp(const LinearModel& m) {
  std::ostringstream os;
  const auto& V = m.vars();
  os << "Minimize\n obj: 0\nSubject To\n";
  for (const auto& c : m.constraints()) {
    os << ' ' << c.name << ':';
    int k = 0;
    for (auto t : c.terms) {
      if (k && k % 8 == 0) os << "\n   ";
      os << ' ' << (t.coef < 0 ? '-' : '+') << ' ';
      if (std::abs(t.coef) != 1) os << std::abs(t.coef) << ' ';
      os << V[t.var].name;
      ++k;
    }
    if (c.terms.empty()) os << " 0";
    os << (c.rel == Relation::Eq ? " = " : c.rel == Relation::Le ? " <= " : " >= ") << c.rhs << '\n';
  }
  os << "Bounds\n";
  std::vector<int> binaries, generals;
  for (int v = 0; v < m.num_vars(); ++v) {
    if (V[v].lo == 0 && V[v].hi == 1) {
      binaries.push_back(v);
      continue;
    }
    generals.push_back(v);
    if (V[v].lo == V[v].hi)
      os << ' ' << V[v].name << " = " << V[v].lo << '\n';
    else
      os << ' ' << V[v].lo << " <= " << V[v].name << " <= " << V[v].hi << '\n';
  }
  auto list = [&](const char* head, const std::vector<int>& vs) {
    if (vs.empty()) return;
    os << head << '\n';
    for (size_t i = 0; i < vs.size(); ++i) os << (i % 8 == 0 ? (i ? "\n " : " ") : " ") << V[vs[i]].name;
    os << '\n';
  };
  list("Binaries", binaries);
  list("Generals", generals);
  os << "End\n";
  return os.str();
}

void write_lp(const LinearModel& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << export_lp(m);
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string format_solutions(const LinearModel& m, const std::vector<std::vector<int>>& sols) {
  std::ostringstream os;
  for (const auto& s : sols) {
    bool first = true;
    for (int v = 0; v < m.num_vars(); ++v) {
      if (s[v] <= 0) continue;
      os << (first ? "" : " ") << m.vars()[v].name;
      if (s[v] != 1) os << '=' << s[v];
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string coords(const ProjectiveSpace& S, int p) {
  std::string s;
  for (int c : S.point(p)) s += static_cast<char>('0' + c);
  return s;
}

std::string line_name(const ProjectiveSpace& S, int l) {
  const auto& pts = S.line_points(l);
  return coords(S, pts[0]) + "_" + coords(S, pts[1]);
}

}  // namespace

LinearModel build_strong_arc_model(const StrongArcModelSpec& spec, const SpacePtr& space) {
  const auto& S = *space;
  if (S.v() != 4 || S.q() != spec.q) throw std::invalid_argument("strong arc model lives in PG(3,q)");
  const int q = spec.q, t = spec.t;
  const int plane_base = t * (q + 1);
  LinearModel m;
  std::vector<std::vector<int>> x(S.num_points(), std::vector<int>(t + 1));
  for (int p = 0; p < S.num_points(); ++p)
    for (int i = 0; i <= t; ++i)
      x[p][i] = m.add_var("x" + coords(S, p) + "_" + std::to_string(i), 0, 1, "point " + coords(S, p) + " mult " + std::to_string(i));
  std::vector<int> z(S.num_hyperplanes());
  // y_L as a list of (variable, weight): a single general variable or value indicators.
  std::vector<std::vector<Term>> y(S.num_lines());
  std::vector<int> values;
  for (int v : spec.line_values)
    if (v > 0 && v <= spec.line_cap) values.push_back(v);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (int l = 0; l < S.num_lines(); ++l) {
    if (spec.line_values.empty()) {
      y[l].push_back({m.add_var("y" + line_name(S, l), 0, spec.line_cap, "line " + line_name(S, l)), 1});
      continue;
    }
    std::vector<Term> one;
    for (int v : values) {
      int u = m.add_var("y" + line_name(S, l) + "_" + std::to_string(v), 0, 1, "line " + line_name(S, l) + " value " + std::to_string(v));
      y[l].push_back({u, v});
      one.push_back({u, 1});
    }
    if (!one.empty()) m.add_constraint("yv" + line_name(S, l), one, Relation::Le, 1);
  }
  auto add_y = [&](std::vector<Term>& ts, int l, int scale) {
    for (auto t : y[l]) ts.push_back({t.var, scale * t.coef});
  };
  for (int h = 0; h < S.num_hyperplanes(); ++h) z[h] = m.add_var("z" + coords(S, h), 0, spec.plane_cap, "plane " + coords(S, h));
  auto weighted = [&](const std::vector<int>& pts) {
    std::vector<Term> ts;
    for (int p : pts)
      for (int i = 1; i <= t; ++i) ts.push_back({x[p][i], i});
    return ts;
  };
  for (int p = 0; p < S.num_points(); ++p) {
    std::vector<Term> ts;
    for (int i = 0; i <= t; ++i) ts.push_back({x[p][i], 1});
    m.add_constraint("pt" + coords(S, p), ts, Relation::Eq, 1);
  }
  for (int l = 0; l < S.num_lines(); ++l) {
    auto ts = weighted(S.line_points(l));
    add_y(ts, l, -q);
    m.add_constraint("ln" + line_name(S, l), ts, Relation::Eq, t);
  }
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    auto ts = weighted(S.hyperplane_points(h));
    ts.push_back({z[h], -q});
    m.add_constraint("pl" + coords(S, h), ts, Relation::Eq, plane_base);
  }
  if (spec.cardinality_row) {
    std::vector<int> all(S.num_points());
    std::iota(all.begin(), all.end(), 0);
    m.add_constraint("card", weighted(all), Relation::Eq, spec.target);
  }
  if (spec.implied_rows) {
    // With K(H) = b + q z_H and K(L) = t + q y_L, the standard double counts become linear
    // rows in z, y and the point multiplicities.
    const long long kp = gaussian_point_count(3, q), kl = gaussian_point_count(2, q);
    auto mult_terms = [&](int p, int scale) {
      std::vector<Term> ts;
      for (int i = 1; i <= t; ++i) ts.push_back({x[p][i], -scale * i});
      return ts;
    };
    for (int p = 0; p < S.num_points(); ++p) {
      // sum_{H >= P} K(H) = (q+1) n + q^2 K(P)
      auto ts = mult_terms(p, q * q);
      for (int h : S.hyperplanes_through(p)) ts.push_back({z[h], q});
      m.add_constraint("ip" + coords(S, p), ts, Relation::Eq, kl * spec.target - kp * plane_base);
      // sum_{L >= P} K(L) = n + (q^2+q) K(P)
      auto tl = mult_terms(p, q * q + q);
      for (int l : S.lines_through(p)) add_y(tl, l, q);
      m.add_constraint("iq" + coords(S, p), tl, Relation::Eq, spec.target - kp * t);
    }
    for (int l = 0; l < S.num_lines(); ++l) {
      // sum_{H >= L} K(H) = n + q K(L)
      std::vector<Term> ts;
      for (int h : S.hyperplanes_through_line(l)) ts.push_back({z[h], q});
      add_y(ts, l, -q * q);
      m.add_constraint("il" + line_name(S, l), ts, Relation::Eq, spec.target + q * t - (q + 1) * plane_base);
    }
    for (int h = 0; h < S.num_hyperplanes(); ++h) {
      // inside H: sum_{L >= P, L <= H} K(L) = K(H) + q K(P)
      for (int p : S.hyperplane_points(h)) {
        auto ts = mult_terms(p, q);
        for (int l : S.lines_through(p))
          if (S.line_in_hyperplane(l, h)) add_y(ts, l, q);
        ts.push_back({z[h], -q});
        m.add_constraint("ih" + coords(S, h) + "_" + coords(S, p), ts, Relation::Eq, plane_base - (q + 1) * t);
      }
    }
  }
  if (spec.residual) {
    const Arc& r = *spec.residual;
    if (r.geom().v() != 3 || r.geom().q() != q) throw std::invalid_argument("residual must be an arc in PG(2,q)");
    for (int p = 0; p < r.geom().num_points(); ++p)
      if (r[p] > t) throw std::invalid_argument("residual exceeds the point multiplicity cap");
    auto map = hyperplane_coordinate_map(S, spec.fixed_plane, r.geom());
    for (int p = 0; p < r.geom().num_points(); ++p)
      for (int i = 0; i <= t; ++i) m.fix(x[map[p]][i], r[p] == i ? 1 : 0);
    int card = r.cardinality();
    if (card < plane_base || (card - plane_base) % q || (card - plane_base) / q > spec.plane_cap)
      throw std::invalid_argument("residual cardinality incompatible with the prescribed plane");
    m.fix(z[spec.fixed_plane], (card - plane_base) / q);
  }
  if (spec.affine_leader) {
    int lead = -1;
    for (int p = 0; p < S.num_points() && lead < 0; ++p)
      if (!S.in_hyperplane(p, spec.fixed_plane)) lead = p;
    for (int p = lead + 1; p < S.num_points(); ++p) {
      if (S.in_hyperplane(p, spec.fixed_plane)) continue;
      std::vector<Term> ts;
      for (int i = 1; i <= t; ++i) {
        ts.push_back({x[lead][i], i});
        ts.push_back({x[p][i], -i});
      }
      m.add_constraint("lead" + coords(S, p), ts, Relation::Ge, 0);
    }
  }
  return m;
}

Arc strong_model_solution_arc(const LinearModel& m, const std::vector<int>& sol, const SpacePtr& space) {
  Arc a(space);
  for (int p = 0; p < space->num_points(); ++p)
    for (int i = 1; i <= 9; ++i) {
      int v = m.var("x" + coords(*space, p) + "_" + std::to_string(i));
      if (v < 0) break;
      if (sol[v]) a.set(p, i);
    }
  return a;
}

LinearModel build_dual_model(const Arc& dual, const DualModelSpec& spec) {
  const auto& S = dual.geom();
  const int q = S.q();
  LinearModel m;
  std::vector<int> x(S.num_points()), y(S.num_hyperplanes()), r(S.num_hyperplanes());
  for (int p = 0; p < S.num_points(); ++p) x[p] = m.add_var("x" + coords(S, p), 0, 1, "point " + coords(S, p));
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    // The dual point of h carries the dual value of hyperplane h.
    r[h] = spec.s - dual[S.dual_point_of_hyperplane(h)];
    if (r[h] < 0) throw std::invalid_argument("dual value exceeds s");
    int cap = dual[S.dual_point_of_hyperplane(h)] == 0 ? 0 : r[h] / q;
    y[h] = m.add_var("y" + coords(S, h), 0, cap, "plane " + coords(S, h));
  }
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    std::vector<Term> ts;
    for (int p : S.hyperplane_points(h)) ts.push_back({x[p], 1});
    ts.push_back({y[h], q});
    m.add_constraint("h" + coords(S, h), ts, Relation::Eq, r[h]);
  }
  if (spec.cardinality_row) {
    std::vector<Term> ts;
    for (int p = 0; p < S.num_points(); ++p) ts.push_back({x[p], 1});
    m.add_constraint("card", ts, Relation::Eq, spec.n);
  }
  const long long kv1 = gaussian_point_count(S.v() - 1, q), kv2 = gaussian_point_count(S.v() - 2, q);
  if (spec.point_rows) {
    // sum_{H >= P} K(H) = [v-2] n + (q^{v-2}) K(P)
    const long long diff = kv1 - kv2;
    for (int p = 0; p < S.num_points(); ++p) {
      std::vector<Term> ts;
      long long rs = 0;
      for (int h : S.hyperplanes_through(p)) {
        ts.push_back({y[h], q});
        rs += r[h];
      }
      ts.push_back({x[p], static_cast<int>(diff)});
      m.add_constraint("p" + coords(S, p), ts, Relation::Eq, rs - kv2 * spec.n);
    }
  }
  if (spec.line_rows && S.v() == 4) {
    // sum_{H >= L} K(H) = n + q K(L)
    for (int l = 0; l < S.num_lines(); ++l) {
      std::vector<Term> ts;
      long long rs = 0;
      for (int h : S.hyperplanes_through_line(l)) {
        ts.push_back({y[h], q});
        rs += r[h];
      }
      for (int p : S.line_points(l)) ts.push_back({x[p], q});
      m.add_constraint("l" + line_name(S, l), ts, Relation::Eq, rs - spec.n);
    }
  }
  return m;
}

Arc dual_model_solution_arc(const LinearModel& m, const std::vector<int>& sol, const SpacePtr& space) {
  Arc a(space);
  for (int p = 0; p < space->num_points(); ++p) a.set(p, sol[m.var("x" + coords(*space, p))]);
  return a;
}

std::vector<IsoClass> isomorphism_classes(const std::vector<Arc>& arcs, int t) {
  std::map<std::vector<int>, IsoClass> by_form;
  for (const Arc& a : arcs) {
    auto c = canonical_form(a);
    if (!c.decided) throw std::runtime_error("canonical form undecided within budget");
    auto [it, fresh] = by_form.try_emplace(c.form.mult());
    if (fresh) {
      it->second.representative = c.form;
      it->second.lifted = !lifting_points(a, t).empty();
    }
    ++it->second.solutions;
  }
  std::vector<IsoClass> out;
  for (auto& [k, v] : by_form) out.push_back(std::move(v));
  return out;
}

}  // namespace pgarcs

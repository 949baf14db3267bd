#include "pgarcs/pencil.hpp"

#include <algorithm>
#include <bitset>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pgarcs/isomorphism.hpp"

namespace pgarcs {

namespace {

constexpr std::array<int, 4> kLiftedTypes{0, 7, 15, 16};  // A1, B5, C5, D1

std::string type_power_string(const TypeCounts& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kNumLineTypes; ++i) {
    if (!c[i]) continue;
    if (!first) os << ' ';
    first = false;
    os << kLineTypes[i].name << '^' << c[i];
  }
  return os.str();
}

std::string lambda_string(const Lambda& l) {
  std::ostringstream os;
  os << '(' << l[0] << ',' << l[1] << ',' << l[2] << ',' << l[3] << ')';
  return os.str();
}

// Whether some k values from vals (with repetition) add up to target.
bool multiset_sum(const std::vector<int>& vals, int k, int target) {
  if (target < 0) return false;
  constexpr int W = 2048;
  if (target >= W) return false;
  std::bitset<W> reach;
  reach[0] = true;
  for (int step = 0; step < k; ++step) {
    std::bitset<W> next;
    for (int v : vals) next |= reach << v;
    reach = next;
  }
  return reach[target];
}

void kill_decomposition(FullPencilList& l, size_t i) { l.alive[i] = 0; }

}  // namespace

int PencilProfile::home_card() const {
  int s = 0;
  for (int t : types) s += kLineTypes[t].sum();
  return s - 5 * center;
}

bool PencilProfile::contains(int type) const { return std::find(types.begin(), types.end(), type) != types.end(); }

std::string PencilProfile::str() const {
  TypeCounts c{};
  for (int t : types) ++c[t];
  return std::to_string(center) + "-point " + type_power_string(c) + " (plane " + std::to_string(home_card()) + ")";
}

Lambda FullPencilProfile::lambda() const {
  Lambda l{};
  l[center] = 1;
  for (int t = 0; t < kNumLineTypes; ++t) {
    if (!counts[t]) continue;
    for (int m = 0; m < 4; ++m) l[m] += counts[t] * (kLineTypes[t].count(m) - (m == center ? 1 : 0));
  }
  return l;
}

int FullPencilProfile::cardinality() const {
  int s = 0;
  for (int t = 0; t < kNumLineTypes; ++t) s += counts[t] * kLineTypes[t].sum();
  return s - 30 * center;
}

bool FullPencilProfile::lifted_shaped() const {
  if (center != 3) return false;
  for (int t = 0; t < kNumLineTypes; ++t)
    if (counts[t] && std::find(kLiftedTypes.begin(), kLiftedTypes.end(), t) == kLiftedTypes.end()) return false;
  return true;
}

std::string FullPencilProfile::str() const {
  return std::to_string(center) + "-point " + type_power_string(counts) + " lambda=" + lambda_string(lambda());
}

std::string ResidualInfo::str() const {
  std::ostringstream os;
  os << "card " << card << " #" << class_index << ' ' << type_power_string(signature.types)
     << " lambda=" << lambda_string(signature.lambda);
  return os.str();
}

PencilUniverse PencilUniverse::build(const ResidualLibrary& lib) {
  PencilUniverse u;
  u.min_card_with_type.fill(-1);
  for (const auto& [card, reps] : lib.by_card) {
    for (size_t k = 0; k < reps.size(); ++k) {
      const Arc& a = reps[k];
      const auto& S = a.geom();
      auto lt = line_type_per_line(a);
      ResidualInfo info;
      info.card = card;
      info.class_index = static_cast<int>(k) + 1;
      info.signature = planar_signature(a);
      for (int l = 0; l < S.num_lines(); ++l) {
        info.type_mask |= 1u << lt[l];
        if (u.min_card_with_type[lt[l]] < 0 || card < u.min_card_with_type[lt[l]]) u.min_card_with_type[lt[l]] = card;
      }
      if (info.signature.lambda[0] == 0) continue;  // full plane in the support
      std::set<int> ids;
      for (int p = 0; p < S.num_points(); ++p) {
        PencilProfile pen;
        pen.center = a[p];
        int i = 0;
        for (int l : S.lines_through(p)) pen.types[i++] = lt[l];
        std::sort(pen.types.begin(), pen.types.end());
        auto [it, fresh] = u.pencil_index.emplace(pen, static_cast<int>(u.pencils.size()));
        if (fresh) u.pencils.push_back(pen);
        ids.insert(it->second);
      }
      info.pencils.assign(ids.begin(), ids.end());
      u.residuals.push_back(info);
    }
  }
  return u;
}

int PencilUniverse::find_pencil(const PencilProfile& p) const {
  auto it = pencil_index.find(p);
  return it == pencil_index.end() ? -1 : it->second;
}

bool ExclusionState::empty() const { return count_types() == 0 || count_pencils() == 0 || count_residuals() == 0; }
int ExclusionState::count_types() const { return static_cast<int>(std::count(type_alive.begin(), type_alive.end(), 1)); }
int ExclusionState::count_pencils() const { return static_cast<int>(std::count(pencil_alive.begin(), pencil_alive.end(), 1)); }
int ExclusionState::count_residuals() const {
  return static_cast<int>(std::count(residual_alive.begin(), residual_alive.end(), 1));
}

std::vector<int> ExclusionState::admissible_cards(int type) const {
  std::set<int> cards;
  for (size_t r = 0; r < universe->residuals.size(); ++r)
    if (residual_alive[r] && (universe->residuals[r].type_mask >> type & 1)) cards.insert(universe->residuals[r].card);
  return {cards.begin(), cards.end()};
}

std::vector<int> ExclusionState::alive_fulls(int type, int center) const {
  std::set<int> out;
  auto it = lists.find({type, center});
  if (it == lists.end()) return {};
  const auto& l = it->second;
  for (size_t i = 0; i < l.alive.size(); ++i)
    if (l.alive[i]) out.insert(l.full_id[i]);
  return {out.begin(), out.end()};
}

ExclusionState init_state(const PencilUniverse& u, int target) {
  if (((target - 3) % 5 + 5) % 5 != 0) throw std::invalid_argument("target cardinality must be congruent to 3 mod 5");
  ExclusionState s;
  s.target = target;
  s.universe = &u;
  s.type_alive.assign(kNumLineTypes, 1);
  s.pencil_alive.assign(u.pencils.size(), 1);
  s.residual_alive.assign(u.residuals.size(), 1);
  return s;
}

bool rule_incidence(ExclusionState& s) {
  const auto& u = *s.universe;
  bool any = false;
  TraceEntry pe{"incidence", "pencil", {}, "contains an excluded line type"};
  for (size_t p = 0; p < u.pencils.size(); ++p) {
    if (!s.pencil_alive[p]) continue;
    for (int t : u.pencils[p].types)
      if (!s.type_alive[t]) {
        s.pencil_alive[p] = 0;
        pe.items.push_back(u.pencils[p].str());
        break;
      }
  }
  TraceEntry re{"incidence", "residual", {}, "contains an excluded point-line configuration"};
  for (size_t r = 0; r < u.residuals.size(); ++r) {
    if (!s.residual_alive[r]) continue;
    for (int p : u.residuals[r].pencils)
      if (!s.pencil_alive[p]) {
        s.residual_alive[r] = 0;
        re.items.push_back(u.residuals[r].str());
        break;
      }
  }
  std::vector<char> used(u.pencils.size(), 0);
  for (size_t r = 0; r < u.residuals.size(); ++r)
    if (s.residual_alive[r])
      for (int p : u.residuals[r].pencils) used[p] = 1;
  TraceEntry oe{"incidence", "pencil", {}, "only contained in excluded residual arcs"};
  for (size_t p = 0; p < u.pencils.size(); ++p)
    if (s.pencil_alive[p] && !used[p]) {
      s.pencil_alive[p] = 0;
      oe.items.push_back(u.pencils[p].str());
    }
  for (auto* e : {&pe, &re, &oe})
    if (!e->items.empty()) {
      s.trace.push_back(*e);
      any = true;
    }
  return any;
}

bool rule_line_cardinality(ExclusionState& s) {
  TraceEntry e{"line-cardinality", "line-type", {}, ""};
  std::ostringstream datum;
  for (int t = 0; t < kNumLineTypes; ++t) {
    if (!s.type_alive[t]) continue;
    auto cards = s.admissible_cards(t);
    int need = s.target + 5 * kLineTypes[t].sum();
    if (!multiset_sum(cards, 6, need)) {
      s.type_alive[t] = 0;
      e.items.emplace_back(kLineTypes[t].name);
      datum << kLineTypes[t].name << ": six planes from {";
      for (size_t i = 0; i < cards.size(); ++i) datum << (i ? "," : "") << cards[i];
      datum << "} cannot sum to " << need << "; ";
    }
  }
  if (e.items.empty()) return false;
  e.datum = datum.str();
  s.trace.push_back(e);
  return true;
}

bool rule_pencil_anchored(ExclusionState& s) {
  const auto& u = *s.universe;
  TraceEntry e{"pencil-anchored", "pencil", {}, "five further planes through a line cannot reach the target"};
  std::array<std::vector<int>, kNumLineTypes> cards;
  for (int t = 0; t < kNumLineTypes; ++t)
    if (s.type_alive[t]) cards[t] = s.admissible_cards(t);
  for (size_t p = 0; p < u.pencils.size(); ++p) {
    if (!s.pencil_alive[p]) continue;
    const auto& pen = u.pencils[p];
    const int h = pen.home_card();
    for (int t : pen.types) {
      if (!s.type_alive[t]) continue;
      if (!multiset_sum(cards[t], 5, s.target + 5 * kLineTypes[t].sum() - h)) {
        s.pencil_alive[p] = 0;
        e.items.push_back(pen.str());
        break;
      }
    }
  }
  if (e.items.empty()) return false;
  s.trace.push_back(e);
  return true;
}

void run_cheap_fixpoint(ExclusionState& s) {
  for (;;) {
    bool changed = rule_line_cardinality(s);
    changed |= rule_incidence(s);
    changed |= rule_pencil_anchored(s);
    changed |= rule_incidence(s);
    if (!changed) break;
  }
}

namespace {

// span[a][b]: some alive pencil centred at m holds a line of type a and another of type b.
using SpanTable = std::array<std::array<char, kNumLineTypes>, kNumLineTypes>;

SpanTable span_table(const ExclusionState& s, int m) {
  SpanTable span{};
  const auto& u = *s.universe;
  for (size_t p = 0; p < u.pencils.size(); ++p) {
    if (!s.pencil_alive[p] || u.pencils[p].center != m) continue;
    const auto& ty = u.pencils[p].types;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) span[ty[i]][ty[j]] = span[ty[j]][ty[i]] = 1;
  }
  return span;
}

bool spannable(const FullPencilProfile& f, const SpanTable& span) {
  for (int a = 0; a < kNumLineTypes; ++a) {
    if (!f.counts[a]) continue;
    if (f.counts[a] > 1 && !span[a][a]) return false;
    for (int b = a + 1; b < kNumLineTypes; ++b)
      if (f.counts[b] && !span[a][b]) return false;
  }
  return true;
}

bool lambda_allowed(const ExclusionState& s, const Lambda& l) {
  if (s.forced_lambda && *s.forced_lambda != l) return false;
  return std::find(s.excluded_lambda.begin(), s.excluded_lambda.end(), l) == s.excluded_lambda.end();
}

}  // namespace

FullPencilList enumerate_full_pencils(ExclusionState& s, int type, int center, const EngineOptions& opt) {
  const auto& u = *s.universe;
  FullPencilList out;
  out.type = type;
  out.center = center;
  std::vector<int> cand;
  for (size_t p = 0; p < u.pencils.size(); ++p)
    if (s.pencil_alive[p] && u.pencils[p].center == center && u.pencils[p].contains(type)) cand.push_back(static_cast<int>(p));
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    return std::make_pair(u.pencils[a].home_card(), a) < std::make_pair(u.pencils[b].home_card(), b);
  });
  if (cand.empty()) return out;
  const int need = s.target + 5 * kLineTypes[type].sum();
  const SpanTable span = span_table(s, center);
  // Lines of each candidate other than one copy of the fixed line.
  std::vector<TypeCounts> rest(cand.size());
  for (size_t i = 0; i < cand.size(); ++i) {
    for (int t : u.pencils[cand[i]].types) ++rest[i][t];
    --rest[i][type];
  }
  std::vector<int> home(cand.size());
  for (size_t i = 0; i < cand.size(); ++i) home[i] = u.pencils[cand[i]].home_card();
  const int hmax = home.back();
  std::array<int, 6> pick{};
  TypeCounts other{};
  std::function<void(int, size_t, int)> dfs = [&](int depth, size_t start, int sum) {
    if (!out.complete) return;
    if (++out.nodes > opt.enumeration_node_cap) {
      out.complete = false;
      return;
    }
    if (depth == 6) {
      if (sum != need) return;
      FullPencilProfile f;
      f.center = center;
      f.counts = other;
      ++f.counts[type];
      if (f.lifted_shaped()) return;
      if (!lambda_allowed(s, f.lambda())) return;
      auto [it, fresh] = s.full_index.emplace(f, static_cast<int>(s.fulls.size()));
      if (fresh) s.fulls.push_back(f);
      std::array<int, 6> d{};
      for (int i = 0; i < 6; ++i) d[i] = cand[pick[i]];
      out.decompositions.push_back(d);
      out.full_id.push_back(it->second);
      out.alive.push_back(1);
      if (static_cast<long long>(out.decompositions.size()) > opt.decomposition_cap) out.complete = false;
      return;
    }
    const int left = 6 - depth;
    for (size_t i = start; i < cand.size(); ++i) {
      if (sum + home[i] * left > need) break;
      if (sum + home[i] + hmax * (left - 1) < need) continue;
      // Lines from different planes through the fixed line must span an alive pencil.
      bool ok = true;
      for (int a = 0; a < kNumLineTypes && ok; ++a) {
        if (!rest[i][a]) continue;
        for (int b = 0; b < kNumLineTypes; ++b)
          if (other[b] && !span[a][b]) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;
      for (int a = 0; a < kNumLineTypes; ++a) other[a] += rest[i][a];
      pick[depth] = static_cast<int>(i);
      dfs(depth + 1, i, sum + home[i]);
      for (int a = 0; a < kNumLineTypes; ++a) other[a] -= rest[i][a];
      if (!out.complete) return;
    }
  };
  dfs(0, 0, 0);
  return out;
}

namespace {

int candidate_count(const ExclusionState& s, int t, int m) {
  const auto& u = *s.universe;
  int c = 0;
  for (size_t p = 0; p < u.pencils.size(); ++p)
    if (s.pencil_alive[p] && u.pencils[p].center == m && u.pencils[p].contains(t)) ++c;
  return c;
}

bool filter_lists(ExclusionState& s, const EngineOptions& opt);

}  // namespace

bool rule_full_pencils(ExclusionState& s, const EngineOptions& opt) {
  bool any = false;
  // Smallest list first; each list is filtered before the next is enumerated.
  for (;;) {
    std::tuple<int, int, int> best{-1, -1, -1};
    for (int t = 0; t < kNumLineTypes; ++t) {
      if (!s.type_alive[t]) continue;
      for (int m = 0; m < 4; ++m) {
        if (!kLineTypes[t].contains(m) || s.lists.count({t, m})) continue;
        int c = candidate_count(s, t, m);
        if (std::get<1>(best) < 0 || c < std::get<0>(best)) best = {c, t, m};
      }
    }
    if (std::get<1>(best) < 0) break;
    auto [c, t, m] = best;
    s.lists[{t, m}] = enumerate_full_pencils(s, t, m, opt);
    any |= filter_lists(s, opt);
    if (s.empty()) break;
  }
  s.full_pencils_done = true;
  any |= filter_lists(s, opt);
  return any;
}

namespace {

bool filter_lists(ExclusionState& s, const EngineOptions& opt) {
  const auto& u = *s.universe;
  bool any = false;
  for (;;) {
    bool changed = false;
    // Decompositions through excluded pencils, unspannable or excluded-lambda profiles.
    std::array<SpanTable, 4> span;
    for (int m = 0; m < 4; ++m) span[m] = span_table(s, m);
    std::vector<char> f_ok(s.fulls.size(), 1);
    for (size_t f = 0; f < s.fulls.size(); ++f) {
      const auto& fp = s.fulls[f];
      bool ok = lambda_allowed(s, fp.lambda()) && spannable(fp, span[fp.center]);
      for (int t = 0; t < kNumLineTypes && ok; ++t)
        if (fp.counts[t] && !s.type_alive[t]) ok = false;
      f_ok[f] = ok;
    }
    for (auto& [key, l] : s.lists)
      for (size_t i = 0; i < l.alive.size(); ++i) {
        if (!l.alive[i]) continue;
        bool ok = f_ok[l.full_id[i]];
        for (int p : l.decompositions[i]) ok = ok && s.pencil_alive[p];
        if (!ok) {
          kill_decomposition(l, i);
          changed = true;
        }
      }
    // Cross-type consistency.
    std::map<std::pair<int, int>, std::set<int>> alive_f;
    for (auto& [key, l] : s.lists) {
      auto& st = alive_f[key];
      for (size_t i = 0; i < l.alive.size(); ++i)
        if (l.alive[i]) st.insert(l.full_id[i]);
    }
    TraceEntry ce{"full-pencil-consistency", "full-pencil", {}, "missing from the list of another contained line type"};
    for (auto& [key, l] : s.lists) {
      if (!l.complete) continue;
      std::set<int> dropped;
      for (size_t i = 0; i < l.alive.size(); ++i) {
        if (!l.alive[i]) continue;
        const auto& fp = s.fulls[l.full_id[i]];
        bool ok = true;
        for (int t2 = 0; t2 < kNumLineTypes && ok; ++t2) {
          if (!fp.counts[t2] || t2 == l.type) continue;
          auto it = s.lists.find({t2, l.center});
          if (it == s.lists.end() || !it->second.complete) continue;
          if (!alive_f[{t2, l.center}].count(l.full_id[i])) ok = false;
        }
        if (!ok) {
          kill_decomposition(l, i);
          dropped.insert(l.full_id[i]);
          changed = true;
        }
      }
      for (int f : dropped) ce.items.push_back(std::string(kLineTypes[l.type].name) + ": " + s.fulls[f].str());
    }
    if (!ce.items.empty()) s.trace.push_back(ce);
    // Consequences for line types and pencils.
    TraceEntry te{"full-pencil-empty", "line-type", {}, "no consistent full point-line configuration"};
    TraceEntry pe{"full-pencil-cover", "pencil", {}, "not part of any surviving full point-line configuration"};
    std::map<std::pair<int, int>, std::set<int>> used;  // pencils in alive decompositions
    for (auto& [key, l] : s.lists)
      for (size_t i = 0; i < l.alive.size(); ++i)
        if (l.alive[i])
          for (int p : l.decompositions[i]) used[key].insert(p);
    for (auto& [key, l] : s.lists) {
      if (!l.complete || !s.type_alive[l.type]) continue;
      if (used[key].empty()) {
        s.type_alive[l.type] = 0;
        te.items.push_back(std::string(kLineTypes[l.type].name) + " at a " + std::to_string(l.center) + "-point");
      }
    }
    for (size_t p = 0; p < u.pencils.size(); ++p) {
      if (!s.pencil_alive[p]) continue;
      const auto& pen = u.pencils[p];
      for (int t : pen.types) {
        auto it = s.lists.find({t, pen.center});
        if (it == s.lists.end() || !it->second.complete) continue;
        if (!used[{t, pen.center}].count(static_cast<int>(p))) {
          s.pencil_alive[p] = 0;
          pe.items.push_back(pen.str() + " via " + std::string(kLineTypes[t].name));
          break;
        }
      }
    }
    // Every plane of the arc constrains the global point distribution.
    TraceEntry re{"residual-lambda", "residual", {}, "no point distribution consistent with all its configurations"};
    std::set<Lambda> support;
    bool support_known = opt.use_residual_lambda;
    if (opt.use_residual_lambda) {
      for (size_t r = 0; r < u.residuals.size(); ++r) {
        if (!s.residual_alive[r]) continue;
        std::optional<std::set<Lambda>> inter;
        for (int p : u.residuals[r].pencils) {
          const auto& pen = u.pencils[p];
          for (int t : pen.types) {
            auto it = s.lists.find({t, pen.center});
            if (it == s.lists.end() || !it->second.complete) continue;
            std::set<Lambda> ls;
            const auto& l = it->second;
            for (size_t i = 0; i < l.alive.size(); ++i)
              if (l.alive[i] && std::find(l.decompositions[i].begin(), l.decompositions[i].end(), p) != l.decompositions[i].end())
                ls.insert(s.fulls[l.full_id[i]].lambda());
            if (!inter) inter = ls;
            else {
              std::set<Lambda> x;
              std::set_intersection(inter->begin(), inter->end(), ls.begin(), ls.end(), std::inserter(x, x.begin()));
              inter = std::move(x);
            }
          }
        }
        if (!inter) {
          support_known = false;
          continue;
        }
        if (inter->empty()) {
          s.residual_alive[r] = 0;
          re.items.push_back(u.residuals[r].str());
        } else {
          support.insert(inter->begin(), inter->end());
        }
      }
    }
    if (support_known) {
      TraceEntry le{"lambda-support", "full-pencil", {}, "point distribution not admitted by any surviving residual arc"};
      std::set<int> dropped;
      for (auto& [key, l] : s.lists)
        for (size_t i = 0; i < l.alive.size(); ++i)
          if (l.alive[i] && !support.count(s.fulls[l.full_id[i]].lambda())) {
            kill_decomposition(l, i);
            dropped.insert(l.full_id[i]);
            changed = true;
          }
      for (int f : dropped) le.items.push_back(s.fulls[f].str());
      if (!le.items.empty()) s.trace.push_back(le);
    }
    for (auto* e : {&te, &pe, &re})
      if (!e->items.empty()) {
        s.trace.push_back(*e);
        changed = true;
      }
    size_t before = s.trace.size();
    run_cheap_fixpoint(s);
    if (s.trace.size() != before) changed = true;
    if (!changed) break;
    any = true;
    if (s.empty()) break;
  }
  return any;
}

}  // namespace

ExclusionState run_fixpoint_state(const PencilUniverse& u, int target, const EngineOptions& opt,
                                  const std::vector<Lambda>& excluded, std::optional<Lambda> forced) {
  if (!opt.allow_cluster_scale && target >= 178 && target <= 273)
    throw std::invalid_argument("targets 178..273 need the cluster-scale flag");
  ExclusionState s = init_state(u, target);
  s.excluded_lambda = excluded;
  s.forced_lambda = forced;
  run_cheap_fixpoint(s);
  if (!s.empty() && opt.use_full_pencils) rule_full_pencils(s, opt);
  return s;
}

ExclusionReport report_of(const ExclusionState& s) {
  const auto& u = *s.universe;
  ExclusionReport r;
  r.target = s.target;
  r.empty = s.empty();
  for (auto& [k, l] : s.lists) r.complete = r.complete && l.complete;
  for (int t = 0; t < kNumLineTypes; ++t)
    if (s.type_alive[t]) r.line_types.emplace_back(kLineTypes[t].name);
  for (size_t p = 0; p < u.pencils.size(); ++p)
    if (s.pencil_alive[p]) r.pencils.push_back(u.pencils[p].str());
  std::set<int> cards;
  for (size_t i = 0; i < u.residuals.size(); ++i)
    if (s.residual_alive[i]) {
      r.residuals.push_back(u.residuals[i].str());
      cards.insert(u.residuals[i].card);
    }
  r.residual_cards.assign(cards.begin(), cards.end());
  r.excluded_lambda = s.excluded_lambda;
  r.trace = s.trace;
  return r;
}

ExclusionReport run_fixpoint(const PencilUniverse& u, int target, const EngineOptions& opt, const std::vector<Lambda>& excluded) {
  return report_of(run_fixpoint_state(u, target, opt, excluded));
}

LambdaExclusion lambda_exclude(const PencilUniverse& u, int target, const Lambda& lambda, const EngineOptions& opt,
                               const std::vector<Lambda>& already) {
  if (lambda[0] + lambda[1] + lambda[2] + lambda[3] != 156 || lambda[1] + 2 * lambda[2] + 3 * lambda[3] != target)
    throw std::invalid_argument("lambda_exclude: point distribution does not match PG(3,5) and the target");
  LambdaExclusion out;
  auto s = run_fixpoint_state(u, target, opt, already, lambda);
  out.report = report_of(s);
  out.complete = out.report.complete;
  out.excluded = out.report.empty && out.complete;
  return out;
}

std::vector<Lambda> preset_lambda_exclusions(int target) {
  if (target != 173) return {};
  return {Lambda{64, 33, 37, 22}, Lambda{55, 50, 30, 21}, Lambda{54, 53, 27, 22},
          Lambda{60, 40, 35, 21}, Lambda{58, 46, 29, 23}, Lambda{63, 36, 34, 23}};
}

int lift_lower_bound(const PencilUniverse& u, const PlanarSignature& sig) {
  if (sig.lambda[0] == 0) throw std::invalid_argument("lift_lower_bound: signature has no 0-point");
  int best = 0;
  for (int t = 0; t < kNumLineTypes; ++t) {
    if (!sig.types[t]) continue;
    best = std::max(best, sig.card - 5 * kLineTypes[t].sum() + 5 * u.min_card_with_type[t]);
  }
  return best;
}

ArcSkeleton skeleton_of(const Arc& spatial) {
  const auto& S = spatial.geom();
  if (S.v() != 4 || S.q() != 5) throw std::invalid_argument("skeleton_of: arc in PG(3,5) expected");
  auto plane = ProjectiveSpace::build(3, 5);
  ArcSkeleton sk;
  std::vector<int> line_type(S.num_lines());
  std::set<int> types;
  for (int l = 0; l < S.num_lines(); ++l) {
    LineTuple t{};
    const auto& pts = S.line_points(l);
    for (int k = 0; k < 6; ++k) t[k] = spatial[pts[k]];
    line_type[l] = line_type_index(t);
    if (line_type[l] < 0) throw std::invalid_argument("skeleton_of: not a strong (3 mod 5)-arc");
    types.insert(line_type[l]);
  }
  sk.line_types.assign(types.begin(), types.end());
  std::set<PencilProfile> pencils;
  std::set<PlanarSignature> sigs;
  std::set<std::vector<int>> canon;
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    Arc r = restrict_to_hyperplane(spatial, h, plane);
    sigs.insert(planar_signature(r));
    canon.insert(canonical_form(r).form.mult());
    auto lt = line_type_per_line(r);
    for (int p = 0; p < plane->num_points(); ++p) {
      PencilProfile pen;
      pen.center = r[p];
      int i = 0;
      for (int l : plane->lines_through(p)) pen.types[i++] = lt[l];
      std::sort(pen.types.begin(), pen.types.end());
      pencils.insert(pen);
    }
  }
  sk.pencils.assign(pencils.begin(), pencils.end());
  sk.planes.assign(sigs.begin(), sigs.end());
  sk.plane_canonical.assign(canon.begin(), canon.end());
  std::set<FullPencilProfile> fulls;
  for (int p = 0; p < S.num_points(); ++p) {
    FullPencilProfile f;
    f.center = spatial[p];
    for (int l : S.lines_through(p)) ++f.counts[line_type[l]];
    fulls.insert(f);
  }
  sk.fulls.assign(fulls.begin(), fulls.end());
  return sk;
}

LineStatistics line_statistics(const Arc& spatial) {
  const auto& S = spatial.geom();
  if (S.v() != 4 || S.q() != 5) throw std::invalid_argument("line_statistics: arc in PG(3,5) expected");
  auto hyp = spatial.hyperplane_multiplicities();
  LineStatistics st;
  for (int l = 0; l < S.num_lines(); ++l) {
    LineTuple t{};
    const auto& pts = S.line_points(l);
    for (int k = 0; k < 6; ++k) t[k] = spatial[pts[k]];
    int ty = line_type_index(t);
    if (ty < 0) throw std::invalid_argument("line_statistics: not a strong (3 mod 5)-arc");
    ++st.count[ty];
    std::vector<int> hs;
    for (int h : S.hyperplanes_through_line(l)) hs.push_back(hyp[h]);
    std::sort(hs.begin(), hs.end());
    ++st.hyperplanes[ty][hs];
  }
  return st;
}

std::string LineStatistics::hyperplane_string(int type) const {
  std::ostringstream os;
  bool first_alt = true;
  for (const auto& [hs, n] : hyperplanes[type]) {
    if (!first_alt) os << " | ";
    first_alt = false;
    std::map<int, int> pw;
    for (int x : hs) ++pw[x];
    bool first = true;
    for (auto [x, e] : pw) {
      os << (first ? "" : " ") << x << '^' << e;
      first = false;
    }
  }
  return os.str();
}

std::string json_certificate(const ExclusionReport& r) {
  using nlohmann::json;
  json j;
  j["target"] = r.target;
  j["result"] = r.empty ? "EMPTY" : (r.complete ? "SURVIVORS" : "UNDECIDED");
  j["complete"] = r.complete;
  json tr = json::array();
  for (auto& e : r.trace) tr.push_back({{"rule", e.rule}, {"kind", e.kind}, {"items", e.items}, {"justification", e.datum}});
  j["trace"] = tr;
  j["survivors"] = {{"line_types", r.line_types}, {"pencils", r.pencils}, {"residuals", r.residuals}, {"residual_cards", r.residual_cards}};
  json ex = json::array();
  for (auto& l : r.excluded_lambda) ex.push_back(l);
  j["excluded_lambda"] = ex;
  return j.dump(2);
}

}  // namespace pgarcs

#include "pgarcs/planar.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "pgarcs/isomorphism.hpp"

namespace pgarcs {

namespace {

using Mask = uint16_t;

int lo_bit(Mask m) { return std::countr_zero(m); }
int hi_bit(Mask m) { return 15 - std::countl_zero(m); }
bool single(Mask m) { return std::has_single_bit(m); }
Mask range_mask(int lo, int hi) {
  if (hi < lo || hi < 0) return 0;
  lo = std::max(lo, 0);
  hi = std::min(hi, 15);
  return static_cast<Mask>(((1u << (hi + 1)) - 1) & ~((1u << lo) - 1));
}

// Depth-first search over point multiplicities of PG(2,q). The first line (x_0 = 0)
// carries a fixed pattern whose sorted key is maximal among all lines, and the point
// (1,0,0) carries the largest multiplicity off that line.
class StrongPlanarSearch {
 public:
  StrongPlanarSearch(const SpacePtr& plane, int t, int card, long long max_nodes)
      : S_(plane), q_(plane->q()), t_(t), n_(card), m_((card - t) / plane->q()), max_nodes_(max_nodes) {
    k_ = q_ + 1;
    npts_ = S_->num_points();
    anchor_ = k_;
  }

  void run(const std::vector<int>& tau, const std::vector<int>& pattern, std::map<std::vector<int>, Arc>& out) {
    tau_ = tau;
    std::vector<Mask> dom(npts_, range_mask(0, t_));
    for (int i = 0; i < k_; ++i) dom[i] = static_cast<Mask>(1u << pattern[i]);
    out_ = &out;
    if (propagate(dom)) dfs(dom);
  }

  long long nodes() const { return nodes_; }
  long long leaves() const { return leaves_; }
  bool exhausted() const { return nodes_ > max_nodes_; }

 private:
  // True if the sorted key of (assigned values + extra + zeros) exceeds tau.
  bool key_exceeds(const std::array<int, 16>& cnt, int extra) const {
    int pos = 0;
    for (int v = t_; v >= 0 && pos < k_; --v) {
      int c = cnt[v] + (v == extra ? 1 : 0);
      if (v == 0) c = k_ - pos;
      for (int j = 0; j < c && pos < k_; ++j, ++pos) {
        if (v > tau_[pos]) return true;
        if (v < tau_[pos]) return false;
      }
    }
    return false;
  }

  bool propagate(std::vector<Mask>& dom) {
    const int nl = S_->num_lines();
    std::vector<int> lbB(nl), ubB(nl);
    for (;;) {
      bool changed = false;
      for (int l = 0; l < nl; ++l) {
        const auto& pts = S_->line_points(l);
        int s = 0, lo = 0, hi = 0, u = 0, last = -1;
        std::array<int, 16> cnt{};
        Mask open = 0;
        for (int p : pts) {
          if (single(dom[p])) {
            int x = lo_bit(dom[p]);
            s += x;
            ++cnt[x];
          } else {
            ++u;
            last = p;
            lo += lo_bit(dom[p]);
            hi += hi_bit(dom[p]);
            open |= dom[p];
          }
        }
        if (u == 0) {
          if ((s - t_) % q_ != 0) return false;
        } else if (u == 1) {
          int val = ((t_ - s) % q_ + q_) % q_;
          if (val > t_ || !((dom[last] >> val) & 1)) return false;
          dom[last] = static_cast<Mask>(1u << val);
          changed = true;
          s += val;
          lo = hi = 0;
        } else {
          for (int x = hi_bit(open); x >= 1; --x) {
            if (!((open >> x) & 1) || !key_exceeds(cnt, x)) continue;
            for (int p : pts)
              if (!single(dom[p]) && ((dom[p] >> x) & 1)) {
                dom[p] = static_cast<Mask>(dom[p] & ~(1u << x));
                if (!dom[p]) return false;
                changed = true;
              }
          }
        }
        if (key_exceeds(cnt, -1)) return false;
        int lk = s + lo, uk = s + hi;
        lbB[l] = lk <= t_ ? 0 : (lk - t_ + q_ - 1) / q_;
        ubB[l] = uk < t_ ? -1 : (uk - t_) / q_;
        if (ubB[l] < lbB[l]) return false;
      }
      // Each point P satisfies sum over lines through P of (K(L) - t)/q = m - t + K(P).
      for (int p = 0; p < npts_; ++p) {
        int sl = 0, su = 0;
        for (int l : S_->lines_through(p)) {
          sl += lbB[l];
          su += ubB[l];
        }
        Mask nd = dom[p] & range_mask(sl - (m_ - t_), su - (m_ - t_));
        if (!nd) return false;
        if (nd != dom[p]) {
          dom[p] = nd;
          changed = true;
        }
      }
      int A = 0, B = 0;
      for (int p = 0; p < npts_; ++p) {
        A += lo_bit(dom[p]);
        B += hi_bit(dom[p]);
      }
      if (n_ < A || n_ > B) return false;
      for (int p = 0; p < npts_; ++p) {
        Mask nd = dom[p] & range_mask(n_ - (B - hi_bit(dom[p])), n_ - (A - lo_bit(dom[p])));
        if (!nd) return false;
        if (nd != dom[p]) {
          dom[p] = nd;
          changed = true;
        }
      }
      int amax = hi_bit(dom[anchor_]), amin = 0;
      for (int p = k_; p < npts_; ++p) {
        Mask nd = dom[p] & range_mask(0, amax);
        if (!nd) return false;
        if (nd != dom[p]) {
          dom[p] = nd;
          changed = true;
        }
        amin = std::max(amin, lo_bit(dom[p]));
      }
      Mask na = dom[anchor_] & range_mask(amin, t_);
      if (!na) return false;
      if (na != dom[anchor_]) {
        dom[anchor_] = na;
        changed = true;
      }
      if (!changed) return true;
    }
  }

  void dfs(std::vector<Mask>& dom) {
    if (++nodes_ > max_nodes_) return;
    int best = -1, bestc = 99;
    for (int p = 0; p < npts_; ++p) {
      int c = std::popcount(dom[p]);
      if (c > 1 && c < bestc) {
        bestc = c;
        best = p;
      }
    }
    if (best < 0) {
      ++leaves_;
      std::vector<int> mult(npts_);
      for (int p = 0; p < npts_; ++p) mult[p] = lo_bit(dom[p]);
      Arc a(S_, mult);
      auto c = canonical_form(a);
      if (!c.decided) throw std::runtime_error("canonical form undecided in planar classification");
      out_->emplace(c.form.mult(), c.form);
      return;
    }
    for (int x = hi_bit(dom[best]); x >= 0; --x) {
      if (!((dom[best] >> x) & 1)) continue;
      std::vector<Mask> child(dom);
      child[best] = static_cast<Mask>(1u << x);
      if (propagate(child)) dfs(child);
      if (exhausted()) return;
    }
  }

  SpacePtr S_;
  int q_, t_, n_, m_, k_ = 0, npts_ = 0, anchor_ = 0;
  long long max_nodes_;
  long long nodes_ = 0, leaves_ = 0;
  std::vector<int> tau_;
  std::map<std::vector<int>, Arc>* out_ = nullptr;
};

// Non-increasing tuples of length k over 0..t with sum congruent to t mod q.
std::vector<std::vector<int>> line_keys(int q, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int maxv, int sum) {
    if (static_cast<int>(cur.size()) == q + 1) {
      if ((sum - t) % q == 0) out.push_back(cur);
      return;
    }
    for (int v = maxv; v >= 0; --v) {
      cur.push_back(v);
      rec(v, sum + v);
      cur.pop_back();
    }
  };
  rec(t, 0);
  return out;
}

// Orbit representatives (lexicographic maximum) of arrangements of tau on the line x_0 = 0
// under the projective group of that line.
std::vector<std::vector<int>> line_patterns(const ProjectiveSpace& S, const std::vector<int>& tau) {
  const int q = S.q(), k = q + 1;
  const auto& f = S.field();
  std::vector<std::vector<int>> perms;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) continue;
          std::vector<int> perm(k);
          for (int i = 0; i < k; ++i) {
            const Vec& x = S.point(i);
            Vec y{0, f.add(f.mul(a, x[1]), f.mul(b, x[2])), f.add(f.mul(c, x[1]), f.mul(d, x[2]))};
            perm[i] = S.index_of(y);
          }
          perms.push_back(perm);
        }
  std::vector<int> arr(tau.rbegin(), tau.rend());
  std::set<std::vector<int>> reps;
  do {
    std::vector<int> best = arr;
    for (auto& g : perms) {
      std::vector<int> img(k);
      for (int i = 0; i < k; ++i) img[i] = arr[g[i]];
      best = std::max(best, img);
    }
    reps.insert(best);
  } while (std::next_permutation(arr.begin(), arr.end()));
  return {reps.begin(), reps.end()};
}

}  // namespace

PlanarClassification classify_strong_planar(int q, int t, int card, const PlanarClassifyOptions& opt) {
  if (t < 0 || t >= q) throw std::invalid_argument("classify_strong_planar: need 0 <= t < q");
  if (((card - t) % q + q) % q != 0) throw std::invalid_argument("classify_strong_planar: cardinality must be congruent to t mod q");
  auto S = ProjectiveSpace::build(3, q);
  PlanarClassification res;
  res.q = q;
  res.t = t;
  res.card = card;
  std::map<std::vector<int>, Arc> found;
  long long budget = opt.max_nodes;
  if (card >= 0 && card <= t * S->num_points()) {
    for (const auto& tau : line_keys(q, t)) {
      for (const auto& pat : line_patterns(*S, tau)) {
        StrongPlanarSearch search(S, t, card, budget);
        search.run(tau, pat, found);
        res.nodes += search.nodes();
        res.leaves += search.leaves();
        budget -= search.nodes();
        if (search.exhausted() || budget <= 0) return res;
      }
    }
  }
  for (auto& [k, a] : found) res.classes.push_back(a);
  res.complete = true;
  return res;
}

PlanarSignature planar_signature(const Arc& a) {
  PlanarSignature s;
  s.card = a.cardinality();
  s.types = line_type_census(a);
  for (int p = 0; p < a.geom().num_points(); ++p) {
    if (a[p] > 3) throw std::invalid_argument("planar_signature: point multiplicity above 3");
    ++s.lambda[a[p]];
  }
  return s;
}

std::vector<PlanarSignature> signature_census(const std::vector<Arc>& reps) {
  std::map<PlanarSignature, int> rows;
  for (const auto& a : reps) ++rows[planar_signature(a)];
  std::vector<PlanarSignature> out;
  for (const auto& [key, c] : rows) {
    PlanarSignature s = key;
    s.classes = c;
    out.push_back(s);
  }
  return out;
}

std::vector<PlanarSignature> read_signature_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<PlanarSignature> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    PlanarSignature s;
    ss >> s.card;
    for (auto& x : s.types) ss >> x;
    for (auto& x : s.lambda) ss >> x;
    ss >> s.classes;
    if (!ss) throw std::runtime_error("bad signature row in " + path + ": " + line);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void write_signature_table(const std::vector<PlanarSignature>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "card";
  for (auto& lt : kLineTypes) out << '\t' << lt.name;
  out << "\tl0\tl1\tl2\tl3\tclasses\n";
  for (auto& s : rows) {
    out << s.card;
    for (int x : s.types) out << '\t' << x;
    for (int x : s.lambda) out << '\t' << x;
    out << '\t' << s.classes << '\n';
  }
}

int ResidualLibrary::total() const {
  int n = 0;
  for (auto& [c, v] : by_card) n += static_cast<int>(v.size());
  return n;
}

std::vector<PlanarSignature> ResidualLibrary::census() const {
  std::vector<PlanarSignature> all;
  for (auto& [c, v] : by_card) {
    auto rows = signature_census(v);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

void ResidualLibrary::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream idx(fs::path(dir) / "index.tsv", std::ios::binary);
  idx << "card\tclass";
  for (auto& lt : kLineTypes) idx << '\t' << lt.name;
  idx << "\tl0\tl1\tl2\tl3\n";
  for (auto& [card, reps] : by_card) {
    auto sub = fs::path(dir) / ("card" + std::to_string(card));
    fs::create_directories(sub);
    for (size_t k = 0; k < reps.size(); ++k) {
      write_arc_file(reps[k], (sub / ("arc" + std::to_string(k + 1) + ".arc")).string());
      auto s = planar_signature(reps[k]);
      idx << card << '\t' << k + 1;
      for (int x : s.types) idx << '\t' << x;
      for (int x : s.lambda) idx << '\t' << x;
      idx << '\n';
    }
  }
}

ResidualLibrary ResidualLibrary::read(const std::string& dir) {
  namespace fs = std::filesystem;
  ResidualLibrary lib;
  lib.plane = ProjectiveSpace::build(3, 5);
  std::ifstream idx(fs::path(dir) / "index.tsv");
  if (!idx) throw std::runtime_error("residual library index missing in " + dir);
  std::string line;
  std::getline(idx, line);
  while (std::getline(idx, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int card = 0, k = 0;
    ss >> card >> k;
    PlanarSignature want;
    want.card = card;
    for (auto& x : want.types) ss >> x;
    for (auto& x : want.lambda) ss >> x;
    Arc a = read_arc_file((fs::path(dir) / ("card" + std::to_string(card)) / ("arc" + std::to_string(k) + ".arc")).string(),
                          lib.plane);
    auto got = planar_signature(a);
    if (got.key() != want.key()) throw std::runtime_error("residual library index disagrees with arc file");
    lib.by_card[card].push_back(a);
  }
  for (int card = 18; card <= 93; card += 5) lib.by_card.try_emplace(card);
  return lib;
}

ResidualLibrary build_residual_library(const PlanarClassifyOptions& opt) {
  ResidualLibrary lib;
  lib.plane = ProjectiveSpace::build(3, 5);
  for (int card = 18; card <= 93; card += 5) {
    auto r = classify_strong_planar(5, 3, card, opt);
    if (!r.complete) throw std::runtime_error("planar classification hit its node cap at cardinality " + std::to_string(card));
    std::vector<Arc> reps;
    for (auto& a : r.classes) reps.emplace_back(lib.plane, a.mult());
    lib.by_card[card] = std::move(reps);
  }
  return lib;
}

Arc minihyper_transform(const Arc& planar, int t) {
  const auto& S = planar.geom();
  if (S.v() != 3) throw std::invalid_argument("minihyper_transform: planar arc expected");
  const int q = S.q();
  Arc b(planar.space());
  for (int h = 0; h < S.num_hyperplanes(); ++h) {
    int k = planar.hyperplane_multiplicity(h) - t;
    if (k < 0 || k % q != 0) throw std::invalid_argument("minihyper_transform: arc is not a (t mod q)-arc");
    b.set(S.dual_point_of_hyperplane(h), k / q);
  }
  return b;
}

Arc inverse_minihyper_transform(const Arc& minihyper, int t) {
  const auto& S = minihyper.geom();
  const int q = S.q();
  const int size = minihyper.cardinality() + t * q;
  if (size % (q + 1) != 0) throw std::invalid_argument("inverse_minihyper_transform: cardinality is not (m-t)q+m");
  const int m = size / (q + 1);
  Arc k(minihyper.space());
  for (int p = 0; p < S.num_points(); ++p) {
    int x = minihyper.hyperplane_multiplicity(S.dual_hyperplane_of_point(p)) - (m - t);
    if (x < 0) throw std::invalid_argument("inverse_minihyper_transform: line below m - t");
    k.set(p, x);
  }
  return k;
}

std::vector<TwoModQSpectrum> two_mod_q_spectra(int q) {
  if (q < 2) throw std::invalid_argument("two_mod_q_spectra: q >= 2");
  const int N = q * q + q + 1;
  auto c2 = [](long long x) { return x * (x - 1) / 2; };
  // The seven general cases, in order, as functions of q (case 5 is parametric).
  auto general = [&](const TwoModQSpectrum& s) -> int {
    auto eq = [&](int n, int a2, int aq2, int a2q2, int l0, int l1, int l2) {
      return s.n == n && s.a2 == a2 && s.aq2 == aq2 && s.a2q2 == a2q2 && s.lambda0 == l0 && s.lambda1 == l1 && s.lambda2 == l2;
    };
    if (eq(2 * q + 2, q * q + q - 1, 2, 0, q * (q - 1), 2 * q, 1)) return 1;
    if (eq(2 * q + 2, q * (q + 1), 0, 1, q * q, 0, q + 1)) return 2;
    if (q % 2 == 1 || q * (q - 1) % 2 == 0) {
      if (eq(q * q + q + 2, q, q * q + 1, 0, q * (q - 1) / 2, 2 * q, 1 + q * (q - 1) / 2)) return 3;
      if (eq(q * q + q + 2, q + 1, q * q - 1, 1, q * (q + 1) / 2, 0, 1 + q * (q + 1) / 2)) return 4;
    }
    for (int i = 0; i <= q / 2; ++i)
      if (eq(q * q + 2 * q + 2, i, q * q + q - 2 * i, i + 1, i * q, q * q - 2 * i * q, 1 + q * (i + 1))) return 5;
    if (eq((q + 1) * (q + 2), 0, q * q - 1, q + 2, q * (q - 1) / 2, 0, (q + 1) * (q + 2) / 2)) return 6;
    if (eq(2 * N, 0, 0, N, 0, 0, N)) return 7;
    return 0;
  };
  std::vector<TwoModQSpectrum> out;
  for (int n = 2; n <= 2 * N; n += q) {
    for (int x = 0; x <= N; ++x)
      for (int y = 0; x + y <= N; ++y) {
        int a2 = N - x - y;
        if (2LL * a2 + static_cast<long long>(q + 2) * y + static_cast<long long>(2 * q + 2) * x != static_cast<long long>(n) * (q + 1))
          continue;
        long long lhs = a2 + c2(q + 2) * y + c2(2 * q + 2) * x - c2(n);
        if (lhs < 0 || lhs % q != 0) continue;
        long long l2 = lhs / q, l1 = n - 2 * l2, l0 = N - l1 - l2;
        if (l1 < 0 || l0 < 0) continue;
        TwoModQSpectrum s{n, a2, y, x, static_cast<int>(l0), static_cast<int>(l1), static_cast<int>(l2), 0};
        s.case_label = general(s);
        out.push_back(s);
      }
  }
  return out;
}

std::vector<LabelledClass> two_mod_q_models(int q) {
  if (q % 2 == 0) throw std::invalid_argument("two_mod_q_models: q must be odd");
  auto S = ProjectiveSpace::build(3, q);
  auto line = ProjectiveSpace::build(2, q);
  std::vector<LabelledClass> out;
  const auto& L0 = S->line_points(0);
  const auto& L1 = S->line_points(1);
  out.push_back({"I-1", characteristic(S, L0, 2)});
  out.push_back({"I-2", add(characteristic(S, L0), characteristic(S, L1))});
  for (int i = 1; i <= (q + 1) / 2; ++i) {
    std::vector<int> base(q + 1, 0);
    for (int p = 0; p < q + 1; ++p) base[p] = p < i ? 2 : (p < i + q - 2 * i + 2 ? 1 : 0);
    out.push_back({"II-" + std::to_string(i), lift(Arc(line, base), S, -1, 2)});
  }
  out.push_back({"III", Arc(S, std::vector<int>(S->num_points(), 2))});
  // Oval x_1^2 = x_0 x_2, one tangent, and the internal points doubled.
  const auto& f = S->field();
  std::vector<int> oval;
  for (int p = 0; p < S->num_points(); ++p) {
    const Vec& x = S->point(p);
    if (f.mul(x[1], x[1]) == f.mul(x[0], x[2])) oval.push_back(p);
  }
  std::vector<uint8_t> on_oval(S->num_points(), 0), on_tangent(S->num_points(), 0);
  for (int p : oval) on_oval[p] = 1;
  int tangent = -1;
  for (int l = 0; l < S->num_lines(); ++l) {
    int c = 0;
    for (int p : S->line_points(l)) c += on_oval[p];
    if (c != 1) continue;
    if (tangent < 0) tangent = l;
    for (int p : S->line_points(l)) on_tangent[p] = 1;
  }
  Arc iv(S);
  for (int p : oval) iv.set(p, 1);
  for (int p : S->line_points(tangent)) iv.set(p, iv[p] + 1);
  for (int p = 0; p < S->num_points(); ++p)
    if (!on_oval[p] && !on_tangent[p]) iv.set(p, 2);
  out.push_back({"IV", iv});
  return out;
}

std::vector<LabelledClass> classify_strong_two_mod_q(int q, const PlanarClassifyOptions& opt) {
  auto models = two_mod_q_models(q);
  std::map<std::vector<int>, std::string> label_of;
  for (auto& m : models) {
    auto c = canonical_form(m.arc);
    label_of[c.form.mult()] = m.label;
  }
  std::vector<LabelledClass> out;
  const int N = q * q + q + 1;
  for (int n = 2; n <= 2 * N; n += q) {
    auto r = classify_strong_planar(q, 2, n, opt);
    if (!r.complete) throw std::runtime_error("classify_strong_two_mod_q: node cap reached");
    for (auto& a : r.classes) {
      auto it = label_of.find(a.mult());
      out.push_back({it == label_of.end() ? std::string() : it->second, a});
    }
  }
  return out;
}

}  // namespace pgarcs

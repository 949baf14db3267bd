#include "pgarcs/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace pgarcs {

namespace {

// Vector arithmetic on base-q codes of F_q^v through lookup tables.
struct CodeTables {
  int q = 0, v = 0, Q = 0;
  std::vector<int> add;       // Q * Q
  std::vector<int> smul;      // q * Q
  std::vector<int> point_of;  // code -> point index, -1 for the zero vector
  std::vector<int> unit;      // unit[k] = code of e_k
  std::vector<int> point_code;

  int sum(int a, int b) const { return add[static_cast<size_t>(a) * Q + b]; }
  int scaled(int x, int a) const { return smul[static_cast<size_t>(x) * Q + a]; }
};

const CodeTables& code_tables(const ProjectiveSpace& S) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<CodeTables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{S.v(), S.q()}];
  if (slot) return *slot;
  auto t = std::make_unique<CodeTables>();
  const int q = S.q(), v = S.v();
  t->q = q;
  t->v = v;
  t->Q = 1;
  for (int i = 0; i < v; ++i) t->Q *= q;
  const int Q = t->Q;
  std::vector<Vec> dec(Q, Vec(v));
  for (int c = 0; c < Q; ++c) {
    int x = c;
    for (int i = v - 1; i >= 0; --i) {
      dec[c][i] = x % q;
      x /= q;
    }
  }
  auto enc = [&](const Vec& x) {
    int c = 0;
    for (int i = 0; i < v; ++i) c = c * q + x[i];
    return c;
  };
  t->add.resize(static_cast<size_t>(Q) * Q);
  for (int a = 0; a < Q; ++a)
    for (int b = 0; b < Q; ++b) {
      Vec s(v);
      for (int i = 0; i < v; ++i) s[i] = (dec[a][i] + dec[b][i]) % q;
      t->add[static_cast<size_t>(a) * Q + b] = enc(s);
    }
  t->smul.resize(static_cast<size_t>(q) * Q);
  for (int x = 0; x < q; ++x)
    for (int a = 0; a < Q; ++a) {
      Vec s(v);
      for (int i = 0; i < v; ++i) s[i] = dec[a][i] * x % q;
      t->smul[static_cast<size_t>(x) * Q + a] = enc(s);
    }
  t->point_of.assign(Q, -1);
  for (int c = 1; c < Q; ++c) t->point_of[c] = S.index_of_code(c);
  for (int k = 0; k < v; ++k) {
    Vec e(v, 0);
    e[k] = 1;
    t->unit.push_back(enc(e));
  }
  for (int p = 0; p < S.num_points(); ++p) t->point_code.push_back(enc(S.point(p)));
  slot = std::move(t);
  return *slot;
}

int ipow(int q, int e) {
  int r = 1;
  while (e-- > 0) r *= q;
  return r;
}

// First point index of the block of points whose leading coordinate sits at position k.
int block_start(int v, int q, int k) { return (ipow(q, v - 1 - k) - 1) / (q - 1); }

// Span of columns k+1..v-1 in the point order of block k (x_{k+1} most significant).
void offsets(const CodeTables& T, const int* cols, int k, std::vector<int>& out) {
  out.assign(1, 0);
  std::vector<int> next;
  for (int i = T.v - 1; i > k; --i) {
    next.clear();
    for (int x = 0; x < T.q; ++x) {
      int cx = T.scaled(x, cols[i]);
      for (int o : out) next.push_back(T.sum(cx, o));
    }
    out.swap(next);
  }
}

Mat matrix_from_codes(const CodeTables& T, const int* cols) {
  Mat m(T.v, Vec(T.v, 0));
  for (int k = 0; k < T.v; ++k) {
    int c = cols[k];
    for (int i = T.v - 1; i >= 0; --i) {
      m[i][k] = c % T.q;
      c /= T.q;
    }
  }
  return m;
}

// Depth-first search for g with image_colors[g(p)] == domain_colors[p] for all p,
// with the columns above `level` already fixed in cols.
class MapSearch {
 public:
  MapSearch(const ProjectiveSpace& S, const std::vector<int>& dom, const std::vector<int>& img, long long max_nodes)
      : S_(S), T_(code_tables(S)), dom_(dom), img_(img), max_nodes_(max_nodes) {
    int ncol = 0;
    for (int c : img) ncol = std::max(ncol, c + 1);
    for (int c : dom) ncol = std::max(ncol, c + 1);
    by_color_.assign(ncol, {});
    for (int c = 1; c < T_.Q; ++c) by_color_[img_[T_.point_of[c]]].push_back(c);
    offs_.resize(T_.v);
  }

  long long nodes() const { return nodes_; }
  bool exhausted() const { return nodes_ > max_nodes_; }

  // Candidate column codes for level k, filtered by the colour of the block's first point.
  std::vector<int> candidates(int k) const {
    const int first = block_start(T_.v, T_.q, k);
    std::vector<int> out;
    for (int c : by_color_[dom_[first]])
      if (k < T_.v - 1 || c == T_.point_code[T_.point_of[c]]) out.push_back(c);
    return out;
  }

  bool block_ok(int k, int* cols) {
    offsets(T_, cols, k, offs_[k]);
    const int start = block_start(T_.v, T_.q, k);
    const auto& o = offs_[k];
    for (size_t j = 0; j < o.size(); ++j) {
      ++nodes_;
      int p = T_.point_of[T_.sum(cols[k], o[j])];
      if (p < 0 || img_[p] != dom_[start + static_cast<int>(j)]) return false;
    }
    return true;
  }

  bool complete(int k, int* cols) {
    if (k < 0) return true;
    if (exhausted()) return false;
    for (int c : candidates(k)) {
      cols[k] = c;
      if (block_ok(k, cols) && complete(k - 1, cols)) return true;
      if (exhausted()) return false;
    }
    return false;
  }

 private:
  const ProjectiveSpace& S_;
  const CodeTables& T_;
  const std::vector<int>& dom_;
  const std::vector<int>& img_;
  long long max_nodes_;
  long long nodes_ = 0;
  std::vector<std::vector<int>> by_color_;
  std::vector<std::vector<int>> offs_;
};

}  // namespace

std::vector<std::vector<int>> refine_colors(const std::vector<const Arc*>& arcs) {
  std::vector<std::vector<int>> col;
  if (arcs.empty()) return col;
  const auto& S = arcs[0]->geom();
  for (auto* a : arcs) {
    if (!a->same_space(*arcs[0])) throw std::invalid_argument("refine_colors: arcs live in different spaces");
    col.push_back(a->mult());
  }
  auto count_classes = [&] {
    std::vector<int> all;
    for (auto& c : col) all.insert(all.end(), c.begin(), c.end());
    std::sort(all.begin(), all.end());
    return std::unique(all.begin(), all.end()) - all.begin();
  };
  auto classes = count_classes();
  for (;;) {
    std::map<std::vector<int>, int> line_key, hyper_key, point_key;
    std::vector<std::vector<int>> lc(col.size()), hc(col.size());
    std::vector<std::vector<std::vector<int>>> pk(col.size());
    for (size_t a = 0; a < col.size(); ++a) {
      lc[a].resize(S.num_lines());
      for (int l = 0; l < S.num_lines(); ++l) {
        std::vector<int> k;
        for (int p : S.line_points(l)) k.push_back(col[a][p]);
        std::sort(k.begin(), k.end());
        lc[a][l] = line_key.emplace(k, static_cast<int>(line_key.size())).first->second;
      }
      hc[a].resize(S.num_hyperplanes());
      for (int h = 0; h < S.num_hyperplanes(); ++h) {
        std::vector<int> k;
        for (int p : S.hyperplane_points(h)) k.push_back(col[a][p]);
        std::sort(k.begin(), k.end());
        hc[a][h] = hyper_key.emplace(k, static_cast<int>(hyper_key.size())).first->second;
      }
    }
    // Line and hyperplane ids depend on first-seen order, so rank keys by value before use.
    auto ranks = [](const std::map<std::vector<int>, int>& m) {
      std::vector<int> r(m.size());
      int i = 0;
      for (auto& [k, id] : m) r[id] = i++;
      return r;
    };
    auto lr = ranks(line_key), hr = ranks(hyper_key);
    for (size_t a = 0; a < col.size(); ++a) {
      pk[a].resize(S.num_points());
      for (int p = 0; p < S.num_points(); ++p) {
        std::vector<int> k{col[a][p], -1};
        std::vector<int> ls, hs;
        for (int l : S.lines_through(p)) ls.push_back(lr[lc[a][l]]);
        for (int h : S.hyperplanes_through(p)) hs.push_back(hr[hc[a][h]]);
        std::sort(ls.begin(), ls.end());
        std::sort(hs.begin(), hs.end());
        k.insert(k.end(), ls.begin(), ls.end());
        k.push_back(-1);
        k.insert(k.end(), hs.begin(), hs.end());
        point_key.emplace(k, 0);
        pk[a][p] = std::move(k);
      }
    }
    int i = 0;
    for (auto& [k, id] : point_key) id = i++;
    for (size_t a = 0; a < col.size(); ++a)
      for (int p = 0; p < S.num_points(); ++p) col[a][p] = point_key[pk[a][p]];
    auto now = count_classes();
    if (now == classes) break;
    classes = now;
  }
  return col;
}

CanonicalResult canonical_form(const Arc& a, const SearchBudget& budget) {
  const auto& S = a.geom();
  const auto& T = code_tables(S);
  const int v = S.v();
  CanonicalResult res;
  std::vector<int> frontier(v, 0), next;  // flattened column codes, one block of v per partial map
  std::vector<int> form(S.num_points(), 0), best, tmp, offs;
  for (int k = v - 1; k >= 0; --k) {
    next.clear();
    best.clear();
    bool have = false;
    const int start = block_start(v, T.q, k);
    std::vector<int> cands;
    if (k == v - 1) cands = T.point_code;
    else
      for (int c = 1; c < T.Q; ++c) cands.push_back(c);
    const size_t nparts = frontier.size() / v;
    for (size_t pi = 0; pi < nparts; ++pi) {
      const int* cols = &frontier[pi * v];
      offsets(T, cols, k, offs);
      tmp.resize(offs.size());
      for (int c : cands) {
        int cmp = have ? 0 : 1;
        bool valid = true;
        for (size_t j = 0; j < offs.size(); ++j) {
          ++res.nodes;
          int p = T.point_of[T.sum(c, offs[j])];
          if (p < 0) { valid = false; break; }
          int val = a[p];
          if (cmp == 0) {
            if (val < best[j]) { valid = false; break; }
            if (val > best[j]) cmp = 1;
          }
          tmp[j] = val;
        }
        if (!valid) continue;
        if (cmp == 1) {
          best = tmp;
          have = true;
          next.clear();
        }
        size_t base = next.size();
        next.insert(next.end(), cols, cols + v);
        next[base + k] = c;
      }
      if (res.nodes > budget.max_nodes || next.size() / v > static_cast<size_t>(budget.max_frontier)) return res;
    }
    std::copy(best.begin(), best.end(), form.begin() + start);
    frontier.swap(next);
  }
  res.decided = true;
  res.optimal_maps = static_cast<long long>(frontier.size() / v);
  res.transform = matrix_from_codes(T, frontier.data());
  res.form = Arc(a.space(), form);
  return res;
}

AutomorphismResult automorphism_order(const Arc& a, const SearchBudget& budget) {
  const auto& S = a.geom();
  const auto& T = code_tables(S);
  const int v = S.v();
  auto colors = refine_colors({&a})[0];
  MapSearch search(S, colors, colors, budget.max_nodes);
  AutomorphismResult res;
  res.order = 1;
  std::vector<int> cols(T.unit);
  // Orbit-stabilizer along the chain of column stabilizers: the number of admissible
  // images of column k, with the higher columns fixed, is the index of consecutive
  // stabilizers.
  for (int k = v - 1; k >= 0; --k) {
    long long count = 0;
    for (int c : search.candidates(k)) {
      std::vector<int> trial(cols);
      trial[k] = c;
      if (search.block_ok(k, trial.data()) && search.complete(k - 1, trial.data())) ++count;
      if (search.exhausted()) {
        res.nodes = search.nodes();
        return res;
      }
    }
    res.orbit_lengths.push_back(count);
    res.order *= count;
    cols[k] = T.unit[k];
  }
  res.nodes = search.nodes();
  res.linear_order = res.order * (S.q() - 1);
  res.decided = true;
  return res;
}

IsomorphismResult are_isomorphic(const Arc& a, const Arc& b, const SearchBudget& budget) {
  IsomorphismResult res;
  if (!a.same_space(b)) throw std::invalid_argument("are_isomorphic: arcs live in different spaces");
  if (a.cardinality() != b.cardinality() || lambda_distribution(a) != lambda_distribution(b) ||
      spectrum(a) != spectrum(b)) {
    res.verdict = Verdict::No;
    return res;
  }
  auto cols = refine_colors({&a, &b});
  auto ca = cols[0], cb = cols[1];
  auto sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) {
    res.verdict = Verdict::No;
    return res;
  }
  const auto& T = code_tables(a.geom());
  MapSearch search(a.geom(), ca, cb, budget.max_nodes);
  std::vector<int> g(T.unit);
  bool found = search.complete(a.geom().v() - 1, g.data());
  res.nodes = search.nodes();
  if (search.exhausted()) return res;
  if (found) {
    Mat m = matrix_from_codes(T, g.data());
    if (!(pullback(b, m) == a)) throw std::logic_error("are_isomorphic: colour-consistent map is not an isomorphism");
    res.map = m;
    res.verdict = Verdict::Yes;
  } else {
    res.verdict = Verdict::No;
  }
  return res;
}

Arc pullback(const Arc& a, const Mat& g) {
  auto perm = a.geom().collineation_permutation(g);
  Arc r(a.space());
  for (int p = 0; p < a.geom().num_points(); ++p) r.set(p, a[perm[p]]);
  return r;
}

Arc push_forward(const Arc& a, const Mat& g) {
  auto perm = a.geom().collineation_permutation(g);
  Arc r(a.space());
  for (int p = 0; p < a.geom().num_points(); ++p) r.set(perm[p], a[p]);
  return r;
}

Mat random_invertible_matrix(int v, const PrimeModulus& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  for (;;) {
    Mat m(v, Vec(v));
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    if (mat_det(m, f) != 0) return m;
  }
}

}  // namespace pgarcs

#include "pgarcs/arc.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace pgarcs {

Arc::Arc(SpacePtr space) : space_(std::move(space)), mult_(space_->num_points(), 0) {}

Arc::Arc(SpacePtr space, std::vector<int> mult) : space_(std::move(space)), mult_(std::move(mult)) {
  if (static_cast<int>(mult_.size()) != space_->num_points())
    throw std::invalid_argument("multiplicity vector length differs from number of points");
  for (int m : mult_)
    if (m < 0) throw std::invalid_argument("negative multiplicity");
  n_ = std::accumulate(mult_.begin(), mult_.end(), 0);
}

void Arc::set(int p, int value) {
  if (value < 0) throw std::invalid_argument("negative multiplicity");
  n_ += value - mult_.at(p);
  mult_[p] = value;
}

int Arc::max_point_multiplicity() const { return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end()); }

bool Arc::same_space(const Arc& o) const {
  return space_ && o.space_ && space_->v() == o.space_->v() && space_->q() == o.space_->q();
}

int Arc::multiplicity(const Subspace& s) const {
  int m = 0;
  for (int p : space_->points_of(s)) m += mult_[p];
  return m;
}

int Arc::line_multiplicity(int l) const {
  int m = 0;
  for (int p : space_->line_points(l)) m += mult_[p];
  return m;
}

int Arc::hyperplane_multiplicity(int h) const {
  int m = 0;
  for (int p : space_->hyperplane_points(h)) m += mult_[p];
  return m;
}

std::vector<int> Arc::line_multiplicities() const {
  std::vector<int> out(space_->num_lines());
  for (int l = 0; l < space_->num_lines(); ++l) out[l] = line_multiplicity(l);
  return out;
}

std::vector<int> Arc::hyperplane_multiplicities() const {
  std::vector<int> out(space_->num_hyperplanes());
  for (int h = 0; h < space_->num_hyperplanes(); ++h) out[h] = hyperplane_multiplicity(h);
  return out;
}

long long binom2(long long n) { return n * (n - 1) / 2; }

Spectrum spectrum(const Arc& a) {
  Spectrum s;
  for (int m : a.hyperplane_multiplicities()) ++s[m];
  return s;
}

PointDistribution lambda_distribution(const Arc& a) {
  PointDistribution d;
  for (int m : a.mult()) ++d[m];
  return d;
}

bool standard_equations_hold(const Arc& a) {
  const int v = a.geom().v(), q = a.geom().q();
  const long long n = a.cardinality();
  long long s0 = 0, s1 = 0, s2 = 0, lam2 = 0;
  for (auto [i, ai] : spectrum(a)) {
    s0 += ai;
    s1 += static_cast<long long>(i) * ai;
    s2 += binom2(i) * ai;
  }
  for (auto [j, lj] : lambda_distribution(a)) lam2 += binom2(j) * lj;
  long long qv2 = 1;
  for (int i = 0; i < v - 2; ++i) qv2 *= q;
  auto g = [q](int k) { return k <= 0 ? 0LL : gaussian_point_count(k, q); };
  return s0 == g(v) && s1 == n * g(v - 1) && s2 == binom2(n) * g(v - 2) + qv2 * lam2;
}

bool is_t_mod_q(const Arc& a, int t) {
  const int q = a.geom().q();
  for (int l = 0; l < a.geom().num_lines(); ++l)
    if (((a.line_multiplicity(l) - t) % q + q) % q != 0) return false;
  return true;
}

bool is_strong(const Arc& a, int t) { return a.max_point_multiplicity() <= t && is_t_mod_q(a, t); }

bool is_quasi_divisible(const Arc& a, int t, int delta) {
  const int n = a.cardinality();
  for (int m : a.hyperplane_multiplicities()) {
    int r = ((m - n) % delta + delta) % delta;
    if (r > t) return false;
  }
  return true;
}

Arc add(const Arc& a, const Arc& b) {
  if (!a.same_space(b)) throw std::invalid_argument("arcs live in different spaces");
  std::vector<int> m(a.mult().size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
  return Arc(a.space(), m);
}

Arc scale(const Arc& a, int alpha) {
  if (alpha < 0) throw std::invalid_argument("negative scale factor");
  std::vector<int> m(a.mult());
  for (auto& x : m) x *= alpha;
  return Arc(a.space(), m);
}

Arc characteristic(SpacePtr space, const std::vector<int>& points, int value) {
  Arc a(space);
  for (int p : points) a.set(p, a[p] + value);
  return a;
}

std::optional<int> line_residue(const Arc& a) {
  const int q = a.geom().q();
  if (a.geom().num_lines() == 0) return std::nullopt;
  int t = a.line_multiplicity(0) % q;
  return is_t_mod_q(a, t) ? std::optional<int>(t) : std::nullopt;
}

Arc lift(const Arc& base, const SpacePtr& ambient, int lifting_point, std::optional<int> t) {
  const auto& S = *ambient;
  const auto& B = base.geom();
  if (B.v() != S.v() - 1 || B.q() != S.q()) throw std::invalid_argument("lift: base must live in PG(v-2,q)");
  if (!t) t = line_residue(base);
  if (!t) throw std::invalid_argument("lift: base arc is not (t mod q)");
  const auto& f = S.field();
  if (lifting_point < 0) {
    Vec e1(S.v(), 0);
    e1[0] = 1;
    lifting_point = S.index_of(e1);
  }
  const Vec& P = S.point(lifting_point);
  if (P[0] == 0) throw std::invalid_argument("lift: lifting point lies on the base hyperplane x_0 = 0");
  const int p0inv = f.inv(P[0]);
  Arc out(ambient);
  for (int qi = 0; qi < S.num_points(); ++qi) {
    if (qi == lifting_point) {
      out.set(qi, *t);
      continue;
    }
    const Vec& Q = S.point(qi);
    int c = f.mul(Q[0], p0inv);
    Vec r(S.v() - 1);
    for (int k = 1; k < S.v(); ++k) r[k - 1] = f.sub(Q[k], f.mul(c, P[k]));
    out.set(qi, base[B.index_of(r)]);
  }
  return out;
}

std::vector<int> lifting_points(const Arc& a, int t) {
  const auto& S = a.geom();
  std::vector<int> out;
  for (int p = 0; p < S.num_points(); ++p) {
    if (a[p] != t) continue;
    bool ok = true;
    for (int l : S.lines_through(p)) {
      int val = -1;
      for (int x : S.line_points(l)) {
        if (x == p) continue;
        if (val < 0) val = a[x];
        else if (a[x] != val) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(p);
  }
  if (!out.empty()) {
    auto pts = S.points_of(S.span(out));
    if (pts != out) throw std::logic_error("lifting points do not form a subspace");
  }
  return out;
}

Arc sigma_dual(const Arc& a, int s, int t) {
  const int q = a.geom().q(), n = a.cardinality();
  if (((s - n - t) % q + q) % q != 0) throw std::invalid_argument("sigma_dual: s must be congruent to n + t");
  if (!is_quasi_divisible(a, t, q)) throw std::invalid_argument("sigma_dual: arc is not t-quasi-divisible");
  Arc d(a.space());
  for (int h = 0; h < a.geom().num_hyperplanes(); ++h) {
    int k = a.hyperplane_multiplicity(h);
    if (k > s) throw std::invalid_argument("sigma_dual: hyperplane multiplicity exceeds s");
    d.set(a.geom().dual_point_of_hyperplane(h), ((n + t - k) % q + q) % q);
  }
  return d;
}

std::vector<int> hyperplane_coordinate_map(const ProjectiveSpace& S, int h, const ProjectiveSpace& sub) {
  if (sub.v() != S.v() - 1 || sub.q() != S.q()) throw std::invalid_argument("restriction space mismatch");
  std::vector<Vec> rows;
  for (int p : S.hyperplane_points(h)) rows.push_back(S.point(p));
  row_reduce(rows, S.field());
  const auto& f = S.field();
  std::vector<int> map(sub.num_points());
  for (int y = 0; y < sub.num_points(); ++y) {
    Vec x(S.v(), 0);
    for (int i = 0; i < sub.v(); ++i)
      for (int k = 0; k < S.v(); ++k) x[k] = f.add(x[k], f.mul(sub.point(y)[i], rows[i][k]));
    map[y] = S.index_of(x);
  }
  return map;
}

Arc restrict_to_hyperplane(const Arc& a, int h, const SpacePtr& sub) {
  auto map = hyperplane_coordinate_map(a.geom(), h, *sub);
  Arc r(sub);
  for (int y = 0; y < sub->num_points(); ++y) r.set(y, a[map[y]]);
  return r;
}

Arc from_generator_matrix(const std::vector<std::string>& rows, const SpacePtr& space) {
  if (static_cast<int>(rows.size()) != space->v()) throw std::invalid_argument("generator matrix needs v rows");
  const size_t cols = rows[0].size();
  for (auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("generator matrix rows differ in length");
  Arc a(space);
  for (size_t c = 0; c < cols; ++c) {
    Vec x(space->v());
    bool zero = true;
    for (int i = 0; i < space->v(); ++i) {
      int d = rows[i][c] - '0';
      if (d < 0 || d >= space->q()) throw std::invalid_argument("generator matrix digit out of range");
      x[i] = d;
      zero = zero && d == 0;
    }
    if (zero) throw std::invalid_argument("zero column in generator matrix");
    int p = space->index_of(x);
    a.set(p, a[p] + 1);
  }
  return a;
}

Arc read_generator_file(const std::string& path, const SpacePtr& space, std::optional<int> expected_card) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  int q = 0, k = 0;
  if (std::sscanf(header.c_str(), "genmat q=%d k=%d", &q, &k) != 2) throw std::runtime_error("bad genmat header in " + path);
  if (q != space->q() || k != space->v()) throw std::runtime_error("genmat parameters do not match space");
  std::vector<std::string> rows;
  std::string line;
  while (static_cast<int>(rows.size()) < k && std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  Arc a = from_generator_matrix(rows, space);
  if (expected_card && a.cardinality() != *expected_card)
    throw std::runtime_error(path + ": column count " + std::to_string(a.cardinality()) + " differs from expected " +
                             std::to_string(*expected_card));
  return a;
}

std::string format_arc(const Arc& a) {
  std::ostringstream os;
  os << "arc v=" << a.geom().v() << " q=" << a.geom().q() << "\n";
  for (int p = 0; p < a.geom().num_points(); ++p) {
    if (a[p] == 0) continue;
    for (int c : a.geom().point(p)) os << c << ' ';
    os << ": " << a[p] << "\n";
  }
  os << "# card=" << a.cardinality() << "\n";
  return os.str();
}

Arc parse_arc(const std::string& text, const SpacePtr& space_in) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  int v = 0, q = 0;
  if (std::sscanf(header.c_str(), "arc v=%d q=%d", &v, &q) != 2) throw std::runtime_error("bad arc header");
  SpacePtr space = space_in ? space_in : ProjectiveSpace::build(v, q);
  if (space->v() != v || space->q() != q) throw std::runtime_error("arc file space mismatch");
  Arc a(space);
  std::string line;
  int checksum = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (std::sscanf(line.c_str(), "# card=%d", &checksum) != 1) throw std::runtime_error("bad checksum line");
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad arc line: " + line);
    std::istringstream cs(line.substr(0, colon));
    Vec x;
    int c;
    while (cs >> c) x.push_back(c);
    if (static_cast<int>(x.size()) != v) throw std::runtime_error("bad coordinate count: " + line);
    int p = space->index_of(x);
    if (p < 0 || space->point(p) != x) throw std::runtime_error("coordinates not normalized: " + line);
    a.set(p, std::stoi(line.substr(colon + 1)));
  }
  if (checksum != a.cardinality()) throw std::runtime_error("arc checksum mismatch");
  return a;
}

void write_arc_file(const Arc& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_arc(a);
}

Arc read_arc_file(const std::string& path, const SpacePtr& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_arc(ss.str(), space);
}

long long griesmer_bound(int k, long long d, int q) {
  long long s = 0, p = 1;
  for (int i = 0; i < k; ++i) {
    s += (d + p - 1) / p;
    p *= q;
  }
  return s;
}

}  // namespace pgarcs

#include "pgarcs/galois.hpp"

#include <algorithm>
#include <limits>

namespace pgarcs {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(int q) : q_(q) {
  if (!is_prime(q)) throw std::invalid_argument("field size must be prime, got " + std::to_string(q));
  inv_.assign(q, 0);
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (a * b % q == 1) inv_[a] = b;
}

int PrimeModulus::inv(int a) const {
  a = norm(a);
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

long long gaussian_point_count(int k, int q) {
  if (k < 0) throw std::invalid_argument("negative dimension");
  long long s = 0, p = 1;
  for (int i = 0; i < k; ++i) {
    if (s > std::numeric_limits<long long>::max() - p) throw std::overflow_error("gaussian_point_count overflow");
    s += p;
    if (i + 1 < k) {
      if (p > std::numeric_limits<long long>::max() / q) throw std::overflow_error("gaussian_point_count overflow");
      p *= q;
    }
  }
  return s;
}

long long pgl_order(int v, int q) {
  long long qv = 1;
  for (int i = 0; i < v; ++i) qv *= q;
  long long ord = 1, qi = 1;
  for (int i = 0; i < v; ++i) {
    ord *= (qv - qi);
    qi *= q;
  }
  return ord / (q - 1);
}

int row_reduce(std::vector<Vec>& rows, const PrimeModulus& f) {
  if (rows.empty()) return 0;
  const int n = static_cast<int>(rows[0].size());
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] % f.q() != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    int s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(f.norm(x), s);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r) continue;
      int m = f.norm(rows[i][c]);
      if (m == 0) continue;
      for (int k = 0; k < n; ++k) rows[i][k] = f.sub(f.norm(rows[i][k]), f.mul(m, rows[r][k]));
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

Subspace::Subspace(int v, std::vector<Vec> rows, const PrimeModulus& f) : v_(v), rows_(std::move(rows)) {
  for (auto& r : rows_)
    if (static_cast<int>(r.size()) != v) throw std::invalid_argument("subspace row length mismatch");
  row_reduce(rows_, f);
}

bool Subspace::contains(const Vec& x, const PrimeModulus& f) const {
  auto rows = rows_;
  rows.push_back(x);
  return row_reduce(rows, f) == dim();
}

ProjectiveSpace::ProjectiveSpace(int v, int q) : v_(v), f_(q) {}

int ProjectiveSpace::encode(const Vec& x) const {
  int c = 0;
  for (int i = 0; i < v_; ++i) c = c * q() + f_.norm(x[i]);
  return c;
}

int ProjectiveSpace::index_of(const Vec& x) const { return code_to_point_[encode(x)]; }

SpacePtr ProjectiveSpace::build(int v, int q) {
  if (v < 2) throw std::invalid_argument("projective space needs v >= 2");
  std::shared_ptr<ProjectiveSpace> s(new ProjectiveSpace(v, q));
  const auto& f = s->f_;
  long long total = 1;
  for (int i = 0; i < v; ++i) {
    total *= q;
    if (total > 50'000'000) throw std::length_error("projective space too large to enumerate");
  }
  s->code_to_point_.assign(static_cast<size_t>(total), -1);
  // Normalized vectors in lexicographic order: iterate codes ascending and keep those whose
  // first non-zero coordinate is 1.
  std::vector<int> codes;
  for (long long c = 1; c < total; ++c) {
    Vec x(v);
    long long t = c;
    for (int i = v - 1; i >= 0; --i) { x[i] = static_cast<int>(t % q); t /= q; }
    int lead = 0;
    while (x[lead] == 0) ++lead;
    if (x[lead] == 1) {
      s->points_.push_back(x);
      codes.push_back(static_cast<int>(c));
    }
  }
  const int n = static_cast<int>(s->points_.size());
  // Every non-zero vector maps to the index of its normalized multiple.
  for (int i = 0; i < n; ++i)
    for (int a = 1; a < q; ++a) {
      Vec y = s->points_[i];
      for (auto& z : y) z = f.mul(z, a);
      s->code_to_point_[s->encode(y)] = i;
    }
  // Lines.
  std::vector<std::vector<int>> lines;
  std::vector<uint8_t> covered(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (covered[static_cast<size_t>(i) * n + j]) continue;
      std::vector<int> pts{i, j};
      for (int c = 1; c < q; ++c) {
        Vec y(v);
        for (int k = 0; k < v; ++k) y[k] = f.add(s->points_[j][k], f.mul(c, s->points_[i][k]));
        pts.push_back(s->index_of(y));
      }
      std::sort(pts.begin(), pts.end());
      for (int a : pts)
        for (int b : pts) covered[static_cast<size_t>(a) * n + b] = 1;
      lines.push_back(pts);
    }
  std::sort(lines.begin(), lines.end());
  s->lines_ = lines;
  s->point_lines_.assign(n, {});
  s->pair_line_.assign(static_cast<size_t>(n) * n, -1);
  for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
    for (int a : lines[l]) {
      s->point_lines_[a].push_back(l);
      for (int b : lines[l])
        if (a != b) s->pair_line_[static_cast<size_t>(a) * n + b] = l;
    }
  }
  // Hyperplanes, indexed by their normal vectors.
  s->hyper_points_.assign(n, {});
  s->point_hypers_.assign(n, {});
  s->in_hyper_.assign(static_cast<size_t>(n) * n, 0);
  for (int h = 0; h < n; ++h)
    for (int p = 0; p < n; ++p) {
      long long d = 0;
      for (int k = 0; k < v; ++k) d += s->points_[h][k] * s->points_[p][k];
      if (d % q == 0) {
        s->hyper_points_[h].push_back(p);
        s->point_hypers_[p].push_back(h);
        s->in_hyper_[static_cast<size_t>(h) * n + p] = 1;
      }
    }
  s->hyper_lines_.assign(n, {});
  s->line_hypers_.assign(lines.size(), {});
  for (int l = 0; l < static_cast<int>(lines.size()); ++l)
    for (int h = 0; h < n; ++h)
      if (s->in_hyperplane(lines[l][0], h) && s->in_hyperplane(lines[l][1], h)) {
        s->hyper_lines_[h].push_back(l);
        s->line_hypers_[l].push_back(h);
      }
  return s;
}

bool ProjectiveSpace::line_in_hyperplane(int l, int h) const {
  return in_hyperplane(lines_[l][0], h) && in_hyperplane(lines_[l][1], h);
}

Subspace ProjectiveSpace::span(std::span<const int> pts) const {
  std::vector<Vec> rows;
  for (int p : pts) rows.push_back(points_.at(p));
  return Subspace(v_, rows, f_);
}

std::vector<int> ProjectiveSpace::points_of(const Subspace& s) const {
  std::vector<int> out;
  if (s.dim() == 0) return out;
  const int d = s.dim();
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= q();
  for (long long c = 1; c < total; ++c) {
    Vec x(v_, 0);
    long long t = c;
    for (int i = d - 1; i >= 0; --i) {
      int a = static_cast<int>(t % q());
      t /= q();
      for (int k = 0; k < v_; ++k) x[k] = f_.add(x[k], f_.mul(a, s.basis()[i][k]));
    }
    out.push_back(index_of(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int ProjectiveSpace::line_index(const Subspace& s) const {
  if (s.dim() != 2) return -1;
  int a = index_of(s.basis()[0]), b = index_of(s.basis()[1]);
  return line_through(a, b);
}

int ProjectiveSpace::apply_collineation(const Mat& M, int p) const {
  Vec y(v_, 0);
  const Vec& x = points_[p];
  for (int i = 0; i < v_; ++i) {
    long long acc = 0;
    for (int k = 0; k < v_; ++k) acc += static_cast<long long>(M[i][k]) * x[k];
    y[i] = f_.norm(acc);
  }
  return index_of(y);
}

std::vector<int> ProjectiveSpace::collineation_permutation(const Mat& M) const {
  if (static_cast<int>(M.size()) != v_) throw std::invalid_argument("matrix size mismatch");
  if (mat_det(M, f_) == 0) throw std::invalid_argument("singular collineation matrix");
  std::vector<int> perm(num_points());
  for (int p = 0; p < num_points(); ++p) perm[p] = apply_collineation(M, p);
  return perm;
}

int ProjectiveSpace::embed_from_hyperplane_x0(int sub_point, const ProjectiveSpace& sub) const {
  if (sub.v() != v_ - 1 || sub.q() != q()) throw std::invalid_argument("embedding dimension mismatch");
  Vec x(v_, 0);
  for (int k = 0; k < v_ - 1; ++k) x[k + 1] = sub.point(sub_point)[k];
  return index_of(x);
}

Mat identity_matrix(int v) {
  Mat m(v, Vec(v, 0));
  for (int i = 0; i < v; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b, const PrimeModulus& f) {
  const size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat c(n, Vec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      long long acc = 0;
      for (size_t t = 0; t < k; ++t) acc += static_cast<long long>(a[i][t]) * b[t][j];
      c[i][j] = f.norm(acc);
    }
  return c;
}

int mat_det(Mat a, const PrimeModulus& f) {
  const int n = static_cast<int>(a.size());
  int det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (f.norm(a[r][c]) != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) { std::swap(a[piv], a[c]); det = f.norm(-det); }
    int d = f.norm(a[c][c]);
    det = f.mul(det, d);
    int inv = f.inv(d);
    for (int r = c + 1; r < n; ++r) {
      int m = f.mul(f.norm(a[r][c]), inv);
      if (m == 0) continue;
      for (int k = c; k < n; ++k) a[r][k] = f.sub(f.norm(a[r][k]), f.mul(m, f.norm(a[c][k])));
    }
  }
  return det;
}

Mat mat_inverse(const Mat& a, const PrimeModulus& f) {
  const int n = static_cast<int>(a.size());
  std::vector<Vec> aug(n, Vec(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = f.norm(a[i][j]);
    aug[i][n + i] = 1;
  }
  // Gauss-Jordan on the augmented matrix.
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (aug[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    std::swap(aug[piv], aug[c]);
    int s = f.inv(aug[c][c]);
    for (auto& x : aug[c]) x = f.mul(x, s);
    for (int r = 0; r < n; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      int m = aug[r][c];
      for (int k = 0; k < 2 * n; ++k) aug[r][k] = f.sub(aug[r][k], f.mul(m, aug[c][k]));
    }
  }
  Mat inv(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

}  // namespace pgarcs

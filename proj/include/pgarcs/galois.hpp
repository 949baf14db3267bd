#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgarcs {

using Vec = std::vector<int>;

// Arithmetic in the prime field Z_q.
class PrimeModulus {
 public:
  explicit PrimeModulus(int q);
  int q() const { return q_; }
  int add(int a, int b) const { return (a + b) % q_; }
  int sub(int a, int b) const { return (a - b + q_) % q_; }
  int mul(int a, int b) const { return (a * b) % q_; }
  int inv(int a) const;
  int norm(long long a) const { return static_cast<int>(((a % q_) + q_) % q_); }

 private:
  int q_;
  std::vector<int> inv_;
};

bool is_prime(int q);

// [k]_q = (q^k - 1)/(q - 1); throws std::overflow_error when it does not fit.
long long gaussian_point_count(int k, int q);

// Number of elements of PGL(v,q).
long long pgl_order(int v, int q);

// Row-reduced echelon basis of a subspace of F_q^v.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int v, std::vector<Vec> rows, const PrimeModulus& f);
  int ambient_dim() const { return v_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }
  bool contains(const Vec& x, const PrimeModulus& f) const;
  bool operator==(const Subspace& o) const { return v_ == o.v_ && rows_ == o.rows_; }

 private:
  int v_ = 0;
  std::vector<Vec> rows_;
};

// Row reduction in place; returns rank.
int row_reduce(std::vector<Vec>& rows, const PrimeModulus& f);

class ProjectiveSpace;
using SpacePtr = std::shared_ptr<const ProjectiveSpace>;

// PG(v-1,q) with points, lines and hyperplanes enumerated canonically.
// Hyperplane h is the kernel of the linear form whose coefficient vector is
// point h, so the duality hyperplane <-> dual point is the identity on indices.
class ProjectiveSpace {
 public:
  static SpacePtr build(int v, int q);

  int v() const { return v_; }
  int q() const { return f_.q(); }
  const PrimeModulus& field() const { return f_; }

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  int num_hyperplanes() const { return num_points(); }

  const Vec& point(int i) const { return points_[i]; }
  // Index of the projective point spanned by a non-zero vector, -1 for zero.
  int index_of(const Vec& x) const;
  int index_of_code(int code) const { return code_to_point_[code]; }
  int encode(const Vec& x) const;

  const std::vector<int>& line_points(int l) const { return lines_[l]; }
  const std::vector<int>& lines_through(int p) const { return point_lines_[p]; }
  int line_through(int a, int b) const { return pair_line_[a * num_points() + b]; }

  const std::vector<int>& hyperplane_points(int h) const { return hyper_points_[h]; }
  const std::vector<int>& hyperplanes_through(int p) const { return point_hypers_[p]; }
  bool in_hyperplane(int p, int h) const { return in_hyper_[static_cast<size_t>(h) * num_points() + p] != 0; }
  const std::vector<int>& lines_in_hyperplane(int h) const { return hyper_lines_[h]; }
  const std::vector<int>& hyperplanes_through_line(int l) const { return line_hypers_[l]; }
  bool line_in_hyperplane(int l, int h) const;

  // Duality: the dual point of hyperplane h and the hyperplane dual to point p.
  int dual_point_of_hyperplane(int h) const { return h; }
  int dual_hyperplane_of_point(int p) const { return p; }

  Subspace span(std::span<const int> pts) const;
  std::vector<int> points_of(const Subspace& s) const;
  int line_index(const Subspace& s) const;  // -1 unless s is a line

  // Collineation action x -> M x (M given row-major, v x v).
  std::vector<int> collineation_permutation(const std::vector<Vec>& M) const;
  int apply_collineation(const std::vector<Vec>& M, int p) const;

  // Coordinates of points of the hyperplane x_0 = 0 re-read as points of
  // PG(v-2,q), in both directions.
  int embed_from_hyperplane_x0(int sub_point, const ProjectiveSpace& sub) const;

 private:
  ProjectiveSpace(int v, int q);
  int v_;
  PrimeModulus f_;
  std::vector<Vec> points_;
  std::vector<int> code_to_point_;
  std::vector<std::vector<int>> lines_;
  std::vector<std::vector<int>> point_lines_;
  std::vector<int> pair_line_;
  std::vector<std::vector<int>> hyper_points_;
  std::vector<std::vector<int>> point_hypers_;
  std::vector<uint8_t> in_hyper_;
  std::vector<std::vector<int>> hyper_lines_;
  std::vector<std::vector<int>> line_hypers_;
};

// Matrix helpers over Z_q (row-major).
using Mat = std::vector<Vec>;
Mat identity_matrix(int v);
Mat mat_mul(const Mat& a, const Mat& b, const PrimeModulus& f);
int mat_det(Mat a, const PrimeModulus& f);
Mat mat_inverse(const Mat& a, const PrimeModulus& f);

}  // namespace pgarcs

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/galois.hpp"

namespace pgarcs {

// Multiset of points of a projective space.
class Arc {
 public:
  Arc() = default;
  explicit Arc(SpacePtr space);
  Arc(SpacePtr space, std::vector<int> mult);

  const SpacePtr& space() const { return space_; }
  const ProjectiveSpace& geom() const { return *space_; }
  const std::vector<int>& mult() const { return mult_; }
  int operator[](int p) const { return mult_[p]; }
  void set(int p, int value);
  int cardinality() const { return n_; }
  int max_point_multiplicity() const;

  int multiplicity(const Subspace& s) const;
  int line_multiplicity(int l) const;
  int hyperplane_multiplicity(int h) const;
  std::vector<int> line_multiplicities() const;
  std::vector<int> hyperplane_multiplicities() const;

  bool operator==(const Arc& o) const { return mult_ == o.mult_ && same_space(o); }
  bool same_space(const Arc& o) const;

 private:
  SpacePtr space_;
  std::vector<int> mult_;
  int n_ = 0;
};

using Spectrum = std::map<int, int>;           // i -> a_i
using PointDistribution = std::map<int, int>;  // j -> lambda_j

Spectrum spectrum(const Arc& a);
PointDistribution lambda_distribution(const Arc& a);
// Evaluates the three hyperplane standard equations; returns false on mismatch.
bool standard_equations_hold(const Arc& a);

bool is_t_mod_q(const Arc& a, int t);
bool is_strong(const Arc& a, int t);
bool is_quasi_divisible(const Arc& a, int t, int delta);

Arc add(const Arc& a, const Arc& b);
Arc scale(const Arc& a, int alpha);
Arc characteristic(SpacePtr space, const std::vector<int>& points, int value = 1);

// Residue t with all line multiplicities congruent to t mod q, if any.
std::optional<int> line_residue(const Arc& a);

// Cone over an arc of PG(v-2,q) embedded as x_0 = 0, with the given point off that hyperplane
// as apex of multiplicity t. A negative lifting point selects e_1 = (1,0,...,0).
Arc lift(const Arc& base, const SpacePtr& ambient, int lifting_point = -1, std::optional<int> t = std::nullopt);
std::vector<int> lifting_points(const Arc& a, int t);

// Dual arc on the dual space: hyperplane h becomes dual point h with value (n + t - K(h)) mod q.
Arc sigma_dual(const Arc& a, int s, int t);

// Coordinates of hyperplane h re-read as PG(v-2,q) through the echelon basis of h.
Arc restrict_to_hyperplane(const Arc& a, int h, const SpacePtr& sub);
std::vector<int> hyperplane_coordinate_map(const ProjectiveSpace& s, int h, const ProjectiveSpace& sub);

// Generator matrix: column j adds one to the point spanned by column j.
Arc from_generator_matrix(const std::vector<std::string>& rows, const SpacePtr& space);
Arc read_generator_file(const std::string& path, const SpacePtr& space, std::optional<int> expected_card = std::nullopt);

std::string format_arc(const Arc& a);
Arc parse_arc(const std::string& text, const SpacePtr& space = nullptr);
void write_arc_file(const Arc& a, const std::string& path);
Arc read_arc_file(const std::string& path, const SpacePtr& space = nullptr);

long long griesmer_bound(int k, long long d, int q);

long long binom2(long long n);

}  // namespace pgarcs

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pgarcs/galois.hpp"
#include "pgarcs/isomorphism.hpp"

using namespace pgarcs;

namespace {

struct Geometry {
  int v, q;
};

const std::vector<Geometry> kSmall{{3, 2}, {3, 3}, {3, 5}, {3, 7}, {4, 2}, {4, 3}, {4, 5}};

// Points of PG(v-1,q) as sets of non-zero vectors, independent of the library's normalisation.
std::set<std::vector<int>> scalar_class(const Vec& x, int q) {
  std::set<std::vector<int>> out;
  for (int a = 1; a < q; ++a) {
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] * a % q;
    out.insert(y);
  }
  return out;
}

int dot(const Vec& a, const Vec& b, int q) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s % q;
}

}  // namespace

TEST(Field, Inverses) {
  for (int q : {2, 3, 5, 7, 11}) {
    PrimeModulus f(q);
    for (int a = 1; a < q; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1) << q << " " << a;
    EXPECT_EQ(f.norm(-1), q - 1);
  }
  EXPECT_THROW(PrimeModulus(4), std::invalid_argument);
  EXPECT_THROW(PrimeModulus(1), std::invalid_argument);
  EXPECT_TRUE(is_prime(5));
  EXPECT_FALSE(is_prime(9));
}

TEST(Galois, Counts) {
  EXPECT_EQ(gaussian_point_count(3, 5), 31);
  EXPECT_EQ(gaussian_point_count(4, 5), 156);
  EXPECT_EQ(pgl_order(3, 5), 372000);
  EXPECT_EQ(pgl_order(2, 2), 6);
  auto s = ProjectiveSpace::build(4, 5);
  EXPECT_EQ(s->num_lines(), 806);
}

TEST(Galois, PointsAreTheScalarClasses) {
  for (auto [v, q] : kSmall) {
    auto S = ProjectiveSpace::build(v, q);
    long long nonzero = 1;
    for (int i = 0; i < v; ++i) nonzero *= q;
    --nonzero;
    ASSERT_EQ(S->num_points(), nonzero / (q - 1));
    std::set<std::set<std::vector<int>>> classes;
    for (int p = 0; p < S->num_points(); ++p) {
      classes.insert(scalar_class(S->point(p), q));
      EXPECT_EQ(S->index_of(S->point(p)), p);
    }
    EXPECT_EQ(static_cast<int>(classes.size()), S->num_points());
  }
}

TEST(Galois, TwoPointsSpanOneLine) {
  for (auto [v, q] : kSmall) {
    auto S = ProjectiveSpace::build(v, q);
    const int n = S->num_points();
    const long long pairs = 1LL * n * (n - 1) / 2, per_line = 1LL * (q + 1) * q / 2;
    ASSERT_EQ(S->num_lines() * per_line, pairs) << v << "," << q;
    for (int l = 0; l < S->num_lines(); ++l) {
      const auto& pts = S->line_points(l);
      ASSERT_EQ(static_cast<int>(pts.size()), q + 1);
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) ASSERT_EQ(S->line_through(pts[i], pts[j]), l);
    }
    for (int p = 0; p < n; ++p)
      for (int l : S->lines_through(p)) {
        const auto& pts = S->line_points(l);
        ASSERT_NE(std::find(pts.begin(), pts.end(), p), pts.end());
      }
  }
}

TEST(Galois, HyperplanesAreKernels) {
  for (auto [v, q] : kSmall) {
    auto S = ProjectiveSpace::build(v, q);
    for (int h = 0; h < S->num_hyperplanes(); ++h) {
      int size = 0;
      for (int p = 0; p < S->num_points(); ++p) {
        const bool in = dot(S->point(h), S->point(p), q) == 0;
        ASSERT_EQ(S->in_hyperplane(p, h), in);
        size += in;
      }
      ASSERT_EQ(size, gaussian_point_count(v - 1, q));
      ASSERT_EQ(static_cast<int>(S->hyperplane_points(h).size()), size);
      for (int l : S->lines_in_hyperplane(h))
        for (int p : S->line_points(l)) ASSERT_TRUE(S->in_hyperplane(p, h));
    }
  }
}

TEST(Galois, CollineationsPermuteLines) {
  std::mt19937_64 rng(7);
  for (auto [v, q] : kSmall) {
    auto S = ProjectiveSpace::build(v, q);
    for (int trial = 0; trial < 5; ++trial) {
      Mat g = random_invertible_matrix(v, S->field(), rng);
      auto perm = S->collineation_permutation(g);
      ASSERT_EQ(std::set<int>(perm.begin(), perm.end()).size(), static_cast<size_t>(S->num_points()));
      for (int l = 0; l < S->num_lines(); ++l) {
        const auto& pts = S->line_points(l);
        int image = S->line_through(perm[pts[0]], perm[pts[1]]);
        for (int p : pts) {
          const auto& ip = S->line_points(image);
          ASSERT_NE(std::find(ip.begin(), ip.end(), perm[p]), ip.end());
        }
      }
    }
  }
}

TEST(Galois, RowReduceRank) {
  PrimeModulus f(5);
  std::vector<Vec> rows{{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};  // third = first + second
  EXPECT_EQ(row_reduce(rows, f), 2);
  std::vector<Vec> multiple{{1, 2, 3}, {2, 4, 1}};  // second = 2 * first mod 5
  EXPECT_EQ(row_reduce(multiple, f), 1);
  std::vector<Vec> id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(row_reduce(id, f), 3);
}

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pgarcs/arc.hpp"

namespace pgarcs {

// Node caps for the projective-equivalence searches. A search that hits a cap
// reports itself undecided instead of guessing.
struct SearchBudget {
  long long max_nodes = 400'000'000;
  long long max_frontier = 4'000'000;
};

enum class Verdict { Yes, No, Undecided };

struct CanonicalResult {
  bool decided = false;
  Arc form;                // form[p] = arc[g(p)] for the optimal g
  Mat transform;           // matrix of g, columns are images of the unit vectors
  long long optimal_maps = 0;  // number of g attaining the maximum, equal to |Aut|
  long long nodes = 0;
};

struct AutomorphismResult {
  bool decided = false;
  long long order = 0;         // stabilizer in PGL(v,q)
  long long linear_order = 0;  // stabilizer in GL(v,q), scalars included
  std::vector<long long> orbit_lengths;  // one per basis level, product = order
  long long nodes = 0;
};

struct IsomorphismResult {
  Verdict verdict = Verdict::Undecided;
  std::optional<Mat> map;  // g with b[g(p)] = a[p] for all p
  long long nodes = 0;
};

// Lexicographically maximal multiplicity sequence over the PGL(v,q)-orbit.
CanonicalResult canonical_form(const Arc& a, const SearchBudget& budget = {});
AutomorphismResult automorphism_order(const Arc& a, const SearchBudget& budget = {});
IsomorphismResult are_isomorphic(const Arc& a, const Arc& b, const SearchBudget& budget = {});

// Iterated colour refinement on points by multiplicity and incident line/hyperplane
// colour multisets. Colours are comparable across the arcs of one call.
std::vector<std::vector<int>> refine_colors(const std::vector<const Arc*>& arcs);

// Pullback a∘g: result[p] = a[g(p)].
Arc pullback(const Arc& a, const Mat& g);
// Image g(a): result[g(p)] = a[p].
Arc push_forward(const Arc& a, const Mat& g);

Mat random_invertible_matrix(int v, const PrimeModulus& f, std::mt19937_64& rng);

}  // namespace pgarcs

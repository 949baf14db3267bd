#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/arc.hpp"
#include "pgarcs/line_types.hpp"

namespace pgarcs {

struct PlanarClassifyOptions {
  long long max_nodes = 2'000'000'000;
};

struct PlanarClassification {
  int q = 0, t = 0, card = 0;
  bool complete = false;      // false when the node cap was hit
  std::vector<Arc> classes;   // one representative per PGL(3,q) class, ascending canonical form
  long long nodes = 0;
  long long leaves = 0;
};

// Strong (t mod q)-arcs of the given cardinality in PG(2,q), up to projective equivalence.
// Representatives are the canonical forms themselves.
PlanarClassification classify_strong_planar(int q, int t, int card, const PlanarClassifyOptions& opt = {});

// Appendix-table row: cardinality, line-type census, lambda vector and number of classes.
struct PlanarSignature {
  int card = 0;
  LineTypeCensus types{};
  std::array<int, 4> lambda{};
  int classes = 1;
  auto key() const { return std::tie(card, types, lambda); }
  bool operator<(const PlanarSignature& o) const { return key() < o.key(); }
  bool operator==(const PlanarSignature& o) const { return key() == o.key() && classes == o.classes; }
};

PlanarSignature planar_signature(const Arc& a);
// Groups class representatives into signature rows with class counts, sorted.
std::vector<PlanarSignature> signature_census(const std::vector<Arc>& reps);

std::vector<PlanarSignature> read_signature_table(const std::string& path);
void write_signature_table(const std::vector<PlanarSignature>& rows, const std::string& path);

// Strong (3 mod 5) residual arcs of PG(2,5), all cardinalities 18..93.
struct ResidualLibrary {
  SpacePtr plane;
  std::map<int, std::vector<Arc>> by_card;

  int total() const;
  std::vector<PlanarSignature> census() const;
  // residuals/q5t3 layout: card<NN>/arc<k>.arc and index.tsv
  void write(const std::string& dir) const;
  static ResidualLibrary read(const std::string& dir);
};

ResidualLibrary build_residual_library(const PlanarClassifyOptions& opt = {});

// Planar minihyper correspondence: B(dual of L) = (K(L) - t)/q on the dual plane.
Arc minihyper_transform(const Arc& planar, int t);
Arc inverse_minihyper_transform(const Arc& minihyper, int t);

// Non-negative solutions of the standard equations of strong (2 mod q)-arcs in PG(2,q).
struct TwoModQSpectrum {
  int n = 0, a2 = 0, aq2 = 0, a2q2 = 0, lambda0 = 0, lambda1 = 0, lambda2 = 0;
  int case_label = 0;  // 1..7 when the solution matches a general case, 0 for extras
  auto key() const { return std::tie(n, a2, aq2, a2q2, lambda0, lambda1, lambda2); }
  bool operator==(const TwoModQSpectrum& o) const { return key() == o.key(); }
};
std::vector<TwoModQSpectrum> two_mod_q_spectra(int q);

// Classes of strong (2 mod q)-arcs in PG(2,q), q odd, labelled I-1, I-2, II-i, III, IV.
struct LabelledClass {
  std::string label;  // empty when no model matches
  Arc arc;
};
std::vector<LabelledClass> classify_strong_two_mod_q(int q, const PlanarClassifyOptions& opt = {});
// Model arcs for the labels, for matching and tests.
std::vector<LabelledClass> two_mod_q_models(int q);

}  // namespace pgarcs

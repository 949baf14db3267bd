#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/arc.hpp"
#include "pgarcs/planar.hpp"

namespace pgarcs {

// Largest multiplicity of a hyperline inside a hyperplane of multiplicity m of an (n,s)-arc.
int residual_bound(int n, int s, int q, int m);

// Affine expression c + sum coef[k] * param[k], divided by den.
struct AffineExpr {
  long long constant = 0;
  std::vector<long long> coef;
  long long den = 1;
  long long eval(const std::vector<int>& params) const;  // throws when not integral
  bool integral_at(const std::vector<int>& params) const;
};

// Spectra (a_0..a_s) of projective (n,s)-arcs in PG(2,q) solving the standard equations.
struct SpectrumFamily {
  int n = 0, s = 0, q = 0;
  std::vector<int> params;                // indices i with a_i free
  std::vector<AffineExpr> a;              // a[i] in terms of params, size s+1
  std::vector<int> forced_zero;           // a_i = 0 by the residual bound for points
  std::vector<std::pair<int, int>> ranges;  // per parameter, over all admissible instances
  std::vector<std::vector<int>> instances;  // every non-negative integral spectrum
  std::string str() const;
};
SpectrumFamily planar_spectrum_family(int n, int s, int q = 5);

// Parameters of the (n,s)-arc under study in PG(k-1,q).
struct ArcParameters {
  int n = 104;
  int s = 22;
  int q = 5;
  int k = 4;
  // sigma-dual value of a hyperplane of multiplicity m.
  int dual_value(int m) const { return ((s - m) % q + q) % q; }
  // Right-hand side of the hyperplane-contribution inequality.
  long long contribution_rhs() const;
  // Whether a plane of multiplicity x can contain a hyperline of multiplicity i.
  bool plane_admits_line(int x, int i) const;
};

struct EtaEntry {
  int i = 0, j = 0;
  long long eta = 0;
  std::array<int, 6> witness{};  // (K(H_0), K(H_1), ..., K(H_5)), H_1.. descending
};

struct EtaTable {
  ArcParameters par;
  int m = 0;
  int dual_h0 = 0;
  std::vector<int> allowed;
  std::map<std::pair<int, int>, EtaEntry> entries;  // present (i,j) combinations only
  long long eta(int i, int j) const;                // 0 for absent combinations
  std::string str() const;
};
// Plane sizes excluded one after the other for (104,22): 1 by the 1-line bound, then the rest.
const std::vector<int>& exclusion_order();
// Allowed plane sizes when m is examined: gaps removed, and every size before m in the order
// (only the gaps for sizes outside the order).
std::vector<int> narrowed_allowed(int m, const ArcParameters& par = {});
EtaTable eta_table(int m, const std::vector<int>& allowed, const ArcParameters& par = {});

struct ProofStep {
  std::string rule;
  std::string tag;         // descriptive tag of the fact being established
  std::string kind;        // "computed", "axiom" or "citation"
  std::string inputs;      // JSON
  std::string conclusion;
  bool holds = false;
};

struct ProofLog {
  std::vector<ProofStep> steps;
  bool concluded = false;
  std::string conclusion;
  std::string to_json() const;
  std::string transcript() const;
  void add(ProofStep s) { steps.push_back(std::move(s)); }
};

struct ExclusionResult {
  int m = 0;
  bool infeasible = false;
  long long candidates = 0;                  // (spectrum, split) combinations examined
  std::map<std::pair<int, int>, int> witness; // b_{i,j} of a feasible point when one exists
  std::vector<int> witness_spectrum;
  long long witness_contribution = 0;
  long long witness_dual_card = 0;
  ProofStep step;
};
// Decides whether some b_{i,j} is compatible with both the contribution inequality and
// #dual >= min_dual_card for a hyperplane H_0 of multiplicity m.
ExclusionResult exclusion_infeasible(int m, const std::vector<int>& allowed, const ArcParameters& par = {},
                                     int min_dual_card = 163);

struct A1Check {
  int bound = 0;
  int neighbour_cap = 0;
  bool excluded = false;
  ProofStep step;
};
// A 1-plane through a 1-line: #K <= 1 + q * cap - q with cap the largest plane admitting a 1-line.
A1Check check_a1(const ArcParameters& par = {}, const std::vector<int>& allowed = {}, std::optional<int> neighbour_cap = {});

bool has_threefold_line_plane(const Arc& dual);
bool has_full_hyperplane(const Arc& a);
struct ContributionIdentity {
  long long lhs = 0, rhs = 0;
  bool holds() const { return lhs == rhs; }
};
ContributionIdentity hyperplane_contribution(const Arc& a, int s);
bool hyperplane_contribution_identity(const Arc& a, int s);

// Hyperplane multiplicities that cannot occur: the restriction to such a plane would be
// an (x, r)-arc in PG(2,q) larger than the largest such arc.
std::vector<int> planar_gap_values(const ArcParameters& par);
// Largest size of a (n,r)-arc in PG(2,5), r = 1..5.
int max_planar_arc(int r, int q);

struct DualCandidate {
  std::string name;
  Arc arc;
  bool lifted = false;
};

struct DualFilterOptions {
  bool use_ilp = true;  // turning this off shows why the ILP step is needed
  long long ilp_nodes = 50'000'000;
};

struct DualFilterResult {
  std::vector<DualCandidate> survivors;
  bool concluded = false;  // no candidate below the bound survives
  int lower_bound = 0;     // smallest admissible dual cardinality afterwards
  std::vector<ProofStep> steps;
};
// Candidates: lifts of planar classes with lift cardinality <= max_card plus the given non-lifted arcs.
std::vector<DualCandidate> dual_candidates(const ResidualLibrary& lib, const std::vector<DualCandidate>& nonlifted,
                                           int max_card);
DualFilterResult filter_dual_candidates(const std::vector<DualCandidate>& cands, const ArcParameters& par,
                                        int max_card, const DualFilterOptions& opt = {});

struct ProofInputs {
  const ResidualLibrary* library = nullptr;
  std::vector<DualCandidate> nonlifted;  // non-lifted strong arcs up to the classified cardinality
  int classified_up_to = 158;
  DualFilterOptions filter;
  bool dual_route_all_lifts = true;  // dual ILP over every lifted candidate, not only small ones
};

ProofLog prove_no_104_22(const ProofInputs& in);
// Assuming no hyperplane of multiplicity 3, 8, 13 or 18, derives a contradiction for (103,22).
ProofLog prove_103_22(const ProofInputs& in);

}  // namespace pgarcs

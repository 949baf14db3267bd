#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/arc.hpp"
#include "pgarcs/isomorphism.hpp"

namespace pgarcs {

struct Variable {
  std::string name;
  int lo = 0;
  int hi = 1;
  bool integer = true;
  std::string tag;  // geometry object the variable stands for, may be empty
};

enum class Relation { Eq, Le, Ge };

struct Term {
  int var;
  int coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation rel = Relation::Eq;
  long long rhs = 0;
};

class LinearModel {
 public:
  int add_var(std::string name, int lo, int hi, std::string tag = {});
  void add_constraint(std::string name, std::vector<Term> terms, Relation rel, long long rhs);
  int var(const std::string& name) const;  // -1 when absent
  void fix(int v, int value);

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }

  // Throws std::invalid_argument on unbounded or dangling references.
  void validate() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::map<std::string, int> index_;
};

bool satisfies(const LinearModel& m, const std::vector<int>& values);

// SmallestDomain: smallest domain, lowest canonical index. TightestRow: an open variable of
// the equality row with the fewest open variables, then smallest domain, lowest index.
enum class Branching { SmallestDomain, TightestRow };

struct SolverOptions {
  long long max_nodes = 2'000'000'000LL;
  Branching branching = Branching::SmallestDomain;
};

enum class SolveStatus { Feasible, Infeasible, Undecided };
const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Undecided;
  std::vector<int> witness;  // in the model's variable order
  long long nodes = 0;
};

struct EnumerateResult {
  bool complete = false;      // every solution found
  bool limit_reached = false;
  std::vector<std::vector<int>> solutions;  // sorted, in the model's variable order
  long long nodes = 0;
};

SolveResult solve(const LinearModel& m, const SolverOptions& opt = {});
EnumerateResult enumerate(const LinearModel& m, long long limit, const SolverOptions& opt = {});

std::string export_lp(const LinearModel& m);
void write_lp(const LinearModel& m, const std::string& path);
// One line per solution listing the variables at a positive value.
std::string format_solutions(const LinearModel& m, const std::vector<std::vector<int>>& sols);

// Strong (3 mod 5)-arc in PG(3,q) of cardinality `target` with `residual`
// prescribed on hyperplane `fixed_plane`.
struct StrongArcModelSpec {
  int q = 5;
  int t = 3;
  int target = 0;
  int line_cap = 3;   // upper bound for y_L
  int plane_cap = 15; // upper bound for z_H
  // Admissible values of y_L when not every value up to line_cap can occur; realised with
  // one binary indicator per non-zero value.
  std::vector<int> line_values;
  int fixed_plane = 0;
  std::optional<Arc> residual;  // arc in PG(2,q)
  bool cardinality_row = true;
  // Counting identities implied by the rows above: planes through a point, planes through
  // a line, lines through a point, and lines through a point inside a plane.
  bool implied_rows = true;
  // Translations fixing the prescribed plane pointwise are transitive on the other points,
  // so the first point off that plane may be required to carry the largest multiplicity there.
  bool affine_leader = false;
};
LinearModel build_strong_arc_model(const StrongArcModelSpec& spec, const SpacePtr& space);
Arc strong_model_solution_arc(const LinearModel& m, const std::vector<int>& sol, const SpacePtr& space);

// (n,s)-arc whose sigma-dual is `dual`: 5 y_H + sum_{P in H} x_P = s - dual(H).
struct DualModelSpec {
  int n = 104;
  int s = 22;
  bool cardinality_row = true;
  bool point_rows = true;  // sum over hyperplanes through P, implied by the hyperplane rows
  bool line_rows = true;   // sum over hyperplanes through L, implied likewise
};
LinearModel build_dual_model(const Arc& dual, const DualModelSpec& spec = {});
Arc dual_model_solution_arc(const LinearModel& m, const std::vector<int>& sol, const SpacePtr& space);

struct IsoClass {
  Arc representative;
  long long solutions = 0;
  bool lifted = false;
};
// Groups arcs by canonical form; classes are ordered by canonical form.
std::vector<IsoClass> isomorphism_classes(const std::vector<Arc>& arcs, int t);

}  // namespace pgarcs

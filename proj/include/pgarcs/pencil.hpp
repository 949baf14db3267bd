#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgarcs/line_types.hpp"
#include "pgarcs/planar.hpp"

namespace pgarcs {

using Lambda = std::array<int, 4>;
using TypeCounts = std::array<int, kNumLineTypes>;

// A point of a residual plane together with the types of its six lines.
struct PencilProfile {
  int center = 0;
  std::array<int, 6> types{};  // ascending type indices
  int home_card() const;       // sum of line multiplicities minus 5 * center
  auto key() const { return std::tie(center, types); }
  bool operator<(const PencilProfile& o) const { return key() < o.key(); }
  bool operator==(const PencilProfile& o) const { return key() == o.key(); }
  bool contains(int type) const;
  std::string str() const;
};

// A point of PG(3,5) together with the types of its 31 lines.
struct FullPencilProfile {
  int center = 0;
  TypeCounts counts{};
  Lambda lambda() const;
  int cardinality() const;  // sum of line multiplicities minus 30 * center
  bool lifted_shaped() const;
  auto key() const { return std::tie(center, counts); }
  bool operator<(const FullPencilProfile& o) const { return key() < o.key(); }
  bool operator==(const FullPencilProfile& o) const { return key() == o.key(); }
  std::string str() const;
};

struct ResidualInfo {
  int card = 0;
  int class_index = 0;  // 1-based position inside the library's cardinality list
  PlanarSignature signature;
  std::vector<int> pencils;  // distinct pencil ids
  uint32_t type_mask = 0;
  std::string str() const;
};

// Pencils of all residual classes with a 0-point.
struct PencilUniverse {
  std::vector<PencilProfile> pencils;
  std::map<PencilProfile, int> pencil_index;
  std::vector<ResidualInfo> residuals;
  std::array<int, kNumLineTypes> min_card_with_type{};  // over every planar class

  static PencilUniverse build(const ResidualLibrary& lib);
  int find_pencil(const PencilProfile& p) const;
};

struct EngineOptions {
  long long enumeration_node_cap = 200'000'000;
  long long decomposition_cap = 20'000'000;
  bool use_full_pencils = true;
  bool use_residual_lambda = true;
  bool allow_cluster_scale = false;
};

struct TraceEntry {
  std::string rule;
  std::string kind;  // "line-type", "pencil", "residual", "full-pencil", "lambda"
  std::vector<std::string> items;
  std::string datum;
};

// One (line type, center multiplicity) list of full-pencil candidates.
struct FullPencilList {
  int type = 0, center = 0;
  bool complete = true;
  std::vector<std::array<int, 6>> decompositions;  // pencil ids, non-decreasing
  std::vector<int> full_id;
  std::vector<char> alive;
  long long nodes = 0;
};

struct ExclusionState {
  int target = 0;
  const PencilUniverse* universe = nullptr;
  std::vector<char> type_alive, pencil_alive, residual_alive;
  std::vector<Lambda> excluded_lambda;
  std::optional<Lambda> forced_lambda;
  std::vector<FullPencilProfile> fulls;
  std::map<FullPencilProfile, int> full_index;
  std::map<std::pair<int, int>, FullPencilList> lists;
  std::vector<TraceEntry> trace;
  bool full_pencils_done = false;

  bool empty() const;
  int count_types() const;
  int count_pencils() const;
  int count_residuals() const;
  std::vector<int> admissible_cards(int type) const;
  // Alive full-pencil ids in the (type, center) list.
  std::vector<int> alive_fulls(int type, int center) const;
};

ExclusionState init_state(const PencilUniverse& u, int target);
// Each rule returns true when it excluded something.
bool rule_line_cardinality(ExclusionState& s);
bool rule_pencil_anchored(ExclusionState& s);
bool rule_incidence(ExclusionState& s);  // dead types/pencils/residuals propagate
void run_cheap_fixpoint(ExclusionState& s);

// Candidates for the full pencil at an m-point through a line of type tau.
FullPencilList enumerate_full_pencils(ExclusionState& s, int type, int center, const EngineOptions& opt = {});
bool rule_full_pencils(ExclusionState& s, const EngineOptions& opt = {});

struct ExclusionReport {
  int target = 0;
  bool empty = false;
  bool complete = true;  // false if some enumeration hit its cap
  std::vector<std::string> line_types;
  std::vector<std::string> pencils;
  std::vector<std::string> residuals;
  std::vector<int> residual_cards;
  std::vector<Lambda> excluded_lambda;
  std::vector<TraceEntry> trace;
};

ExclusionState run_fixpoint_state(const PencilUniverse& u, int target, const EngineOptions& opt = {},
                                  const std::vector<Lambda>& excluded = {}, std::optional<Lambda> forced = std::nullopt);
ExclusionReport run_fixpoint(const PencilUniverse& u, int target, const EngineOptions& opt = {},
                             const std::vector<Lambda>& excluded = {});
ExclusionReport report_of(const ExclusionState& s);

struct LambdaExclusion {
  bool excluded = false;
  bool complete = true;
  ExclusionReport report;
};
// Precondition: sum of lambda is 156 and sum j*lambda_j equals the target.
LambdaExclusion lambda_exclude(const PencilUniverse& u, int target, const Lambda& lambda, const EngineOptions& opt = {},
                               const std::vector<Lambda>& already = {});

// Point distributions that are excluded one by one before the exclusion run at target 173.
std::vector<Lambda> preset_lambda_exclusions(int target);

// Lower bound on the cardinality of a spatial arc without a full plane that has a plane
// with this signature: the best bound over the line types of the plane.
int lift_lower_bound(const PencilUniverse& u, const PlanarSignature& sig);

// Local structure of a concrete strong (3 mod 5)-arc of PG(3,5).
struct ArcSkeleton {
  std::vector<int> line_types;            // present types
  std::vector<PencilProfile> pencils;     // distinct pencils over all planes
  std::vector<PlanarSignature> planes;    // distinct plane signatures
  std::vector<std::vector<int>> plane_canonical;  // distinct canonical plane arcs
  std::vector<FullPencilProfile> fulls;   // distinct full pencils
};
ArcSkeleton skeleton_of(const Arc& spatial);

// Number of lines of each type and, per type, how often each multiset of multiplicities of
// the six hyperplanes through the line occurs (ascending).
struct LineStatistics {
  TypeCounts count{};
  std::array<std::map<std::vector<int>, int>, kNumLineTypes> hyperplanes;
  // "23^5 28^1" for a type whose lines all see the same hyperplanes, alternatives joined by " | ".
  std::string hyperplane_string(int type) const;
};
LineStatistics line_statistics(const Arc& spatial);

std::string json_certificate(const ExclusionReport& r);

}  // namespace pgarcs

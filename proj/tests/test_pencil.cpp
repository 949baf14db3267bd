#include <gtest/gtest.h>

#include <set>

#include "pgarcs/pencil.hpp"

using namespace pgarcs;

namespace {

const PencilUniverse& universe() {
  static const ResidualLibrary lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  static const PencilUniverse u = PencilUniverse::build(lib);
  return u;
}

Arc exceptional(int card) {
  static auto S = ProjectiveSpace::build(4, 5);
  return read_generator_file(PGARCS_SOURCE_DIR "/data/exceptional" + std::to_string(card) + ".genmat", S, card);
}

std::set<std::string> type_names(const std::vector<int>& types) {
  std::set<std::string> out;
  for (int t : types) out.insert(std::string(kLineTypes[t].name));
  return out;
}

}  // namespace

TEST(Universe, Sizes) {
  const auto& u = universe();
  EXPECT_EQ(u.residuals.size(), 178u);
  EXPECT_EQ(u.pencils.size(), 1288u);
}

TEST(Exclusion, SmallTargetsEmpty) {
  for (int target : {108, 113, 118, 123, 133, 138, 148, 153, 158, 163}) {
    auto r = run_fixpoint(universe(), target);
    EXPECT_TRUE(r.complete) << target;
    EXPECT_TRUE(r.empty) << target;
  }
}

TEST(Exclusion, Target128MatchesArc) {
  auto s = run_fixpoint_state(universe(), 128);
  auto r = report_of(s);
  ASSERT_FALSE(r.empty);
  EXPECT_EQ(std::set<std::string>(r.line_types.begin(), r.line_types.end()),
            (std::set<std::string>{"A1", "A2", "A3", "B2", "B3", "B8"}));
  EXPECT_EQ(r.pencils.size(), 16u);
  EXPECT_EQ(r.residuals.size(), 4u);

  auto sk = skeleton_of(exceptional(128));
  EXPECT_EQ(type_names(sk.line_types), std::set<std::string>(r.line_types.begin(), r.line_types.end()));
  std::set<PencilProfile> alive;
  for (size_t p = 0; p < s.pencil_alive.size(); ++p)
    if (s.pencil_alive[p]) alive.insert(universe().pencils[p]);
  EXPECT_EQ(alive, std::set<PencilProfile>(sk.pencils.begin(), sk.pencils.end()));
  std::set<PlanarSignature> sigs;
  for (size_t i = 0; i < s.residual_alive.size(); ++i)
    if (s.residual_alive[i]) sigs.insert(universe().residuals[i].signature);
  EXPECT_EQ(sigs, std::set<PlanarSignature>(sk.planes.begin(), sk.planes.end()));
}

TEST(Exclusion, Target143MatchesArc) {
  auto r = run_fixpoint(universe(), 143);
  ASSERT_FALSE(r.empty);
  EXPECT_EQ(std::set<std::string>(r.line_types.begin(), r.line_types.end()), (std::set<std::string>{"A1", "A3", "B2", "B5"}));
  EXPECT_EQ(r.pencils.size(), 9u);
  EXPECT_EQ(r.residuals.size(), 3u);
  auto sk = skeleton_of(exceptional(143));
  EXPECT_EQ(type_names(sk.line_types), std::set<std::string>(r.line_types.begin(), r.line_types.end()));
}

TEST(Exclusion, Target168) {
  auto r = run_fixpoint(universe(), 168);
  ASSERT_FALSE(r.empty);
  std::set<std::string> types(r.line_types.begin(), r.line_types.end());
  for (const char* t : {"A1", "A3", "B2", "B5", "D1"}) EXPECT_TRUE(types.count(t)) << t;
  EXPECT_EQ(std::set<int>(r.residual_cards.begin(), r.residual_cards.end()), (std::set<int>{28, 33, 43}));
  // The known arc must survive: its planes are all still admitted.
  auto sk = skeleton_of(exceptional(168));
  for (int t : sk.line_types) EXPECT_TRUE(types.count(std::string(kLineTypes[t].name)));
}

TEST(Exclusion, ClusterScaleNeedsFlag) {
  EXPECT_THROW(run_fixpoint(universe(), 203), std::invalid_argument);
}

TEST(Exclusion, Deterministic) {
  auto a = json_certificate(run_fixpoint(universe(), 143));
  auto b = json_certificate(run_fixpoint(universe(), 143));
  EXPECT_EQ(a, b);
}

TEST(Exclusion, CertificateListsRules) {
  auto r = run_fixpoint(universe(), 118);
  EXPECT_TRUE(r.empty);
  EXPECT_FALSE(r.trace.empty());
  auto text = json_certificate(r);
  EXPECT_NE(text.find("\"EMPTY\""), std::string::npos);
}

TEST(LambdaExclusion, FirstPresetAt173) {
  auto pre = preset_lambda_exclusions(173);
  ASSERT_EQ(pre.size(), 6u);
  auto r = lambda_exclude(universe(), 173, pre.front());
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.excluded);
}

TEST(LambdaExclusion, KnownArcIsNotExcluded) {
  // The exceptional 128-arc has this point distribution, so it cannot be excluded.
  auto r = lambda_exclude(universe(), 128, Lambda{80, 40, 20, 16});
  EXPECT_FALSE(r.excluded);
  EXPECT_THROW(lambda_exclude(universe(), 128, Lambda{80, 40, 20, 15}), std::invalid_argument);
}

TEST(FullPencils, A1AtZeroPointFor128) {
  auto s = init_state(universe(), 128);
  run_cheap_fixpoint(s);
  auto l = enumerate_full_pencils(s, line_type_by_name("A1"), 0);
  ASSERT_TRUE(l.complete);
  EXPECT_FALSE(l.full_id.empty());
  // The full pencil at a 0-point of the known arc is among the candidates.
  auto sk = skeleton_of(exceptional(128));
  const FullPencilProfile* zero = nullptr;
  for (const auto& f : sk.fulls)
    if (f.center == 0) zero = &f;
  ASSERT_NE(zero, nullptr);
  bool found = false;
  for (size_t i = 0; i < l.full_id.size(); ++i) found = found || (s.fulls[l.full_id[i]] == *zero && l.alive[i]);
  EXPECT_TRUE(found);
  EXPECT_EQ(zero->lambda(), (Lambda{80, 40, 20, 16}));
  EXPECT_EQ(zero->cardinality(), 128);
}

TEST(LowerBound, FromSignature) {
  const auto& u = universe();
  std::map<int, std::set<int>> bounds;
  for (const auto& r : u.residuals) bounds[r.card].insert(lift_lower_bound(u, r.signature));
  EXPECT_TRUE(bounds[33].count(108));
  EXPECT_TRUE(bounds[43].count(118));
  EXPECT_TRUE(bounds[68].count(168));
}

TEST(LineStatistics, Exceptional128) {
  auto st = line_statistics(exceptional(128));
  const std::map<std::string, std::pair<int, std::string>> want{
      {"A1", {96, "23^5 28^1"}},          {"A2", {240, "18^1 23^4 33^1"}}, {"A3", {160, "18^2 23^2 28^1 33^1"}},
      {"B2", {120, "23^2 28^2 33^2"}}, {"B3", {160, "23^3 33^3"}},       {"B8", {30, "18^2 33^4"}}};
  int total = 0;
  for (int t = 0; t < kNumLineTypes; ++t) {
    total += st.count[t];
    auto it = want.find(std::string(kLineTypes[t].name));
    if (it == want.end()) {
      EXPECT_EQ(st.count[t], 0) << kLineTypes[t].name;
      continue;
    }
    EXPECT_EQ(st.count[t], it->second.first);
    EXPECT_EQ(st.hyperplane_string(t), it->second.second);
  }
  EXPECT_EQ(total, 806);
}

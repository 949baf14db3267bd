#include <gtest/gtest.h>

#include <random>

#include "pgarcs/isomorphism.hpp"
#include "pgarcs/planar.hpp"

using namespace pgarcs;

namespace {

Arc exceptional(int card) {
  static auto S = ProjectiveSpace::build(4, 5);
  return read_generator_file(PGARCS_SOURCE_DIR "/data/exceptional" + std::to_string(card) + ".genmat", S, card);
}

void expect_invariant(const Arc& a, std::mt19937_64& rng, int images) {
  auto base = canonical_form(a);
  ASSERT_TRUE(base.decided);
  EXPECT_EQ(pullback(a, base.transform), base.form);
  for (int i = 0; i < images; ++i) {
    Mat g = random_invertible_matrix(a.geom().v(), a.geom().field(), rng);
    Arc b = push_forward(a, g);
    ASSERT_EQ(b.cardinality(), a.cardinality());
    auto c = canonical_form(b);
    ASSERT_TRUE(c.decided);
    ASSERT_EQ(c.form, base.form) << "image " << i;
  }
}

}  // namespace

TEST(CanonicalForm, InvariantUnderCollineationsSpatial) {
  std::mt19937_64 rng(101);
  for (int card : {128, 143, 168}) expect_invariant(exceptional(card), rng, 100);
}

TEST(CanonicalForm, InvariantUnderCollineationsPlanar) {
  auto lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  std::mt19937_64 rng(102);
  for (int card : {18, 33, 53, 68})
    for (const auto& a : lib.by_card.at(card)) expect_invariant(a, rng, 100);
}

TEST(CanonicalForm, Idempotent) {
  auto a = exceptional(143);
  auto c = canonical_form(a);
  auto cc = canonical_form(c.form);
  EXPECT_EQ(cc.form, c.form);
}

TEST(CanonicalForm, SeparatesLibraryClasses) {
  auto lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  std::set<std::vector<int>> forms;
  for (const auto& [card, arcs] : lib.by_card)
    for (const auto& a : arcs) forms.insert(canonical_form(a).form.mult());
  EXPECT_EQ(forms.size(), 185u);
}

TEST(Automorphisms, EmptyArcIsWholeGroup) {
  auto P = ProjectiveSpace::build(3, 5);
  auto r = automorphism_order(Arc(P));
  ASSERT_TRUE(r.decided);
  EXPECT_EQ(r.order, 372000);
  EXPECT_EQ(r.order, pgl_order(3, 5));
  EXPECT_EQ(r.linear_order, 4 * 372000);
}

TEST(Automorphisms, ExceptionalArcs) {
  const std::map<int, long long> want{{128, 7680}, {143, 62400}, {168, 57600}};
  for (auto [card, order] : want) {
    auto r = automorphism_order(exceptional(card));
    ASSERT_TRUE(r.decided);
    EXPECT_EQ(r.linear_order, order) << card;
    EXPECT_EQ(r.order * 4, order) << card;
  }
}

TEST(Automorphisms, BudgetGivesUndecided) {
  SearchBudget tiny;
  tiny.max_nodes = 3;
  auto r = automorphism_order(exceptional(168), tiny);
  EXPECT_FALSE(r.decided);
  auto c = canonical_form(exceptional(168), tiny);
  EXPECT_FALSE(c.decided);
}

TEST(Isomorphism, ImageAndMap) {
  std::mt19937_64 rng(103);
  Arc a = exceptional(128);
  Mat g = random_invertible_matrix(4, a.geom().field(), rng);
  Arc b = push_forward(a, g);
  auto r = are_isomorphic(a, b);
  ASSERT_EQ(r.verdict, Verdict::Yes);
  ASSERT_TRUE(r.map);
  EXPECT_EQ(push_forward(a, *r.map), b);
  EXPECT_EQ(are_isomorphic(a, a).verdict, Verdict::Yes);
}

TEST(Isomorphism, IlpArcsAt168) {
  auto S = ProjectiveSpace::build(4, 5);
  Arc a = read_generator_file(PGARCS_SOURCE_DIR "/data/ilp168_solution_a.genmat", S, 168);
  Arc b = read_generator_file(PGARCS_SOURCE_DIR "/data/ilp168_solution_b.genmat", S, 168);
  EXPECT_EQ(are_isomorphic(a, exceptional(168)).verdict, Verdict::No);  // a is lifted
  EXPECT_EQ(are_isomorphic(b, exceptional(168)).verdict, Verdict::Yes);
  auto lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  const auto& c33 = lib.by_card.at(33);
  EXPECT_EQ(are_isomorphic(c33[0], c33[1]).verdict, Verdict::No);
}

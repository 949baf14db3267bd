#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pgarcs/proofs.hpp"

using namespace pgarcs;

namespace {

const ResidualLibrary& library() {
  static const ResidualLibrary lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  return lib;
}

std::vector<DualCandidate> exceptional_duals() {
  auto S = ProjectiveSpace::build(4, 5);
  std::vector<DualCandidate> out;
  for (int card : {128, 143, 168}) {
    std::string name = "exceptional" + std::to_string(card);
    out.push_back({name, read_generator_file(PGARCS_SOURCE_DIR "/data/" + name + ".genmat", S, card), false});
  }
  return out;
}

std::string join(const std::array<int, 6>& w) {
  std::string s;
  for (int x : w) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// Planar standard equations for a projective spectrum of an n-set.
bool planar_standard_equations(const std::vector<int>& a, int n, int q) {
  long long lines = 0, incid = 0, pairs = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    lines += a[i];
    incid += static_cast<long long>(i) * a[i];
    pairs += static_cast<long long>(i) * (static_cast<long long>(i) - 1) / 2 * a[i];
  }
  return lines == q * q + q + 1 && incid == static_cast<long long>(n) * (q + 1) && pairs == static_cast<long long>(n) * (n - 1) / 2;
}

}  // namespace

TEST(Parameters, GapsAndBounds) {
  ArcParameters par;
  EXPECT_EQ(planar_gap_values(par), (std::vector<int>{2, 3, 7, 8, 12, 13, 17, 18}));
  EXPECT_EQ(par.contribution_rhs(), 468);
  const std::vector<int> maxarc{1, 6, 11, 16, 25};
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(max_planar_arc(r, 5), maxarc[r - 1]);
  EXPECT_EQ(par.dual_value(22), 0);
  EXPECT_EQ(par.dual_value(21), 1);
  EXPECT_EQ(par.dual_value(4), 3);
}

TEST(SpectrumFamilies, KnownClosedForms) {
  auto f = planar_spectrum_family(22, 5);
  EXPECT_EQ(f.str(),
            "(22,5)-arcs in PG(2,5): a1 = 0; a3 = 13 - 10a0 - 3a2; a4 = -3 + 15a0 + 3a2; a5 = 21 - 6a0 - a2; "
            "0 <= a0 <= 1; 0 <= a2 <= 4; 6 instance(s)");
  EXPECT_EQ(planar_spectrum_family(9, 3).ranges, (std::vector<std::pair<int, int>>{{6, 12}}));
  EXPECT_EQ(planar_spectrum_family(10, 3).ranges, (std::vector<std::pair<int, int>>{{10, 15}}));
  EXPECT_EQ(planar_spectrum_family(11, 3).ranges, (std::vector<std::pair<int, int>>{{15, 18}}));
  auto six = planar_spectrum_family(6, 2);
  ASSERT_EQ(six.instances.size(), 1u);
  EXPECT_EQ(six.instances[0], (std::vector<int>{10, 6, 15}));
}

TEST(SpectrumFamilies, InstancesSolveStandardEquations) {
  for (int s = 1; s <= 5; ++s) {
    for (int n = 0; n <= max_planar_arc(s, 5); ++n) {
      auto f = planar_spectrum_family(n, s);
      for (const auto& a : f.instances) {
        ASSERT_EQ(static_cast<int>(a.size()), s + 1);
        ASSERT_TRUE(planar_standard_equations(a, n, 5)) << n << "," << s;
        for (int z : f.forced_zero) ASSERT_EQ(a[z], 0);
        std::vector<int> params;
        for (int p : f.params) params.push_back(a[p]);
        for (int i = 0; i <= s; ++i) ASSERT_EQ(f.a[i].eval(params), a[i]);
      }
    }
  }
}

TEST(EtaTables, MatchGolden) {
  std::ifstream in(PGARCS_SOURCE_DIR "/golden/eta_tables.tsv");
  ASSERT_TRUE(in);
  std::string line;
  std::getline(in, line);
  std::map<int, EtaTable> tables;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    int m, i, j;
    long long eta;
    std::string w;
    ASSERT_TRUE(is >> m >> i >> j >> eta >> w) << line;
    if (!tables.count(m)) tables.emplace(m, eta_table(m, narrowed_allowed(m)));
    const auto& t = tables.at(m);
    EXPECT_EQ(t.eta(i, j), eta) << m << " (" << i << "," << j << ")";
    auto it = t.entries.find({i, j});
    ASSERT_NE(it, t.entries.end());
    EXPECT_EQ(join(it->second.witness), w);
    ++rows;
  }
  EXPECT_EQ(rows, 49);
}

TEST(Exclusion, EveryOrderedSizeIsInfeasible) {
  for (int m : exclusion_order()) {
    auto r = exclusion_infeasible(m, narrowed_allowed(m));
    EXPECT_TRUE(r.infeasible) << m;
    EXPECT_TRUE(r.step.holds) << m;
    EXPECT_GT(r.candidates, 0) << m;
  }
}

TEST(Exclusion, DualBoundIsNeeded) {
  // Without the lower bound on the dual only the 1-line bound still bites.
  for (int m : exclusion_order()) {
    auto r = exclusion_infeasible(m, narrowed_allowed(m), {}, 0);
    EXPECT_EQ(r.infeasible, m == 1) << m;
    if (!r.infeasible) {
      EXPECT_FALSE(r.witness.empty());
      EXPECT_GE(r.witness_contribution, ArcParameters{}.contribution_rhs());
    }
  }
}

TEST(Exclusion, Size14IsNotReached) {
  EXPECT_FALSE(exclusion_infeasible(14, narrowed_allowed(14)).infeasible);
}

TEST(NarrowedAllowed, RemovesEarlierSizes) {
  // Sizes outside the exclusion order only lose the gaps.
  EXPECT_EQ(narrowed_allowed(1), (std::vector<int>{0, 1, 4, 5, 6, 9, 10, 11, 14, 15, 16, 19, 20, 21, 22}));
  EXPECT_EQ(narrowed_allowed(22), (std::vector<int>{14, 15, 16, 19, 20, 21, 22}));
  EXPECT_EQ(narrowed_allowed(14), narrowed_allowed(1));
}

TEST(OneLine, PlaneBound) {
  auto a = check_a1();
  EXPECT_EQ(a.neighbour_cap, 21);
  EXPECT_EQ(a.bound, 101);
  EXPECT_TRUE(a.excluded);
  ArcParameters p100;
  p100.n = 100;
  auto b = check_a1(p100, {}, 21);
  EXPECT_EQ(b.bound, 101);
  EXPECT_FALSE(b.excluded);
  auto c = check_a1({}, {}, 22);
  EXPECT_EQ(c.bound, 106);
  EXPECT_FALSE(c.excluded);
}

TEST(Structure, ThreefoldAndFullHyperplane) {
  auto S = ProjectiveSpace::build(4, 5);
  Arc cone = lift(library().by_card.at(23).front(), S);
  EXPECT_TRUE(has_threefold_line_plane(cone));
  auto ex = exceptional_duals();
  EXPECT_FALSE(has_threefold_line_plane(ex[0].arc));
  Arc plane3 = scale(characteristic(S, S->hyperplane_points(0)), 3);
  EXPECT_TRUE(has_threefold_line_plane(plane3));
  EXPECT_TRUE(has_full_hyperplane(lift(library().by_card.at(18).front(), S)));
  for (const auto& d : ex) EXPECT_FALSE(has_full_hyperplane(d.arc)) << d.name;
}

TEST(Proof, No104) {
  ProofInputs in;
  in.library = &library();
  in.nonlifted = exceptional_duals();
  auto log = prove_no_104_22(in);
  EXPECT_TRUE(log.concluded) << log.transcript();
  for (const auto& s : log.steps) EXPECT_TRUE(s.holds) << s.rule << ": " << s.conclusion;
  EXPECT_EQ(log.to_json(), prove_no_104_22(in).to_json());
}

TEST(Proof, Variant103) {
  ProofInputs in;
  in.library = &library();
  in.nonlifted = exceptional_duals();
  auto log = prove_103_22(in);
  EXPECT_TRUE(log.concluded) << log.transcript();
}

TEST(Proof, FilterWithoutIlpIsInsufficient) {
  ProofInputs in;
  in.library = &library();
  in.nonlifted = exceptional_duals();
  in.filter.use_ilp = false;
  EXPECT_FALSE(prove_no_104_22(in).concluded);
}

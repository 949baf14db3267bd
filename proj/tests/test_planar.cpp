#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "pgarcs/line_types.hpp"
#include "pgarcs/planar.hpp"

using namespace pgarcs;

namespace {

const ResidualLibrary& library() {
  static const ResidualLibrary lib = ResidualLibrary::read(PGARCS_SOURCE_DIR "/residuals/q5t3");
  return lib;
}

// Every multiset of the given size, visited as a multiplicity vector.
template <class F>
void for_each_multiset(int points, int size, std::vector<int>& m, int from, F&& f) {
  if (size == 0) {
    f(m);
    return;
  }
  for (int p = from; p < points; ++p) {
    ++m[p];
    for_each_multiset(points, size - 1, m, p, f);
    --m[p];
  }
}

}  // namespace

TEST(Classify, SmallCardinalities) {
  const std::map<int, size_t> want{{18, 4}, {23, 1}, {28, 1}, {33, 10}, {38, 23}, {73, 0}, {93, 1}};
  for (auto [card, n] : want) {
    auto r = classify_strong_planar(5, 3, card);
    ASSERT_TRUE(r.complete);
    EXPECT_EQ(r.classes.size(), n) << card;
    for (const auto& a : r.classes) {
      EXPECT_TRUE(is_strong(a, 3));
      EXPECT_EQ(a.cardinality(), card);
    }
  }
}

TEST(Classify, LibraryMatchesFreshRun) {
  for (int card : {18, 33, 38}) {
    auto r = classify_strong_planar(5, 3, card);
    EXPECT_EQ(r.classes, library().by_card.at(card)) << card;
  }
}

TEST(Classify, RejectsBadCardinality) {
  EXPECT_THROW(classify_strong_planar(5, 3, 20), std::invalid_argument);
}

TEST(Classify, BudgetReported) {
  PlanarClassifyOptions opt;
  opt.max_nodes = 10;
  auto r = classify_strong_planar(5, 3, 43, opt);
  EXPECT_FALSE(r.complete);
}

TEST(Signatures, LibraryCensusMatchesGolden) {
  auto want = read_signature_table(PGARCS_SOURCE_DIR "/golden/planar_signatures.tsv");
  EXPECT_EQ(library().census(), want);
}

TEST(Signatures, RowInvariants) {
  for (const auto& s : library().census()) {
    int lines = 0, incid = 0, pts = 0, weight = 0;
    for (int t = 0; t < kNumLineTypes; ++t) {
      lines += s.types[t];
      incid += s.types[t] * kLineTypes[t].sum();
    }
    for (int j = 0; j < 4; ++j) {
      pts += s.lambda[j];
      weight += j * s.lambda[j];
    }
    EXPECT_EQ(lines, 31);
    EXPECT_EQ(pts, 31);
    EXPECT_EQ(weight, s.card);
    EXPECT_EQ(incid, 6 * s.card);
  }
}

TEST(Signatures, Card33HasOneDoubleRow) {
  std::vector<PlanarSignature> rows;
  for (const auto& s : library().census())
    if (s.card == 33) rows.push_back(s);
  ASSERT_EQ(rows.size(), 9u);
  int doubles = 0;
  for (const auto& s : rows) doubles += s.classes == 2;
  EXPECT_EQ(doubles, 1);
}

TEST(Signatures, Card93) {
  const auto& c = library().by_card.at(93);
  ASSERT_EQ(c.size(), 1u);
  auto s = planar_signature(c.front());
  EXPECT_EQ(s.types[line_type_by_name("D1")], 31);
  EXPECT_EQ(s.lambda, (std::array<int, 4>{0, 0, 0, 31}));
}

TEST(Minihyper, RoundTrip) {
  auto counts = std::map<int, int>{};
  for (const auto& [card, arcs] : library().by_card) {
    for (const auto& a : arcs) {
      Arc b = minihyper_transform(a, 3);
      EXPECT_EQ(inverse_minihyper_transform(b, 3), a);
      counts[card] = b.cardinality();
    }
  }
  // Minihyper sizes from the class count table.
  std::ifstream in(PGARCS_SOURCE_DIR "/golden/planar_class_counts.tsv");
  std::string line;
  std::getline(in, line);
  int card, m, mh, classes;
  while (in >> card >> m >> mh >> classes)
    if (counts.count(card)) EXPECT_EQ(counts[card], mh) << card;
}

TEST(TwoModQ, Q5HasExactlyTheSevenCases) {
  auto s = two_mod_q_spectra(5);
  std::set<int> cases;
  for (const auto& r : s) {
    EXPECT_NE(r.case_label, 0) << "extra solution n=" << r.n;
    cases.insert(r.case_label);
  }
  EXPECT_EQ(cases, (std::set<int>{1, 2, 3, 4, 5, 6, 7}));
  TwoModQSpectrum c1{12, 29, 2, 0, 20, 10, 1, 1};
  EXPECT_NE(std::find(s.begin(), s.end(), c1), s.end());
  auto c7 = std::find_if(s.begin(), s.end(), [](const auto& r) { return r.n == 62; });
  ASSERT_NE(c7, s.end());
  EXPECT_EQ(c7->a2q2, 31);
  EXPECT_EQ(c7->lambda2, 31);
}

TEST(TwoModQ, SmallFieldExtras) {
  auto extras = [](int q) {
    std::vector<TwoModQSpectrum> out;
    for (const auto& r : two_mod_q_spectra(q))
      if (r.case_label == 0) out.push_back(r);
    return out;
  };
  auto e3 = extras(3);
  ASSERT_EQ(e3.size(), 1u);
  EXPECT_EQ(e3[0], (TwoModQSpectrum{11, 7, 6, 0, 6, 3, 4}));
  auto e4 = extras(4);
  ASSERT_EQ(e4.size(), 2u);
  EXPECT_EQ(e4[0], (TwoModQSpectrum{14, 14, 7, 0, 14, 0, 7}));
  EXPECT_EQ(e4[1], (TwoModQSpectrum{18, 9, 12, 0, 12, 0, 9}));
}

TEST(TwoModQ, ClassesCarryModelLabels) {
  auto cls = classify_strong_two_mod_q(5);
  std::multiset<std::string> labels;
  for (const auto& c : cls) labels.insert(c.label);
  EXPECT_EQ(labels, (std::multiset<std::string>{"I-1", "I-2", "II-1", "II-2", "II-3", "III", "IV"}));
  for (const auto& c : cls) {
    EXPECT_TRUE(is_strong(c.arc, 2));
    if (c.label == "IV") EXPECT_EQ(c.arc.cardinality(), 32);
  }
}

// A (t mod 3)-arc of size 4t in PG(2,3) is a sum of t lines, checked over every multiset.
TEST(SumOfLines, ExhaustivePG23) {
  auto P = ProjectiveSpace::build(3, 3);
  const int N = P->num_points();
  for (int t : {1, 2}) {
    std::set<std::vector<int>> line_sums;
    for (int a = 0; a < P->num_lines(); ++a) {
      std::vector<int> m(N, 0);
      for (int p : P->line_points(a)) ++m[p];
      if (t == 1) {
        line_sums.insert(m);
        continue;
      }
      for (int b = a; b < P->num_lines(); ++b) {
        auto mm = m;
        for (int p : P->line_points(b)) ++mm[p];
        line_sums.insert(mm);
      }
    }
    std::vector<int> m(N, 0);
    long long arcs = 0;
    for_each_multiset(N, 4 * t, m, 0, [&](const std::vector<int>& mult) {
      Arc a(P, mult);
      if (!is_t_mod_q(a, t)) return;
      ++arcs;
      EXPECT_TRUE(line_sums.count(mult)) << "t=" << t;
    });
    EXPECT_EQ(arcs, static_cast<long long>(line_sums.size())) << "t=" << t;
  }
}

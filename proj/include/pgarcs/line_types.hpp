#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "pgarcs/arc.hpp"

namespace pgarcs {

// Line types of strong (3 mod 5)-arcs in PG(2,5): sorted multiplicity patterns on a line.
inline constexpr int kNumLineTypes = 17;
using LineTuple = std::array<int, 6>;  // non-increasing

struct LineType {
  std::string_view name;
  LineTuple mults;
  int sum() const { return mults[0] + mults[1] + mults[2] + mults[3] + mults[4] + mults[5]; }
  // Occurrences of multiplicity m among the six points.
  int count(int m) const {
    int c = 0;
    for (int x : mults) c += (x == m);
    return c;
  }
  bool contains(int m) const { return count(m) > 0; }
};

inline constexpr std::array<LineType, kNumLineTypes> kLineTypes{{
    {"A1", {3, 0, 0, 0, 0, 0}}, {"A2", {2, 1, 0, 0, 0, 0}}, {"A3", {1, 1, 1, 0, 0, 0}},
    {"B1", {3, 3, 2, 0, 0, 0}}, {"B2", {3, 3, 1, 1, 0, 0}}, {"B3", {3, 2, 2, 1, 0, 0}},
    {"B4", {3, 2, 1, 1, 1, 0}}, {"B5", {3, 1, 1, 1, 1, 1}}, {"B6", {2, 2, 2, 2, 0, 0}},
    {"B7", {2, 2, 2, 1, 1, 0}}, {"B8", {2, 2, 1, 1, 1, 1}}, {"C1", {3, 3, 3, 3, 1, 0}},
    {"C2", {3, 3, 3, 2, 2, 0}}, {"C3", {3, 3, 3, 2, 1, 1}}, {"C4", {3, 3, 2, 2, 2, 1}},
    {"C5", {3, 2, 2, 2, 2, 2}}, {"D1", {3, 3, 3, 3, 3, 3}},
}};

// Index into kLineTypes of a (not necessarily sorted) multiplicity pattern, -1 if none.
int line_type_index(LineTuple mults);
int line_type_by_name(std::string_view name);

using LineTypeCensus = std::array<int, kNumLineTypes>;

// Census of line types of a planar strong (3 mod 5)-arc over PG(2,5).
// Throws std::invalid_argument when a line pattern is not one of the 17 types.
LineTypeCensus line_type_census(const Arc& planar);
// Type index of every line of the plane.
std::vector<int> line_type_per_line(const Arc& planar);

}  // namespace pgarcs

#include "pgarcs/line_types.hpp"

#include <algorithm>
#include <functional>

namespace pgarcs {

int line_type_index(LineTuple mults) {
  std::sort(mults.begin(), mults.end(), std::greater<>());
  for (int i = 0; i < kNumLineTypes; ++i)
    if (kLineTypes[i].mults == mults) return i;
  return -1;
}

int line_type_by_name(std::string_view name) {
  for (int i = 0; i < kNumLineTypes; ++i)
    if (kLineTypes[i].name == name) return i;
  return -1;
}

std::vector<int> line_type_per_line(const Arc& planar) {
  const auto& S = planar.geom();
  if (S.v() != 3 || S.q() != 5) throw std::invalid_argument("line types are defined for PG(2,5)");
  std::vector<int> out(S.num_lines());
  for (int l = 0; l < S.num_lines(); ++l) {
    LineTuple t{};
    const auto& pts = S.line_points(l);
    for (int k = 0; k < 6; ++k) t[k] = planar[pts[k]];
    int idx = line_type_index(t);
    if (idx < 0) throw std::invalid_argument("line pattern outside the strong (3 mod 5) types");
    out[l] = idx;
  }
  return out;
}

LineTypeCensus line_type_census(const Arc& planar) {
  LineTypeCensus c{};
  for (int idx : line_type_per_line(planar)) ++c[idx];
  return c;
}

}  // namespace pgarcs

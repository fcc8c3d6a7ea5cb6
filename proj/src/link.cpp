#include "shadow_wlo/link.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace shadow_wlo {

void AbstractLink::validate(const LieData& lie) const {
  if (genus < 0) throw std::invalid_argument("link: genus must be >= 0");
  for (int i = 0; i < size(); ++i) {
    const auto& r = ribbons[i];
    const std::string where = "link[" + std::to_string(i) + "]";
    if (r.color.rank() != lie.rank()) throw std::invalid_argument(where + ".color: wrong length");
    if (!r.color.dominant()) throw std::invalid_argument(where + ".color: coordinates must be nonnegative");
    if (r.sign != 1 && r.sign != -1) throw std::invalid_argument(where + ".sign: must be +1 or -1");
    if (r.parent < -1 || r.parent >= size() || r.parent == i)
      throw std::invalid_argument(where + ".parent: out of range");
  }
  // parents must form a forest
  for (int i = 0; i < size(); ++i) {
    int p = ribbons[i].parent;
    for (int steps = 0; p >= 0; ++steps) {
      if (steps > size()) throw std::invalid_argument("link[" + std::to_string(i) + "].parent: cycle");
      p = ribbons[p].parent;
    }
  }
}

std::vector<int> AbstractLink::children(int ribbon) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (ribbons[i].parent == ribbon) out.push_back(i);
  return out;
}

std::vector<int> AbstractLink::ancestry(int r) const {
  std::vector<int> out;
  for (int p = r; p >= 0; p = ribbons[p].parent) out.push_back(p);
  std::reverse(out.begin(), out.end());
  return out;
}

int LinkGeometry::gleam(int face) const {
  int g = 0;
  for (int i = 0; i < num_ribbons(); ++i) {
    if (plus_face[i] == face) g += winding[i];
    if (minus_face[i] == face) g -= winding[i];
  }
  return g;
}

int LinkGeometry::euler_sum() const {
  int s = 0;
  for (int c : chi) s += c;
  return s;
}

LinkGeometry abstract_geometry(const AbstractLink& link) {
  const int m = link.size();
  LinkGeometry g;
  g.genus = link.genus;
  g.chi.assign(m + 1, 0);
  g.u.assign(m + 1, std::vector<int>(m, 0));
  g.chi[0] = 2 - 2 * link.genus - static_cast<int>(link.children(-1).size());
  for (int i = 0; i < m; ++i) {
    const auto& r = link.ribbons[i];
    g.colors.push_back(r.color);
    g.winding.push_back(r.winding);
    g.chi[i + 1] = 1 - static_cast<int>(link.children(i).size());
    // the potential of ribbon i is -sign on the closed region it bounds
    for (int a : link.ancestry(i)) g.u[i + 1][a] = -link.ribbons[a].sign;
    const int inside = i + 1, outside = r.parent + 1;
    g.plus_face.push_back(r.sign < 0 ? inside : outside);
    g.minus_face.push_back(r.sign < 0 ? outside : inside);
  }
  return g;
}

}  // namespace shadow_wlo

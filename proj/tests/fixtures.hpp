#pragma once

#include <random>
#include <string>
#include <vector>

#include "topologic/decide.hpp"
#include "topologic/space.hpp"

namespace fixtures {

using namespace topologic;

inline std::string data(const std::string& name) { return std::string(TOPOLOGIC_TEST_DATA) + "/" + name; }

// Three points, opens {∅,{0},{0,1},X}, i(A)={0}, i(B)={0,1}.
inline Model m0() {
  return Model(make_space(3, {PointSet(), PointSet::of({0}), PointSet::of({0, 1}), PointSet::full(3)}),
               {{"A", PointSet::of({0})}, {"B", PointSet::of({0, 1})}});
}

inline Model random_model(std::mt19937_64& rng, std::size_t max_points,
                          const std::vector<std::string>& atom_list) {
  const std::size_t n = 1 + rng() % max_points;
  SubsetSpace space = random_topology(n, rng);
  std::map<std::string, PointSet> val;
  for (const auto& a : atom_list) val[a] = PointSet(rng() & PointSet::full(n).bits());
  return Model(std::move(space), std::move(val));
}

}  // namespace fixtures

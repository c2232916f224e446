#pragma once

#include <string>
#include <vector>

#include "critlat/io.hpp"
#include "oracles.hpp"

namespace corpus {

  // Every lattice with at most `max_size` elements, up to isomorphism.
  inline std::vector<critlat::LatticePtr> all_small(std::size_t max_size) {
    std::vector<critlat::LatticePtr> result;
    for (std::size_t n = 1; n <= max_size; ++n) {
      auto level = oracle::lattices_of_size(n);
      result.insert(result.end(), level.begin(), level.end());
    }
    return result;
  }

  inline std::vector<critlat::LatticePtr> named() {
    std::vector<critlat::LatticePtr> result;
    for (std::string name : {"M:3", "M:4", "M:5", "N5", "chain:1", "chain:2",
                             "chain:3", "chain:4", "chain:5", "bool:3", "F22"}) {
      result.push_back(critlat::load_lattice(name));
    }
    return result;
  }

  // The small exhaustive corpus plus the named lattices; cached.
  inline std::vector<critlat::LatticePtr> const& standard() {
    static std::vector<critlat::LatticePtr> const all = [] {
      auto v = all_small(6);
      auto n = named();
      v.insert(v.end(), n.begin(), n.end());
      return v;
    }();
    return all;
  }

}  // namespace corpus

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "critlat/congruence.hpp"
#include "critlat/lattice.hpp"

namespace critlat {

  using json = nlohmann::json;

  //! Builtin generators:
  //!   "2"        two-element chain
  //!   "chain:n"  chain of length n, labels 0, y1, ..., y(n-1), 1
  //!   "M:n"      0, x1, ..., xn, 1 with n pairwise incomparable atoms
  //!   "N5"       0 < x1 < x2 < 1 and 0 < x3 < 1
  //!   "bool:n"   2^n with bitstring labels
  //!   "F22"      free bounded lattice on x1, x2
  //!   "dual:R"   dual of any reference R
  //! Returns nullptr when `name` is not a builtin.
  LatticePtr builtin_lattice(std::string const& name);

  //! A builtin name or a path to a lattice JSON file. Raises ParseError.
  LatticePtr load_lattice(std::string const& ref);

  //! {"schema": 1, "name", "elements", "covers": [[lower, upper], ...]}
  json       lattice_to_json(FiniteLattice const& lattice);
  //! Accepts the format above; "schema" and "name" are optional.
  LatticePtr lattice_from_json(json const& j);
  //! A string is a reference (builtin or path), an object is inline.
  LatticePtr lattice_from_ref(json const& j);

  //! Hasse diagram: one node per element, one edge per cover, ranks by height.
  std::string lattice_to_dot(FiniteLattice const& lattice);

  //! Blocks as lists of labels.
  json       congruence_to_json(Congruence const& theta);
  Congruence congruence_from_json(LatticePtr const& host, json const& j);

  std::string read_file(std::string const& path);

}  // namespace critlat

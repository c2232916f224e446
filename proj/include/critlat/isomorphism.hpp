#pragma once

#include <optional>
#include <vector>

#include "critlat/lattice.hpp"

namespace critlat {

  //! Sorted per-element invariants (height, cover degrees, ideal and filter
  //! sizes). Isomorphic lattices have equal signatures.
  std::vector<std::size_t> invariant_signature(FiniteLattice const& lattice);

  //! An order isomorphism K -> L if one exists. The witness is the
  //! lexicographically least image vector (elements of K in index order,
  //! candidates in L in index order).
  std::optional<Homomorphism> is_isomorphic(LatticePtr const& k,
                                            LatticePtr const& l,
                                            Limits const&     limits = {});

  //! An isomorphism K -> dual(L), reported with L's own element indices.
  std::optional<Homomorphism> is_dual_isomorphic(LatticePtr const& k,
                                                 LatticePtr const& l,
                                                 Limits const&     limits = {});

  //! Injective map from K into L preserving every defined meet and join, and
  //! the bounds when K has them. Lexicographically least witness; raises
  //! BudgetExceeded after limits.max_search_nodes search nodes.
  std::optional<std::vector<Elem>> embed_partial(PartialLattice const& k,
                                                 FiniteLattice const&  l,
                                                 Limits const& limits = {});

}  // namespace critlat

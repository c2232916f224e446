#pragma once

#include <optional>
#include <string>
#include <vector>

#include "critlat/congruence.hpp"
#include "critlat/lattice.hpp"

namespace critlat {

  struct SIQuotient {
    LatticePtr   parent;
    Congruence   theta;
    LatticePtr   lattice;
    Homomorphism projection;
    //! Least nonzero congruence of the quotient.
    Congruence monolith;
  };

  //! Congruences theta of K with K/theta subdirectly irreducible, i.e. the
  //! members of Con K with exactly one upper cover, in Con order.
  std::vector<Congruence> si_congruences(LatticePtr const& k,
                                         Limits const&     limits = {});

  //! SI quotients of K, one per isomorphism type, first occurrence in Con
  //! order kept.
  std::vector<SIQuotient> si_quotients(LatticePtr const& k,
                                       Limits const&     limits = {});

  bool is_subdirectly_irreducible(LatticePtr const& l, Limits const& limits = {});

  //! M is isomorphic to S/theta for a sublattice S of L.
  struct HSWitness {
    std::vector<Elem> sublattice;  // elements of L, sorted
    LatticePtr        s;
    Congruence        theta;       // congruence of s
    Homomorphism      iso;         // s/theta -> M

    //! Recomputes every piece from scratch.
    bool verify(LatticePtr const& m, LatticePtr const& l) const;
  };

  //! Least witness in (subuniverse bitmask order, Con order). Raises
  //! BudgetExceeded when |L| exceeds limits.max_hs_size.
  std::optional<HSWitness> hs_member(LatticePtr const& m,
                                     LatticePtr const& l,
                                     Limits const&     limits = {});

  struct VarLeqResult {
    bool holds = false;
    //! One entry per SI quotient of K when holds is true.
    std::vector<std::pair<SIQuotient, HSWitness>> witnesses;
    //! The first SI quotient of K outside HS(L) otherwise.
    std::optional<SIQuotient> failing;
  };

  //! Var K is contained in Var L iff every SI quotient of K lies in HS(L).
  VarLeqResult var_leq(LatticePtr const& k,
                       LatticePtr const& l,
                       Limits const&     limits = {});

  //! An SI quotient of K in neither HS(L) nor HS(dual L).
  std::optional<SIQuotient> find_separating_si(LatticePtr const& k,
                                               LatticePtr const& l,
                                               Limits const&     limits = {});

  enum class SIPairClass {
    Isomorphic,
    DuallyIsomorphic,
    DistinctConcClasses,
    Indeterminate
  };

  std::string_view to_string(SIPairClass c) noexcept;

  struct SIPairResult {
    SIPairClass                 verdict = SIPairClass::Indeterminate;
    bool                        k_in_l = false, k_in_dual_l = false;
    bool                        l_in_k = false, l_in_dual_k = false;
    std::optional<Homomorphism> iso;  // into L (or dual L, same indices)
    std::string                 note;
  };

  //! Raises NotSubdirectlyIrreducible unless both inputs are SI. Plain
  //! isomorphism is tested before dual isomorphism.
  SIPairResult si_pair_classifier(LatticePtr const& k,
                                  LatticePtr const& l,
                                  Limits const&     limits = {});

}  // namespace critlat

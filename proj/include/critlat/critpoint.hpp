#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "critlat/io.hpp"
#include "critlat/variety.hpp"

namespace critlat {

  enum class CritVerdict { Infinite, AtMostAleph2 };

  std::string_view to_string(CritVerdict v) noexcept;

  struct CritReport {
    CritVerdict  verdict = CritVerdict::AtMostAleph2;
    VarLeqResult k_in_l;       // Var K in Var L
    VarLeqResult k_in_dual_l;  // Var K in Var(dual L)
    //! For AtMostAleph2: an SI quotient of K in neither HS(L) nor
    //! HS(dual L), when a single one exists. Otherwise the failing
    //! quotients of the two orientations separate.
    std::optional<SIQuotient> separating;
    std::string               justification;
  };

  //! Infinite iff Var K is contained in Var L or in Var(dual L); otherwise
  //! at most aleph_2. Both orientations are always evaluated. Raises
  //! BudgetExceeded.
  CritReport crit_gate(LatticePtr const& k, LatticePtr const& l, Limits const& limits = {});

  //! Relation between Conc(Var K) and Conc(Var L).
  enum class ConcRelation { Equal, KBelowL, LBelowK, Incomparable };

  std::string_view to_string(ConcRelation r) noexcept;

  struct ConcClassReport {
    bool         k_in_l = false, k_in_dual_l = false;
    bool         l_in_k = false, l_in_dual_k = false;
    ConcRelation relation = ConcRelation::Incomparable;
    bool         isomorphic = false, dually_isomorphic = false;
    //! Present when both inputs are subdirectly irreducible.
    std::optional<SIPairResult> si_pair;
  };

  //! Conc(Var K) is contained in Conc(Var L) iff Var K lies in Var L or in
  //! Var(dual L). Raises BudgetExceeded.
  ConcClassReport conc_class_report(LatticePtr const& k,
                                    LatticePtr const& l,
                                    Limits const&     limits = {});

  json crit_report_to_json(CritReport const& r, FiniteLattice const& l);
  json conc_class_report_to_json(ConcClassReport const& r);
  json si_quotient_to_json(SIQuotient const& q);
  json hs_witness_to_json(HSWitness const& w, FiniteLattice const& l);
  //! {"holds", "certificates": [{"quotient", "witness"}], "failing"}.
  json var_leq_to_json(VarLeqResult const& v, FiniteLattice const& l);

}  // namespace critlat

#include "critlat/critpoint.hpp"

#include "critlat/isomorphism.hpp"

namespace critlat {

  std::string_view to_string(CritVerdict v) noexcept {
    switch (v) {
      case CritVerdict::Infinite: return "Infinite";
      case CritVerdict::AtMostAleph2: return "AtMostAleph2";
    }
    return "?";
  }

  std::string_view to_string(ConcRelation r) noexcept {
    switch (r) {
      case ConcRelation::Equal: return "Equal";
      case ConcRelation::KBelowL: return "KBelowL";
      case ConcRelation::LBelowK: return "LBelowK";
      case ConcRelation::Incomparable: return "Incomparable";
    }
    return "?";
  }

  CritReport crit_gate(LatticePtr const& k, LatticePtr const& l, Limits const& limits) {
    CritReport r;
    auto const dl = dual(*l);
    r.k_in_l      = var_leq(k, l, limits);
    r.k_in_dual_l = var_leq(k, dl, limits);
    if (r.k_in_l.holds || r.k_in_dual_l.holds) {
      r.verdict       = CritVerdict::Infinite;
      r.justification = r.k_in_l.holds
                            ? "Var K is contained in Var L, so Conc(Var K) is "
                              "contained in Conc(Var L)"
                            : "Var K is contained in the dual of Var L, and dual "
                              "lattices have the same Conc";
      return r;
    }
    r.verdict = CritVerdict::AtMostAleph2;
    // One quotient failing both orientations, when there is one.
    r.separating    = find_separating_si(k, l, limits);
    r.justification = "Var K lies in neither Var L nor Var(dual L), and L is finite";
    if (!r.separating) {
      r.justification += "; no single SI quotient of K separates, the failing "
                         "quotients of the two orientations do";
    }
    return r;
  }

  ConcClassReport conc_class_report(LatticePtr const& k,
                                    LatticePtr const& l,
                                    Limits const&     limits) {
    ConcClassReport r;
    r.k_in_l      = var_leq(k, l, limits).holds;
    r.k_in_dual_l = var_leq(k, dual(*l), limits).holds;
    r.l_in_k      = var_leq(l, k, limits).holds;
    r.l_in_dual_k = var_leq(l, dual(*k), limits).holds;
    bool const below = r.k_in_l || r.k_in_dual_l;
    bool const above = r.l_in_k || r.l_in_dual_k;
    r.relation       = below && above ? ConcRelation::Equal
                       : below        ? ConcRelation::KBelowL
                       : above        ? ConcRelation::LBelowK
                                      : ConcRelation::Incomparable;
    r.isomorphic        = is_isomorphic(k, l).has_value();
    r.dually_isomorphic = is_dual_isomorphic(k, l).has_value();
    if (is_subdirectly_irreducible(k, limits) && is_subdirectly_irreducible(l, limits)) {
      r.si_pair = si_pair_classifier(k, l, limits);
    }
    return r;
  }

  json si_quotient_to_json(SIQuotient const& q) {
    return {{"parent", q.parent->name()},
            {"theta", congruence_to_json(q.theta)},
            {"lattice", lattice_to_json(*q.lattice)}};
  }

  json hs_witness_to_json(HSWitness const& w, FiniteLattice const& l) {
    json sub = json::array();
    for (Elem x : w.sublattice) {
      sub.push_back(l.label(x));
    }
    json iso = json::object();
    for (Elem x = 0; x < w.iso.source()->size(); ++x) {
      iso[w.iso.source()->label(x)] = w.iso.target()->label(w.iso(x));
    }
    return {{"sublattice", sub}, {"theta", congruence_to_json(w.theta)}, {"iso", iso}};
  }

  json var_leq_to_json(VarLeqResult const& v, FiniteLattice const& l) {
    json r = {{"holds", v.holds}};
    json w = json::array();
    for (auto const& [q, hs] : v.witnesses) {
      w.push_back({{"quotient", si_quotient_to_json(q)},
                   {"witness", hs_witness_to_json(hs, l)}});
    }
    r["certificates"] = w;
    r["failing"]      = v.failing ? si_quotient_to_json(*v.failing) : json(nullptr);
    return r;
  }

  json crit_report_to_json(CritReport const& r, FiniteLattice const& l) {
    // Dual L has the same labels, so both orientations print against L.
    json j = {{"schema", 1},
              {"verdict", std::string(to_string(r.verdict))},
              {"justification", r.justification},
              {"k_in_l", var_leq_to_json(r.k_in_l, l)},
              {"k_in_dual_l", var_leq_to_json(r.k_in_dual_l, l)}};
    j["separating"] = r.separating ? si_quotient_to_json(*r.separating) : json(nullptr);
    return j;
  }

  json conc_class_report_to_json(ConcClassReport const& r) {
    json j = {{"schema", 1},
              {"k_in_l", r.k_in_l},
              {"k_in_dual_l", r.k_in_dual_l},
              {"l_in_k", r.l_in_k},
              {"l_in_dual_k", r.l_in_dual_k},
              {"relation", std::string(to_string(r.relation))},
              {"isomorphic", r.isomorphic},
              {"dually_isomorphic", r.dually_isomorphic}};
    j["si_pair"] = r.si_pair ? json{{"verdict", std::string(to_string(r.si_pair->verdict))},
                                    {"note", r.si_pair->note}}
                             : json(nullptr);
    return j;
  }

}  // namespace critlat

#include "critlat/variety.hpp"

#include <map>

#include "critlat/isomorphism.hpp"
#include "critlat/parallel.hpp"

namespace critlat {

  std::vector<Congruence> si_congruences(LatticePtr const& k,
                                         Limits const&     limits) {
    auto                    con = con_lattice(k, limits);
    auto const&             cl  = *con->lattice();
    std::vector<Congruence> result;
    for (Elem a = 0; a < cl.size(); ++a) {
      if (cl.upper_covers(a).size() == 1) {
        result.push_back((*con)[a]);
      }
    }
    return result;
  }

  std::vector<SIQuotient> si_quotients(LatticePtr const& k,
                                       Limits const&     limits) {
    std::vector<SIQuotient> result;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
    for (auto const& theta : si_congruences(k, limits)) {
      auto q   = quotient(theta);
      auto sig = invariant_signature(*q.lattice);
      auto& bucket = buckets[sig];
      bool  seen   = false;
      for (std::size_t i : bucket) {
        if (is_isomorphic(result[i].lattice, q.lattice, limits)) {
          seen = true;
          break;
        }
      }
      if (seen) {
        continue;
      }
      auto qc    = con_lattice(q.lattice, limits);
      auto atoms = qc->atoms();
      bucket.push_back(result.size());
      result.push_back(
          {k, theta, q.lattice, q.projection, (*qc)[atoms.front()]});
    }
    return result;
  }

  bool is_subdirectly_irreducible(LatticePtr const& l, Limits const& limits) {
    if (l->size() < 2) {
      return false;
    }
    return con_lattice(l, limits)->atoms().size() == 1;
  }

  bool HSWitness::verify(LatticePtr const& m, LatticePtr const& l) const {
    try {
      auto sub = induced_sublattice(l, sublattice);
      if (!(*sub.lattice == *s) || !theta.is_compatible()
          || !(*theta.host() == *s)) {
        return false;
      }
      auto q = quotient(theta);
      if (!(*iso.source() == *q.lattice) || !(*iso.target() == *m)) {
        return false;
      }
      return iso.injective() && iso.surjective() && iso.is_homomorphism();
    } catch (Error const&) {
      return false;
    }
  }

  std::optional<HSWitness> hs_member(LatticePtr const& m,
                                     LatticePtr const& l,
                                     Limits const&     limits) {
    if (m->size() > l->size()) {
      return std::nullopt;
    }
    if (m->size() == l->size()) {
      // Only S = L with the zero congruence can work.
      auto f = is_isomorphic(l, m, limits);
      if (!f) {
        return std::nullopt;
      }
      std::vector<Elem> all(l->size());
      for (Elem x = 0; x < l->size(); ++x) {
        all[x] = x;
      }
      auto sub   = induced_sublattice(l, all, l->name());
      auto theta = Congruence::zero(sub.lattice);
      auto q     = quotient(theta);
      return HSWitness{all, sub.lattice, theta,
                       Homomorphism(q.lattice, m, f->images())};
    }
    if (l->size() > limits.max_hs_size) {
      raise(ErrorKind::BudgetExceeded,
            "HS enumeration is limited to lattices with at most "
                + std::to_string(limits.max_hs_size) + " elements");
    }
    auto subs
        = enumerate_subuniverses(*l, limits.max_subuniverses, limits, m->size());
    std::vector<std::optional<HSWitness>> found(subs.size());
    // Each slot is filled independently; the least index wins below.
    parallel_for(subs.size(), limits.threads, [&](std::size_t i) {
      auto sub = induced_sublattice(l, subs[i]);
      auto con = con_lattice(sub.lattice, limits);
      for (auto const& theta : con->members()) {
        if (theta.block_count() != m->size()) {
          continue;
        }
        auto q = quotient(theta);
        if (auto f = is_isomorphic(q.lattice, m, limits)) {
          found[i] = HSWitness{subs[i], sub.lattice, theta, *f};
          return;
        }
      }
    });
    for (auto& w : found) {
      if (w) {
        return std::move(w);
      }
    }
    return std::nullopt;
  }

  VarLeqResult var_leq(LatticePtr const& k,
                       LatticePtr const& l,
                       Limits const&     limits) {
    VarLeqResult result;
    for (auto& si : si_quotients(k, limits)) {
      auto w = hs_member(si.lattice, l, limits);
      if (!w) {
        result.holds = false;
        result.witnesses.clear();
        result.failing = std::move(si);
        return result;
      }
      result.witnesses.emplace_back(std::move(si), std::move(*w));
    }
    result.holds = true;
    return result;
  }

  std::optional<SIQuotient> find_separating_si(LatticePtr const& k,
                                               LatticePtr const& l,
                                               Limits const&     limits) {
    auto dl = dual(*l);
    for (auto& si : si_quotients(k, limits)) {
      if (!hs_member(si.lattice, l, limits)
          && !hs_member(si.lattice, dl, limits)) {
        return std::move(si);
      }
    }
    return std::nullopt;
  }

  std::string_view to_string(SIPairClass c) noexcept {
    switch (c) {
      case SIPairClass::Isomorphic: return "Isomorphic";
      case SIPairClass::DuallyIsomorphic: return "DuallyIsomorphic";
      case SIPairClass::DistinctConcClasses: return "DistinctConcClasses";
      case SIPairClass::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
  }

  SIPairResult si_pair_classifier(LatticePtr const& k,
                                  LatticePtr const& l,
                                  Limits const&     limits) {
    for (auto const& x : {k, l}) {
      if (!is_subdirectly_irreducible(x, limits)) {
        raise(ErrorKind::NotSubdirectlyIrreducible,
              x->name() + " is not subdirectly irreducible");
      }
    }
    SIPairResult r;
    try {
      auto dk       = dual(*k);
      auto dl       = dual(*l);
      r.k_in_l      = var_leq(k, l, limits).holds;
      r.k_in_dual_l = var_leq(k, dl, limits).holds;
      r.l_in_k      = var_leq(l, k, limits).holds;
      r.l_in_dual_k = var_leq(l, dk, limits).holds;
      if (!((r.k_in_l || r.k_in_dual_l) && (r.l_in_k || r.l_in_dual_k))) {
        r.verdict = SIPairClass::DistinctConcClasses;
        return r;
      }
      if (auto f = is_isomorphic(k, l, limits)) {
        r.verdict = SIPairClass::Isomorphic;
        r.iso     = std::move(f);
      } else if (auto g = is_dual_isomorphic(k, l, limits)) {
        r.verdict = SIPairClass::DuallyIsomorphic;
        r.iso     = std::move(g);
      } else {
        r.verdict = SIPairClass::Indeterminate;
        r.note = "containments hold both ways but no (dual) isomorphism found";
      }
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::BudgetExceeded
          && e.kind() != ErrorKind::SizeCapExceeded) {
        throw;
      }
      r.verdict = SIPairClass::Indeterminate;
      r.note    = e.what();
    }
    return r;
  }

}  // namespace critlat

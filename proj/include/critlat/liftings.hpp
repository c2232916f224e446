#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "critlat/congruence.hpp"
#include "critlat/diagrams.hpp"
#include "critlat/io.hpp"
#include "critlat/lattice.hpp"

namespace critlat {

  //! A diagram B of lattices together with a natural isomorphism
  //! xi : Conc o B -> S. xi[p] maps Con B_p onto S.nodes[p].
  struct Lifting {
    LatticeDiagram       source;
    SemilatticeDiagram   target;
    std::vector<ConcMap> xi;
  };

  struct LiftingFailure {
    enum class Kind {
      SourceInvalid,   // B itself is not a diagram of lattices
      TargetInvalid,   // S is not a diagram of semilattices
      WrongEndpoints,  // xi[p] does not go from Con B_p to S_p
      NotAnIsomorphism,
      NotNatural       // the square at p < q does not commute
    };
    Kind        kind;
    Node        p = 0, q = 0;
    std::string detail;

    std::string describe(Poset const& poset) const;
  };

  struct LiftingCheck {
    std::optional<LiftingFailure> failure;

    bool valid() const noexcept {
      return !failure.has_value();
    }
  };

  //! Checks every node and every square p < q. Raises PosetMismatch.
  LiftingCheck verify_lifting(Lifting const& lifting, Limits const& limits = {});

  //! B = A, xi = identity.
  Lifting identity_lifting(LatticeDiagram const& a, Limits const& limits = {});
  //! B = dual A nodewise, xi identifies a partition of dual A_p with the
  //! same partition of A_p.
  Lifting dual_lifting(LatticeDiagram const& a, Limits const& limits = {});
  //! The same lifting seen through dual B.
  Lifting dualized(Lifting const& lifting, Limits const& limits = {});

  struct ChainWitness {
    Node              node = 0;
    std::vector<Elem> chain;  // positions in B_node, bottom to top
    std::vector<Elem> sigma;  // Con index of each step
    //! Relative to xi and the chain A_node; unset when no reference applies.
    std::optional<bool> direct;
    std::optional<bool> dually_direct;
  };

  //! Every congruence chain from u to v, in lexicographic order. With xi,
  //! whose target host is a chain, the directness flags are filled in.
  //! Raises ConNotBoolean, PreconditionFailed unless u <= v, and
  //! BudgetExceeded past limits.max_chains results.
  std::vector<ChainWitness> find_congruence_chains(ConPtr const&  con,
                                                   Elem           u,
                                                   Elem           v,
                                                   ConcMap const* xi     = nullptr,
                                                   Limits const&  limits = {});
  std::vector<ChainWitness> find_congruence_chains(LatticePtr const& b,
                                                   Elem              u,
                                                   Elem              v,
                                                   Limits const&     limits = {});

  //! xi(Theta(z_k, z_k+1)) = Theta(c_n-k-1, c_n-k) for the reference chain c.
  bool is_dually_direct_congruence_chain(ConcMap const&        xi,
                                         std::span<Elem const> chain);

  struct ReportSection {
    std::string name;
    bool        passed = true;
    std::string detail;  // the first failure
  };

  struct EmbeddingReport {
    std::vector<Elem>         k;  // positions in L, sorted
    std::vector<Elem>         h;  // h[i] is the image of k[i] in B_top
    std::vector<ChainWitness> chains;  // the chosen direct chain per chain node
    bool                      dualized = false;
    ReportSection             injectivity{"injectivity", true, ""};
    ReportSection             operations{"operations", true, ""};
    ReportSection             congruences{"congruences", true, ""};
    ReportSection             coherence{"coherence", true, ""};

    bool passed() const noexcept {
      return injectivity.passed && operations.passed && congruences.passed
             && coherence.passed;
    }
  };

  //! t_x choices, keyed by the label of x in L; the value is a position in
  //! B_{C_x}. Missing entries use the least direct chain.
  using ChainChoices = std::map<std::string, Elem>;

  //! Builds h : K -> B_top from a lifting of the chain diagram `a` of K in
  //! L and checks it. Raises PosetMismatch and MissingDirectChain; failing
  //! checks are recorded in the report.
  EmbeddingReport examine_embedding(LatticeDiagram const& a,
                                    Lifting const&        lifting,
                                    ChainChoices const&   choices = {},
                                    Limits const&         limits  = {});
  //! As examine_embedding, raising VerificationFailed on a failing section.
  EmbeddingReport extract_embedding(LatticeDiagram const& a,
                                    Lifting const&        lifting,
                                    ChainChoices const&   choices = {},
                                    Limits const&         limits  = {});
  //! Tries the lifting, then its dual when a direct chain is missing.
  EmbeddingReport extract_embedding_either(LatticeDiagram const& a,
                                           Lifting const&        lifting,
                                           ChainChoices const&   choices = {},
                                           Limits const&         limits  = {});

  struct DirectingCheck {
    bool                        holds = true;
    std::vector<ChainWitness>   checked;  // every congruence chain at {C3}
    std::optional<ChainWitness> counterexample;
  };

  //! u, v are elements of B_empty (default: its bounds). Raises
  //! PosetMismatch, and HypothesisUnmet when B_{C1} or B_{C2} has no direct
  //! chain between the mapped extremities.
  DirectingCheck check_directing_property(DirectingDiagram const& d,
                                          Lifting const&          lifting,
                                          std::optional<Elem>     u      = {},
                                          std::optional<Elem>     v      = {},
                                          Limits const&           limits = {});

  struct RetractionChain {
    Elem         u = 0, v = 0;  // in A, with the chain from f(u) to f(v)
    ChainWitness witness;       // f(u) < t1 < f(v)
    bool         swapped = false;  // pi0 and pi1 were exchanged
  };

  //! Raises HypothesisUnmet unless pi0 f = pi1 f = id and Con B is the
  //! four-element Boolean lattice with coatoms ker pi0, ker pi1.
  RetractionChain retraction_congruence_chain(Homomorphism const& f,
                                              Homomorphism const& pi0,
                                              Homomorphism const& pi1,
                                              Limits const&       limits = {});

  //! A lifting with the diagram it lifts.
  struct LiftingBundle {
    LatticeDiagram lifted;
    Lifting        lifting;
  };

  //! {"schema": 1, "source": diagram, "target": diagram,
  //!  "xi": {node: [[blocks, blocks], ...]}}, one entry per join-irreducible
  //! congruence of B_node.
  json          lifting_to_json(LiftingBundle const& bundle);
  //! Diagrams may be given inline or as file paths. xi is extended to all
  //! of Con B_node by joins. Raises ParseError.
  LiftingBundle lifting_from_json(json const& j, Limits const& limits = {});

  json chain_witness_to_json(ChainWitness const& w, FiniteLattice const& b);
  json embedding_report_to_json(EmbeddingReport const& r,
                                LatticeDiagram const&  a,
                                Lifting const&         lifting);
  json lifting_check_to_json(LiftingCheck const& c, Poset const& poset);

}  // namespace critlat

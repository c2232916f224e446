#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "critlat/congruence.hpp"
#include "critlat/io.hpp"
#include "critlat/lattice.hpp"

namespace critlat {

  using Node = std::size_t;

  //! A finite poset with named nodes. The order is stored reflexively and
  //! transitively closed.
  class Poset {
   public:
    Poset() = default;
    //! `leq` need not be closed. Raises DuplicateLabel or CycleDetected.
    Poset(std::vector<std::string>                  names,
          std::vector<std::pair<Node, Node>> const& leq);

    std::size_t size() const noexcept {
      return _names.size();
    }

    std::string const& name(Node p) const {
      return _names.at(p);
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::optional<Node> find(std::string const& name) const;
    Node                index_of(std::string const& name) const;

    bool leq(Node p, Node q) const {
      return _leq[p * size() + q];
    }

    bool less(Node p, Node q) const {
      return p != q && leq(p, q);
    }

    std::vector<std::pair<Node, Node>> covers() const;
    //! All pairs p < q.
    std::vector<std::pair<Node, Node>> strict_pairs() const;

    bool  is_lower_subset(std::vector<Node> const& subset) const;
    //! Subposet on `subset`, nodes in the given order.
    Poset induced(std::vector<Node> const& subset) const;

    //! Same names in the same order with the same relation.
    bool operator==(Poset const& other) const;
    //! Same names (in any order) with the same relation.
    bool same_up_to_order(Poset const& other) const;

   private:
    std::vector<std::string> _names;
    std::vector<bool>        _leq;
  };

  //! A finite chain with distinct labels, listed bottom to top. Inside an
  //! ambient lattice the labels are element labels of that lattice.
  struct Chain {
    std::vector<std::string> labels;

    //! Labels joined by "<".
    std::string name() const;

    std::size_t length() const {
      return labels.size() - 1;
    }

    //! Set containment of labels.
    bool subset_of(Chain const& other) const;
    //! Set equality of labels.
    bool same_set(Chain const& other) const;

    LatticePtr lattice() const;
  };

  //! The posets JC, KC and IC over a chain set. Nodes of IC are ordered:
  //! "empty", one "{C}" per chain in the given order, the admissible pairs
  //! "{C;D}" (names sorted) by chain index, then "top".
  struct IndexPosets {
    std::vector<Chain> chains;
    Poset              ic;
    std::vector<Node>  jc;  // indices into ic
    std::vector<Node>  kc;

    Node empty() const {
      return 0;
    }

    Node top() const {
      return ic.size() - 1;
    }

    Node singleton(std::size_t chain) const {
      return 1 + chain;
    }

    std::optional<Node> pair(std::size_t a, std::size_t b) const;

    Poset jc_poset() const {
      return ic.induced(jc);
    }

    Poset kc_poset() const {
      return ic.induced(kc);
    }

    static std::string singleton_name(Chain const& c);
    static std::string pair_name(Chain const& c, Chain const& d);
    //! Pair {C,D} is present iff both have length 2 or one contains the other.
    static bool admissible(Chain const& c, Chain const& d);
  };

  //! Raises EmptyChainSet, or PreconditionFailed for repeated or degenerate
  //! chains.
  IndexPosets build_index_posets(std::vector<Chain> chains);

  //! The lattice at one node: a product of factors, flattened eagerly when
  //! the product fits limits.max_product_size.
  class NodeLattice {
   public:
    NodeLattice() = default;
    explicit NodeLattice(LatticePtr single);
    NodeLattice(std::vector<LatticePtr> factors, Limits const& limits = {});

    std::vector<LatticePtr> const& factors() const noexcept {
      return _factors;
    }

    //! Number of elements, saturating at SIZE_MAX.
    std::size_t size() const noexcept {
      return _size;
    }

    bool is_flat() const noexcept {
      return _flat != nullptr;
    }

    //! The flat lattice; raises BudgetExceeded for an oversized product.
    LatticePtr const& lattice() const;

    //! Factor names joined by "x".
    std::string description() const;

    NodeLattice dual() const;

    bool operator==(NodeLattice const& other) const;

   private:
    std::vector<LatticePtr> _factors;
    LatticePtr              _flat;
    std::size_t             _size = 0;
  };

  //! One coordinate of a map between products: target factor = hom applied
  //! to the source factor with index `source`.
  struct FactorMap {
    std::size_t  source = 0;
    Homomorphism hom;
  };

  //! A map between node lattices acting coordinatewise, one FactorMap per
  //! target factor. Every map built from products, projections, diagonals
  //! and their composites has this shape.
  class DiagramMap {
   public:
    DiagramMap() = default;
    explicit DiagramMap(std::vector<FactorMap> parts);

    static DiagramMap single(Homomorphism h);
    static DiagramMap identity(NodeLattice const& node);

    std::vector<FactorMap> const& parts() const noexcept {
      return _parts;
    }

    //! this after first.
    DiagramMap after(DiagramMap const& first) const;

    //! Every coordinate is a lattice homomorphism (equivalently, the map is).
    bool is_homomorphism() const;
    //! Source and target factors match the given nodes.
    bool fits(NodeLattice const& source, NodeLattice const& target) const;

    std::vector<Elem> apply(std::vector<Elem> const& coordinates) const;
    //! The map between flat lattices.
    Homomorphism flat(NodeLattice const& source, NodeLattice const& target) const;

    //! Equality as functions: per coordinate, the same source factor and
    //! images, or both constant with the same value.
    bool operator==(DiagramMap const& other) const;

   private:
    std::vector<FactorMap> _parts;
  };

  struct DiagramFailure {
    enum class Kind { MissingMap, EndpointMismatch, NotAHomomorphism, NotIdentity, NotCommuting };
    Kind kind;
    Node p = 0, q = 0, r = 0;

    std::string describe(Poset const& poset) const;
  };

  //! A poset-indexed diagram of lattices. Maps are stored for every pair
  //! p < q; identities are implicit.
  class LatticeDiagram {
   public:
    using MapTable = std::map<std::pair<Node, Node>, DiagramMap>;

    LatticeDiagram() = default;
    LatticeDiagram(Poset poset, std::vector<NodeLattice> nodes, MapTable maps);

    Poset const& poset() const noexcept {
      return _poset;
    }

    NodeLattice const& node(Node p) const {
      return _nodes.at(p);
    }

    NodeLattice const& node(std::string const& name) const {
      return _nodes.at(_poset.index_of(name));
    }

    std::vector<NodeLattice> const& nodes() const noexcept {
      return _nodes;
    }

    //! f_{p,q}; the identity when p == q. Raises PreconditionFailed unless
    //! p <= q.
    DiagramMap map(Node p, Node q) const;

    MapTable const& maps() const noexcept {
      return _maps;
    }

    //! Exhaustive check of maps, identities and commutativity. Triples are
    //! swept in lexicographic order; the first failure is reported.
    std::optional<DiagramFailure> first_failure(Limits const& limits = {}) const;
    //! Raises VerificationFailed with the first failure.
    void verify(Limits const& limits = {}) const;

    LatticeDiagram restrict(std::vector<Node> const& subset) const;
    LatticeDiagram restrict(std::vector<std::string> const& names) const;

    //! Same diagram over `target`, a reordering of the poset. Raises
    //! PosetMismatch.
    LatticeDiagram reindexed(Poset const& target) const;

    bool is_flat() const;
    //! Every node becomes a single flat factor. Raises BudgetExceeded.
    LatticeDiagram flatten() const;

    //! Nodewise dual; maps keep their images.
    LatticeDiagram dual() const;

    LatticeDiagram with_map(Node p, Node q, DiagramMap f) const;

    bool operator==(LatticeDiagram const& other) const;

   private:
    Poset                    _poset;
    std::vector<NodeLattice> _nodes;
    MapTable                 _maps;
  };

  //! Conc applied to a diagram: one congruence lattice per node and one
  //! ConcMap per pair p < q.
  struct SemilatticeDiagram {
    using MapTable = std::map<std::pair<Node, Node>, ConcMap>;

    Poset               poset;
    std::vector<ConPtr> nodes;
    MapTable            maps;

    ConcMap map(Node p, Node q) const;
    //! Functor laws: composites agree and every map preserves 0 and joins.
    std::optional<DiagramFailure> first_failure() const;
  };

  //! E(C) over JC(C). With no chains: the single node "empty" carrying {0,1}.
  //! Raises PreconditionFailed when the chains disagree on their bounds.
  LatticeDiagram base_diagram(std::vector<Chain> const& chains);

  //! The chain diagram of L over IC(chains): A_P is the sublattice generated
  //! by the union of P (graded order), A_top = L, inclusion maps. With no
  //! chains the poset is empty < top. Raises
  //! NotSpanning; VerificationFailed if a node below top is not distributive.
  LatticeDiagram chain_diagram(LatticePtr const&         l,
                               std::vector<Chain> const& chains,
                               Limits const&             limits = {});

  //! Spanning chains of length 2 or 3 inside the subset K of L: length 2
  //! first, each group in lexicographic element order.
  std::vector<Chain> chains_of_partial(LatticePtr const&        l,
                                       std::vector<Elem> const& k);

  LatticeDiagram chain_diagram_of_partial(LatticePtr const&        l,
                                          std::vector<Elem> const& k,
                                          Limits const&            limits = {});

  struct ProductDiagram {
    LatticeDiagram diagram;
    //! projections[t][p] : A_p -> A^t_p.
    std::vector<std::vector<DiagramMap>> projections;
  };

  //! The product of `parts` over the lower subset `j`. Raises PosetMismatch,
  //! NotLowerSubset, RestrictionMismatch, PreconditionFailed (no parts).
  ProductDiagram product_over(std::vector<Node> const&           j,
                              std::vector<LatticeDiagram> const& parts,
                              Limits const&                      limits = {});

  //! Extends a diagram over IC(chains) with restriction E(chains) on JC to
  //! IC(target), one new chain at a time in the order of `target`. The result
  //! is indexed by build_index_posets(target). Raises PosetMismatch,
  //! PreconditionFailed.
  LatticeDiagram extend_diagram(LatticeDiagram const&     b,
                                std::vector<Chain> const& chains,
                                std::vector<Chain> const& target,
                                Limits const&             limits = {});

  struct DirectingDiagram {
    LatticeDiagram                 diagram;
    IndexPosets                    index;
    //! The isotone surjections C3 -> {0,x3,1}, as indices 0,1,2.
    std::vector<std::vector<Elem>> t_maps;
    //! Positions of x1, x2, x3 in the generator.
    std::array<Elem, 3> x{};
  };

  //! kgen must be isomorphic to M3 or N5 (x1, x2, x3 placed as in the
  //! builtins). C1, C2 have length 2; C3 has length 2 or contains both.
  //! The middle of Ci goes to xi. Raises BadChainShapes.
  DirectingDiagram directing_diagram(LatticePtr const& kgen,
                                     Chain const&      c1,
                                     Chain const&      c2,
                                     Chain const&      c3,
                                     Limits const&     limits = {});

  struct GluedDiagram {
    LatticeDiagram diagram;
    IndexPosets    index;
    //! Admissible triples (C1, C2, D) as chain indices, in factor order.
    std::vector<std::array<std::size_t, 3>> triples;
  };

  //! Chain diagram of K in L glued with one extended directing diagram per
  //! admissible triple. Raises TooFewElements when |K| < 5.
  GluedDiagram glued_diagram(LatticePtr const&        l,
                             std::vector<Elem> const& k,
                             LatticePtr const&        kgen,
                             Limits const&            limits = {});

  //! Nodewise con_lattice and edgewise conc_of_hom. Raises BudgetExceeded for
  //! nodes that are not flat.
  SemilatticeDiagram apply_conc(LatticeDiagram const& d, Limits const& limits = {});

  //! One cluster per node (Hasse diagram, or a box for oversized products),
  //! one edge per poset cover.
  std::string diagram_to_dot(LatticeDiagram const& d);

  //! {"schema": 1, "poset": {"nodes", "leq"}, "lattices": {node: lattice},
  //!  "maps": {"p<=q": {elem: elem}}}. Only covers are written, both for
  //! the order and for the maps. Raises BudgetExceeded for unflat nodes.
  json diagram_to_json(LatticeDiagram const& d);
  //! Lattices may be inline or references. Maps missing for a pair p < q
  //! are composed through intermediate nodes. Raises ParseError.
  LatticeDiagram diagram_from_json(json const& j, Limits const& limits = {});
  //! A string is a path, an object is inline.
  LatticeDiagram diagram_from_ref(json const& j, Limits const& limits = {});

}  // namespace critlat

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "critlat/error.hpp"

namespace critlat {

  using Elem = std::uint32_t;

  // Explicit budgets. Operations that would exceed one of these raise
  // SizeCapExceeded or BudgetExceeded instead of truncating.
  struct Limits {
    std::size_t max_product_size      = 4096;
    std::size_t max_subuniverse_size  = 10;
    std::size_t max_subuniverses      = 100000;
    std::size_t max_hs_size           = 8;
    std::size_t max_congruences       = 4096;
    std::size_t max_search_nodes      = 20'000'000;
    std::size_t max_chains            = 1'000'000;
    unsigned    threads               = 1;
  };

  class FiniteLattice;
  using LatticePtr = std::shared_ptr<FiniteLattice const>;

  //! A bounded finite lattice. Immutable; the order, both operation tables,
  //! the cover relation and element heights are computed at construction.
  //! Element indices follow the input order of the labels.
  class FiniteLattice {
   public:
    using Bitset = boost::dynamic_bitset<std::uint64_t>;

    //! Validates a cover presentation. Covers are (lower, upper) pairs.
    static LatticePtr from_covers(
        std::string                                             name,
        std::vector<std::string>                                labels,
        std::vector<std::pair<std::string, std::string>> const& covers);

    //! Builds from an order given as "up sets": up[x][y] iff x <= y. The
    //! relation must already be reflexive and transitive.
    static LatticePtr from_order(std::string              name,
                                 std::vector<std::string> labels,
                                 std::vector<Bitset>      up);

    //! Builds from complete tables inherited from a larger structure
    //! (products, sublattices, quotients). Only cheap consistency checks are
    //! performed; the caller guarantees the lattice laws.
    static LatticePtr from_tables(std::string              name,
                                  std::vector<std::string> labels,
                                  std::vector<Elem>        meet,
                                  std::vector<Elem>        join,
                                  std::optional<std::vector<std::pair<Elem, Elem>>>
                                      covers
                                  = std::nullopt);

    std::string const& name() const noexcept {
      return _name;
    }

    std::size_t size() const noexcept {
      return _labels.size();
    }

    std::string const& label(Elem x) const {
      return _labels.at(x);
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    std::optional<Elem> find(std::string const& label) const;
    //! Like find, but raises UnknownLabel.
    Elem index_of(std::string const& label) const;

    bool leq(Elem x, Elem y) const {
      return _up[x][y];
    }

    bool less(Elem x, Elem y) const {
      return x != y && _up[x][y];
    }

    bool comparable(Elem x, Elem y) const {
      return _up[x][y] || _up[y][x];
    }

    Elem meet(Elem x, Elem y) const {
      return _meet[x * size() + y];
    }

    Elem join(Elem x, Elem y) const {
      return _join[x * size() + y];
    }

    Elem bottom() const noexcept {
      return _bottom;
    }

    Elem top() const noexcept {
      return _top;
    }

    //! Length of the longest chain from the bottom to x.
    std::size_t height(Elem x) const {
      return _height[x];
    }

    std::size_t length() const {
      return _height[_top];
    }

    Bitset const& up_set(Elem x) const {
      return _up[x];
    }

    Bitset const& down_set(Elem x) const {
      return _down[x];
    }

    //! Cover pairs (lower, upper), sorted.
    std::vector<std::pair<Elem, Elem>> const& covers() const noexcept {
      return _covers;
    }

    std::vector<Elem> const& upper_covers(Elem x) const {
      return _upper_covers[x];
    }

    std::vector<Elem> const& lower_covers(Elem x) const {
      return _lower_covers[x];
    }

    std::vector<Elem> const& meet_table() const noexcept {
      return _meet;
    }

    std::vector<Elem> const& join_table() const noexcept {
      return _join;
    }

    bool is_chain() const noexcept {
      return _covers.size() + 1 == size();
    }

    //! Same labels in the same order and the same order relation.
    bool operator==(FiniteLattice const& other) const;

   private:
    FiniteLattice() = default;
    void finish();

    std::string              _name;
    std::vector<std::string> _labels;
    std::vector<Bitset>      _up;
    std::vector<Bitset>      _down;
    std::vector<Elem>        _meet;
    std::vector<Elem>        _join;
    std::vector<std::pair<Elem, Elem>> _covers;
    std::vector<std::vector<Elem>>     _upper_covers;
    std::vector<std::vector<Elem>>     _lower_covers;
    std::vector<std::size_t>           _height;
    Elem                               _bottom = 0;
    Elem                               _top    = 0;
  };

  //! validate_lattice: the checked entry point for user-supplied lattices.
  LatticePtr validate_lattice(
      std::vector<std::string>                                labels,
      std::vector<std::pair<std::string, std::string>> const& covers,
      std::string                                             name = "L");

  //! A total map between two lattices. Built unchecked so that corrupted
  //! maps can be represented and then rejected by the verifiers.
  class Homomorphism {
   public:
    Homomorphism() = default;
    Homomorphism(LatticePtr source, LatticePtr target, std::vector<Elem> images);

    //! Raises NotAHomomorphism unless meets and joins are preserved.
    static Homomorphism checked(LatticePtr        source,
                                LatticePtr        target,
                                std::vector<Elem> images);
    static Homomorphism identity(LatticePtr lattice);
    //! The bounds-preserving map; the source must have at most two elements.
    static Homomorphism bounds(LatticePtr source, LatticePtr target);

    Elem operator()(Elem x) const {
      return _images[x];
    }

    LatticePtr const& source() const noexcept {
      return _source;
    }

    LatticePtr const& target() const noexcept {
      return _target;
    }

    std::vector<Elem> const& images() const noexcept {
      return _images;
    }

    bool is_homomorphism() const;
    //! First pair (x, y) where meet or join is not preserved.
    std::optional<std::pair<Elem, Elem>> first_violation() const;
    bool preserves_bounds() const;
    bool injective() const;
    bool surjective() const;
    bool is_constant() const;

    //! this after other: x -> this(other(x)).
    Homomorphism after(Homomorphism const& other) const;

    //! Same images (the endpoints are compared by value).
    bool same_function(Homomorphism const& other) const;

    Homomorphism with_image(Elem x, Elem y) const;

   private:
    LatticePtr        _source;
    LatticePtr        _target;
    std::vector<Elem> _images;
  };

  //! A partial lattice: operations are defined on a symmetric set of pairs.
  //! When built as an induced partial sublattice, the host and the positions
  //! of the elements in the host are kept.
  class PartialLattice {
   public:
    static constexpr Elem undefined = static_cast<Elem>(-1);

    PartialLattice(std::vector<std::string> labels,
                   std::vector<Elem>        meet,
                   std::vector<Elem>        join,
                   std::optional<Elem>      bottom,
                   std::optional<Elem>      top);

    std::size_t size() const noexcept {
      return _labels.size();
    }

    std::string const& label(Elem x) const {
      return _labels.at(x);
    }

    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    std::optional<Elem> meet(Elem x, Elem y) const;
    std::optional<Elem> join(Elem x, Elem y) const;

    std::optional<Elem> bottom() const noexcept {
      return _bottom;
    }

    std::optional<Elem> top() const noexcept {
      return _top;
    }

    bool bounded() const noexcept {
      return _bottom.has_value() && _top.has_value();
    }

    std::size_t defined_meets() const;
    std::size_t defined_joins() const;

    LatticePtr const& host() const noexcept {
      return _host;
    }

    //! Position of each element in the host lattice (when induced).
    std::vector<Elem> const& in_host() const noexcept {
      return _in_host;
    }

    PartialLattice dual() const;

    static PartialLattice total(LatticePtr const& lattice);

   private:
    friend PartialLattice induced_partial_sublattice(LatticePtr const&,
                                                     std::span<Elem const>);

    std::vector<std::string> _labels;
    std::vector<Elem>        _meet;
    std::vector<Elem>        _join;
    std::optional<Elem>      _bottom;
    std::optional<Elem>      _top;
    LatticePtr               _host;
    std::vector<Elem>        _in_host;
  };

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  //! Reversed order, meet and join swapped, same labels.
  LatticePtr dual(FiniteLattice const& lattice);

  struct ProductResult {
    LatticePtr                lattice;
    std::vector<Homomorphism> projections;
  };

  //! Componentwise product, tuples in lexicographic order (first factor most
  //! significant). Labels are concatenated when every factor label is a
  //! single character, and written "(a,b,...)" otherwise.
  ProductResult product(std::span<LatticePtr const> factors,
                        Limits const&               limits = {});

  //! Decodes a flat product index into coordinates.
  std::vector<Elem> product_coordinates(std::span<LatticePtr const> factors,
                                        Elem                        index);
  Elem product_index(std::span<LatticePtr const> factors,
                     std::span<Elem const>       coordinates);

  struct Sublattice {
    LatticePtr        lattice;
    Homomorphism      inclusion;
    std::vector<Elem> elements;  // positions in the parent, in lattice order
  };

  //! The sublattice induced on an already closed subset (sorted or not).
  Sublattice induced_sublattice(LatticePtr const&     parent,
                                std::span<Elem const> closed_subset,
                                std::string           name = "");

  //! Like induced_sublattice, but the elements are ordered by height in the
  //! parent, then by index. A chain comes out bottom to top.
  Sublattice graded_sublattice(LatticePtr const&     parent,
                               std::span<Elem const> closed_subset,
                               std::string           name = "");

  //! Smallest meet/join-closed subset containing `generators`; with
  //! `include_bounds` the bounds are added first (bounded generation).
  Sublattice subuniverse_closure(LatticePtr const&     lattice,
                                 std::span<Elem const> generators,
                                 bool                  include_bounds = false);

  //! All nonempty meet/join-closed subsets, each sorted, in order of
  //! increasing bitmask. Raises SizeCapExceeded when |L| exceeds
  //! limits.max_subuniverse_size and BudgetExceeded past max_count.
  std::vector<std::vector<Elem>> enumerate_subuniverses(
      FiniteLattice const& lattice,
      std::size_t          max_count,
      Limits const&        limits   = {},
      std::size_t          min_size = 1);

  //! All maximal chains, bottom to top, in lexicographic order.
  std::vector<std::vector<Elem>> maximal_chains(FiniteLattice const& lattice,
                                                Limits const& limits = {});

  //! All chains containing both bounds whose length (number of elements
  //! minus one) lies in `lengths`. Chains need not be saturated.
  std::vector<std::vector<Elem>> spanning_chains(
      FiniteLattice const&         lattice,
      std::span<std::size_t const> lengths,
      Limits const&                limits = {});

  //! Operations are defined exactly where the host value lies in the subset.
  //! Raises NotSpanning unless both bounds belong to the subset.
  PartialLattice induced_partial_sublattice(LatticePtr const&     lattice,
                                            std::span<Elem const> subset);

  //! Chain lattice with the given labels, bottom to top.
  LatticePtr chain_lattice(std::vector<std::string> labels,
                           std::string              name = "chain");

  //! Label-list helpers.
  std::vector<Elem> elements_of(FiniteLattice const&            lattice,
                                std::vector<std::string> const& labels);
  std::string       join_labels(FiniteLattice const&  lattice,
                                std::span<Elem const> elements,
                                std::string const&    separator);

  //! Strict chain check: each element strictly below the next.
  bool is_strict_chain(FiniteLattice const& lattice, std::span<Elem const> chain);

  //! Distributivity via join-primeness of join-irreducibles; returns a
  //! witness (j, x, y) with j <= x v y but j below neither.
  std::optional<std::tuple<Elem, Elem, Elem>>
       distributivity_violation(FiniteLattice const& lattice);
  bool is_distributive(FiniteLattice const& lattice);
  std::vector<Elem> join_irreducibles(FiniteLattice const& lattice);
  std::vector<Elem> atoms(FiniteLattice const& lattice);

}  // namespace critlat

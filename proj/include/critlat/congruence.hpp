#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critlat/lattice.hpp"

namespace critlat {

  //! A partition of a lattice's universe. Stored as a block id per element,
  //! blocks numbered in order of their least element, so that equal
  //! partitions have equal representations.
  class Congruence {
   public:
    Congruence() = default;
    //! Canonicalizes `block_of`; compatibility is not checked.
    Congruence(LatticePtr host, std::vector<Elem> const& block_of);

    //! Raises NotACongruence unless the blocks partition the host and are
    //! compatible with meet and join.
    static Congruence from_blocks(LatticePtr                            host,
                                  std::vector<std::vector<Elem>> const& blocks);
    static Congruence zero(LatticePtr host);
    static Congruence one(LatticePtr host);

    LatticePtr const& host() const noexcept {
      return _host;
    }

    std::vector<Elem> const& block_ids() const noexcept {
      return _block;
    }

    Elem block_of(Elem x) const {
      return _block[x];
    }

    bool related(Elem x, Elem y) const {
      return _block[x] == _block[y];
    }

    std::size_t block_count() const noexcept {
      return _count;
    }

    //! Blocks, each sorted, in order of least element.
    std::vector<std::vector<Elem>> blocks() const;

    bool is_zero() const noexcept {
      return _count == _block.size();
    }

    bool is_one() const noexcept {
      return _count == 1;
    }

    //! First (x, y, z) witnessing incompatibility, if any.
    std::optional<std::tuple<Elem, Elem, Elem>> first_violation() const;
    bool is_compatible() const {
      return !first_violation().has_value();
    }

    //! Refinement order: every block of this lies inside a block of other.
    bool leq(Congruence const& other) const;

    bool operator==(Congruence const& other) const {
      return _block == other._block;
    }

    bool operator<(Congruence const& other) const {
      return _block < other._block;
    }

    //! Blocks written as "a,b|c|d" with host labels.
    std::string to_string() const;

   private:
    LatticePtr        _host;
    std::vector<Elem> _block;
    std::size_t       _count = 0;
  };

  //! Least congruence containing every given pair.
  Congruence generated_congruence(LatticePtr const&                         host,
                                  std::span<std::pair<Elem, Elem> const> pairs);
  Congruence principal_congruence(LatticePtr const& host, Elem a, Elem b);
  //! Raises HostMismatch when the hosts differ.
  Congruence congruence_join(Congruence const& a, Congruence const& b);
  Congruence congruence_meet(Congruence const& a, Congruence const& b);

  struct Quotient {
    LatticePtr   lattice;
    Homomorphism projection;
  };

  //! Blocks become elements, labeled by the label of their least element.
  //! Raises NotACongruence if theta is not compatible.
  Quotient quotient(Congruence const& theta);

  //! ker f as a congruence of the source.
  Congruence kernel(Homomorphism const& f);

  class ConLattice;
  using ConPtr = std::shared_ptr<ConLattice const>;

  //! All congruences of a finite lattice. Members are ordered by decreasing
  //! number of blocks, then by block vector, so index 0 is the zero
  //! congruence and the last index is the full congruence.
  class ConLattice {
   public:
    ConLattice(LatticePtr host, std::vector<Congruence> members);

    LatticePtr const& host() const noexcept {
      return _host;
    }

    std::size_t size() const noexcept {
      return _members.size();
    }

    Congruence const& operator[](std::size_t i) const {
      return _members.at(i);
    }

    std::vector<Congruence> const& members() const noexcept {
      return _members;
    }

    //! Con L as a FiniteLattice; element i is member i.
    LatticePtr const& lattice() const noexcept {
      return _lattice;
    }

    std::optional<Elem> find(Congruence const& theta) const;
    //! Raises NotACongruence if theta is not a member.
    Elem index_of(Congruence const& theta) const;

    Elem zero() const noexcept {
      return 0;
    }

    Elem one() const noexcept {
      return static_cast<Elem>(_members.size() - 1);
    }

    Elem join(Elem a, Elem b) const {
      return _lattice->join(a, b);
    }

    Elem meet(Elem a, Elem b) const {
      return _lattice->meet(a, b);
    }

    bool leq(Elem a, Elem b) const {
      return _lattice->leq(a, b);
    }

    std::vector<Elem> atoms() const {
      return critlat::atoms(*_lattice);
    }

    //! Index of Theta(a, b).
    Elem principal(Elem a, Elem b) const;

   private:
    LatticePtr              _host;
    std::vector<Congruence> _members;
    LatticePtr              _lattice;
    std::vector<Elem>       _cover_principal;  // indexed like host covers
  };

  //! Join-closure of {0} and the principal congruences of covering pairs.
  //! Raises BudgetExceeded past limits.max_congruences members.
  ConPtr con_lattice(LatticePtr const& lattice, Limits const& limits = {});

  //! A map between congruence lattices, stored as member indices.
  class ConcMap {
   public:
    ConcMap() = default;
    ConcMap(ConPtr source, ConPtr target, std::vector<Elem> images);

    static ConcMap identity(ConPtr con);

    Elem operator()(Elem a) const {
      return _images[a];
    }

    ConPtr const& source() const noexcept {
      return _source;
    }

    ConPtr const& target() const noexcept {
      return _target;
    }

    std::vector<Elem> const& images() const noexcept {
      return _images;
    }

    bool preserves_zero() const;
    bool preserves_joins() const;
    bool is_isomorphism() const;
    //! Only the zero congruence maps to zero.
    bool separates_zero() const;

    //! this after other.
    ConcMap after(ConcMap const& other) const;

    bool operator==(ConcMap const& other) const {
      return _images == other._images;
    }

    ConcMap with_image(Elem a, Elem b) const;

   private:
    ConPtr            _source;
    ConPtr            _target;
    std::vector<Elem> _images;
  };

  //! Conc f: alpha maps to the congruence generated by its image pairs.
  ConcMap conc_of_hom(Homomorphism const& f, ConPtr source, ConPtr target);

  //! The congruence of the target generated by the image of theta.
  Congruence image_congruence(Homomorphism const& f, Congruence const& theta);

  struct BooleanReport {
    bool              boolean = false;
    std::vector<Elem> atoms;
    //! Why not Boolean: a distributivity witness or an uncomplemented member.
    std::string reason;
  };

  //! Distributive and complemented.
  BooleanReport is_boolean(ConLattice const& con);

  //! sigma[k] = index of Theta(x_k, x_{k+1}) when these enumerate the atoms
  //! of Con B bijectively. Raises ConNotBoolean, and PreconditionFailed when
  //! the chain is not strictly increasing.
  std::optional<std::vector<Elem>> is_congruence_chain(
      ConLattice const&     con,
      std::span<Elem const> chain);

  //! xi: Con B -> Con C, where C is a chain lattice c_0 < ... < c_n. True iff
  //! xi(Theta_B(x_k, x_{k+1})) = Theta_C(c_k, c_{k+1}) for every k. Raises
  //! ArityMismatch when the chain and C have different lengths.
  bool is_direct_congruence_chain(ConcMap const&        xi,
                                  std::span<Elem const> chain);

  //! Conc of the inclusion C -> B is an isomorphism. Raises NotASublattice
  //! when the map is not an injective homomorphism.
  bool is_congruence_preserving_extension(Homomorphism const& inclusion,
                                          Limits const&       limits = {});

  bool is_simple(LatticePtr const& lattice);

  //! Elements of a chain lattice, bottom to top.
  std::vector<Elem> chain_order(FiniteLattice const& chain);

}  // namespace critlat

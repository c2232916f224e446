#include "critlat/diagrams.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "critlat/io.hpp"
#include "critlat/isomorphism.hpp"
#include "critlat/parallel.hpp"

namespace critlat {

  namespace {

    bool same_lattice(LatticePtr const& a, LatticePtr const& b) {
      return a == b || (a && b && *a == *b);
    }

    std::string dot_quote(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Poset
  ////////////////////////////////////////////////////////////////////////

  Poset::Poset(std::vector<std::string>                  names,
               std::vector<std::pair<Node, Node>> const& leq)
      : _names(std::move(names)) {
    std::size_t const n = _names.size();
    std::set<std::string> seen;
    for (auto const& s : _names) {
      if (!seen.insert(s).second) {
        raise(ErrorKind::DuplicateLabel, "duplicate poset node '" + s + "'");
      }
    }
    _leq.assign(n * n, false);
    for (Node p = 0; p < n; ++p) {
      _leq[p * n + p] = true;
    }
    for (auto [p, q] : leq) {
      if (p >= n || q >= n) {
        raise(ErrorKind::UnknownLabel, "poset relation refers to a missing node");
      }
      _leq[p * n + q] = true;
    }
    for (Node k = 0; k < n; ++k) {
      for (Node p = 0; p < n; ++p) {
        if (!_leq[p * n + k]) {
          continue;
        }
        for (Node q = 0; q < n; ++q) {
          if (_leq[k * n + q]) {
            _leq[p * n + q] = true;
          }
        }
      }
    }
    for (Node p = 0; p < n; ++p) {
      for (Node q = p + 1; q < n; ++q) {
        if (_leq[p * n + q] && _leq[q * n + p]) {
          raise(ErrorKind::CycleDetected,
                "poset relation has a cycle through '" + _names[p] + "' and '"
                    + _names[q] + "'");
        }
      }
    }
  }

  std::optional<Node> Poset::find(std::string const& name) const {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it == _names.end()) {
      return std::nullopt;
    }
    return static_cast<Node>(it - _names.begin());
  }

  Node Poset::index_of(std::string const& name) const {
    auto p = find(name);
    if (!p) {
      raise(ErrorKind::UnknownLabel, "no poset node '" + name + "'");
    }
    return *p;
  }

  std::vector<std::pair<Node, Node>> Poset::covers() const {
    std::vector<std::pair<Node, Node>> result;
    for (Node p = 0; p < size(); ++p) {
      for (Node q = 0; q < size(); ++q) {
        if (!less(p, q)) {
          continue;
        }
        bool cover = true;
        for (Node r = 0; r < size() && cover; ++r) {
          cover = !(less(p, r) && less(r, q));
        }
        if (cover) {
          result.emplace_back(p, q);
        }
      }
    }
    return result;
  }

  std::vector<std::pair<Node, Node>> Poset::strict_pairs() const {
    std::vector<std::pair<Node, Node>> result;
    for (Node p = 0; p < size(); ++p) {
      for (Node q = 0; q < size(); ++q) {
        if (less(p, q)) {
          result.emplace_back(p, q);
        }
      }
    }
    return result;
  }

  bool Poset::is_lower_subset(std::vector<Node> const& subset) const {
    std::vector<bool> in(size(), false);
    for (Node p : subset) {
      if (p >= size()) {
        return false;
      }
      in[p] = true;
    }
    for (Node q : subset) {
      for (Node p = 0; p < size(); ++p) {
        if (leq(p, q) && !in[p]) {
          return false;
        }
      }
    }
    return true;
  }

  Poset Poset::induced(std::vector<Node> const& subset) const {
    std::vector<std::string>           names;
    std::vector<std::pair<Node, Node>> rel;
    for (Node i = 0; i < subset.size(); ++i) {
      names.push_back(name(subset[i]));
      for (Node j = 0; j < subset.size(); ++j) {
        if (i != j && leq(subset[i], subset[j])) {
          rel.emplace_back(i, j);
        }
      }
    }
    return Poset(std::move(names), rel);
  }

  bool Poset::operator==(Poset const& other) const {
    return _names == other._names && _leq == other._leq;
  }

  bool Poset::same_up_to_order(Poset const& other) const {
    if (size() != other.size()) {
      return false;
    }
    std::vector<Node> to(size());
    for (Node p = 0; p < size(); ++p) {
      auto q = other.find(_names[p]);
      if (!q) {
        return false;
      }
      to[p] = *q;
    }
    for (Node p = 0; p < size(); ++p) {
      for (Node q = 0; q < size(); ++q) {
        if (leq(p, q) != other.leq(to[p], to[q])) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Chains and index posets
  ////////////////////////////////////////////////////////////////////////

  std::string Chain::name() const {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      s += (i ? "<" : "") + labels[i];
    }
    return s;
  }

  bool Chain::subset_of(Chain const& other) const {
    return std::all_of(labels.begin(), labels.end(), [&](std::string const& x) {
      return std::find(other.labels.begin(), other.labels.end(), x)
             != other.labels.end();
    });
  }

  bool Chain::same_set(Chain const& other) const {
    return subset_of(other) && other.subset_of(*this);
  }

  LatticePtr Chain::lattice() const {
    return chain_lattice(labels, name());
  }

  std::string IndexPosets::singleton_name(Chain const& c) {
    return "{" + c.name() + "}";
  }

  std::string IndexPosets::pair_name(Chain const& c, Chain const& d) {
    auto a = c.name();
    auto b = d.name();
    if (b < a) {
      std::swap(a, b);
    }
    return "{" + a + ";" + b + "}";
  }

  bool IndexPosets::admissible(Chain const& c, Chain const& d) {
    return (c.length() == 2 && d.length() == 2) || c.subset_of(d)
           || d.subset_of(c);
  }

  std::optional<Node> IndexPosets::pair(std::size_t a, std::size_t b) const {
    return ic.find(pair_name(chains.at(a), chains.at(b)));
  }

  IndexPosets build_index_posets(std::vector<Chain> chains) {
    if (chains.empty()) {
      raise(ErrorKind::EmptyChainSet, "index posets need at least one chain");
    }
    for (std::size_t i = 0; i < chains.size(); ++i) {
      auto const& c = chains[i];
      std::set<std::string> distinct(c.labels.begin(), c.labels.end());
      if (c.labels.size() < 2 || distinct.size() != c.labels.size()) {
        raise(ErrorKind::PreconditionFailed,
              "chain '" + c.name() + "' needs at least two distinct elements");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (chains[j].same_set(c)) {
          raise(ErrorKind::PreconditionFailed,
                "chain '" + c.name() + "' is listed twice");
        }
      }
    }
    std::size_t const                  n = chains.size();
    std::vector<std::string>           names{"empty"};
    std::vector<std::pair<Node, Node>> rel;
    for (auto const& c : chains) {
      names.push_back(IndexPosets::singleton_name(c));
      rel.emplace_back(0, names.size() - 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!IndexPosets::admissible(chains[i], chains[j])) {
          continue;
        }
        names.push_back(IndexPosets::pair_name(chains[i], chains[j]));
        Node p = names.size() - 1;
        rel.emplace_back(1 + i, p);
        rel.emplace_back(1 + j, p);
      }
    }
    names.push_back("top");
    Node top = names.size() - 1;
    for (Node p = 0; p < top; ++p) {
      rel.emplace_back(p, top);
    }
    IndexPosets result;
    result.chains = std::move(chains);
    result.ic     = Poset(std::move(names), rel);
    for (Node p = 0; p <= n; ++p) {
      result.jc.push_back(p);
    }
    for (Node p = 0; p < top; ++p) {
      result.kc.push_back(p);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // NodeLattice, DiagramMap
  ////////////////////////////////////////////////////////////////////////

  NodeLattice::NodeLattice(LatticePtr single)
      : _factors{single}, _flat(single), _size(single->size()) {}

  NodeLattice::NodeLattice(std::vector<LatticePtr> factors, Limits const& limits)
      : _factors(std::move(factors)) {
    if (_factors.empty()) {
      raise(ErrorKind::PreconditionFailed, "a node needs at least one factor");
    }
    _size = 1;
    for (auto const& f : _factors) {
      if (_size > std::numeric_limits<std::size_t>::max() / f->size()) {
        _size = std::numeric_limits<std::size_t>::max();
        break;
      }
      _size *= f->size();
    }
    if (_factors.size() == 1) {
      _flat = _factors[0];
    } else if (_size <= limits.max_product_size) {
      _flat = product(_factors, limits).lattice;
    }
  }

  LatticePtr const& NodeLattice::lattice() const {
    if (!_flat) {
      raise(ErrorKind::BudgetExceeded,
            "product " + description() + " has more than the allowed number of "
                "elements and is kept factored");
    }
    return _flat;
  }

  std::string NodeLattice::description() const {
    std::string s;
    for (std::size_t i = 0; i < _factors.size(); ++i) {
      s += (i ? "x" : "") + _factors[i]->name();
    }
    return s;
  }

  NodeLattice NodeLattice::dual() const {
    NodeLattice d;
    for (auto const& f : _factors) {
      d._factors.push_back(critlat::dual(*f));
    }
    d._size = _size;
    if (_factors.size() == 1) {
      d._flat = d._factors[0];
    } else if (_flat) {
      d._flat = critlat::dual(*_flat);
    }
    return d;
  }

  bool NodeLattice::operator==(NodeLattice const& other) const {
    if (_factors.size() != other._factors.size()) {
      return false;
    }
    for (std::size_t i = 0; i < _factors.size(); ++i) {
      if (!same_lattice(_factors[i], other._factors[i])) {
        return false;
      }
    }
    return true;
  }

  DiagramMap::DiagramMap(std::vector<FactorMap> parts) : _parts(std::move(parts)) {}

  DiagramMap DiagramMap::single(Homomorphism h) {
    return DiagramMap({FactorMap{0, std::move(h)}});
  }

  DiagramMap DiagramMap::identity(NodeLattice const& node) {
    std::vector<FactorMap> parts;
    for (std::size_t i = 0; i < node.factors().size(); ++i) {
      parts.push_back({i, Homomorphism::identity(node.factors()[i])});
    }
    return DiagramMap(std::move(parts));
  }

  DiagramMap DiagramMap::after(DiagramMap const& first) const {
    std::vector<FactorMap> parts;
    for (auto const& g : _parts) {
      auto const& f = first._parts.at(g.source);
      parts.push_back({f.source, g.hom.after(f.hom)});
    }
    return DiagramMap(std::move(parts));
  }

  bool DiagramMap::is_homomorphism() const {
    return std::all_of(_parts.begin(), _parts.end(),
                       [](FactorMap const& p) { return p.hom.is_homomorphism(); });
  }

  bool DiagramMap::fits(NodeLattice const& source, NodeLattice const& target) const {
    if (_parts.size() != target.factors().size()) {
      return false;
    }
    for (std::size_t j = 0; j < _parts.size(); ++j) {
      auto const& p = _parts[j];
      if (p.source >= source.factors().size()
          || !same_lattice(p.hom.source(), source.factors()[p.source])
          || !same_lattice(p.hom.target(), target.factors()[j])) {
        return false;
      }
    }
    return true;
  }

  std::vector<Elem> DiagramMap::apply(std::vector<Elem> const& coordinates) const {
    std::vector<Elem> out;
    out.reserve(_parts.size());
    for (auto const& p : _parts) {
      out.push_back(p.hom(coordinates.at(p.source)));
    }
    return out;
  }

  Homomorphism DiagramMap::flat(NodeLattice const& source,
                                NodeLattice const& target) const {
    auto const&       s = source.lattice();
    auto const&       t = target.lattice();
    std::vector<Elem> images(s->size());
    for (Elem x = 0; x < s->size(); ++x) {
      auto c    = product_coordinates(source.factors(), x);
      images[x] = product_index(target.factors(), apply(c));
    }
    return Homomorphism(s, t, std::move(images));
  }

  bool DiagramMap::operator==(DiagramMap const& other) const {
    if (_parts.size() != other._parts.size()) {
      return false;
    }
    for (std::size_t j = 0; j < _parts.size(); ++j) {
      auto const& a = _parts[j];
      auto const& b = other._parts[j];
      if (a.source == b.source && a.hom.images() == b.hom.images()) {
        continue;
      }
      if (a.hom.is_constant() && b.hom.is_constant()
          && a.hom.images().front() == b.hom.images().front()) {
        continue;
      }
      return false;
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // LatticeDiagram
  ////////////////////////////////////////////////////////////////////////

  std::string DiagramFailure::describe(Poset const& poset) const {
    auto n = [&](Node x) { return poset.name(x); };
    switch (kind) {
      case Kind::MissingMap:
        return "no map for " + n(p) + " <= " + n(q);
      case Kind::EndpointMismatch:
        return "map " + n(p) + " -> " + n(q) + " has the wrong endpoints";
      case Kind::NotAHomomorphism:
        return "map " + n(p) + " -> " + n(q) + " is not a homomorphism";
      case Kind::NotIdentity:
        return "map " + n(p) + " -> " + n(p) + " is not the identity";
      case Kind::NotCommuting:
        return "maps do not commute on " + n(p) + " < " + n(q) + " < " + n(r);
    }
    return "unknown failure";
  }

  LatticeDiagram::LatticeDiagram(Poset                    poset,
                                 std::vector<NodeLattice> nodes,
                                 MapTable                 maps)
      : _poset(std::move(poset)), _nodes(std::move(nodes)), _maps(std::move(maps)) {
    if (_nodes.size() != _poset.size()) {
      raise(ErrorKind::PreconditionFailed,
            "diagram has " + std::to_string(_nodes.size()) + " lattices for "
                + std::to_string(_poset.size()) + " nodes");
    }
    for (auto const& [key, f] : _maps) {
      if (key.first >= _poset.size() || key.second >= _poset.size()
          || !_poset.leq(key.first, key.second)) {
        raise(ErrorKind::PreconditionFailed, "diagram map on incomparable nodes");
      }
    }
  }

  DiagramMap LatticeDiagram::map(Node p, Node q) const {
    if (auto it = _maps.find({p, q}); it != _maps.end()) {
      return it->second;
    }
    if (p == q) {
      return DiagramMap::identity(_nodes.at(p));
    }
    raise(ErrorKind::PreconditionFailed,
          "no map " + _poset.name(p) + " -> " + _poset.name(q));
  }

  std::optional<DiagramFailure> LatticeDiagram::first_failure(Limits const&) const {
    using K = DiagramFailure::Kind;
    for (Node p = 0; p < _poset.size(); ++p) {
      if (auto it = _maps.find({p, p}); it != _maps.end()) {
        if (!(it->second == DiagramMap::identity(_nodes[p]))) {
          return DiagramFailure{K::NotIdentity, p, p, p};
        }
      }
    }
    for (auto [p, q] : _poset.strict_pairs()) {
      auto it = _maps.find({p, q});
      if (it == _maps.end()) {
        return DiagramFailure{K::MissingMap, p, q, q};
      }
      if (!it->second.fits(_nodes[p], _nodes[q])) {
        return DiagramFailure{K::EndpointMismatch, p, q, q};
      }
      if (!it->second.is_homomorphism()) {
        return DiagramFailure{K::NotAHomomorphism, p, q, q};
      }
    }
    std::size_t const n = _poset.size();
    for (Node p = 0; p < n; ++p) {
      for (Node q = 0; q < n; ++q) {
        if (!_poset.less(p, q)) {
          continue;
        }
        auto const& f = _maps.at({p, q});
        for (Node r = 0; r < n; ++r) {
          if (!_poset.less(q, r)) {
            continue;
          }
          if (!(_maps.at({q, r}).after(f) == _maps.at({p, r}))) {
            return DiagramFailure{K::NotCommuting, p, q, r};
          }
        }
      }
    }
    return std::nullopt;
  }

  void LatticeDiagram::verify(Limits const& limits) const {
    if (auto f = first_failure(limits)) {
      raise(ErrorKind::VerificationFailed, f->describe(_poset));
    }
  }

  LatticeDiagram LatticeDiagram::restrict(std::vector<Node> const& subset) const {
    std::vector<NodeLattice> nodes;
    MapTable                 maps;
    for (Node i = 0; i < subset.size(); ++i) {
      nodes.push_back(_nodes.at(subset[i]));
      for (Node j = 0; j < subset.size(); ++j) {
        if (auto it = _maps.find({subset[i], subset[j]}); it != _maps.end()) {
          maps.emplace(std::pair(i, j), it->second);
        }
      }
    }
    return LatticeDiagram(_poset.induced(subset), std::move(nodes), std::move(maps));
  }

  LatticeDiagram LatticeDiagram::restrict(std::vector<std::string> const& names) const {
    std::vector<Node> subset;
    for (auto const& s : names) {
      subset.push_back(_poset.index_of(s));
    }
    return restrict(subset);
  }

  LatticeDiagram LatticeDiagram::reindexed(Poset const& target) const {
    if (!_poset.same_up_to_order(target)) {
      raise(ErrorKind::PosetMismatch, "cannot reindex onto a different poset");
    }
    std::vector<Node> from(target.size());
    for (Node p = 0; p < target.size(); ++p) {
      from[p] = _poset.index_of(target.name(p));
    }
    LatticeDiagram r = restrict(from);
    r._poset         = target;
    return r;
  }

  bool LatticeDiagram::is_flat() const {
    return std::all_of(_nodes.begin(), _nodes.end(), [](NodeLattice const& n) {
      return n.factors().size() == 1;
    });
  }

  LatticeDiagram LatticeDiagram::flatten() const {
    std::vector<NodeLattice> nodes;
    for (auto const& n : _nodes) {
      nodes.emplace_back(n.lattice());
    }
    MapTable maps;
    for (auto const& [key, f] : _maps) {
      maps.emplace(key, DiagramMap::single(
                            f.flat(_nodes[key.first], _nodes[key.second])));
    }
    return LatticeDiagram(_poset, std::move(nodes), std::move(maps));
  }

  LatticeDiagram LatticeDiagram::dual() const {
    std::vector<NodeLattice> nodes;
    for (auto const& n : _nodes) {
      nodes.push_back(n.dual());
    }
    MapTable maps;
    for (auto const& [key, f] : _maps) {
      std::vector<FactorMap> parts;
      for (std::size_t j = 0; j < f.parts().size(); ++j) {
        auto const& part = f.parts()[j];
        auto const& sf   = nodes[key.first].factors();
        auto const& tf   = nodes[key.second].factors();
        if (part.source >= sf.size() || j >= tf.size()) {
          // Keep malformed maps malformed; verification reports them.
          parts.push_back(part);
          continue;
        }
        parts.push_back(
            {part.source, Homomorphism(sf[part.source], tf[j], part.hom.images())});
      }
      maps.emplace(key, DiagramMap(std::move(parts)));
    }
    return LatticeDiagram(_poset, std::move(nodes), std::move(maps));
  }

  LatticeDiagram LatticeDiagram::with_map(Node p, Node q, DiagramMap f) const {
    LatticeDiagram r = *this;
    r._maps[{p, q}]  = std::move(f);
    return r;
  }

  bool LatticeDiagram::operator==(LatticeDiagram const& other) const {
    if (!(_poset == other._poset) || !(_nodes == other._nodes)) {
      return false;
    }
    for (auto [p, q] : _poset.strict_pairs()) {
      auto a = _maps.find({p, q});
      auto b = other._maps.find({p, q});
      if ((a == _maps.end()) != (b == other._maps.end())) {
        return false;
      }
      if (a != _maps.end() && !(a->second == b->second)) {
        return false;
      }
    }
    return true;
  }

  ConcMap SemilatticeDiagram::map(Node p, Node q) const {
    if (p == q) {
      return ConcMap::identity(nodes.at(p));
    }
    return maps.at({p, q});
  }

  std::optional<DiagramFailure> SemilatticeDiagram::first_failure() const {
    using K = DiagramFailure::Kind;
    for (auto [p, q] : poset.strict_pairs()) {
      auto it = maps.find({p, q});
      if (it == maps.end()) {
        return DiagramFailure{K::MissingMap, p, q, q};
      }
      if (it->second.source() != nodes[p] || it->second.target() != nodes[q]) {
        return DiagramFailure{K::EndpointMismatch, p, q, q};
      }
      if (!it->second.preserves_zero() || !it->second.preserves_joins()) {
        return DiagramFailure{K::NotAHomomorphism, p, q, q};
      }
    }
    for (Node p = 0; p < poset.size(); ++p) {
      for (Node q = 0; q < poset.size(); ++q) {
        for (Node r = 0; r < poset.size(); ++r) {
          if (poset.less(p, q) && poset.less(q, r)
              && !(maps.at({q, r}).after(maps.at({p, q})) == maps.at({p, r}))) {
            return DiagramFailure{K::NotCommuting, p, q, r};
          }
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  namespace {

    void check_common_bounds(std::vector<Chain> const& chains, ErrorKind kind) {
      for (auto const& c : chains) {
        if (c.labels.size() < 2 || c.labels.front() != chains[0].labels.front()
            || c.labels.back() != chains[0].labels.back()) {
          raise(kind, "chain '" + c.name() + "' does not share the bounds of '"
                          + chains[0].name() + "'");
        }
      }
    }

    LatticePtr two_of(std::vector<Chain> const& chains) {
      if (chains.empty()) {
        return chain_lattice({"0", "1"}, "2");
      }
      return chain_lattice({chains[0].labels.front(), chains[0].labels.back()}, "2");
    }

    // Position of each element of `sub` inside `super`, both given as
    // element lists of a common host.
    std::vector<Elem> inclusion_images(std::vector<Elem> const& sub,
                                       std::vector<Elem> const& super) {
      std::vector<Elem> images;
      for (Elem x : sub) {
        auto it = std::find(super.begin(), super.end(), x);
        if (it == super.end()) {
          raise(ErrorKind::PreconditionFailed, "node is not contained in its successor");
        }
        images.push_back(static_cast<Elem>(it - super.begin()));
      }
      return images;
    }

    // Isotone surjections from an m-element chain onto {0,1,2}.
    std::vector<std::vector<Elem>> onto_three(std::size_t m) {
      std::vector<std::vector<Elem>> result;
      // Choose the first index mapped to 1 and the first mapped to 2.
      for (std::size_t a = 1; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          std::vector<Elem> t(m);
          for (std::size_t i = 0; i < m; ++i) {
            t[i] = i < a ? 0 : i < b ? 1 : 2;
          }
          result.push_back(std::move(t));
        }
      }
      std::sort(result.begin(), result.end());
      return result;
    }

  }  // namespace

  LatticeDiagram base_diagram(std::vector<Chain> const& chains) {
    auto two = two_of(chains);
    if (chains.empty()) {
      return LatticeDiagram(Poset({"empty"}, {}), {NodeLattice(two)}, {});
    }
    check_common_bounds(chains, ErrorKind::PreconditionFailed);
    auto                     index = build_index_posets(chains);
    std::vector<NodeLattice> nodes{NodeLattice(two)};
    LatticeDiagram::MapTable maps;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      auto c = chains[i].lattice();
      nodes.emplace_back(c);
      maps.emplace(std::pair<Node, Node>(0, 1 + i),
                   DiagramMap::single(Homomorphism::bounds(two, c)));
    }
    return LatticeDiagram(index.jc_poset(), std::move(nodes), std::move(maps));
  }

  LatticeDiagram chain_diagram(LatticePtr const&         l,
                               std::vector<Chain> const& chains,
                               Limits const&             limits) {
    if (chains.empty()) {
      // IC of the empty chain set is just empty < top.
      std::vector<Elem> bounds{l->bottom(), l->top()};
      auto              sub = graded_sublattice(l, bounds, "Aempty");
      LatticeDiagram::MapTable maps;
      maps.emplace(std::pair<Node, Node>(0, 1),
                   DiagramMap::single(Homomorphism(sub.lattice, l, sub.elements)));
      return LatticeDiagram(Poset({"empty", "top"}, {{0, 1}}),
                            {NodeLattice(sub.lattice), NodeLattice(l)}, std::move(maps));
    }
    std::vector<std::vector<Elem>> elems;
    for (auto const& c : chains) {
      auto e = elements_of(*l, c.labels);
      if (!is_strict_chain(*l, e)) {
        raise(ErrorKind::PreconditionFailed,
              "'" + c.name() + "' is not a chain of " + l->name());
      }
      if (e.front() != l->bottom() || e.back() != l->top()) {
        raise(ErrorKind::NotSpanning,
              "chain '" + c.name() + "' does not contain both bounds of " + l->name());
      }
      elems.push_back(std::move(e));
    }
    auto index = build_index_posets(chains);
    auto const& poset = index.ic;

    std::vector<std::vector<Elem>> members(poset.size());
    std::vector<NodeLattice>       nodes;
    for (Node p = 0; p < poset.size(); ++p) {
      std::vector<Elem> s;
      if (p == index.empty()) {
        s = {l->bottom(), l->top()};
      } else if (p == index.top()) {
        for (Elem x = 0; x < l->size(); ++x) {
          s.push_back(x);
        }
      } else if (p <= chains.size()) {
        s = elems[p - 1];
      } else {
        std::vector<Elem> gens;
        for (std::size_t i = 0; i < chains.size(); ++i) {
          if (poset.leq(index.singleton(i), p)) {
            gens.insert(gens.end(), elems[i].begin(), elems[i].end());
          }
        }
        s = subuniverse_closure(l, gens).elements;
      }
      if (p == index.top()) {
        members[p] = s;
        nodes.emplace_back(l);
        continue;
      }
      auto sub   = graded_sublattice(l, s, "A" + poset.name(p));
      members[p] = sub.elements;
      if (auto w = distributivity_violation(*sub.lattice)) {
        raise(ErrorKind::VerificationFailed,
              "node " + poset.name(p) + " is not distributive");
      }
      nodes.emplace_back(sub.lattice);
    }
    LatticeDiagram::MapTable maps;
    for (auto [p, q] : poset.strict_pairs()) {
      maps.emplace(std::pair(p, q),
                   DiagramMap::single(Homomorphism(
                       nodes[p].lattice(), nodes[q].lattice(),
                       inclusion_images(members[p], members[q]))));
    }
    (void) limits;
    return LatticeDiagram(poset, std::move(nodes), std::move(maps));
  }

  std::vector<Chain> chains_of_partial(LatticePtr const&        l,
                                       std::vector<Elem> const& k) {
    std::vector<Elem> ks(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (!std::binary_search(ks.begin(), ks.end(), l->bottom())
        || !std::binary_search(ks.begin(), ks.end(), l->top())) {
      raise(ErrorKind::NotSpanning, "K must contain both bounds of " + l->name());
    }
    std::vector<Elem> inner;
    for (Elem x : ks) {
      if (x != l->bottom() && x != l->top()) {
        inner.push_back(x);
      }
    }
    std::vector<std::vector<Elem>> two, three;
    for (Elem x : inner) {
      two.push_back({l->bottom(), x, l->top()});
      for (Elem y : inner) {
        if (l->less(x, y)) {
          three.push_back({l->bottom(), x, y, l->top()});
        }
      }
    }
    std::sort(two.begin(), two.end());
    std::sort(three.begin(), three.end());
    std::vector<Chain> result;
    for (auto const* group : {&two, &three}) {
      for (auto const& c : *group) {
        Chain ch;
        for (Elem x : c) {
          ch.labels.push_back(l->label(x));
        }
        result.push_back(std::move(ch));
      }
    }
    return result;
  }

  LatticeDiagram chain_diagram_of_partial(LatticePtr const&        l,
                                          std::vector<Elem> const& k,
                                          Limits const&            limits) {
    return chain_diagram(l, chains_of_partial(l, k), limits);
  }

  ProductDiagram product_over(std::vector<Node> const&           j,
                              std::vector<LatticeDiagram> const& parts,
                              Limits const&                      limits) {
    if (parts.empty()) {
      raise(ErrorKind::PreconditionFailed, "product over an empty family");
    }
    Poset const& poset = parts[0].poset();
    for (auto const& d : parts) {
      if (!(d.poset() == poset)) {
        raise(ErrorKind::PosetMismatch, "factor diagrams are indexed differently");
      }
    }
    if (!poset.is_lower_subset(j)) {
      raise(ErrorKind::NotLowerSubset, "J is not a lower subset of the index poset");
    }
    auto common = parts[0].restrict(j);
    for (std::size_t t = 1; t < parts.size(); ++t) {
      if (!(parts[t].restrict(j) == common)) {
        raise(ErrorKind::RestrictionMismatch,
              "factor " + std::to_string(t) + " differs from factor 0 on J");
      }
    }
    std::size_t const n = poset.size();
    std::vector<bool> in_j(n, false);
    for (Node p : j) {
      in_j[p] = true;
    }
    // offset[t][p]: first factor of A^t_p inside the product node p.
    std::vector<std::vector<std::size_t>> offset(parts.size(),
                                                 std::vector<std::size_t>(n, 0));
    std::vector<NodeLattice> nodes;
    for (Node p = 0; p < n; ++p) {
      if (in_j[p]) {
        nodes.push_back(parts[0].node(p));
        continue;
      }
      std::vector<LatticePtr> factors;
      for (std::size_t t = 0; t < parts.size(); ++t) {
        offset[t][p] = factors.size();
        auto const& f = parts[t].node(p).factors();
        factors.insert(factors.end(), f.begin(), f.end());
      }
      nodes.emplace_back(std::move(factors), limits);
    }
    LatticeDiagram::MapTable maps;
    for (auto [p, q] : poset.strict_pairs()) {
      if (in_j[q]) {
        maps.emplace(std::pair(p, q), parts[0].map(p, q));
        continue;
      }
      std::vector<FactorMap> fm;
      for (std::size_t t = 0; t < parts.size(); ++t) {
        auto const f = parts[t].map(p, q);
        for (auto const& part : f.parts()) {
          fm.push_back({(in_j[p] ? 0 : offset[t][p]) + part.source, part.hom});
        }
      }
      maps.emplace(std::pair(p, q), DiagramMap(std::move(fm)));
    }
    ProductDiagram result{LatticeDiagram(poset, nodes, std::move(maps)), {}};
    for (std::size_t t = 0; t < parts.size(); ++t) {
      std::vector<DiagramMap> pi;
      for (Node p = 0; p < n; ++p) {
        if (in_j[p]) {
          pi.push_back(DiagramMap::identity(nodes[p]));
          continue;
        }
        std::vector<FactorMap> fm;
        auto const& f = parts[t].node(p).factors();
        for (std::size_t i = 0; i < f.size(); ++i) {
          fm.push_back({offset[t][p] + i, Homomorphism::identity(f[i])});
        }
        pi.emplace_back(std::move(fm));
      }
      result.projections.push_back(std::move(pi));
    }
    return result;
  }

  namespace {

    // One step of the extension: adds the chain c to a diagram over IC(cs).
    LatticeDiagram extend_one(LatticeDiagram const&     b,
                              std::vector<Chain> const& cs,
                              Chain const&              c) {
      std::vector<Chain> next = cs;
      next.push_back(c);
      auto        index = build_index_posets(next);
      auto const& poset = index.ic;
      auto const& old   = b.poset();
      std::size_t const k = cs.size();  // chain index of c

      auto        c_lat  = c.lattice();
      auto const& two    = b.node(Node{0}).factors().at(0);
      if (two->size() != 2 || two->label(0) != c.labels.front()
          || two->label(1) != c.labels.back()) {
        raise(ErrorKind::PreconditionFailed,
              "chain '" + c.name() + "' does not share the bounds of the diagram");
      }
      std::vector<Elem> collapse(c_lat->size(), 0);
      collapse.back() = 1;
      DiagramMap f_c = DiagramMap::single(Homomorphism(c_lat, two, collapse));

      Node const c_node = index.singleton(k);
      // For a new pair node, the old chain it is made of.
      std::vector<std::optional<std::size_t>> partner(poset.size());
      for (std::size_t i = 0; i < k; ++i) {
        if (auto p = index.pair(i, k)) {
          partner[*p] = i;
        }
      }
      auto old_of = [&](Node p) { return old.find(poset.name(p)); };
      Node const old_top = old.index_of("top");
      Node const old_empty = old.index_of("empty");
      auto old_single = [&](std::size_t i) {
        return old.index_of(IndexPosets::singleton_name(cs[i]));
      };

      std::vector<NodeLattice> nodes;
      for (Node p = 0; p < poset.size(); ++p) {
        if (auto o = old_of(p)) {
          nodes.push_back(b.node(*o));
        } else if (p == c_node) {
          nodes.emplace_back(c_lat);
        } else {
          nodes.push_back(b.node(old_single(*partner[p])));
        }
      }
      LatticeDiagram::MapTable maps;
      for (auto [p, q] : poset.strict_pairs()) {
        auto op = old_of(p);
        auto oq = old_of(q);
        DiagramMap f;
        if (op && oq) {
          f = b.map(*op, *oq);
        } else if (p == index.empty() && q == c_node) {
          f = DiagramMap::single(Homomorphism::bounds(two, c_lat));
        } else if (p == index.empty()) {
          f = b.map(old_empty, old_single(*partner[q]));
        } else if (p == c_node && q == index.top()) {
          f = b.map(old_empty, old_top).after(f_c);
        } else if (p == c_node) {
          f = b.map(old_empty, old_single(*partner[q])).after(f_c);
        } else if (q == index.top()) {
          f = b.map(old_single(*partner[p]), old_top);
        } else {
          f = DiagramMap::identity(nodes[p]);
        }
        maps.emplace(std::pair(p, q), std::move(f));
      }
      return LatticeDiagram(poset, std::move(nodes), std::move(maps));
    }

  }  // namespace

  LatticeDiagram extend_diagram(LatticeDiagram const&     b,
                                std::vector<Chain> const& chains,
                                std::vector<Chain> const& target,
                                Limits const&             limits) {
    auto index = build_index_posets(chains);
    if (!b.poset().same_up_to_order(index.ic)) {
      raise(ErrorKind::PosetMismatch, "diagram is not indexed by IC of the given chains");
    }
    LatticeDiagram cur = b.reindexed(index.ic);
    if (!(cur.restrict(index.jc) == base_diagram(chains))) {
      raise(ErrorKind::PreconditionFailed,
            "the restriction of the diagram to JC is not the base diagram");
    }
    for (auto const& c : chains) {
      bool found = std::any_of(target.begin(), target.end(),
                               [&](Chain const& d) { return d.name() == c.name(); });
      if (!found) {
        raise(ErrorKind::PreconditionFailed,
              "chain '" + c.name() + "' is missing from the target chain set");
      }
    }
    std::vector<Chain> cs = chains;
    for (auto const& c : target) {
      bool present = std::any_of(cs.begin(), cs.end(),
                                 [&](Chain const& d) { return d.name() == c.name(); });
      if (present) {
        continue;
      }
      cur = extend_one(cur, cs, c);
      cs.push_back(c);
    }
    (void) limits;
    return cur.reindexed(build_index_posets(target).ic);
  }

  DirectingDiagram directing_diagram(LatticePtr const& kgen,
                                     Chain const&      c1,
                                     Chain const&      c2,
                                     Chain const&      c3,
                                     Limits const&     limits) {
    std::vector<Chain> chains{c1, c2, c3};
    if (c1.labels.size() != 3 || c2.labels.size() != 3) {
      raise(ErrorKind::BadChainShapes, "C1 and C2 must have length 2");
    }
    if (c1.same_set(c2) || c1.same_set(c3) || c2.same_set(c3)) {
      raise(ErrorKind::BadChainShapes, "C1, C2, C3 must be distinct");
    }
    if (c3.length() < 2 || (c3.length() != 2 && !(c1.subset_of(c3) && c2.subset_of(c3)))) {
      raise(ErrorKind::BadChainShapes,
            "C3 must have length 2 or contain both C1 and C2");
    }
    check_common_bounds(chains, ErrorKind::BadChainShapes);

    DirectingDiagram result;
    bool             matched = false;
    for (std::string name : {"M:3", "N5"}) {
      auto model = load_lattice(name);
      if (auto f = is_isomorphic(model, kgen, limits)) {
        for (int i = 0; i < 3; ++i) {
          result.x[i] = (*f)(model->index_of("x" + std::to_string(i + 1)));
        }
        matched = true;
        break;
      }
    }
    if (!matched) {
      raise(ErrorKind::PreconditionFailed,
            kgen->name() + " is isomorphic to neither M3 nor N5");
    }
    result.index = build_index_posets(chains);
    auto const& index = result.index;
    auto const& poset = index.ic;
    result.t_maps     = onto_three(c3.labels.size());

    auto two = two_of(chains);
    std::vector<LatticePtr> chain_lats{c1.lattice(), c2.lattice(), c3.lattice()};
    Elem const bot = kgen->bottom(), top = kgen->top();
    auto const& x  = result.x;

    // Pair nodes {0, xi, xj, 1} of the generator.
    std::map<Node, Sublattice> pair_nodes;
    std::map<Node, std::array<std::size_t, 2>> pair_of;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        auto p = index.pair(i, j);
        if (!p) {
          raise(ErrorKind::BadChainShapes, "pair of chains missing from IC");
        }
        std::vector<Elem> s{bot, x[i], x[j], top};
        pair_nodes.emplace(*p, graded_sublattice(kgen, s, "K" + poset.name(*p)));
        pair_of[*p] = {i, j};
      }
    }
    // Image of chain i inside a generator subset: middle -> xi. For C3 the
    // map goes through t.
    auto chain_images = [&](std::size_t i, std::vector<Elem> const& t) {
      std::vector<Elem> img;
      if (i < 2) {
        img = {bot, x[i], top};
      } else {
        Elem const d3[3] = {bot, x[2], top};
        for (Elem v : t) {
          img.push_back(d3[v]);
        }
      }
      return img;
    };

    std::vector<LatticeDiagram> parts;
    for (auto const& t : result.t_maps) {
      std::vector<NodeLattice> nodes;
      for (Node p = 0; p < poset.size(); ++p) {
        if (p == index.empty()) {
          nodes.emplace_back(two);
        } else if (p == index.top()) {
          nodes.emplace_back(kgen);
        } else if (p <= 3) {
          nodes.emplace_back(chain_lats[p - 1]);
        } else {
          nodes.emplace_back(pair_nodes.at(p).lattice);
        }
      }
      LatticeDiagram::MapTable maps;
      for (auto [p, q] : poset.strict_pairs()) {
        auto const& tgt = nodes[q].lattice();
        Homomorphism h;
        if (p == index.empty()) {
          h = Homomorphism::bounds(two, tgt);
        } else if (p <= 3) {
          auto img = chain_images(p - 1, t);
          if (q != index.top()) {
            img = inclusion_images(img, pair_nodes.at(q).elements);
          }
          h = Homomorphism(nodes[p].lattice(), tgt, img);
        } else {
          h = Homomorphism(nodes[p].lattice(), tgt, pair_nodes.at(p).elements);
        }
        maps.emplace(std::pair(p, q), DiagramMap::single(std::move(h)));
      }
      parts.emplace_back(poset, std::move(nodes), std::move(maps));
    }
    result.diagram = product_over(index.jc, parts, limits).diagram;
    return result;
  }

  GluedDiagram glued_diagram(LatticePtr const&        l,
                             std::vector<Elem> const& k,
                             LatticePtr const&        kgen,
                             Limits const&            limits) {
    std::set<Elem> distinct(k.begin(), k.end());
    if (distinct.size() < 5) {
      raise(ErrorKind::TooFewElements,
            "K has " + std::to_string(distinct.size())
                + " elements; at least five are required");
    }
    auto chains = chains_of_partial(l, k);
    GluedDiagram result;
    result.index = build_index_posets(chains);
    std::vector<LatticeDiagram> parts{chain_diagram(l, chains, limits)};
    std::size_t const           n = chains.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || chains[a].length() != 2 || chains[b].length() != 2) {
          continue;
        }
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b) {
            continue;
          }
          if (chains[d].length() != 2
              && !(chains[a].subset_of(chains[d]) && chains[b].subset_of(chains[d]))) {
            continue;
          }
          result.triples.push_back({a, b, d});
          auto h = directing_diagram(kgen, chains[a], chains[b], chains[d], limits);
          parts.push_back(extend_diagram(
              h.diagram, {chains[a], chains[b], chains[d]}, chains, limits));
        }
      }
    }
    result.diagram = product_over(result.index.jc, parts, limits).diagram;
    return result;
  }

  SemilatticeDiagram apply_conc(LatticeDiagram const& d, Limits const& limits) {
    SemilatticeDiagram s;
    s.poset = d.poset();
    s.nodes.resize(d.poset().size());
    for (Node p = 0; p < d.poset().size(); ++p) {
      d.node(p).lattice();  // raises BudgetExceeded for factored nodes
    }
    parallel_for(d.poset().size(), limits.threads, [&](std::size_t p) {
      s.nodes[p] = con_lattice(d.node(p).lattice(), limits);
    });
    for (auto [p, q] : d.poset().strict_pairs()) {
      auto f = d.map(p, q).flat(d.node(p), d.node(q));
      s.maps.emplace(std::pair(p, q), conc_of_hom(f, s.nodes[p], s.nodes[q]));
    }
    if (auto failure = s.first_failure()) {
      raise(ErrorKind::VerificationFailed, "Conc diagram: " + failure->describe(s.poset));
    }
    return s;
  }

  std::string diagram_to_dot(LatticeDiagram const& d) {
    std::ostringstream out;
    auto const&        poset = d.poset();
    out << "digraph diagram {\n  compound=true;\n  rankdir=BT;\n";
    std::vector<std::string> anchor(poset.size());
    for (Node p = 0; p < poset.size(); ++p) {
      auto const& node   = d.node(p);
      std::string prefix = "n" + std::to_string(p) + "_";
      out << "  subgraph cluster_" << p << " {\n    label=" << dot_quote(poset.name(p))
          << ";\n";
      if (!node.is_flat()) {
        anchor[p] = prefix + "box";
        out << "    " << anchor[p] << " [shape=box, label="
            << dot_quote(node.description()) << "];\n  }\n";
        continue;
      }
      auto const& l = node.lattice();
      anchor[p]     = prefix + std::to_string(l->bottom());
      for (Elem x = 0; x < l->size(); ++x) {
        out << "    " << prefix << x << " [label=" << dot_quote(l->label(x)) << "];\n";
      }
      for (auto [a, b] : l->covers()) {
        out << "    " << prefix << a << " -> " << prefix << b << " [arrowhead=none];\n";
      }
      out << "  }\n";
    }
    for (auto [p, q] : poset.covers()) {
      out << "  " << anchor[p] << " -> " << anchor[q] << " [ltail=cluster_" << p
          << ", lhead=cluster_" << q << ", style=dashed, label="
          << dot_quote("f " + poset.name(p) + "," + poset.name(q)) << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  json diagram_to_json(LatticeDiagram const& d) {
    auto const& poset = d.poset();
    json        leq   = json::array();
    json        maps  = json::object();
    json        lats  = json::object();
    for (Node p = 0; p < poset.size(); ++p) {
      lats[poset.name(p)] = lattice_to_json(*d.node(p).lattice());
    }
    for (auto [p, q] : poset.covers()) {
      leq.push_back({poset.name(p), poset.name(q)});
      auto const  f   = d.map(p, q).flat(d.node(p), d.node(q));
      json        img = json::object();
      for (Elem x = 0; x < f.source()->size(); ++x) {
        img[f.source()->label(x)] = f.target()->label(f(x));
      }
      maps[poset.name(p) + "<=" + poset.name(q)] = img;
    }
    return {{"schema", 1},
            {"poset", {{"nodes", poset.names()}, {"leq", leq}}},
            {"lattices", lats},
            {"maps", maps}};
  }

  namespace {

    std::pair<Node, Node> split_edge(Poset const& poset, std::string const& key) {
      for (auto at = key.find("<="); at != std::string::npos;
           at      = key.find("<=", at + 1)) {
        auto p = poset.find(key.substr(0, at));
        auto q = poset.find(key.substr(at + 2));
        if (p && q) {
          return {*p, *q};
        }
      }
      raise(ErrorKind::ParseError, "map key '" + key + "' does not name two nodes");
    }

  }  // namespace

  LatticeDiagram diagram_from_json(json const& j, Limits const& limits) {
    try {
      if (!j.is_object() || !j.contains("poset") || !j.contains("lattices")) {
        raise(ErrorKind::ParseError, "diagram object needs \"poset\" and \"lattices\"");
      }
      if (j.contains("schema") && j.at("schema") != 1) {
        raise(ErrorKind::ParseError, "unsupported schema version");
      }
      auto names = j.at("poset").at("nodes").get<std::vector<std::string>>();
      std::vector<std::pair<Node, Node>> rel;
      auto index = [&](std::string const& s) {
        auto it = std::find(names.begin(), names.end(), s);
        if (it == names.end()) {
          raise(ErrorKind::ParseError, "unknown poset node '" + s + "'");
        }
        return static_cast<Node>(it - names.begin());
      };
      json const leq = j.at("poset").value("leq", json::array());
      for (auto const& e : leq) {
        rel.emplace_back(index(e.at(0).get<std::string>()),
                         index(e.at(1).get<std::string>()));
      }
      Poset                   poset(names, rel);
      std::vector<NodeLattice> nodes;
      for (auto const& name : names) {
        if (!j.at("lattices").contains(name)) {
          raise(ErrorKind::ParseError, "no lattice for node '" + name + "'");
        }
        nodes.emplace_back(lattice_from_ref(j.at("lattices").at(name)));
      }
      LatticeDiagram::MapTable maps;
      json const given = j.value("maps", json::object());
      for (auto const& [key, img] : given.items()) {
        auto [p, q] = split_edge(poset, key);
        if (!poset.less(p, q)) {
          raise(ErrorKind::ParseError, "map '" + key + "' does not follow the order");
        }
        auto const&       src = nodes[p].lattice();
        auto const&       tgt = nodes[q].lattice();
        std::vector<Elem> images(src->size(), 0);
        std::vector<bool> given(src->size(), false);
        for (auto const& [x, y] : img.items()) {
          Elem a    = src->index_of(x);
          images[a] = tgt->index_of(y.get<std::string>());
          given[a]  = true;
        }
        if (std::find(given.begin(), given.end(), false) != given.end()) {
          raise(ErrorKind::ParseError, "map '" + key + "' is not total");
        }
        maps.emplace(std::pair(p, q),
                     DiagramMap::single(Homomorphism(src, tgt, std::move(images))));
      }
      // Compose the missing pairs, shortest gaps first.
      auto pairs = poset.strict_pairs();
      auto gap   = [&](std::pair<Node, Node> e) {
        std::size_t n = 0;
        for (Node r = 0; r < poset.size(); ++r) {
          n += poset.less(e.first, r) && poset.less(r, e.second);
        }
        return n;
      };
      std::stable_sort(pairs.begin(), pairs.end(),
                       [&](auto a, auto b) { return gap(a) < gap(b); });
      for (auto [p, q] : pairs) {
        if (maps.count({p, q})) {
          continue;
        }
        bool done = false;
        for (Node r = 0; r < poset.size() && !done; ++r) {
          auto a = maps.find({p, r});
          auto b = maps.find({r, q});
          if (a != maps.end() && b != maps.end()) {
            maps.emplace(std::pair(p, q), b->second.after(a->second));
            done = true;
          }
        }
        if (!done) {
          raise(ErrorKind::ParseError,
                "no map from '" + poset.name(p) + "' to '" + poset.name(q) + "'");
        }
      }
      (void) limits;
      return LatticeDiagram(std::move(poset), std::move(nodes), std::move(maps));
    } catch (json::exception const& e) {
      raise(ErrorKind::ParseError, e.what());
    }
  }

  LatticeDiagram diagram_from_ref(json const& j, Limits const& limits) {
    if (j.is_string()) {
      json parsed;
      try {
        parsed = json::parse(read_file(j.get<std::string>()));
      } catch (json::exception const& e) {
        raise(ErrorKind::ParseError, j.get<std::string>() + ": " + e.what());
      }
      return diagram_from_json(parsed, limits);
    }
    return diagram_from_json(j, limits);
  }

}  // namespace critlat

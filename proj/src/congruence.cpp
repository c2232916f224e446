#include "critlat/congruence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "critlat/parallel.hpp"

namespace critlat {

  namespace {

    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }

      Elem find(Elem x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      bool unite(Elem x, Elem y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        _parent[y] = x;
        return true;
      }

      std::vector<Elem> roots() {
        std::vector<Elem> r(_parent.size());
        for (Elem x = 0; x < r.size(); ++x) {
          r[x] = find(x);
        }
        return r;
      }

     private:
      std::vector<Elem> _parent;
    };

    // Closes a union-find under translations x -> x ^ z and x -> x v z.
    Congruence close(LatticePtr const&                     host,
                     UnionFind&                            uf,
                     std::deque<std::pair<Elem, Elem>>     queue) {
      auto const&       l = *host;
      std::size_t const n = l.size();
      while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        for (Elem z = 0; z < n; ++z) {
          Elem a = l.meet(x, z), b = l.meet(y, z);
          if (uf.unite(a, b)) {
            queue.emplace_back(a, b);
          }
          a = l.join(x, z);
          b = l.join(y, z);
          if (uf.unite(a, b)) {
            queue.emplace_back(a, b);
          }
        }
      }
      return Congruence(host, uf.roots());
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Congruence
  ////////////////////////////////////////////////////////////////////////

  Congruence::Congruence(LatticePtr host, std::vector<Elem> const& block_of)
      : _host(std::move(host)), _block(block_of.size()) {
    if (block_of.size() != _host->size()) {
      raise(ErrorKind::NotACongruence,
            "partition does not cover " + _host->name());
    }
    std::map<Elem, Elem> renumber;
    for (std::size_t x = 0; x < block_of.size(); ++x) {
      auto it = renumber.emplace(block_of[x], static_cast<Elem>(renumber.size()))
                    .first;
      _block[x] = it->second;
    }
    _count = renumber.size();
  }

  Congruence Congruence::from_blocks(
      LatticePtr                            host,
      std::vector<std::vector<Elem>> const& blocks) {
    std::vector<Elem> block_of(host->size(), PartialLattice::undefined);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) {
        raise(ErrorKind::NotACongruence, "empty block");
      }
      for (Elem x : blocks[b]) {
        if (x >= host->size() || block_of[x] != PartialLattice::undefined) {
          raise(ErrorKind::NotACongruence, "blocks are not a partition");
        }
        block_of[x] = static_cast<Elem>(b);
      }
    }
    if (std::count(block_of.begin(), block_of.end(), PartialLattice::undefined)
        != 0) {
      raise(ErrorKind::NotACongruence, "blocks do not cover every element");
    }
    Congruence theta(std::move(host), block_of);
    if (auto bad = theta.first_violation()) {
      auto const& l = *theta.host();
      auto [x, y, z] = *bad;
      raise(ErrorKind::NotACongruence,
            l.label(x) + " ~ " + l.label(y) + " but translation by "
                + l.label(z) + " separates them");
    }
    return theta;
  }

  Congruence Congruence::zero(LatticePtr host) {
    std::vector<Elem> ids(host->size());
    std::iota(ids.begin(), ids.end(), 0);
    return Congruence(std::move(host), ids);
  }

  Congruence Congruence::one(LatticePtr host) {
    std::vector<Elem> ids(host->size(), 0);
    return Congruence(std::move(host), ids);
  }

  std::vector<std::vector<Elem>> Congruence::blocks() const {
    std::vector<std::vector<Elem>> result(_count);
    for (Elem x = 0; x < _block.size(); ++x) {
      result[_block[x]].push_back(x);
    }
    return result;
  }

  std::optional<std::tuple<Elem, Elem, Elem>>
  Congruence::first_violation() const {
    auto const&       l = *_host;
    std::size_t const n = l.size();
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = x + 1; y < n; ++y) {
        if (!related(x, y)) {
          continue;
        }
        for (Elem z = 0; z < n; ++z) {
          if (!related(l.meet(x, z), l.meet(y, z))
              || !related(l.join(x, z), l.join(y, z))) {
            return std::tuple{x, y, z};
          }
        }
      }
    }
    return std::nullopt;
  }

  bool Congruence::leq(Congruence const& other) const {
    // Each block of this maps into a single block of other.
    std::vector<Elem> target(_count, PartialLattice::undefined);
    for (Elem x = 0; x < _block.size(); ++x) {
      Elem& t = target[_block[x]];
      if (t == PartialLattice::undefined) {
        t = other._block[x];
      } else if (t != other._block[x]) {
        return false;
      }
    }
    return true;
  }

  std::string Congruence::to_string() const {
    std::string s;
    auto        bs = blocks();
    for (std::size_t b = 0; b < bs.size(); ++b) {
      if (b > 0) {
        s += "|";
      }
      s += join_labels(*_host, bs[b], ",");
    }
    return s;
  }

  Congruence generated_congruence(LatticePtr const&                      host,
                                  std::span<std::pair<Elem, Elem> const> pairs) {
    UnionFind                         uf(host->size());
    std::deque<std::pair<Elem, Elem>> queue;
    for (auto const& [a, b] : pairs) {
      if (uf.unite(a, b)) {
        queue.emplace_back(a, b);
      }
    }
    return close(host, uf, std::move(queue));
  }

  Congruence principal_congruence(LatticePtr const& host, Elem a, Elem b) {
    std::pair<Elem, Elem> const pair{a, b};
    return generated_congruence(host, std::span(&pair, 1));
  }

  Congruence congruence_join(Congruence const& a, Congruence const& b) {
    if (!(*a.host() == *b.host())) {
      raise(ErrorKind::HostMismatch, "congruences live on different lattices");
    }
    // For compatible inputs the transitive closure of the union is already
    // the join; the closure pass only matters for unchecked partitions.
    UnionFind                         uf(a.host()->size());
    std::deque<std::pair<Elem, Elem>> queue;
    std::vector<Elem>                 first_a(a.block_count(),
                                  PartialLattice::undefined);
    std::vector<Elem> first_b(b.block_count(), PartialLattice::undefined);
    for (Elem x = 0; x < a.host()->size(); ++x) {
      Elem& fa = first_a[a.block_of(x)];
      if (fa == PartialLattice::undefined) {
        fa = x;
      } else if (uf.unite(fa, x)) {
        queue.emplace_back(fa, x);
      }
      Elem& fb = first_b[b.block_of(x)];
      if (fb == PartialLattice::undefined) {
        fb = x;
      } else if (uf.unite(fb, x)) {
        queue.emplace_back(fb, x);
      }
    }
    return close(a.host(), uf, std::move(queue));
  }

  Congruence congruence_meet(Congruence const& a, Congruence const& b) {
    if (!(*a.host() == *b.host())) {
      raise(ErrorKind::HostMismatch, "congruences live on different lattices");
    }
    std::size_t const n = a.host()->size();
    std::vector<Elem> ids(n);
    for (Elem x = 0; x < n; ++x) {
      ids[x] = static_cast<Elem>(a.block_of(x) * b.block_count() + b.block_of(x));
    }
    return Congruence(a.host(), ids);
  }

  Quotient quotient(Congruence const& theta) {
    if (auto bad = theta.first_violation()) {
      auto const& l = *theta.host();
      raise(ErrorKind::NotACongruence,
            "partition is not compatible at (" + l.label(std::get<0>(*bad))
                + ", " + l.label(std::get<1>(*bad)) + ")");
    }
    auto const&       l   = *theta.host();
    auto const        bs  = theta.blocks();
    std::size_t const m   = bs.size();
    std::vector<std::string> labels;
    for (auto const& b : bs) {
      labels.push_back(l.label(b.front()));
    }
    std::vector<Elem> meet(m * m), join(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        meet[i * m + j] = theta.block_of(l.meet(bs[i].front(), bs[j].front()));
        join[i * m + j] = theta.block_of(l.join(bs[i].front(), bs[j].front()));
      }
    }
    auto q = FiniteLattice::from_tables(
        l.name() + "/theta", std::move(labels), std::move(meet), std::move(join));
    return {q, Homomorphism(theta.host(), q, theta.block_ids())};
  }

  Congruence kernel(Homomorphism const& f) {
    return Congruence(f.source(), f.images());
  }

  ////////////////////////////////////////////////////////////////////////
  // ConLattice
  ////////////////////////////////////////////////////////////////////////

  ConLattice::ConLattice(LatticePtr host, std::vector<Congruence> members)
      : _host(std::move(host)), _members(std::move(members)) {
    std::sort(_members.begin(), _members.end(),
              [](Congruence const& a, Congruence const& b) {
                if (a.block_count() != b.block_count()) {
                  return a.block_count() > b.block_count();
                }
                return a < b;
              });
    _members.erase(std::unique(_members.begin(), _members.end()),
                   _members.end());
    std::size_t const                     m = _members.size();
    std::vector<FiniteLattice::Bitset>    up(m, FiniteLattice::Bitset(m));
    std::vector<std::string>              labels;
    for (std::size_t i = 0; i < m; ++i) {
      labels.push_back(_members[i].to_string());
      for (std::size_t j = 0; j < m; ++j) {
        if (_members[i].block_count() >= _members[j].block_count()
            && _members[i].leq(_members[j])) {
          up[i].set(j);
        }
      }
    }
    _lattice = FiniteLattice::from_order(
        "Con(" + _host->name() + ")", std::move(labels), std::move(up));
  }

  std::optional<Elem> ConLattice::find(Congruence const& theta) const {
    auto it = std::lower_bound(
        _members.begin(), _members.end(), theta,
        [](Congruence const& a, Congruence const& b) {
          if (a.block_count() != b.block_count()) {
            return a.block_count() > b.block_count();
          }
          return a < b;
        });
    if (it == _members.end() || !(*it == theta)) {
      return std::nullopt;
    }
    return static_cast<Elem>(it - _members.begin());
  }

  Elem ConLattice::index_of(Congruence const& theta) const {
    auto i = find(theta);
    if (!i) {
      raise(ErrorKind::NotACongruence,
            "'" + theta.to_string() + "' is not a congruence of "
                + _host->name());
    }
    return *i;
  }

  Elem ConLattice::principal(Elem a, Elem b) const {
    return index_of(principal_congruence(_host, a, b));
  }

  ConPtr con_lattice(LatticePtr const& lattice, Limits const& limits) {
    auto const& covers = lattice->covers();
    std::vector<Congruence> generators(covers.size());
    parallel_for(covers.size(), limits.threads, [&](std::size_t i) {
      generators[i]
          = principal_congruence(lattice, covers[i].first, covers[i].second);
    });
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()),
                     generators.end());

    std::map<std::vector<Elem>, std::size_t> seen;
    std::vector<Congruence>                  members{Congruence::zero(lattice)};
    seen.emplace(members[0].block_ids(), 0);
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (auto const& g : generators) {
        if (g.leq(members[k])) {
          continue;
        }
        Congruence j = congruence_join(members[k], g);
        if (seen.emplace(j.block_ids(), members.size()).second) {
          if (members.size() == limits.max_congruences) {
            raise(ErrorKind::BudgetExceeded,
                  "more than " + std::to_string(limits.max_congruences)
                      + " congruences");
          }
          members.push_back(std::move(j));
        }
      }
    }
    return std::make_shared<ConLattice const>(lattice, std::move(members));
  }

  ////////////////////////////////////////////////////////////////////////
  // ConcMap
  ////////////////////////////////////////////////////////////////////////

  ConcMap::ConcMap(ConPtr source, ConPtr target, std::vector<Elem> images)
      : _source(std::move(source)),
        _target(std::move(target)),
        _images(std::move(images)) {
    if (_images.size() != _source->size()) {
      raise(ErrorKind::PreconditionFailed,
            "ConcMap needs one image per source congruence");
    }
    for (Elem y : _images) {
      if (y >= _target->size()) {
        raise(ErrorKind::PreconditionFailed, "ConcMap image out of range");
      }
    }
  }

  ConcMap ConcMap::identity(ConPtr con) {
    std::vector<Elem> images(con->size());
    std::iota(images.begin(), images.end(), 0);
    return ConcMap(con, con, std::move(images));
  }

  bool ConcMap::preserves_zero() const {
    return _images[_source->zero()] == _target->zero();
  }

  bool ConcMap::preserves_joins() const {
    for (Elem a = 0; a < _source->size(); ++a) {
      for (Elem b = a + 1; b < _source->size(); ++b) {
        if (_images[_source->join(a, b)]
            != _target->join(_images[a], _images[b])) {
          return false;
        }
      }
    }
    return true;
  }

  bool ConcMap::is_isomorphism() const {
    if (_source->size() != _target->size() || !preserves_zero()) {
      return false;
    }
    std::vector<bool> seen(_target->size(), false);
    for (Elem y : _images) {
      if (seen[y]) {
        return false;
      }
      seen[y] = true;
    }
    // A join-preserving bijection between finite lattices is an order
    // isomorphism.
    return preserves_joins();
  }

  bool ConcMap::separates_zero() const {
    for (Elem a = 0; a < _source->size(); ++a) {
      if ((_images[a] == _target->zero()) != (a == _source->zero())) {
        return false;
      }
    }
    return true;
  }

  ConcMap ConcMap::after(ConcMap const& other) const {
    std::vector<Elem> images(other._images.size());
    for (std::size_t a = 0; a < images.size(); ++a) {
      images[a] = _images.at(other._images[a]);
    }
    return ConcMap(other._source, _target, std::move(images));
  }

  ConcMap ConcMap::with_image(Elem a, Elem b) const {
    auto images  = _images;
    images.at(a) = b;
    return ConcMap(_source, _target, std::move(images));
  }

  Congruence image_congruence(Homomorphism const& f, Congruence const& theta) {
    std::vector<std::pair<Elem, Elem>> pairs;
    std::vector<Elem> first(theta.block_count(), PartialLattice::undefined);
    for (Elem x = 0; x < f.source()->size(); ++x) {
      Elem& r = first[theta.block_of(x)];
      if (r == PartialLattice::undefined) {
        r = x;
      } else if (f(r) != f(x)) {
        pairs.emplace_back(f(r), f(x));
      }
    }
    return generated_congruence(f.target(), pairs);
  }

  ConcMap conc_of_hom(Homomorphism const& f, ConPtr source, ConPtr target) {
    if (!(*source->host() == *f.source()) || !(*target->host() == *f.target())) {
      raise(ErrorKind::HostMismatch,
            "congruence lattices do not match the map's endpoints");
    }
    std::vector<Elem> images(source->size());
    for (Elem a = 0; a < source->size(); ++a) {
      images[a] = target->index_of(image_congruence(f, (*source)[a]));
    }
    return ConcMap(std::move(source), std::move(target), std::move(images));
  }

  ////////////////////////////////////////////////////////////////////////
  // Boolean congruence lattices and congruence chains
  ////////////////////////////////////////////////////////////////////////

  BooleanReport is_boolean(ConLattice const& con) {
    BooleanReport report;
    auto const&   l = *con.lattice();
    if (auto bad = distributivity_violation(l)) {
      auto [j, x, y] = *bad;
      report.reason  = "not distributive: " + l.label(j) + " <= "
                      + l.label(x) + " v " + l.label(y);
      return report;
    }
    for (Elem a = 0; a < l.size(); ++a) {
      bool complemented = false;
      for (Elem b = 0; b < l.size() && !complemented; ++b) {
        complemented = l.meet(a, b) == l.bottom() && l.join(a, b) == l.top();
      }
      if (!complemented) {
        report.reason = "no complement for " + l.label(a);
        return report;
      }
    }
    report.boolean = true;
    report.atoms   = con.atoms();
    return report;
  }

  std::optional<std::vector<Elem>> is_congruence_chain(
      ConLattice const&     con,
      std::span<Elem const> chain) {
    auto const report = is_boolean(con);
    if (!report.boolean) {
      raise(ErrorKind::ConNotBoolean,
            "Con(" + con.host()->name() + ") is not Boolean: " + report.reason);
    }
    if (chain.empty() || !is_strict_chain(*con.host(), chain)) {
      raise(ErrorKind::PreconditionFailed, "not a strictly increasing chain");
    }
    std::size_t const n = chain.size() - 1;
    if (n != report.atoms.size()) {
      return std::nullopt;
    }
    std::vector<Elem> sigma(n);
    std::vector<bool> hit(con.size(), false);
    for (std::size_t k = 0; k < n; ++k) {
      Elem theta = con.principal(chain[k], chain[k + 1]);
      if (!std::binary_search(report.atoms.begin(), report.atoms.end(), theta)
          || hit[theta]) {
        return std::nullopt;
      }
      hit[theta] = true;
      sigma[k]   = theta;
    }
    return sigma;
  }

  std::vector<Elem> chain_order(FiniteLattice const& chain) {
    std::vector<Elem> order(chain.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
      return chain.height(a) < chain.height(b);
    });
    return order;
  }

  bool is_direct_congruence_chain(ConcMap const&        xi,
                                  std::span<Elem const> chain) {
    auto const& b = *xi.source();
    auto const& c = *xi.target();
    if (!c.host()->is_chain()) {
      raise(ErrorKind::PreconditionFailed,
            "reference lattice " + c.host()->name() + " is not a chain");
    }
    auto const cs = chain_order(*c.host());
    if (chain.size() != cs.size()) {
      raise(ErrorKind::ArityMismatch,
            "chain has " + std::to_string(chain.size())
                + " elements, reference chain has "
                + std::to_string(cs.size()));
    }
    if (!is_strict_chain(*b.host(), chain)) {
      return false;
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (xi(b.principal(chain[k], chain[k + 1]))
          != c.principal(cs[k], cs[k + 1])) {
        return false;
      }
    }
    return true;
  }

  bool is_congruence_preserving_extension(Homomorphism const& inclusion,
                                          Limits const&       limits) {
    if (!inclusion.injective() || !inclusion.is_homomorphism()) {
      raise(ErrorKind::NotASublattice,
            inclusion.source()->name() + " is not a sublattice of "
                + inclusion.target()->name());
    }
    auto const small = con_lattice(inclusion.source(), limits);
    auto const big   = con_lattice(inclusion.target(), limits);
    return conc_of_hom(inclusion, small, big).is_isomorphism();
  }

  bool is_simple(LatticePtr const& lattice) {
    if (lattice->size() < 2) {
      return false;
    }
    // Blocks are convex, so every nonzero congruence collapses some cover.
    for (auto const& [a, b] : lattice->covers()) {
      if (!principal_congruence(lattice, a, b).is_one()) {
        return false;
      }
    }
    return true;
  }

}  // namespace critlat

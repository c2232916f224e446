#include "critlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace critlat {

  namespace {

    using Bitset = FiniteLattice::Bitset;

    std::vector<Bitset> transpose(std::vector<Bitset> const& rows) {
      std::size_t const   n = rows.size();
      std::vector<Bitset> cols(n, Bitset(n));
      for (std::size_t x = 0; x < n; ++x) {
        for (auto y = rows[x].find_first(); y != Bitset::npos;
             y      = rows[x].find_next(y)) {
          cols[y].set(x);
        }
      }
      return cols;
    }

    // Covers from the order: y covers x iff [x, y] = {x, y}.
    std::vector<std::pair<Elem, Elem>> covers_from_order(
        std::vector<Bitset> const& up,
        std::vector<Bitset> const& down) {
      std::vector<std::pair<Elem, Elem>> result;
      std::size_t const                  n = up.size();
      for (std::size_t x = 0; x < n; ++x) {
        for (auto y = up[x].find_first(); y != Bitset::npos;
             y      = up[x].find_next(y)) {
          if (y != x && (up[x] & down[y]).count() == 2) {
            result.emplace_back(static_cast<Elem>(x), static_cast<Elem>(y));
          }
        }
      }
      return result;
    }

    std::string describe_pair(std::vector<std::string> const& labels,
                              std::size_t                     x,
                              std::size_t                     y) {
      return "(" + labels[x] + ", " + labels[y] + ")";
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FiniteLattice
  ////////////////////////////////////////////////////////////////////////

  LatticePtr FiniteLattice::from_covers(
      std::string                                             name,
      std::vector<std::string>                                labels,
      std::vector<std::pair<std::string, std::string>> const& covers) {
    std::size_t const n = labels.size();
    if (n == 0) {
      raise(ErrorKind::NotALattice, "a lattice needs at least one element");
    }
    std::unordered_map<std::string, Elem> index;
    for (std::size_t i = 0; i < n; ++i) {
      if (!index.emplace(labels[i], static_cast<Elem>(i)).second) {
        raise(ErrorKind::DuplicateLabel, "label '" + labels[i] + "' repeated");
      }
    }
    std::vector<std::vector<Elem>> succ(n);
    std::vector<std::size_t>       indegree(n, 0);
    for (auto const& [lo, hi] : covers) {
      auto a = index.find(lo);
      auto b = index.find(hi);
      if (a == index.end() || b == index.end()) {
        raise(ErrorKind::UnknownLabel,
              "cover (" + lo + ", " + hi + ") references an unknown label");
      }
      if (a->second == b->second) {
        raise(ErrorKind::CycleDetected, "self-cover on '" + lo + "'");
      }
      succ[a->second].push_back(b->second);
      ++indegree[b->second];
    }
    // Kahn's algorithm; leftovers lie on a cycle.
    std::vector<Elem> topo;
    topo.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) {
        topo.push_back(static_cast<Elem>(i));
      }
    }
    for (std::size_t k = 0; k < topo.size(); ++k) {
      for (Elem y : succ[topo[k]]) {
        if (--indegree[y] == 0) {
          topo.push_back(y);
        }
      }
    }
    if (topo.size() != n) {
      for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] != 0) {
          raise(ErrorKind::CycleDetected,
                "cover relation has a cycle through '" + labels[i] + "'");
        }
      }
    }
    std::vector<Bitset> up(n, Bitset(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      up[*it].set(*it);
      for (Elem y : succ[*it]) {
        up[*it] |= up[y];
      }
    }
    return from_order(std::move(name), std::move(labels), std::move(up));
  }

  LatticePtr FiniteLattice::from_order(std::string              name,
                                       std::vector<std::string> labels,
                                       std::vector<Bitset>      up) {
    std::size_t const n = labels.size();
    if (n == 0) {
      raise(ErrorKind::NotALattice, "a lattice needs at least one element");
    }
    std::vector<Bitset> down = transpose(up);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        if (up[x][y] && up[y][x]) {
          raise(ErrorKind::CycleDetected,
                "elements " + describe_pair(labels, x, y)
                    + " are below each other");
        }
      }
    }
    // Linear extension: x < y implies |down(x)| < |down(y)|.
    std::vector<Elem> ext(n);
    std::iota(ext.begin(), ext.end(), 0);
    std::stable_sort(ext.begin(), ext.end(), [&](Elem a, Elem b) {
      return down[a].count() < down[b].count();
    });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      pos[ext[i]] = i;
    }
    // Down sets indexed by reversed extension position: the glb of x and y is
    // the common lower bound appearing last in the extension, i.e. the first
    // set bit here. Up sets indexed by forward position, symmetrically.
    std::vector<Bitset> down_rev(n, Bitset(n));
    std::vector<Bitset> up_fwd(n, Bitset(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (auto y = down[x].find_first(); y != Bitset::npos;
           y      = down[x].find_next(y)) {
        down_rev[x].set(n - 1 - pos[y]);
      }
      for (auto y = up[x].find_first(); y != Bitset::npos;
           y      = up[x].find_next(y)) {
        up_fwd[x].set(pos[y]);
      }
    }
    std::vector<Elem> meet(n * n), join(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        Bitset lower = down_rev[x] & down_rev[y];
        auto   first = lower.find_first();
        if (first == Bitset::npos) {
          raise(ErrorKind::NotALattice,
                "pair " + describe_pair(labels, x, y) + " has no lower bound");
        }
        Elem g = ext[n - 1 - first];
        if (down_rev[g] != lower) {
          raise(ErrorKind::NotALattice,
                "pair " + describe_pair(labels, x, y) + " has no meet");
        }
        meet[x * n + y] = meet[y * n + x] = g;

        Bitset upper = up_fwd[x] & up_fwd[y];
        first        = upper.find_first();
        if (first == Bitset::npos) {
          raise(ErrorKind::NotALattice,
                "pair " + describe_pair(labels, x, y) + " has no upper bound");
        }
        Elem l = ext[first];
        if (up_fwd[l] != upper) {
          raise(ErrorKind::NotALattice,
                "pair " + describe_pair(labels, x, y) + " has no join");
        }
        join[x * n + y] = join[y * n + x] = l;
      }
    }
    auto covers = covers_from_order(up, down);

    std::shared_ptr<FiniteLattice> result(new FiniteLattice());
    result->_name   = std::move(name);
    result->_labels = std::move(labels);
    result->_up     = std::move(up);
    result->_down   = std::move(down);
    result->_meet   = std::move(meet);
    result->_join   = std::move(join);
    result->_covers = std::move(covers);
    result->finish();
    return result;
  }

  LatticePtr FiniteLattice::from_tables(
      std::string                                       name,
      std::vector<std::string>                          labels,
      std::vector<Elem>                                 meet,
      std::vector<Elem>                                 join,
      std::optional<std::vector<std::pair<Elem, Elem>>> covers) {
    std::size_t const n = labels.size();
    if (n == 0 || meet.size() != n * n || join.size() != n * n) {
      raise(ErrorKind::NotALattice, "operation tables have the wrong shape");
    }
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (meet[x * n + y] == x) {
          up[x].set(y);
        }
      }
    }
    std::vector<Bitset> down = transpose(up);
    std::shared_ptr<FiniteLattice> result(new FiniteLattice());
    result->_name   = std::move(name);
    result->_labels = std::move(labels);
    if (covers) {
      result->_covers = std::move(*covers);
      std::sort(result->_covers.begin(), result->_covers.end());
    } else {
      result->_covers = covers_from_order(up, down);
    }
    result->_up   = std::move(up);
    result->_down = std::move(down);
    result->_meet = std::move(meet);
    result->_join = std::move(join);
    result->finish();
    return result;
  }

  void FiniteLattice::finish() {
    std::size_t const n = _labels.size();
    _bottom             = 0;
    _top                = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (_up[x].count() == n) {
        _bottom = static_cast<Elem>(x);
      }
      if (_down[x].count() == n) {
        _top = static_cast<Elem>(x);
      }
    }
    _upper_covers.assign(n, {});
    _lower_covers.assign(n, {});
    for (auto const& [lo, hi] : _covers) {
      _upper_covers[lo].push_back(hi);
      _lower_covers[hi].push_back(lo);
    }
    for (auto& v : _upper_covers) {
      std::sort(v.begin(), v.end());
    }
    for (auto& v : _lower_covers) {
      std::sort(v.begin(), v.end());
    }
    std::vector<Elem> ext(n);
    std::iota(ext.begin(), ext.end(), 0);
    std::stable_sort(ext.begin(), ext.end(), [&](Elem a, Elem b) {
      return _down[a].count() < _down[b].count();
    });
    _height.assign(n, 0);
    for (Elem x : ext) {
      for (Elem lo : _lower_covers[x]) {
        _height[x] = std::max(_height[x], _height[lo] + 1);
      }
    }
  }

  std::optional<Elem> FiniteLattice::find(std::string const& label) const {
    auto it = std::find(_labels.begin(), _labels.end(), label);
    if (it == _labels.end()) {
      return std::nullopt;
    }
    return static_cast<Elem>(it - _labels.begin());
  }

  Elem FiniteLattice::index_of(std::string const& label) const {
    auto x = find(label);
    if (!x) {
      raise(ErrorKind::UnknownLabel,
            "'" + label + "' is not an element of " + _name);
    }
    return *x;
  }

  bool FiniteLattice::operator==(FiniteLattice const& other) const {
    return _labels == other._labels && _up == other._up;
  }

  LatticePtr validate_lattice(
      std::vector<std::string>                                labels,
      std::vector<std::pair<std::string, std::string>> const& covers,
      std::string                                             name) {
    return FiniteLattice::from_covers(std::move(name), std::move(labels), covers);
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphism
  ////////////////////////////////////////////////////////////////////////

  Homomorphism::Homomorphism(LatticePtr        source,
                             LatticePtr        target,
                             std::vector<Elem> images)
      : _source(std::move(source)),
        _target(std::move(target)),
        _images(std::move(images)) {
    if (_images.size() != _source->size()) {
      raise(ErrorKind::NotAHomomorphism,
            "map from " + _source->name() + " has "
                + std::to_string(_images.size()) + " images, expected "
                + std::to_string(_source->size()));
    }
    for (Elem y : _images) {
      if (y >= _target->size()) {
        raise(ErrorKind::NotAHomomorphism,
              "image index out of range for " + _target->name());
      }
    }
  }

  Homomorphism Homomorphism::checked(LatticePtr        source,
                                     LatticePtr        target,
                                     std::vector<Elem> images) {
    Homomorphism f(std::move(source), std::move(target), std::move(images));
    if (auto bad = f.first_violation()) {
      raise(ErrorKind::NotAHomomorphism,
            "operations not preserved at ("
                + f._source->label(bad->first) + ", "
                + f._source->label(bad->second) + ")");
    }
    return f;
  }

  Homomorphism Homomorphism::identity(LatticePtr lattice) {
    std::vector<Elem> images(lattice->size());
    std::iota(images.begin(), images.end(), 0);
    return Homomorphism(lattice, lattice, std::move(images));
  }

  Homomorphism Homomorphism::bounds(LatticePtr source, LatticePtr target) {
    if (source->size() > 2) {
      raise(ErrorKind::PreconditionFailed,
            "bounds map needs a source with at most two elements");
    }
    std::vector<Elem> images(source->size());
    images[source->bottom()] = target->bottom();
    images[source->top()]    = target->top();
    return Homomorphism(source, target, std::move(images));
  }

  std::optional<std::pair<Elem, Elem>> Homomorphism::first_violation() const {
    auto const& s = *_source;
    auto const& t = *_target;
    for (Elem x = 0; x < s.size(); ++x) {
      for (Elem y = x; y < s.size(); ++y) {
        if (_images[s.meet(x, y)] != t.meet(_images[x], _images[y])
            || _images[s.join(x, y)] != t.join(_images[x], _images[y])) {
          return std::pair{x, y};
        }
      }
    }
    return std::nullopt;
  }

  bool Homomorphism::is_homomorphism() const {
    return !first_violation().has_value();
  }

  bool Homomorphism::preserves_bounds() const {
    return _images[_source->bottom()] == _target->bottom()
           && _images[_source->top()] == _target->top();
  }

  bool Homomorphism::injective() const {
    std::vector<bool> seen(_target->size(), false);
    for (Elem y : _images) {
      if (seen[y]) {
        return false;
      }
      seen[y] = true;
    }
    return true;
  }

  bool Homomorphism::surjective() const {
    std::vector<bool> seen(_target->size(), false);
    for (Elem y : _images) {
      seen[y] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  bool Homomorphism::is_constant() const {
    return std::adjacent_find(_images.begin(), _images.end(),
                              std::not_equal_to<>())
           == _images.end();
  }

  Homomorphism Homomorphism::after(Homomorphism const& other) const {
    if (!(*other._target == *_source)) {
      raise(ErrorKind::PreconditionFailed,
            "cannot compose: " + other._target->name() + " is not "
                + _source->name());
    }
    std::vector<Elem> images(other._images.size());
    for (std::size_t x = 0; x < images.size(); ++x) {
      images[x] = _images[other._images[x]];
    }
    return Homomorphism(other._source, _target, std::move(images));
  }

  bool Homomorphism::same_function(Homomorphism const& other) const {
    return _images == other._images && *_source == *other._source
           && *_target == *other._target;
  }

  Homomorphism Homomorphism::with_image(Elem x, Elem y) const {
    auto images = _images;
    images.at(x) = y;
    return Homomorphism(_source, _target, std::move(images));
  }

  ////////////////////////////////////////////////////////////////////////
  // PartialLattice
  ////////////////////////////////////////////////////////////////////////

  PartialLattice::PartialLattice(std::vector<std::string> labels,
                                 std::vector<Elem>        meet,
                                 std::vector<Elem>        join,
                                 std::optional<Elem>      bottom,
                                 std::optional<Elem>      top)
      : _labels(std::move(labels)),
        _meet(std::move(meet)),
        _join(std::move(join)),
        _bottom(bottom),
        _top(top) {
    std::size_t const n = _labels.size();
    if (_meet.size() != n * n || _join.size() != n * n) {
      raise(ErrorKind::PreconditionFailed, "partial tables have the wrong shape");
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (_meet[x * n + y] != _meet[y * n + x]
            || _join[x * n + y] != _join[y * n + x]) {
          raise(ErrorKind::PreconditionFailed,
                "partial operations must be defined symmetrically");
        }
      }
    }
  }

  std::optional<Elem> PartialLattice::meet(Elem x, Elem y) const {
    Elem z = _meet[x * size() + y];
    if (z == undefined) {
      return std::nullopt;
    }
    return z;
  }

  std::optional<Elem> PartialLattice::join(Elem x, Elem y) const {
    Elem z = _join[x * size() + y];
    if (z == undefined) {
      return std::nullopt;
    }
    return z;
  }

  std::size_t PartialLattice::defined_meets() const {
    return static_cast<std::size_t>(
        std::count_if(_meet.begin(), _meet.end(),
                      [](Elem z) { return z != undefined; }));
  }

  std::size_t PartialLattice::defined_joins() const {
    return static_cast<std::size_t>(
        std::count_if(_join.begin(), _join.end(),
                      [](Elem z) { return z != undefined; }));
  }

  PartialLattice PartialLattice::dual() const {
    PartialLattice result(_labels, _join, _meet, _top, _bottom);
    result._host = _host ? critlat::dual(*_host) : nullptr;
    result._in_host = _in_host;
    return result;
  }

  PartialLattice PartialLattice::total(LatticePtr const& lattice) {
    std::vector<Elem> all(lattice->size());
    std::iota(all.begin(), all.end(), 0);
    return induced_partial_sublattice(lattice, all);
  }

  PartialLattice induced_partial_sublattice(LatticePtr const&     lattice,
                                            std::span<Elem const> subset) {
    std::vector<Elem> elems(subset.begin(), subset.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto contains = [&](Elem x) {
      return std::binary_search(elems.begin(), elems.end(), x);
    };
    if (!contains(lattice->bottom()) || !contains(lattice->top())) {
      raise(ErrorKind::NotSpanning,
            "subset must contain both bounds of " + lattice->name());
    }
    std::size_t const        m = elems.size();
    std::vector<Elem>        local(lattice->size(), PartialLattice::undefined);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
      local[elems[i]] = static_cast<Elem>(i);
      labels.push_back(lattice->label(elems[i]));
    }
    std::vector<Elem> meet(m * m), join(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        meet[i * m + j] = local[lattice->meet(elems[i], elems[j])];
        join[i * m + j] = local[lattice->join(elems[i], elems[j])];
      }
    }
    PartialLattice result(std::move(labels),
                          std::move(meet),
                          std::move(join),
                          local[lattice->bottom()],
                          local[lattice->top()]);
    result._host    = lattice;
    result._in_host = std::move(elems);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  LatticePtr dual(FiniteLattice const& lattice) {
    std::vector<std::pair<Elem, Elem>> covers;
    covers.reserve(lattice.covers().size());
    for (auto const& [lo, hi] : lattice.covers()) {
      covers.emplace_back(hi, lo);
    }
    std::string name = lattice.name();
    if (name.rfind("dual(", 0) == 0 && name.back() == ')') {
      name = name.substr(5, name.size() - 6);
    } else {
      name = "dual(" + name + ")";
    }
    return FiniteLattice::from_tables(std::move(name),
                                      lattice.labels(),
                                      lattice.join_table(),
                                      lattice.meet_table(),
                                      std::move(covers));
  }

  std::vector<Elem> product_coordinates(std::span<LatticePtr const> factors,
                                        Elem                        index) {
    std::vector<Elem> coords(factors.size());
    for (std::size_t t = factors.size(); t-- > 0;) {
      auto const size = static_cast<Elem>(factors[t]->size());
      coords[t]       = index % size;
      index /= size;
    }
    return coords;
  }

  Elem product_index(std::span<LatticePtr const> factors,
                     std::span<Elem const>       coordinates) {
    Elem index = 0;
    for (std::size_t t = 0; t < factors.size(); ++t) {
      index = index * static_cast<Elem>(factors[t]->size()) + coordinates[t];
    }
    return index;
  }

  ProductResult product(std::span<LatticePtr const> factors,
                        Limits const&               limits) {
    if (factors.empty()) {
      raise(ErrorKind::PreconditionFailed, "product needs at least one factor");
    }
    std::size_t total = 1;
    for (auto const& f : factors) {
      total *= f->size();
      if (total > limits.max_product_size) {
        raise(ErrorKind::SizeCapExceeded,
              "product exceeds " + std::to_string(limits.max_product_size)
                  + " elements");
      }
    }
    std::size_t const k = factors.size();
    std::vector<std::vector<Elem>> coords(total);
    for (std::size_t i = 0; i < total; ++i) {
      coords[i] = product_coordinates(factors, static_cast<Elem>(i));
    }
    bool const short_labels
        = std::all_of(factors.begin(), factors.end(), [](LatticePtr const& f) {
            return std::all_of(f->labels().begin(),
                               f->labels().end(),
                               [](std::string const& s) { return s.size() == 1; });
          });
    std::vector<std::string> labels(total);
    for (std::size_t i = 0; i < total && k == 1; ++i) {
      labels[i] = factors[0]->label(static_cast<Elem>(i));
    }
    for (std::size_t i = 0; i < total && k > 1; ++i) {
      std::string s = short_labels ? "" : "(";
      for (std::size_t t = 0; t < k; ++t) {
        if (!short_labels && t > 0) {
          s += ",";
        }
        s += factors[t]->label(coords[i][t]);
      }
      labels[i] = short_labels ? s : s + ")";
    }
    std::vector<Elem> meet(total * total), join(total * total);
    std::vector<Elem> scratch(k);
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = i; j < total; ++j) {
        for (std::size_t t = 0; t < k; ++t) {
          scratch[t] = factors[t]->meet(coords[i][t], coords[j][t]);
        }
        meet[i * total + j] = meet[j * total + i]
            = product_index(factors, scratch);
        for (std::size_t t = 0; t < k; ++t) {
          scratch[t] = factors[t]->join(coords[i][t], coords[j][t]);
        }
        join[i * total + j] = join[j * total + i]
            = product_index(factors, scratch);
      }
    }
    // (a, b) is a cover iff exactly one coordinate moves, by a cover.
    std::vector<std::pair<Elem, Elem>> covers;
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t t = 0; t < k; ++t) {
        for (Elem up : factors[t]->upper_covers(coords[i][t])) {
          scratch = coords[i];
          scratch[t] = up;
          covers.emplace_back(static_cast<Elem>(i),
                              product_index(factors, scratch));
        }
      }
    }
    std::string name;
    for (std::size_t t = 0; t < k; ++t) {
      name += (t == 0 ? "" : "x") + factors[t]->name();
    }
    auto lattice = FiniteLattice::from_tables(std::move(name),
                                              std::move(labels),
                                              std::move(meet),
                                              std::move(join),
                                              std::move(covers));
    std::vector<Homomorphism> projections;
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<Elem> images(total);
      for (std::size_t i = 0; i < total; ++i) {
        images[i] = coords[i][t];
      }
      projections.emplace_back(lattice, factors[t], std::move(images));
    }
    return {lattice, std::move(projections)};
  }

  // Sublattice on `elems`, kept in the given order.
  static Sublattice ordered_sublattice(LatticePtr const& parent,
                                       std::vector<Elem> elems,
                                       std::string       name) {
    if (elems.empty()) {
      raise(ErrorKind::PreconditionFailed, "sublattice must be nonempty");
    }
    std::size_t const        m = elems.size();
    std::vector<Elem>        local(parent->size(), PartialLattice::undefined);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
      local[elems[i]] = static_cast<Elem>(i);
      labels.push_back(parent->label(elems[i]));
    }
    std::vector<Elem> meet(m * m), join(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        Elem a = local[parent->meet(elems[i], elems[j])];
        Elem b = local[parent->join(elems[i], elems[j])];
        if (a == PartialLattice::undefined || b == PartialLattice::undefined) {
          raise(ErrorKind::NotASublattice,
                "subset of " + parent->name() + " is not closed at ("
                    + parent->label(elems[i]) + ", "
                    + parent->label(elems[j]) + ")");
        }
        meet[i * m + j] = a;
        join[i * m + j] = b;
      }
    }
    if (name.empty()) {
      name = "Sub(" + parent->name() + ")";
    }
    auto sub = FiniteLattice::from_tables(
        std::move(name), std::move(labels), std::move(meet), std::move(join));
    Homomorphism inclusion(sub, parent, elems);
    return {sub, std::move(inclusion), std::move(elems)};
  }

  Sublattice induced_sublattice(LatticePtr const&     parent,
                                std::span<Elem const> closed_subset,
                                std::string           name) {
    std::vector<Elem> elems(closed_subset.begin(), closed_subset.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return ordered_sublattice(parent, std::move(elems), std::move(name));
  }

  Sublattice graded_sublattice(LatticePtr const&     parent,
                               std::span<Elem const> closed_subset,
                               std::string           name) {
    std::vector<Elem> elems(closed_subset.begin(), closed_subset.end());
    std::sort(elems.begin(), elems.end(), [&](Elem a, Elem b) {
      return std::pair(parent->height(a), a) < std::pair(parent->height(b), b);
    });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return ordered_sublattice(parent, std::move(elems), std::move(name));
  }

  Sublattice subuniverse_closure(LatticePtr const&     lattice,
                                 std::span<Elem const> generators,
                                 bool                  include_bounds) {
    std::vector<bool> in(lattice->size(), false);
    std::vector<Elem> members;
    auto add = [&](Elem x) {
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    };
    for (Elem g : generators) {
      add(g);
    }
    if (include_bounds) {
      add(lattice->bottom());
      add(lattice->top());
    }
    if (members.empty()) {
      raise(ErrorKind::PreconditionFailed, "generating set must be nonempty");
    }
    // Each new member is combined with every member present so far.
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        add(lattice->meet(members[k], members[j]));
        add(lattice->join(members[k], members[j]));
      }
    }
    return induced_sublattice(lattice, members);
  }

  std::vector<std::vector<Elem>> enumerate_subuniverses(
      FiniteLattice const& lattice,
      std::size_t          max_count,
      Limits const&        limits,
      std::size_t          min_size) {
    std::size_t const n = lattice.size();
    if (n > limits.max_subuniverse_size || n >= 63) {
      raise(ErrorKind::SizeCapExceeded,
            "subuniverse enumeration is limited to "
                + std::to_string(limits.max_subuniverse_size) + " elements");
    }
    std::vector<std::uint64_t> meet_bit(n * n), join_bit(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        meet_bit[x * n + y] = std::uint64_t{1} << lattice.meet(x, y);
        join_bit[x * n + y] = std::uint64_t{1} << lattice.join(x, y);
      }
    }
    std::vector<std::vector<Elem>> result;
    std::uint64_t const            end = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) < min_size) {
        continue;
      }
      bool closed = true;
      for (std::size_t x = 0; x < n && closed; ++x) {
        if (!(mask >> x & 1)) {
          continue;
        }
        for (std::size_t y = x + 1; y < n; ++y) {
          if ((mask >> y & 1)
              && ((mask & meet_bit[x * n + y]) == 0
                  || (mask & join_bit[x * n + y]) == 0)) {
            closed = false;
            break;
          }
        }
      }
      if (!closed) {
        continue;
      }
      if (result.size() == max_count) {
        raise(ErrorKind::BudgetExceeded,
              "more than " + std::to_string(max_count) + " subuniverses");
      }
      std::vector<Elem> subset;
      for (std::size_t x = 0; x < n; ++x) {
        if (mask >> x & 1) {
          subset.push_back(static_cast<Elem>(x));
        }
      }
      result.push_back(std::move(subset));
    }
    return result;
  }

  std::vector<std::vector<Elem>> maximal_chains(FiniteLattice const& lattice,
                                                Limits const&        limits) {
    std::vector<std::vector<Elem>> result;
    std::vector<Elem>              path{lattice.bottom()};
    auto dfs = [&](auto&& self, Elem x) -> void {
      if (x == lattice.top()) {
        if (result.size() == limits.max_chains) {
          raise(ErrorKind::BudgetExceeded, "too many maximal chains");
        }
        result.push_back(path);
        return;
      }
      for (Elem y : lattice.upper_covers(x)) {
        path.push_back(y);
        self(self, y);
        path.pop_back();
      }
    };
    dfs(dfs, lattice.bottom());
    return result;
  }

  std::vector<std::vector<Elem>> spanning_chains(
      FiniteLattice const&         lattice,
      std::span<std::size_t const> lengths,
      Limits const&                limits) {
    std::set<std::size_t> wanted(lengths.begin(), lengths.end());
    std::vector<std::vector<Elem>> result;
    if (wanted.empty()) {
      return result;
    }
    if (lattice.size() == 1) {
      if (wanted.count(0)) {
        result.push_back({lattice.bottom()});
      }
      return result;
    }
    std::size_t const max_len = *wanted.rbegin();
    std::vector<Elem> path{lattice.bottom()};
    auto dfs = [&](auto&& self, Elem x) -> void {
      std::size_t const len = path.size() - 1;
      if (x == lattice.top()) {
        if (wanted.count(len)) {
          if (result.size() == limits.max_chains) {
            raise(ErrorKind::BudgetExceeded, "too many spanning chains");
          }
          result.push_back(path);
        }
        return;
      }
      if (len + 1 > max_len) {
        return;
      }
      for (Elem y = 0; y < lattice.size(); ++y) {
        if (lattice.less(x, y)) {
          path.push_back(y);
          self(self, y);
          path.pop_back();
        }
      }
    };
    dfs(dfs, lattice.bottom());
    std::sort(result.begin(), result.end());
    return result;
  }

  LatticePtr chain_lattice(std::vector<std::string> labels, std::string name) {
    std::size_t const                  n = labels.size();
    std::vector<Elem>                  meet(n * n), join(n * n);
    std::vector<std::pair<Elem, Elem>> covers;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        meet[i * n + j] = static_cast<Elem>(std::min(i, j));
        join[i * n + j] = static_cast<Elem>(std::max(i, j));
      }
      if (i + 1 < n) {
        covers.emplace_back(static_cast<Elem>(i), static_cast<Elem>(i + 1));
      }
    }
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != n) {
      raise(ErrorKind::DuplicateLabel, "chain labels must be distinct");
    }
    return FiniteLattice::from_tables(std::move(name),
                                      std::move(labels),
                                      std::move(meet),
                                      std::move(join),
                                      std::move(covers));
  }

  std::vector<Elem> elements_of(FiniteLattice const&            lattice,
                                std::vector<std::string> const& labels) {
    std::vector<Elem> result;
    result.reserve(labels.size());
    for (auto const& l : labels) {
      result.push_back(lattice.index_of(l));
    }
    return result;
  }

  std::string join_labels(FiniteLattice const&  lattice,
                          std::span<Elem const> elements,
                          std::string const&    separator) {
    std::string s;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i > 0) {
        s += separator;
      }
      s += lattice.label(elements[i]);
    }
    return s;
  }

  bool is_strict_chain(FiniteLattice const& lattice, std::span<Elem const> chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (chain[i] >= lattice.size() || chain[i + 1] >= lattice.size()
          || !lattice.less(chain[i], chain[i + 1])) {
        return false;
      }
    }
    return std::all_of(chain.begin(), chain.end(), [&](Elem x) {
      return x < lattice.size();
    });
  }

  std::vector<Elem> join_irreducibles(FiniteLattice const& lattice) {
    std::vector<Elem> result;
    for (Elem x = 0; x < lattice.size(); ++x) {
      if (lattice.lower_covers(x).size() == 1) {
        result.push_back(x);
      }
    }
    return result;
  }

  std::vector<Elem> atoms(FiniteLattice const& lattice) {
    if (lattice.size() == 1) {
      return {};
    }
    return lattice.upper_covers(lattice.bottom());
  }

  std::optional<std::tuple<Elem, Elem, Elem>>
  distributivity_violation(FiniteLattice const& lattice) {
    // A finite lattice is distributive iff every join-irreducible element is
    // join-prime.
    std::size_t const n = lattice.size();
    for (Elem j : join_irreducibles(lattice)) {
      for (Elem x = 0; x < n; ++x) {
        if (lattice.leq(j, x)) {
          continue;
        }
        for (Elem y = x + 1; y < n; ++y) {
          if (!lattice.leq(j, y) && lattice.leq(j, lattice.join(x, y))) {
            return std::tuple{j, x, y};
          }
        }
      }
    }
    return std::nullopt;
  }

  bool is_distributive(FiniteLattice const& lattice) {
    return !distributivity_violation(lattice).has_value();
  }

}  // namespace critlat

#include "critlat/isomorphism.hpp"

#include <algorithm>
#include <array>

namespace critlat {

  namespace {

    using Profile = std::array<std::size_t, 5>;

    Profile profile(FiniteLattice const& l, Elem x) {
      return {l.height(x),
              l.lower_covers(x).size(),
              l.upper_covers(x).size(),
              l.down_set(x).count(),
              l.up_set(x).count()};
    }

  }  // namespace

  std::vector<std::size_t> invariant_signature(FiniteLattice const& lattice) {
    std::vector<Profile> all;
    for (Elem x = 0; x < lattice.size(); ++x) {
      all.push_back(profile(lattice, x));
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> flat;
    flat.push_back(lattice.size());
    for (auto const& p : all) {
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return flat;
  }

  std::optional<Homomorphism> is_isomorphic(LatticePtr const& k,
                                            LatticePtr const& l,
                                            Limits const&     limits) {
    std::size_t const n = k->size();
    if (n != l->size() || k->covers().size() != l->covers().size()) {
      return std::nullopt;
    }
    std::vector<Profile> pk(n), pl(n);
    for (Elem x = 0; x < n; ++x) {
      pk[x] = profile(*k, x);
      pl[x] = profile(*l, x);
    }
    {
      auto a = pk, b = pl;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        return std::nullopt;
      }
    }
    std::vector<Elem> image(n, PartialLattice::undefined);
    std::vector<bool> used(n, false);
    std::size_t       nodes = 0;
    auto search = [&](auto&& self, Elem x) -> bool {
      if (x == n) {
        return true;
      }
      if (++nodes > limits.max_search_nodes) {
        raise(ErrorKind::BudgetExceeded, "isomorphism search budget exhausted");
      }
      for (Elem y = 0; y < n; ++y) {
        if (used[y] || pk[x] != pl[y]) {
          continue;
        }
        bool ok = true;
        for (Elem a = 0; a < x && ok; ++a) {
          ok = k->leq(a, x) == l->leq(image[a], y)
               && k->leq(x, a) == l->leq(y, image[a]);
        }
        if (!ok) {
          continue;
        }
        image[x] = y;
        used[y]  = true;
        if (self(self, x + 1)) {
          return true;
        }
        used[y] = false;
      }
      return false;
    };
    if (!search(search, 0)) {
      return std::nullopt;
    }
    return Homomorphism(k, l, std::move(image));
  }

  std::optional<Homomorphism> is_dual_isomorphic(LatticePtr const& k,
                                                 LatticePtr const& l,
                                                 Limits const&     limits) {
    auto d = dual(*l);
    auto f = is_isomorphic(k, d, limits);
    if (!f) {
      return std::nullopt;
    }
    return Homomorphism(k, l, f->images());
  }

  std::optional<std::vector<Elem>> embed_partial(PartialLattice const& k,
                                                 FiniteLattice const&  l,
                                                 Limits const&         limits) {
    std::size_t const n = k.size();
    if (n > l.size()) {
      return std::nullopt;
    }
    // Each constraint "op(a, b) = c" is checked once its last element is
    // assigned.
    struct Constraint {
      Elem a, b, c;
      bool is_meet;
    };
    std::vector<std::vector<Constraint>> at(n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (auto c = k.meet(a, b)) {
          at[std::max({a, b, *c})].push_back({a, b, *c, true});
        }
        if (auto c = k.join(a, b)) {
          at[std::max({a, b, *c})].push_back({a, b, *c, false});
        }
      }
    }
    std::vector<Elem> image(n, PartialLattice::undefined);
    std::vector<bool> used(l.size(), false);
    std::size_t       nodes = 0;
    auto search = [&](auto&& self, Elem x) -> bool {
      if (x == n) {
        return true;
      }
      if (++nodes > limits.max_search_nodes) {
        raise(ErrorKind::BudgetExceeded, "embedding search budget exhausted");
      }
      for (Elem y = 0; y < l.size(); ++y) {
        if (used[y]) {
          continue;
        }
        if ((k.bottom() && *k.bottom() == x && y != l.bottom())
            || (k.top() && *k.top() == x && y != l.top())) {
          continue;
        }
        image[x] = y;
        bool ok  = true;
        for (auto const& c : at[x]) {
          Elem v = c.is_meet ? l.meet(image[c.a], image[c.b])
                             : l.join(image[c.a], image[c.b]);
          if (v != image[c.c]) {
            ok = false;
            break;
          }
        }
        if (ok) {
          used[y] = true;
          if (self(self, x + 1)) {
            return true;
          }
          used[y] = false;
        }
      }
      image[x] = PartialLattice::undefined;
      return false;
    };
    if (!search(search, 0)) {
      return std::nullopt;
    }
    return image;
  }

}  // namespace critlat

#pragma once

// Brute-force reference implementations. These deliberately avoid the
// library's algorithms: meets and joins are recomputed from the order
// relation, congruences come from enumerating every set partition, and
// searches are plain exhaustive loops.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "critlat/isomorphism.hpp"
#include "critlat/lattice.hpp"

namespace oracle {

  using critlat::Elem;
  using critlat::FiniteLattice;
  using critlat::LatticePtr;
  using Partition = std::vector<Elem>;  // block id per element, canonical

  // Greatest lower bound computed from the order relation alone.
  inline Elem meet(FiniteLattice const& l, Elem x, Elem y) {
    std::optional<Elem> best;
    for (Elem z = 0; z < l.size(); ++z) {
      if (l.leq(z, x) && l.leq(z, y) && (!best || l.leq(*best, z))) {
        best = z;
      }
    }
    return *best;
  }

  inline Elem join(FiniteLattice const& l, Elem x, Elem y) {
    std::optional<Elem> best;
    for (Elem z = 0; z < l.size(); ++z) {
      if (l.leq(x, z) && l.leq(y, z) && (!best || l.leq(z, *best))) {
        best = z;
      }
    }
    return *best;
  }

  // Restricted growth strings: every set partition exactly once, already in
  // canonical form (blocks numbered by least element).
  inline void for_each_partition(std::size_t                            n,
                                 std::function<void(Partition const&)> f) {
    if (n == 0) {
      f({});
      return;
    }
    Partition p(n, 0);
    auto rec = [&](auto&& self, std::size_t i, Elem max_used) -> void {
      if (i == n) {
        f(p);
        return;
      }
      for (Elem b = 0; b <= max_used + 1; ++b) {
        p[i] = b;
        self(self, i + 1, std::max(max_used, b));
      }
    };
    rec(rec, 1, 0);
  }

  inline bool compatible(FiniteLattice const& l, Partition const& p) {
    std::size_t const n = l.size();
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = x + 1; y < n; ++y) {
        if (p[x] != p[y]) {
          continue;
        }
        for (Elem z = 0; z < n; ++z) {
          if (p[meet(l, x, z)] != p[meet(l, y, z)]
              || p[join(l, x, z)] != p[join(l, y, z)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline std::set<Partition> congruences(FiniteLattice const& l) {
    std::set<Partition> result;
    for_each_partition(l.size(), [&](Partition const& p) {
      if (compatible(l, p)) {
        result.insert(p);
      }
    });
    return result;
  }

  inline bool refines(Partition const& a, Partition const& b) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < a.size(); ++y) {
        if (a[x] == a[y] && b[x] != b[y]) {
          return false;
        }
      }
    }
    return true;
  }

  // The least congruence identifying a and b: the unique minimal member of
  // the brute-force list that relates them.
  inline Partition principal(FiniteLattice const& l, Elem a, Elem b) {
    std::vector<Partition> containing;
    for (auto const& p : congruences(l)) {
      if (p[a] == p[b]) {
        containing.push_back(p);
      }
    }
    for (auto const& p : containing) {
      if (std::all_of(containing.begin(), containing.end(),
                      [&](Partition const& q) { return refines(p, q); })) {
        return p;
      }
    }
    return {};
  }

  inline std::set<std::vector<Elem>> subuniverses(FiniteLattice const& l) {
    std::set<std::vector<Elem>> result;
    std::size_t const           n = l.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Elem> s;
      for (Elem x = 0; x < n; ++x) {
        if (mask >> x & 1) {
          s.push_back(x);
        }
      }
      bool closed = true;
      for (Elem x : s) {
        for (Elem y : s) {
          if (!(mask >> meet(l, x, y) & 1) || !(mask >> join(l, x, y) & 1)) {
            closed = false;
          }
        }
      }
      if (closed) {
        result.insert(s);
      }
    }
    return result;
  }

  // Order isomorphism by trying every permutation (n <= 8).
  inline bool isomorphic(FiniteLattice const& a, FiniteLattice const& b) {
    if (a.size() != b.size()) {
      return false;
    }
    std::vector<Elem> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (Elem x = 0; x < a.size() && ok; ++x) {
        for (Elem y = 0; y < a.size() && ok; ++y) {
          ok = a.leq(x, y) == b.leq(perm[x], perm[y]);
        }
      }
      if (ok) {
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  // Isotone surjections from a chain with m elements onto one with k
  // elements, as image vectors.
  inline std::vector<std::vector<Elem>> isotone_surjections(std::size_t m,
                                                            std::size_t k) {
    std::vector<std::vector<Elem>> result;
    std::vector<Elem>              f(m);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == m) {
        std::set<Elem> image(f.begin(), f.end());
        if (image.size() == k) {
          result.push_back(f);
        }
        return;
      }
      for (Elem v = (i == 0 ? 0 : f[i - 1]); v < k; ++v) {
        f[i] = v;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    return result;
  }

  // All lattices with n elements up to isomorphism. Element 0 is the bottom,
  // n - 1 the top, and the inner order is a transitive relation contained in
  // the natural order of indices (every finite poset has such a labeling).
  inline std::vector<LatticePtr> lattices_of_size(std::size_t n) {
    using Bitset = FiniteLattice::Bitset;
    std::vector<LatticePtr> result;
    if (n == 0) {
      return result;
    }
    if (n == 1) {
      result.push_back(critlat::chain_lattice({"0"}, "L1"));
      return result;
    }
    std::vector<std::pair<Elem, Elem>> pairs;
    for (Elem i = 1; i + 1 < n; ++i) {
      for (Elem j = i + 1; j + 1 < n; ++j) {
        pairs.emplace_back(i, j);
      }
    }
    std::map<std::vector<std::size_t>, std::vector<LatticePtr>> classes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size());
         ++mask) {
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
      for (Elem x = 0; x < n; ++x) {
        rel[x][x] = rel[0][x] = rel[x][n - 1] = true;
      }
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (mask >> p & 1) {
          rel[pairs[p].first][pairs[p].second] = true;
        }
      }
      bool transitive = true;
      for (Elem a = 0; a < n && transitive; ++a) {
        for (Elem b = 0; b < n && transitive; ++b) {
          for (Elem c = 0; c < n && transitive; ++c) {
            transitive = !(rel[a][b] && rel[b][c]) || rel[a][c];
          }
        }
      }
      if (!transitive) {
        continue;
      }
      // Lattice check from the definition: every pair has a least upper
      // bound and a greatest lower bound.
      bool lattice = true;
      for (Elem x = 0; x < n && lattice; ++x) {
        for (Elem y = 0; y < n && lattice; ++y) {
          std::vector<Elem> ub, lb;
          for (Elem z = 0; z < n; ++z) {
            if (rel[x][z] && rel[y][z]) {
              ub.push_back(z);
            }
            if (rel[z][x] && rel[z][y]) {
              lb.push_back(z);
            }
          }
          bool has_lub = std::any_of(ub.begin(), ub.end(), [&](Elem u) {
            return std::all_of(ub.begin(), ub.end(),
                               [&](Elem w) { return rel[u][w]; });
          });
          bool has_glb = std::any_of(lb.begin(), lb.end(), [&](Elem u) {
            return std::all_of(lb.begin(), lb.end(),
                               [&](Elem w) { return rel[w][u]; });
          });
          lattice = has_lub && has_glb;
        }
      }
      if (!lattice) {
        continue;
      }
      std::vector<std::string> labels;
      std::vector<Bitset>      up(n, Bitset(n));
      for (Elem x = 0; x < n; ++x) {
        labels.push_back(x == 0 ? "0" : x + 1 == n ? "1" : "a" + std::to_string(x));
        for (Elem y = 0; y < n; ++y) {
          if (rel[x][y]) {
            up[x].set(y);
          }
        }
      }
      auto l = FiniteLattice::from_order(
          "L" + std::to_string(n) + "_" + std::to_string(mask), labels, up);
      auto& bucket = classes[critlat::invariant_signature(*l)];
      bool  fresh  = std::none_of(bucket.begin(), bucket.end(),
                                 [&](LatticePtr const& m) {
                                   return isomorphic(*m, *l);
                                 });
      if (fresh) {
        bucket.push_back(l);
        result.push_back(l);
      }
    }
    return result;
  }

}  // namespace oracle

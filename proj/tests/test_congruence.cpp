#include <random>

#include "doctest.h"

#include "corpus.hpp"
#include "critlat/congruence.hpp"
#include "critlat/io.hpp"
#include "critlat/isomorphism.hpp"
#include "oracles.hpp"

using namespace critlat;

namespace {

  ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::ParseError;
  }

  Elem at(LatticePtr const& l, std::string const& label) {
    return l->index_of(label);
  }

  std::set<oracle::Partition> as_set(ConLattice const& con) {
    std::set<oracle::Partition> s;
    for (auto const& c : con.members()) {
      s.insert(c.block_ids());
    }
    return s;
  }

  // All homomorphisms between two small lattices, by exhaustive search.
  std::vector<Homomorphism> all_homs(LatticePtr const& a, LatticePtr const& b) {
    std::vector<Homomorphism> result;
    std::vector<Elem>         img(a->size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == a->size()) {
        Homomorphism f(a, b, img);
        if (f.is_homomorphism()) {
          result.push_back(f);
        }
        return;
      }
      for (Elem y = 0; y < b->size(); ++y) {
        img[i] = y;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
    return result;
  }

}  // namespace

TEST_CASE("principal_congruence examples") {
  auto m3 = load_lattice("M:3");
  CHECK(principal_congruence(m3, 2, 2).is_zero());
  CHECK(principal_congruence(m3, m3->bottom(), m3->top()).is_one());
  CHECK(principal_congruence(m3, m3->bottom(), m3->top()).block_ids()
        == oracle::principal(*m3, m3->bottom(), m3->top()));

  auto c2    = load_lattice("chain:2");
  auto theta = principal_congruence(c2, at(c2, "0"), at(c2, "y1"));
  CHECK(theta.to_string() == "0,y1|1");
  CHECK(theta.block_ids() == oracle::principal(*c2, 0, 1));
}

TEST_CASE("principal congruences are minimal (brute force)") {
  for (auto const& l : corpus::all_small(6)) {
    for (Elem a = 0; a < l->size(); ++a) {
      for (Elem b = a + 1; b < l->size(); ++b) {
        REQUIRE(principal_congruence(l, a, b).block_ids()
                == oracle::principal(*l, a, b));
      }
    }
  }
}

TEST_CASE("congruence join and meet") {
  auto c2    = load_lattice("chain:2");
  auto lower = principal_congruence(c2, at(c2, "0"), at(c2, "y1"));
  auto upper = principal_congruence(c2, at(c2, "y1"), at(c2, "1"));
  CHECK(congruence_join(lower, Congruence::zero(c2)) == lower);
  CHECK(congruence_join(lower, upper).is_one());
  CHECK(congruence_meet(lower, upper).is_zero());

  auto sq = load_lattice("bool:2");
  auto a  = principal_congruence(sq, at(sq, "00"), at(sq, "01"));
  auto b  = principal_congruence(sq, at(sq, "00"), at(sq, "10"));
  CHECK(congruence_meet(a, b).is_zero());
  CHECK(congruence_join(a, b).is_one());

  CHECK(kind_of([&] { congruence_join(a, lower); }) == ErrorKind::HostMismatch);
  CHECK(kind_of([&] { congruence_meet(a, lower); }) == ErrorKind::HostMismatch);
}

TEST_CASE("con_lattice examples") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto c   = load_lattice("chain:" + std::to_string(n));
    auto con = con_lattice(c);
    auto rep = is_boolean(*con);
    CHECK(rep.boolean);
    CHECK(rep.atoms.size() == n);
    CHECK(con->size() == (std::size_t{1} << n));
    CHECK(as_set(*con) == oracle::congruences(*c));
  }
  auto m3 = con_lattice(load_lattice("M:3"));
  CHECK(m3->size() == 2);
  CHECK(as_set(*m3) == oracle::congruences(*load_lattice("M:3")));
  auto one = con_lattice(load_lattice("chain:0"));
  CHECK(one->size() == 1);

  Limits tight;
  tight.max_congruences = 10;
  CHECK(kind_of([&] { con_lattice(load_lattice("chain:5"), tight); })
        == ErrorKind::BudgetExceeded);
}

TEST_CASE("con_lattice member order and structure") {
  auto n5  = load_lattice("N5");
  auto con = con_lattice(n5);
  CHECK(con->size() == 5);
  CHECK((*con)[con->zero()].is_zero());
  CHECK((*con)[con->one()].is_one());
  CHECK_FALSE(is_boolean(*con).boolean);
  for (Elem a = 0; a < con->size(); ++a) {
    for (Elem b = 0; b < con->size(); ++b) {
      CHECK((*con)[con->join(a, b)]
            == congruence_join((*con)[a], (*con)[b]));
      CHECK((*con)[con->meet(a, b)]
            == congruence_meet((*con)[a], (*con)[b]));
    }
  }
}

TEST_CASE("cover generators give the same closure as all pairs") {
  for (auto const& l : corpus::standard()) {
    auto con = con_lattice(l);
    std::set<oracle::Partition> closure{Congruence::zero(l).block_ids()};
    std::vector<Congruence> todo{Congruence::zero(l)};
    for (std::size_t k = 0; k < todo.size(); ++k) {
      for (Elem a = 0; a < l->size(); ++a) {
        for (Elem b = a + 1; b < l->size(); ++b) {
          auto j = congruence_join(todo[k], principal_congruence(l, a, b));
          if (closure.insert(j.block_ids()).second) {
            todo.push_back(j);
          }
        }
      }
    }
    REQUIRE(as_set(*con) == closure);
  }
}

TEST_CASE("every member is the join of the principal congruences below it") {
  for (auto const& l : corpus::standard()) {
    auto con = con_lattice(l);
    for (auto const& theta : con->members()) {
      Congruence acc = Congruence::zero(l);
      for (Elem a = 0; a < l->size(); ++a) {
        for (Elem b = a + 1; b < l->size(); ++b) {
          if (theta.related(a, b)) {
            acc = congruence_join(acc, principal_congruence(l, a, b));
          }
        }
      }
      REQUIRE(acc == theta);
    }
  }
}

TEST_CASE("quotient") {
  auto n5 = load_lattice("N5");
  auto q0 = quotient(Congruence::zero(n5));
  CHECK(is_isomorphic(q0.lattice, n5).has_value());
  auto q1 = quotient(Congruence::one(n5));
  CHECK(q1.lattice->size() == 1);
  auto theta = principal_congruence(n5, at(n5, "x1"), at(n5, "x2"));
  CHECK(theta.to_string() == "0|x1,x2|x3|1");
  auto q = quotient(theta);
  CHECK(is_isomorphic(q.lattice, load_lattice("bool:2")).has_value());
  CHECK(q.projection.is_homomorphism());
  CHECK(q.projection.surjective());
  CHECK(kernel(q.projection) == theta);

  auto bad = Congruence(n5, std::vector<Elem>{0, 1, 0, 2, 3});
  CHECK(kind_of([&] { quotient(bad); }) == ErrorKind::NotACongruence);
  CHECK(kind_of([&] {
          Congruence::from_blocks(n5, {{0, 2}, {1}, {3}, {4}});
        })
        == ErrorKind::NotACongruence);
}

TEST_CASE("projection maps principal congruences to principal congruences") {
  for (auto const& l : corpus::standard()) {
    auto con = con_lattice(l);
    for (auto const& theta : con->members()) {
      auto q = quotient(theta);
      for (Elem a = 0; a < l->size(); ++a) {
        for (Elem b = a + 1; b < l->size(); ++b) {
          auto img = image_congruence(q.projection, principal_congruence(l, a, b));
          REQUIRE(img
                  == principal_congruence(q.lattice, q.projection(a),
                                          q.projection(b)));
        }
      }
    }
  }
}

TEST_CASE("kernel") {
  auto sq = load_lattice("bool:2");
  CHECK(kernel(Homomorphism::identity(sq)).is_zero());
  auto one = load_lattice("chain:0");
  CHECK(kernel(Homomorphism(sq, one, {0, 0, 0, 0})).is_one());
  std::vector<LatticePtr> f{load_lattice("2"), load_lattice("2")};
  auto p = product(f);
  CHECK(kernel(p.projections[0])
        == principal_congruence(p.lattice, at(p.lattice, "00"),
                                at(p.lattice, "01")));
}

TEST_CASE("conc_of_hom") {
  auto c2  = load_lattice("chain:2");
  auto cc  = con_lattice(c2);
  CHECK(conc_of_hom(Homomorphism::identity(c2), cc, cc) == ConcMap::identity(cc));

  auto two = load_lattice("2");
  auto ct  = con_lattice(two);
  auto f   = conc_of_hom(Homomorphism::bounds(two, c2), ct, cc);
  CHECK(f(ct->one()) == cc->one());
  CHECK(f.preserves_zero());
  CHECK(f.separates_zero());

  auto sq = load_lattice("bool:2");
  auto cs = con_lattice(sq);
  Homomorphism inc(c2, sq, elements_of(*sq, {"00", "01", "11"}));
  REQUIRE(inc.is_homomorphism());
  auto g     = conc_of_hom(inc, cc, cs);
  auto atoms = cc->atoms();
  REQUIRE(atoms.size() == 2);
  CHECK(g(atoms[0]) != g(atoms[1]));
  auto satoms = cs->atoms();
  CHECK(std::is_permutation(satoms.begin(), satoms.end(),
                            std::vector<Elem>{g(atoms[0]), g(atoms[1])}.begin()));
  CHECK(g.is_isomorphism());
}

TEST_CASE("Conc is a functor on small homomorphism pairs") {
  std::vector<LatticePtr> small{load_lattice("2"), load_lattice("chain:2"),
                                load_lattice("bool:2"), load_lattice("N5"),
                                load_lattice("M:3")};
  std::mt19937 rng(11);
  for (auto const& a : small) {
    for (auto const& b : small) {
      auto fs = all_homs(a, b);
      for (auto const& c : small) {
        auto gs = all_homs(b, c);
        for (int trial = 0; trial < 3 && !fs.empty() && !gs.empty(); ++trial) {
          auto const& f  = fs[rng() % fs.size()];
          auto const& g  = gs[rng() % gs.size()];
          auto        ca = con_lattice(a), cb = con_lattice(b), cc = con_lattice(c);
          auto        lhs = conc_of_hom(g.after(f), ca, cc);
          auto        rhs = conc_of_hom(g, cb, cc).after(conc_of_hom(f, ca, cb));
          REQUIRE(lhs == rhs);
          REQUIRE(lhs.preserves_joins());
          if (f.injective()) {
            REQUIRE(conc_of_hom(f, ca, cb).separates_zero());
          }
        }
      }
    }
  }
}

TEST_CASE("is_boolean") {
  auto c3 = is_boolean(*con_lattice(load_lattice("chain:3")));
  CHECK(c3.boolean);
  CHECK(c3.atoms.size() == 3);
  auto n5 = is_boolean(*con_lattice(load_lattice("N5")));
  CHECK_FALSE(n5.boolean);
  CHECK_FALSE(n5.reason.empty());
  auto m3 = is_boolean(*con_lattice(load_lattice("M:3")));
  CHECK(m3.boolean);
  CHECK(m3.atoms.size() == 1);
}

TEST_CASE("is_congruence_chain") {
  auto sq  = load_lattice("bool:2");
  auto con = con_lattice(sq);
  auto ch  = elements_of(*sq, {"00", "01", "11"});
  auto s   = is_congruence_chain(*con, ch);
  REQUIRE(s.has_value());
  CHECK((*s)[0] != (*s)[1]);

  // Too short: one step cannot hit both atoms.
  auto short_chain = elements_of(*sq, {"00", "11"});
  CHECK_FALSE(is_congruence_chain(*con, short_chain).has_value());

  // 2 x chain(2) has three atoms in Con; every maximal chain hits each once.
  std::vector<LatticePtr> f{load_lattice("2"), load_lattice("chain:2")};
  auto p  = product(f).lattice;
  auto pc = con_lattice(p);
  for (auto const& ch : maximal_chains(*p)) {
    CHECK(is_congruence_chain(*pc, ch).has_value());
  }

  auto n5 = con_lattice(load_lattice("N5"));
  CHECK(kind_of([&] {
          std::vector<Elem> c{0, 4};
          is_congruence_chain(*n5, c);
        })
        == ErrorKind::ConNotBoolean);
}

TEST_CASE("is_congruence_chain rejects repeated colors") {
  // Con(M3 x 2) = 2^2; both steps of (0,0) < (x1,0) < (1,0) generate the
  // same atom.
  std::vector<LatticePtr> f{load_lattice("M:3"), load_lattice("2")};
  auto p   = product(f).lattice;
  auto con = con_lattice(p);
  REQUIRE(con->size() == 4);
  auto same = elements_of(*p, {"(0,0)", "(x1,0)", "(1,0)"});
  CHECK_FALSE(is_congruence_chain(*con, same).has_value());
  auto good = elements_of(*p, {"(0,0)", "(1,0)", "(1,1)"});
  CHECK(is_congruence_chain(*con, good).has_value());
}

TEST_CASE("is_direct_congruence_chain") {
  auto c2  = load_lattice("chain:2");
  auto cc  = con_lattice(c2);
  auto id  = ConcMap::identity(cc);
  auto nat = elements_of(*c2, {"0", "y1", "1"});
  CHECK(is_direct_congruence_chain(id, nat));

  auto atoms = cc->atoms();
  REQUIRE(atoms.size() == 2);
  std::vector<Elem> swapped(cc->size());
  for (Elem a = 0; a < cc->size(); ++a) {
    swapped[a] = a;
  }
  std::swap(swapped[atoms[0]], swapped[atoms[1]]);
  ConcMap xi(cc, cc, swapped);
  CHECK(xi.is_isomorphism());
  CHECK_FALSE(is_direct_congruence_chain(xi, nat));

  std::vector<Elem> too_long{0, 1, 2, 3};
  CHECK(kind_of([&] { is_direct_congruence_chain(id, too_long); })
        == ErrorKind::ArityMismatch);
}

TEST_CASE("length-2 congruence chains are direct or dually direct") {
  // Every congruence chain u < y < v in a lattice with Con = 2^2, checked
  // against the chain 0 < y1 < 1 through every isomorphism of Con.
  for (auto const& l : corpus::standard()) {
    auto con = con_lattice(l);
    auto rep = is_boolean(*con);
    if (!rep.boolean || rep.atoms.size() != 2) {
      continue;
    }
    auto c2  = load_lattice("chain:2");
    auto cc  = con_lattice(c2);
    auto dl  = dual(*l);
    auto dcon = con_lattice(dl);
    for (auto const& perm : {std::vector<Elem>{0, 1}, std::vector<Elem>{1, 0}}) {
      // xi: Con l -> Con c2 sending atoms[i] to c-atoms[perm[i]].
      auto ca = cc->atoms();
      std::vector<Elem> img(con->size());
      img[con->zero()]       = cc->zero();
      img[con->one()]        = cc->one();
      img[rep.atoms[0]]      = ca[perm[0]];
      img[rep.atoms[1]]      = ca[perm[1]];
      ConcMap xi(con, cc, img);
      REQUIRE(xi.is_isomorphism());
      // The same partitions index Con(dual l) identically.
      ConcMap dxi(dcon, cc, img);
      for (Elem u = 0; u < l->size(); ++u) {
        for (Elem y = 0; y < l->size(); ++y) {
          for (Elem v = 0; v < l->size(); ++v) {
            if (!l->less(u, y) || !l->less(y, v)) {
              continue;
            }
            std::vector<Elem> ch{u, y, v};
            if (!is_congruence_chain(*con, ch)) {
              continue;
            }
            std::vector<Elem> rev{v, y, u};
            REQUIRE((is_direct_congruence_chain(xi, ch)
                     || is_direct_congruence_chain(dxi, rev)));
          }
        }
      }
    }
  }
}

TEST_CASE("is_congruence_preserving_extension") {
  auto sq = load_lattice("bool:2");
  CHECK(is_congruence_preserving_extension(Homomorphism::identity(sq)));
  auto c2  = load_lattice("chain:2");
  auto two = load_lattice("2");
  CHECK_FALSE(is_congruence_preserving_extension(Homomorphism::bounds(two, c2)));
  auto cube = load_lattice("bool:3");
  for (auto const& ch : maximal_chains(*cube)) {
    auto sub = induced_sublattice(cube, ch);
    CHECK(is_congruence_preserving_extension(sub.inclusion));
  }
  Homomorphism not_sub(c2, sq, {0, 0, 3});
  CHECK(kind_of([&] { is_congruence_preserving_extension(not_sub); })
        == ErrorKind::NotASublattice);
}

TEST_CASE("is_simple") {
  CHECK(is_simple(load_lattice("M:3")));
  CHECK_FALSE(is_simple(load_lattice("N5")));
  CHECK(is_simple(load_lattice("2")));
  CHECK_FALSE(is_simple(load_lattice("chain:0")));
  for (auto const& l : corpus::standard()) {
    REQUIRE(is_simple(l) == (con_lattice(l)->size() == 2));
  }
}

TEST_CASE("chain decomposition and monotonicity of principal congruences") {
  for (auto const& l : corpus::standard()) {
    for (auto const& ch : maximal_chains(*l)) {
      for (std::size_t i = 0; i < ch.size(); ++i) {
        for (std::size_t j = i; j < ch.size(); ++j) {
          Congruence acc = Congruence::zero(l);
          for (std::size_t k = i; k < j; ++k) {
            acc = congruence_join(acc, principal_congruence(l, ch[k], ch[k + 1]));
          }
          auto whole = principal_congruence(l, ch[i], ch[j]);
          REQUIRE(acc == whole);
          for (std::size_t k = i; k <= j; ++k) {
            for (std::size_t kk = k; kk <= j; ++kk) {
              REQUIRE(principal_congruence(l, ch[k], ch[kk]).leq(whole));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("a lattice and its dual have the same congruences") {
  for (auto const& l : corpus::standard()) {
    REQUIRE(as_set(*con_lattice(l)) == as_set(*con_lattice(dual(*l))));
  }
}

TEST_CASE("congruence lattices are distributive") {
  for (auto const& l : corpus::standard()) {
    REQUIRE(is_distributive(*con_lattice(l)->lattice()));
  }
}

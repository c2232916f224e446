#include "doctest.h"

#include "corpus.hpp"
#include "critlat/critpoint.hpp"
#include "critlat/io.hpp"
#include "critlat/isomorphism.hpp"
#include "helpers.hpp"

using namespace critlat;
using helpers::kind_of;

namespace {

  LatticePtr L(std::string const& name) {
    return load_lattice(name);
  }

  std::string M(int n) {
    return "M:" + std::to_string(n);
  }

  // Replays every certificate of a report from scratch.
  void check_certificates(LatticePtr const& k, LatticePtr const& l, CritReport const& r) {
    auto const dl = dual(*l);
    if (r.verdict == CritVerdict::Infinite) {
      auto const& v    = r.k_in_l.holds ? r.k_in_l : r.k_in_dual_l;
      auto const& host = r.k_in_l.holds ? l : dl;
      REQUIRE(v.holds);
      CHECK(v.witnesses.size() == si_quotients(k).size());
      for (auto const& [q, w] : v.witnesses) {
        CHECK(w.verify(q.lattice, host));
        CHECK(hs_member(q.lattice, host).has_value());
      }
      return;
    }
    CHECK(!r.k_in_l.holds);
    CHECK(!r.k_in_dual_l.holds);
    REQUIRE(r.k_in_l.failing);
    REQUIRE(r.k_in_dual_l.failing);
    CHECK(!hs_member(r.k_in_l.failing->lattice, l));
    CHECK(!hs_member(r.k_in_dual_l.failing->lattice, dl));
    if (r.separating) {
      CHECK(is_subdirectly_irreducible(r.separating->lattice));
      CHECK(!hs_member(r.separating->lattice, l));
      CHECK(!hs_member(r.separating->lattice, dl));
    }
  }

}  // namespace

TEST_CASE("crit_gate on the M_n family") {
  for (int n = 3; n <= 5; ++n) {
    for (int m = 3; m <= 5; ++m) {
      CAPTURE(m);
      CAPTURE(n);
      auto r = crit_gate(L(M(m)), L(M(n)));
      CHECK(r.verdict == (m > n ? CritVerdict::AtMostAleph2 : CritVerdict::Infinite));
      check_certificates(L(M(m)), L(M(n)), r);
      if (m > n) {
        REQUIRE(r.separating);
        CHECK(is_isomorphic(r.separating->lattice, L(M(m))));
      }
    }
  }
}

TEST_CASE("crit_gate known values") {
  auto r = crit_gate(L("M:3"), L("2"));
  CHECK(r.verdict == CritVerdict::AtMostAleph2);
  check_certificates(L("M:3"), L("2"), r);
  CHECK(crit_gate(L("2"), L("M:3")).verdict == CritVerdict::Infinite);
  CHECK(crit_gate(L("N5"), L("M:3")).verdict == CritVerdict::AtMostAleph2);
  CHECK(crit_gate(L("M:3"), L("N5")).verdict == CritVerdict::AtMostAleph2);
  CHECK(crit_gate(L("chain:3"), L("chain:2")).verdict == CritVerdict::Infinite);
  CHECK(crit_gate(L("bool:3"), L("2")).verdict == CritVerdict::Infinite);
  CHECK(crit_gate(L("F22"), L("2")).verdict == CritVerdict::Infinite);
}

TEST_CASE("crit_gate is reflexive") {
  for (auto const& k : corpus::standard()) {
    if (k->size() > 8) {
      continue;
    }
    auto r = crit_gate(k, k);
    CHECK(r.verdict == CritVerdict::Infinite);
    CHECK(r.k_in_l.holds);
  }
}

TEST_CASE("crit_gate properties over small pairs") {
  auto const lattices = corpus::all_small(5);
  for (auto const& k : lattices) {
    for (auto const& l : lattices) {
      auto r = crit_gate(k, l);
      check_certificates(k, l, r);
      CHECK(r.verdict == crit_gate(dual(*k), dual(*l)).verdict);
      // The dual of L answers the same question.
      CHECK(r.verdict == crit_gate(k, dual(*l)).verdict);
    }
  }
}

TEST_CASE("no single separating quotient") {
  // L is not in Var(dual L); K = L x dual L fails both containments, but each
  // SI quotient of K lies in one of HS(L), HS(dual L).
  auto l = FiniteLattice::from_covers(
      "L6", {"0", "a1", "a2", "a3", "a4", "1"},
      {{"0", "a1"}, {"0", "a4"}, {"a1", "a2"}, {"a1", "a3"}, {"a2", "1"},
       {"a3", "1"}, {"a4", "1"}});
  auto dl = dual(*l);
  REQUIRE(!var_leq(l, dl).holds);
  auto k = product(std::vector<LatticePtr>{l, dl}).lattice;
  auto r = crit_gate(k, l);
  CHECK(r.verdict == CritVerdict::AtMostAleph2);
  CHECK(!r.separating);
  check_certificates(k, l, r);
}

TEST_CASE("crit_gate budgets") {
  Limits tight;
  tight.max_hs_size = 4;
  CHECK(kind_of([&] { crit_gate(L("M:3"), L("M:4"), tight); })
        == ErrorKind::BudgetExceeded);
}

TEST_CASE("conc_class_report examples") {
  auto c = conc_class_report(L("chain:2"), L("chain:3"));
  CHECK(c.relation == ConcRelation::Equal);
  CHECK(!c.isomorphic);
  CHECK(!c.dually_isomorphic);
  CHECK(!c.si_pair);

  auto d = conc_class_report(L("M:3"), L("N5"));
  CHECK(d.relation == ConcRelation::Incomparable);
  CHECK(!d.k_in_l);
  CHECK(!d.k_in_dual_l);
  CHECK(!d.l_in_k);
  CHECK(!d.l_in_dual_k);
  REQUIRE(d.si_pair);
  CHECK(d.si_pair->verdict == SIPairClass::DistinctConcClasses);

  auto e = conc_class_report(L("N5"), L("N5"));
  CHECK(e.relation == ConcRelation::Equal);
  CHECK(e.isomorphic);
  REQUIRE(e.si_pair);
  CHECK(e.si_pair->verdict == SIPairClass::Isomorphic);

  auto f = conc_class_report(L("M:3"), L("M:4"));
  CHECK(f.relation == ConcRelation::KBelowL);
  CHECK(conc_class_report(L("M:4"), L("M:3")).relation == ConcRelation::LBelowK);
}

TEST_CASE("SI pairs with equal Conc classes are isomorphic or dual") {
  std::vector<LatticePtr> si;
  for (auto const& l : corpus::all_small(6)) {
    if (is_subdirectly_irreducible(l)) {
      si.push_back(l);
    }
  }
  REQUIRE(si.size() >= 4);
  for (auto const& k : si) {
    for (auto const& l : si) {
      auto r = conc_class_report(k, l);
      if (r.relation == ConcRelation::Equal) {
        CHECK((r.isomorphic || r.dually_isomorphic));
      }
    }
  }
}

TEST_CASE("report JSON") {
  auto r = crit_gate(L("M:4"), L("M:3"));
  auto j = crit_report_to_json(r, *L("M:3"));
  CHECK(j["verdict"] == "AtMostAleph2");
  CHECK(j["separating"]["lattice"]["elements"].size() == 6);
  auto i = crit_report_to_json(crit_gate(L("M:3"), L("M:4")), *L("M:4"));
  CHECK(i["verdict"] == "Infinite");
  CHECK(i["k_in_l"]["certificates"].size() == 1);
  CHECK(i["k_in_l"]["certificates"][0]["witness"]["sublattice"].size() == 5);
  auto c = conc_class_report_to_json(conc_class_report(L("chain:2"), L("chain:3")));
  CHECK(c["relation"] == "Equal");
  CHECK(c["si_pair"].is_null());
}

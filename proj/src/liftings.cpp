#include "critlat/liftings.hpp"

#include <algorithm>
#include <set>

#include "critlat/parallel.hpp"

namespace critlat {

  namespace {

    // Index map Con(from host) -> Con(to host) matching equal partitions.
    // Used between a lattice and its dual, which share the universe.
    ConcMap identify(ConPtr const& from, ConPtr const& to) {
      std::vector<Elem> images;
      for (auto const& theta : from->members()) {
        images.push_back(to->index_of(Congruence(to->host(), theta.block_ids())));
      }
      return ConcMap(from, to, std::move(images));
    }

    bool same_con(ConPtr const& a, ConPtr const& b) {
      return a == b
             || (a && b && a->size() == b->size() && *a->host() == *b->host()
                 && a->members() == b->members());
    }

    Lifting lifting_over(LatticeDiagram      b,
                         SemilatticeDiagram  s,
                         bool                dual_nodes,
                         Limits const&       limits) {
      std::vector<ConcMap> xi(b.poset().size());
      parallel_for(xi.size(), limits.threads, [&](std::size_t p) {
        if (!dual_nodes) {
          xi[p] = ConcMap::identity(s.nodes[p]);
          return;
        }
        xi[p] = identify(con_lattice(b.node(p).lattice(), limits), s.nodes[p]);
      });
      return Lifting{std::move(b), std::move(s), std::move(xi)};
    }

    Homomorphism flat_map(LatticeDiagram const& d, Node p, Node q) {
      return d.map(p, q).flat(d.node(p), d.node(q));
    }

    void check_same_poset(Lifting const& lifting, Poset const& poset) {
      if (!(lifting.source.poset() == poset) || !(lifting.target.poset == poset)
          || lifting.xi.size() != poset.size()) {
        raise(ErrorKind::PosetMismatch, "lifting is indexed by a different poset");
      }
    }

  }  // namespace

  std::string LiftingFailure::describe(Poset const& poset) const {
    std::string where = poset.name(p);
    if (q != p) {
      where += " -> " + poset.name(q);
    }
    switch (kind) {
      case Kind::SourceInvalid: return "source diagram invalid: " + detail;
      case Kind::TargetInvalid: return "target diagram invalid: " + detail;
      case Kind::WrongEndpoints: return "xi at " + where + " has wrong endpoints";
      case Kind::NotAnIsomorphism: return "xi at " + where + " is not an isomorphism";
      case Kind::NotNatural: return "square at " + where + " does not commute";
    }
    return "unknown failure";
  }

  LiftingCheck verify_lifting(Lifting const& lifting, Limits const& limits) {
    using K           = LiftingFailure::Kind;
    auto const& poset = lifting.source.poset();
    check_same_poset(lifting, poset);
    if (auto f = lifting.source.first_failure(limits)) {
      return {LiftingFailure{K::SourceInvalid, f->p, f->q, f->describe(poset)}};
    }
    auto const& s = lifting.target;
    if (s.nodes.size() != poset.size()) {
      return {LiftingFailure{K::TargetInvalid, 0, 0, "wrong number of nodes"}};
    }
    if (auto f = s.first_failure()) {
      return {LiftingFailure{K::TargetInvalid, f->p, f->q, f->describe(poset)}};
    }
    for (Node p = 0; p < poset.size(); ++p) {
      auto const& x = lifting.xi[p];
      if (!x.source() || !x.target() || !same_con(x.target(), s.nodes[p])
          || !(*x.source()->host() == *lifting.source.node(p).lattice())
          || x.images().size() != x.source()->size()) {
        return {LiftingFailure{K::WrongEndpoints, p, p, ""}};
      }
      if (!x.is_isomorphism()) {
        return {LiftingFailure{K::NotAnIsomorphism, p, p, ""}};
      }
    }
    auto const        pairs = poset.strict_pairs();
    std::vector<char> bad(pairs.size(), 0);
    parallel_for(pairs.size(), limits.threads, [&](std::size_t i) {
      auto [p, q]   = pairs[i];
      auto const& x = lifting.xi;
      auto        c = conc_of_hom(flat_map(lifting.source, p, q), x[p].source(),
                                  x[q].source());
      bad[i] = !(x[q].after(c) == s.map(p, q).after(x[p]));
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (bad[i]) {
        return {LiftingFailure{K::NotNatural, pairs[i].first, pairs[i].second, ""}};
      }
    }
    return {};
  }

  Lifting identity_lifting(LatticeDiagram const& a, Limits const& limits) {
    auto s = apply_conc(a, limits);
    return lifting_over(a, std::move(s), false, limits);
  }

  Lifting dual_lifting(LatticeDiagram const& a, Limits const& limits) {
    auto s = apply_conc(a, limits);
    return lifting_over(a.dual(), std::move(s), true, limits);
  }

  Lifting dualized(Lifting const& lifting, Limits const& limits) {
    Lifting r{lifting.source.dual(), lifting.target, {}};
    r.xi.resize(lifting.xi.size());
    parallel_for(r.xi.size(), limits.threads, [&](std::size_t p) {
      auto con = con_lattice(r.source.node(p).lattice(), limits);
      r.xi[p]  = lifting.xi[p].after(identify(con, lifting.xi[p].source()));
    });
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Congruence chains
  ////////////////////////////////////////////////////////////////////////

  bool is_dually_direct_congruence_chain(ConcMap const&        xi,
                                         std::span<Elem const> chain) {
    auto const& b = *xi.source();
    auto const& c = *xi.target();
    if (!c.host()->is_chain()) {
      raise(ErrorKind::PreconditionFailed,
            "reference lattice " + c.host()->name() + " is not a chain");
    }
    auto const cs = chain_order(*c.host());
    if (chain.size() != cs.size()) {
      raise(ErrorKind::ArityMismatch, "chain and reference chain differ in length");
    }
    if (!is_strict_chain(*b.host(), chain)) {
      return false;
    }
    std::size_t const n = chain.size() - 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (xi(b.principal(chain[k], chain[k + 1]))
          != c.principal(cs[n - k - 1], cs[n - k])) {
        return false;
      }
    }
    return true;
  }

  std::vector<ChainWitness> find_congruence_chains(ConPtr const&  con,
                                                   Elem           u,
                                                   Elem           v,
                                                   ConcMap const* xi,
                                                   Limits const&  limits) {
    auto const& b      = con->host();
    auto const  report = is_boolean(*con);
    if (!report.boolean) {
      raise(ErrorKind::ConNotBoolean,
            "Con(" + b->name() + ") is not Boolean: " + report.reason);
    }
    if (u >= b->size() || v >= b->size() || !b->leq(u, v)) {
      raise(ErrorKind::PreconditionFailed, "chain extremities must satisfy u <= v");
    }
    std::size_t const n = b->size();
    std::vector<bool> is_atom(con->size(), false);
    for (Elem a : report.atoms) {
      is_atom[a] = true;
    }
    constexpr Elem    unknown = static_cast<Elem>(-1);
    std::vector<Elem> cache(n * n, unknown);
    auto theta = [&](Elem x, Elem y) {
      Elem& c = cache[x * n + y];
      if (c == unknown) {
        c = con->principal(x, y);
      }
      return c;
    };
    std::vector<Elem> between;  // elements of [u, v], in index order
    for (Elem w = 0; w < n; ++w) {
      if (b->leq(u, w) && b->leq(w, v)) {
        between.push_back(w);
      }
    }

    bool const reference = xi && xi->target()->host()->is_chain();
    std::vector<ChainWitness> result;
    std::vector<Elem>         path{u}, sigma;
    std::size_t               visited = 0;
    // A congruence chain splits Theta(z, v) into disjoint atoms, so every
    // step must peel one atom off what remains.
    auto dfs = [&](auto&& self, Elem z, Elem rest) -> void {
      if (++visited > limits.max_search_nodes) {
        raise(ErrorKind::BudgetExceeded, "congruence chain search exceeded its budget");
      }
      if (z == v) {
        ChainWitness w{0, path, sigma, std::nullopt, std::nullopt};
        if (reference && xi->target()->host()->size() == path.size()) {
          w.direct        = is_direct_congruence_chain(*xi, path);
          w.dually_direct = is_dually_direct_congruence_chain(*xi, path);
        }
        if (result.size() == limits.max_chains) {
          raise(ErrorKind::BudgetExceeded, "too many congruence chains");
        }
        result.push_back(std::move(w));
        return;
      }
      for (Elem w : between) {
        if (!b->less(z, w)) {
          continue;
        }
        Elem a = theta(z, w);
        if (!is_atom[a] || !con->leq(a, rest)) {
          continue;
        }
        Elem after = theta(w, v);
        if (con->join(a, after) != rest || con->meet(a, after) != con->zero()) {
          continue;
        }
        path.push_back(w);
        sigma.push_back(a);
        self(self, w, after);
        path.pop_back();
        sigma.pop_back();
      }
    };
    if (theta(u, v) == con->one()) {
      dfs(dfs, u, con->one());
    }
    return result;
  }

  std::vector<ChainWitness> find_congruence_chains(LatticePtr const& b,
                                                   Elem              u,
                                                   Elem              v,
                                                   Limits const&     limits) {
    return find_congruence_chains(con_lattice(b, limits), u, v, nullptr, limits);
  }

  ////////////////////////////////////////////////////////////////////////
  // The embedding
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct ChainNode {
      Node              node;
      Chain             chain;
      std::vector<Elem> in_l;  // positions in L, bottom to top
    };

    // The nodes {C} of a chain diagram: the upper covers of "empty" other
    // than "top". Their lattices are the chains themselves.
    std::vector<ChainNode> chain_nodes(LatticeDiagram const& a, Node empty, Node top) {
      auto const&            poset = a.poset();
      auto const&            l     = a.node(top).lattice();
      std::vector<ChainNode> result;
      for (auto [p, q] : poset.covers()) {
        if (p != empty || q == top) {
          continue;
        }
        auto const& c = a.node(q).lattice();
        if (!c->is_chain()) {
          raise(ErrorKind::PreconditionFailed,
                "node " + poset.name(q) + " does not carry a chain");
        }
        ChainNode cn{q, {}, {}};
        for (Elem x : chain_order(*c)) {
          cn.chain.labels.push_back(c->label(x));
        }
        cn.in_l = elements_of(*l, cn.chain.labels);
        result.push_back(std::move(cn));
      }
      return result;
    }

    std::string pair_label(FiniteLattice const& l, Elem x, Elem y) {
      return "(" + l.label(x) + ", " + l.label(y) + ")";
    }

  }  // namespace

  EmbeddingReport examine_embedding(LatticeDiagram const& a,
                                    Lifting const&        lifting,
                                    ChainChoices const&   choices,
                                    Limits const&         limits) {
    auto const& poset = a.poset();
    check_same_poset(lifting, poset);
    Node const  empty = poset.index_of("empty");
    Node const  top   = poset.index_of("top");
    auto const& l     = a.node(top).lattice();
    auto const& bd    = lifting.source;
    auto const& b_top = bd.node(top).lattice();
    auto const& b0    = bd.node(empty).lattice();
    auto const  nodes = chain_nodes(a, empty, top);

    EmbeddingReport report;
    report.k = {l->bottom(), l->top()};
    for (auto const& cn : nodes) {
      report.k.insert(report.k.end(), cn.in_l.begin(), cn.in_l.end());
    }
    std::sort(report.k.begin(), report.k.end());
    report.k.erase(std::unique(report.k.begin(), report.k.end()), report.k.end());

    // One direct chain per node {C}, between the images of the bounds of
    // B_empty.
    Elem const u = b0->bottom(), v = b0->top();
    std::vector<ChainWitness> chosen(nodes.size());
    parallel_for(nodes.size(), limits.threads, [&](std::size_t i) {
      auto const& cn = nodes[i];
      auto const  g  = flat_map(bd, empty, cn.node);
      auto const& xi = lifting.xi[cn.node];
      auto found = find_congruence_chains(xi.source(), g(u), g(v), &xi, limits);
      std::optional<Elem> pick;
      if (cn.chain.length() == 2) {
        if (auto it = choices.find(cn.chain.labels[1]); it != choices.end()) {
          pick = it->second;
        }
      }
      for (auto& w : found) {
        w.node = cn.node;
        if (w.direct.value_or(false) && (!pick || w.chain[1] == *pick)) {
          chosen[i] = std::move(w);
          return;
        }
      }
      raise(ErrorKind::MissingDirectChain,
            "no direct congruence chain at node " + poset.name(cn.node)
                + (pick ? " through the chosen element" : ""));
    });
    report.chains = chosen;

    // h on the bounds goes through B_empty; on x through its chain {0,x,1}.
    std::vector<Elem> h(l->size(), static_cast<Elem>(-1));
    auto const        g0 = flat_map(bd, empty, top);
    h[l->bottom()]       = g0(u);
    h[l->top()]          = g0(v);
    std::vector<std::size_t> short_chain(l->size(), nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].chain.length() == 2) {
        Elem x         = nodes[i].in_l[1];
        short_chain[x] = i;
        h[x]           = flat_map(bd, nodes[i].node, top)(chosen[i].chain[1]);
      }
    }
    for (Elem x : report.k) {
      report.h.push_back(h[x]);
    }

    auto fail = [](ReportSection& s, std::string detail) {
      if (s.passed) {
        s.passed = false;
        s.detail = std::move(detail);
      }
    };

    std::vector<bool> in_k(l->size(), false);
    for (Elem x : report.k) {
      in_k[x] = true;
    }
    auto const& con_top = lifting.xi[top];
    auto const& s_top   = lifting.target.nodes[top];
    for (Elem x : report.k) {
      for (Elem y : report.k) {
        if (x < y && h[x] == h[y]) {
          fail(report.injectivity, "h identifies " + pair_label(*l, x, y));
        }
        Elem m = l->meet(x, y), j = l->join(x, y);
        if (in_k[m] && h[m] != b_top->meet(h[x], h[y])) {
          fail(report.operations, "meet of " + pair_label(*l, x, y) + " not preserved");
        }
        if (in_k[j] && h[j] != b_top->join(h[x], h[y])) {
          fail(report.operations, "join of " + pair_label(*l, x, y) + " not preserved");
        }
        if (con_top(con_top.source()->principal(h[x], h[y])) != s_top->principal(x, y)) {
          fail(report.congruences,
               "Theta" + pair_label(*l, x, y) + " does not correspond under xi");
        }
      }
    }

    // Pair nodes of two short chains: xi(Theta(y1, y2)) = Theta_A(x1, x2).
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t k = i + 1; k < nodes.size(); ++k) {
        if (nodes[i].chain.length() != 2 || nodes[k].chain.length() != 2) {
          continue;
        }
        auto pn = poset.find(IndexPosets::pair_name(nodes[i].chain, nodes[k].chain));
        if (!pn) {
          continue;
        }
        Elem y1 = flat_map(bd, nodes[i].node, *pn)(chosen[i].chain[1]);
        Elem y2 = flat_map(bd, nodes[k].node, *pn)(chosen[k].chain[1]);
        auto const& ap = a.node(*pn).lattice();
        Elem x1 = ap->index_of(nodes[i].chain.labels[1]);
        Elem x2 = ap->index_of(nodes[k].chain.labels[1]);
        auto const& xi = lifting.xi[*pn];
        if (xi(xi.source()->principal(y1, y2))
            != lifting.target.nodes[*pn]->principal(x1, x2)) {
          fail(report.congruences,
               "at node " + poset.name(*pn) + " the chains disagree with Theta");
        }
      }
    }

    // Length-3 chains: their inner elements meet the short chains' choices
    // at the pair node.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].chain.length() != 3) {
        continue;
      }
      for (std::size_t step = 1; step <= 2; ++step) {
        Elem        x = nodes[i].in_l[step];
        std::size_t s = short_chain[x];
        if (s == nodes.size()) {
          fail(report.coherence, "no short chain through " + l->label(x));
          continue;
        }
        auto pn   = poset.find(IndexPosets::pair_name(nodes[s].chain, nodes[i].chain));
        Node meet = pn ? *pn : top;
        if (flat_map(bd, nodes[s].node, meet)(chosen[s].chain[1])
            != flat_map(bd, nodes[i].node, meet)(chosen[i].chain[step])) {
          fail(report.coherence,
               "chain " + nodes[i].chain.name() + " disagrees with t_" + l->label(x));
        }
      }
    }
    return report;
  }

  EmbeddingReport extract_embedding(LatticeDiagram const& a,
                                    Lifting const&        lifting,
                                    ChainChoices const&   choices,
                                    Limits const&         limits) {
    auto report = examine_embedding(a, lifting, choices, limits);
    for (auto const* s : {&report.injectivity, &report.operations,
                          &report.congruences, &report.coherence}) {
      if (!s->passed) {
        raise(ErrorKind::VerificationFailed, s->name + ": " + s->detail);
      }
    }
    return report;
  }

  EmbeddingReport extract_embedding_either(LatticeDiagram const& a,
                                           Lifting const&        lifting,
                                           ChainChoices const&   choices,
                                           Limits const&         limits) {
    try {
      return extract_embedding(a, lifting, choices, limits);
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::MissingDirectChain) {
        throw;
      }
    }
    auto report     = extract_embedding(a, dualized(lifting, limits), choices, limits);
    report.dualized = true;
    return report;
  }

  DirectingCheck check_directing_property(DirectingDiagram const& d,
                                          Lifting const&          lifting,
                                          std::optional<Elem>     u,
                                          std::optional<Elem>     v,
                                          Limits const&           limits) {
    auto const& poset = d.diagram.poset();
    check_same_poset(lifting, poset);
    auto const& bd = lifting.source;
    Node const  e  = d.index.empty();
    auto const& b0 = bd.node(e).lattice();
    Elem const  lo = u.value_or(b0->bottom());
    Elem const  hi = v.value_or(b0->top());
    if (lo >= b0->size() || hi >= b0->size() || !b0->less(lo, hi)) {
      raise(ErrorKind::PreconditionFailed, "u < v must hold in B_empty");
    }
    auto chains_at = [&](std::size_t i) {
      Node p = d.index.singleton(i);
      auto g = flat_map(bd, e, p);
      auto found
          = find_congruence_chains(lifting.xi[p].source(), g(lo), g(hi), &lifting.xi[p], limits);
      for (auto& w : found) {
        w.node = p;
      }
      return found;
    };
    for (std::size_t i = 0; i < 2; ++i) {
      auto found = chains_at(i);
      if (std::none_of(found.begin(), found.end(),
                       [](ChainWitness const& w) { return w.direct.value_or(false); })) {
        raise(ErrorKind::HypothesisUnmet,
              "no direct congruence chain at node " + poset.name(d.index.singleton(i)));
      }
    }
    DirectingCheck result;
    result.checked = chains_at(2);
    for (auto const& w : result.checked) {
      if (!w.direct.value_or(false)) {
        result.holds          = false;
        result.counterexample = w;
        break;
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Two retractions
  ////////////////////////////////////////////////////////////////////////

  RetractionChain retraction_congruence_chain(Homomorphism const& f,
                                              Homomorphism const& pi0,
                                              Homomorphism const& pi1,
                                              Limits const&       limits) {
    auto const& a = f.source();
    auto const& b = f.target();
    for (auto const* pi : {&pi0, &pi1}) {
      if (!(*pi->source() == *b) || !(*pi->target() == *a)) {
        raise(ErrorKind::HypothesisUnmet, "the retractions must map B to A");
      }
      if (!pi->is_homomorphism()) {
        raise(ErrorKind::HypothesisUnmet, "a retraction is not a homomorphism");
      }
      if (!(pi->after(f).images() == Homomorphism::identity(a).images())) {
        raise(ErrorKind::HypothesisUnmet, "a retraction does not undo f");
      }
    }
    if (!f.is_homomorphism()) {
      raise(ErrorKind::HypothesisUnmet, "f is not a homomorphism");
    }
    if (a->size() < 2) {
      raise(ErrorKind::HypothesisUnmet, "A needs two elements");
    }
    auto con = con_lattice(b, limits);
    if (con->size() != 4 || !is_boolean(*con).boolean) {
      raise(ErrorKind::HypothesisUnmet,
            "Con " + b->name() + " has " + std::to_string(con->size())
                + " elements, not the four of 2^2");
    }
    Elem alpha[2] = {con->index_of(kernel(pi0)), con->index_of(kernel(pi1))};
    for (Elem k : alpha) {
      if (k == con->zero() || k == con->one()) {
        raise(ErrorKind::HypothesisUnmet, "a kernel is not a coatom of Con B");
      }
    }
    if (alpha[0] == alpha[1]) {
      raise(ErrorKind::HypothesisUnmet, "the two kernels coincide");
    }

    RetractionChain r;
    Elem const      u  = a->bottom();
    Elem const      fu = f(u), fv = f(a->top());
    // Any cover above f(u) toward f(v) generates one of the two atoms.
    Elem x1 = fv;
    for (Elem w : b->upper_covers(fu)) {
      if (b->leq(w, fv)) {
        x1 = std::min(x1, w);
      }
    }
    Elem beta[2] = {alpha[1], alpha[0]};
    Elem step    = con->principal(fu, x1);
    Homomorphism const* p0 = &pi0;
    if (step == beta[1]) {
      std::swap(beta[0], beta[1]);
      p0        = &pi1;
      r.swapped = true;
    } else if (step != beta[0]) {
      raise(ErrorKind::VerificationFailed, "a covering step generates no atom");
    }
    Elem const v2 = (*p0)(x1);
    Elem const t1 = b->meet(x1, f(v2));
    r.u           = u;
    r.v           = v2;
    r.witness.chain = {fu, t1, f(v2)};
    if (!is_strict_chain(*b, r.witness.chain)
        || con->principal(fu, t1) != beta[0] || con->principal(t1, f(v2)) != beta[1]) {
      raise(ErrorKind::VerificationFailed, "constructed chain is not a congruence chain");
    }
    r.witness.sigma = {beta[0], beta[1]};
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  json lifting_to_json(LiftingBundle const& bundle) {
    auto const& lifting = bundle.lifting;
    auto const& poset   = lifting.source.poset();
    json        xi      = json::object();
    for (Node p = 0; p < poset.size(); ++p) {
      auto const& m   = lifting.xi[p];
      json        row = json::array();
      for (Elem jn : join_irreducibles(*m.source()->lattice())) {
        row.push_back({congruence_to_json((*m.source())[jn]),
                       congruence_to_json((*m.target())[m(jn)])});
      }
      xi[poset.name(p)] = row;
    }
    return {{"schema", 1},
            {"source", diagram_to_json(lifting.source)},
            {"target", diagram_to_json(bundle.lifted)},
            {"xi", xi}};
  }

  LiftingBundle lifting_from_json(json const& j, Limits const& limits) {
    try {
      if (!j.is_object() || !j.contains("source") || !j.contains("target")
          || !j.contains("xi")) {
        raise(ErrorKind::ParseError,
              "lifting bundle needs \"source\", \"target\" and \"xi\"");
      }
      if (j.contains("schema") && j.at("schema") != 1) {
        raise(ErrorKind::ParseError, "unsupported schema version");
      }
      auto b = diagram_from_ref(j.at("source"), limits);
      auto a = diagram_from_ref(j.at("target"), limits);
      if (!(a.poset() == b.poset())) {
        raise(ErrorKind::PosetMismatch, "source and target are indexed differently");
      }
      auto                 s = apply_conc(a, limits);
      std::vector<ConcMap> xi;
      for (Node p = 0; p < b.poset().size(); ++p) {
        auto const& name = b.poset().name(p);
        if (!j.at("xi").contains(name)) {
          raise(ErrorKind::ParseError, "no xi for node '" + name + "'");
        }
        auto              con = con_lattice(b.node(p).lattice(), limits);
        constexpr Elem    none = static_cast<Elem>(-1);
        std::vector<Elem> given(con->size(), none);
        for (auto const& e : j.at("xi").at(name)) {
          Elem from   = con->index_of(congruence_from_json(con->host(), e.at(0)));
          given[from] = s.nodes[p]->index_of(
              congruence_from_json(s.nodes[p]->host(), e.at(1)));
        }
        std::vector<Elem> images(con->size(), s.nodes[p]->zero());
        auto const        ji = join_irreducibles(*con->lattice());
        for (Elem jn : ji) {
          if (given[jn] == none) {
            raise(ErrorKind::ParseError,
                  "xi at '" + name + "' misses " + (*con)[jn].to_string());
          }
        }
        for (Elem m = 0; m < con->size(); ++m) {
          for (Elem jn : ji) {
            if (con->leq(jn, m)) {
              images[m] = s.nodes[p]->join(images[m], given[jn]);
            }
          }
        }
        xi.emplace_back(con, s.nodes[p], std::move(images));
      }
      return {a, Lifting{std::move(b), std::move(s), std::move(xi)}};
    } catch (json::exception const& e) {
      raise(ErrorKind::ParseError, e.what());
    }
  }

  json chain_witness_to_json(ChainWitness const& w, FiniteLattice const& b) {
    json chain = json::array();
    for (Elem x : w.chain) {
      chain.push_back(b.label(x));
    }
    json r = {{"node", w.node}, {"chain", chain}, {"sigma", w.sigma}};
    r["direct"]        = w.direct ? json(*w.direct) : json(nullptr);
    r["dually_direct"] = w.dually_direct ? json(*w.dually_direct) : json(nullptr);
    return r;
  }

  json embedding_report_to_json(EmbeddingReport const& r,
                                LatticeDiagram const&  a,
                                Lifting const&         lifting) {
    auto const& poset = a.poset();
    Node const  top   = poset.index_of("top");
    auto const& l     = a.node(top).lattice();
    auto const& b_top = lifting.source.node(top).lattice();
    json        h     = json::object();
    for (std::size_t i = 0; i < r.k.size(); ++i) {
      h[l->label(r.k[i])] = b_top->label(r.h[i]);
    }
    json chains = json::array();
    for (auto const& w : r.chains) {
      auto c    = chain_witness_to_json(w, *lifting.source.node(w.node).lattice());
      c["node"] = poset.name(w.node);
      chains.push_back(c);
    }
    json sections = json::array();
    for (auto const* s : {&r.injectivity, &r.operations, &r.congruences, &r.coherence}) {
      sections.push_back({{"name", s->name}, {"passed", s->passed}, {"detail", s->detail}});
    }
    return {{"schema", 1},
            {"h", h},
            {"dualized", r.dualized},
            {"passed", r.passed()},
            {"sections", sections},
            {"chains", chains}};
  }

  json lifting_check_to_json(LiftingCheck const& c, Poset const& poset) {
    json r = {{"schema", 1}, {"valid", c.valid()}};
    if (c.failure) {
      r["failure"] = {{"p", poset.name(c.failure->p)},
                      {"q", poset.name(c.failure->q)},
                      {"message", c.failure->describe(poset)}};
    }
    return r;
  }

}  // namespace critlat

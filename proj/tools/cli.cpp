#include "critlat/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "critlat/critpoint.hpp"
#include "critlat/diagrams.hpp"
#include "critlat/io.hpp"
#include "critlat/isomorphism.hpp"
#include "critlat/liftings.hpp"
#include "critlat/variety.hpp"

namespace critlat::cli {

  namespace {

    struct Context {
      bool          json_mode = false;
      Limits        limits;
      std::ostream& out;
      std::ostream& err;
    };

    void emit(Context const& c, json const& j) {
      c.out << j.dump(2) << '\n';
    }

    char const* yes(bool b) {
      return b ? "true" : "false";
    }

    std::string labels_of(FiniteLattice const& l, std::vector<Elem> const& xs,
                          std::string const& sep) {
      return join_labels(l, xs, sep);
    }

    Chain parse_chain(std::string const& text) {
      Chain c;
      std::stringstream ss(text);
      std::string       part;
      while (std::getline(ss, part, '<')) {
        c.labels.push_back(part);
      }
      if (c.labels.size() < 2) {
        raise(ErrorKind::ParseError, "chain '" + text + "' needs at least two labels");
      }
      return c;
    }

    json read_json_file(std::string const& path) {
      try {
        return json::parse(read_file(path));
      } catch (json::exception const& e) {
        raise(ErrorKind::ParseError, path + ": " + e.what());
      }
    }

    // K as element positions in L: the given labels, or all of L.
    std::vector<Elem> subset_of(LatticePtr const& l, std::vector<std::string> const& k) {
      if (k.empty()) {
        std::vector<Elem> all(l->size());
        for (Elem x = 0; x < all.size(); ++x) {
          all[x] = x;
        }
        return all;
      }
      return elements_of(*l, k);
    }

    std::string size_text(NodeLattice const& n) {
      return n.size() == SIZE_MAX ? std::string("overflow") : std::to_string(n.size());
    }

    json diagram_summary_json(LatticeDiagram const& d) {
      auto const& poset = d.poset();
      json        nodes = json::array();
      for (Node p = 0; p < poset.size(); ++p) {
        auto const& n       = d.node(p);
        json        factors = json::array();
        for (auto const& f : n.factors()) {
          factors.push_back(f->name());
        }
        nodes.push_back({{"name", poset.name(p)},
                         {"size", size_text(n)},
                         {"flat", n.is_flat()},
                         {"factors", factors}});
      }
      json covers = json::array();
      for (auto const& [p, q] : poset.covers()) {
        covers.push_back({poset.name(p), poset.name(q)});
      }
      return {{"schema", 1}, {"nodes", nodes}, {"covers", covers}};
    }

    void print_diagram(Context const& c, LatticeDiagram const& d) {
      auto const& poset = d.poset();
      std::size_t width = 4;
      for (auto const& name : poset.names()) {
        width = std::max(width, name.size());
      }
      c.out << "nodes: " << poset.size() << ", covers: " << poset.covers().size() << '\n';
      for (Node p = 0; p < poset.size(); ++p) {
        c.out << "  " << std::left << std::setw(static_cast<int>(width)) << poset.name(p)
              << "  |A| = " << std::setw(8) << size_text(d.node(p)) << "  "
              << d.node(p).description() << '\n';
      }
    }

    json failure_json(std::optional<DiagramFailure> const& f, Poset const& poset) {
      return f ? json(f->describe(poset)) : json(nullptr);
    }

    // --- verbs ----------------------------------------------------------

    int do_validate(Context const& c, std::string const& ref) {
      auto const l = load_lattice(ref);
      if (c.json_mode) {
        emit(c, {{"schema", 1},
                 {"valid", true},
                 {"name", l->name()},
                 {"size", l->size()},
                 {"covers", l->covers().size()},
                 {"bottom", l->label(l->bottom())},
                 {"top", l->label(l->top())},
                 {"distributive", is_distributive(*l)}});
        return Ok;
      }
      c.out << "valid: " << l->name() << ", " << l->size() << " elements, "
            << l->covers().size() << " covers, 0 = " << l->label(l->bottom())
            << ", 1 = " << l->label(l->top()) << '\n';
      return Ok;
    }

    int do_con(Context const& c, std::string const& ref) {
      auto const l   = load_lattice(ref);
      auto const con = con_lattice(l, c.limits);
      auto const b   = is_boolean(*con);
      bool const simple = con->size() == 2;
      if (c.json_mode) {
        json members = json::array();
        for (auto const& theta : con->members()) {
          members.push_back(congruence_to_json(theta));
        }
        json covers = json::array();
        for (auto const& [lo, hi] : con->lattice()->covers()) {
          covers.push_back({lo, hi});
        }
        emit(c, {{"schema", 1},
                 {"lattice", l->name()},
                 {"size", con->size()},
                 {"simple", simple},
                 {"boolean", b.boolean},
                 {"atoms", b.atoms},
                 {"congruences", members},
                 {"covers", covers}});
        return Ok;
      }
      c.out << "simple: " << yes(simple) << ", |Con| = " << con->size() << '\n';
      c.out << "boolean: " << yes(b.boolean);
      if (!b.boolean && !b.reason.empty()) {
        c.out << " (" << b.reason << ")";
      }
      c.out << '\n';
      for (std::size_t i = 0; i < con->size(); ++i) {
        c.out << "  [" << i << "] " << (*con)[i].to_string() << '\n';
      }
      return Ok;
    }

    int do_simple(Context const& c, std::string const& ref) {
      auto const l      = load_lattice(ref);
      bool const simple = is_simple(l);
      if (c.json_mode) {
        emit(c, {{"schema", 1}, {"lattice", l->name()}, {"simple", simple}});
      } else {
        c.out << "simple: " << yes(simple) << '\n';
      }
      return Ok;
    }

    int do_si(Context const& c, std::string const& ref) {
      auto const l  = load_lattice(ref);
      auto const qs = si_quotients(l, c.limits);
      if (c.json_mode) {
        json list = json::array();
        for (auto const& q : qs) {
          auto j        = si_quotient_to_json(q);
          j["monolith"] = congruence_to_json(q.monolith);
          list.push_back(j);
        }
        emit(c, {{"schema", 1},
                 {"lattice", l->name()},
                 {"subdirectly_irreducible", is_subdirectly_irreducible(l, c.limits)},
                 {"quotients", list}});
        return Ok;
      }
      c.out << "subdirectly irreducible: " << yes(is_subdirectly_irreducible(l, c.limits))
            << '\n';
      c.out << "SI quotients: " << qs.size() << '\n';
      for (auto const& q : qs) {
        c.out << "  theta = " << q.theta.to_string() << "  |K/theta| = " << q.lattice->size()
              << "  monolith = " << q.monolith.to_string() << '\n';
      }
      return Ok;
    }

    int do_hs_member(Context const& c, std::string const& mref, std::string const& lref) {
      auto const m = load_lattice(mref);
      auto const l = load_lattice(lref);
      auto const w = hs_member(m, l, c.limits);
      if (c.json_mode) {
        emit(c, {{"schema", 1},
                 {"member", w.has_value()},
                 {"witness", w ? hs_witness_to_json(*w, *l) : json(nullptr)}});
        return Ok;
      }
      c.out << "member: " << yes(w.has_value()) << '\n';
      if (w) {
        c.out << "  sublattice: " << labels_of(*l, w->sublattice, ",") << '\n';
        c.out << "  theta: " << w->theta.to_string() << '\n';
      }
      return Ok;
    }

    int do_var_leq(Context const& c, std::string const& kref, std::string const& lref) {
      auto const k = load_lattice(kref);
      auto const l = load_lattice(lref);
      auto const r = var_leq(k, l, c.limits);
      if (c.json_mode) {
        auto j      = var_leq_to_json(r, *l);
        j["schema"] = 1;
        emit(c, j);
        return Ok;
      }
      c.out << "holds: " << yes(r.holds) << '\n';
      for (auto const& [q, w] : r.witnesses) {
        c.out << "  " << q.theta.to_string() << " -> sublattice "
              << labels_of(*l, w.sublattice, ",") << ", theta " << w.theta.to_string() << '\n';
      }
      if (r.failing) {
        c.out << "  failing quotient: theta = " << r.failing->theta.to_string() << ", size "
              << r.failing->lattice->size() << '\n';
      }
      return Ok;
    }

    int do_crit_gate(Context const& c, std::string const& kref, std::string const& lref) {
      auto const k    = load_lattice(kref);
      auto const l    = load_lattice(lref);
      auto const r    = crit_gate(k, l, c.limits);
      int const  code = r.verdict == CritVerdict::Infinite ? Ok : AtMostAleph2;
      if (c.json_mode) {
        emit(c, crit_report_to_json(r, *l));
        return code;
      }
      c.out << "verdict: " << to_string(r.verdict) << '\n';
      c.out << "Var K <= Var L: " << yes(r.k_in_l.holds) << '\n';
      c.out << "Var K <= Var(dual L): " << yes(r.k_in_dual_l.holds) << '\n';
      if (r.separating) {
        c.out << "separating quotient: theta = " << r.separating->theta.to_string()
              << ", size " << r.separating->lattice->size() << '\n';
      }
      c.out << r.justification << '\n';
      return code;
    }

    struct DiagramArgs {
      std::string              lattice;
      std::vector<std::string> k;
      std::vector<std::string> chains;
      std::string              bundle;
      bool                     dot = false;
    };

    LatticeDiagram chain_diagram_from(Context const& c, DiagramArgs const& a, LatticePtr const& l) {
      if (!a.chains.empty()) {
        std::vector<Chain> chains;
        for (auto const& s : a.chains) {
          chains.push_back(parse_chain(s));
        }
        return chain_diagram(l, chains, c.limits);
      }
      return chain_diagram_of_partial(l, subset_of(l, a.k), c.limits);
    }

    Lifting named_lifting(Context const& c, std::string const& kind, LatticeDiagram const& a) {
      if (kind == "identity") {
        return identity_lifting(a, c.limits);
      }
      if (kind == "dual") {
        return dual_lifting(a, c.limits);
      }
      raise(ErrorKind::ParseError, "unknown lifting '" + kind + "' (identity, dual)");
    }

    int do_chain_diagram(Context const& c, DiagramArgs const& a) {
      auto const l = load_lattice(a.lattice);
      auto const d = chain_diagram_from(c, a, l);
      if (!a.bundle.empty()) {
        emit(c, lifting_to_json({d, named_lifting(c, a.bundle, d)}));
        return Ok;
      }
      if (a.dot) {
        c.out << diagram_to_dot(d);
        return Ok;
      }
      auto const failure = d.first_failure(c.limits);
      if (c.json_mode) {
        auto j        = diagram_to_json(d);
        j["failure"] = failure_json(failure, d.poset());
        emit(c, j);
        return failure ? Failure : Ok;
      }
      print_diagram(c, d);
      c.out << "diagram: " << (failure ? failure->describe(d.poset()) : "ok") << '\n';
      return failure ? Failure : Ok;
    }

    int do_directing_diagram(Context const& c,
                             std::string const&              kgen,
                             std::vector<std::string> const& chains,
                             bool                            dot) {
      if (chains.size() != 3) {
        raise(ErrorKind::ParseError, "directing-diagram takes exactly three chains");
      }
      auto const g = load_lattice(kgen);
      auto const d = directing_diagram(g, parse_chain(chains[0]), parse_chain(chains[1]),
                                       parse_chain(chains[2]), c.limits);
      if (dot) {
        c.out << diagram_to_dot(d.diagram);
        return Ok;
      }
      auto const failure = d.diagram.first_failure(c.limits);
      if (c.json_mode) {
        auto j        = diagram_summary_json(d.diagram);
        j["t_maps"]  = d.t_maps;
        j["x"]       = {g->label(d.x[0]), g->label(d.x[1]), g->label(d.x[2])};
        j["failure"] = failure_json(failure, d.diagram.poset());
        emit(c, j);
        return failure ? Failure : Ok;
      }
      print_diagram(c, d.diagram);
      c.out << "surjections C3 -> {0,x3,1}: " << d.t_maps.size() << '\n';
      c.out << "diagram: " << (failure ? failure->describe(d.diagram.poset()) : "ok") << '\n';
      return failure ? Failure : Ok;
    }

    int do_glued_diagram(Context const& c,
                         std::string const&              lref,
                         std::vector<std::string> const& k,
                         std::string const&              kgen,
                         bool                            dot) {
      auto const l = load_lattice(lref);
      auto const g = glued_diagram(l, subset_of(l, k), load_lattice(kgen), c.limits);
      if (dot) {
        c.out << diagram_to_dot(g.diagram);
        return Ok;
      }
      auto const& chains  = g.index.chains;
      auto const  failure = g.diagram.first_failure(c.limits);
      if (c.json_mode) {
        auto j         = diagram_summary_json(g.diagram);
        json triples   = json::array();
        for (auto const& t : g.triples) {
          triples.push_back({chains[t[0]].name(), chains[t[1]].name(), chains[t[2]].name()});
        }
        j["triples"] = triples;
        j["failure"] = failure_json(failure, g.diagram.poset());
        emit(c, j);
        return failure ? Failure : Ok;
      }
      print_diagram(c, g.diagram);
      c.out << "triples: " << g.triples.size() << '\n';
      for (auto const& t : g.triples) {
        c.out << "  (" << chains[t[0]].name() << ", " << chains[t[1]].name() << ", "
              << chains[t[2]].name() << ")\n";
      }
      c.out << "diagram: " << (failure ? failure->describe(g.diagram.poset()) : "ok") << '\n';
      return failure ? Failure : Ok;
    }

    int do_lift_check(Context const& c, std::string const& path) {
      auto const bundle = lifting_from_json(read_json_file(path), c.limits);
      auto const check  = verify_lifting(bundle.lifting, c.limits);
      auto const& poset = bundle.lifting.source.poset();
      if (c.json_mode) {
        emit(c, lifting_check_to_json(check, poset));
      } else {
        c.out << "valid: " << yes(check.valid()) << '\n';
        if (!check.valid()) {
          c.out << "  " << check.failure->describe(poset) << '\n';
        }
      }
      if (!check.valid()) {
        c.err << "error: lifting rejected: " << check.failure->describe(poset) << '\n';
        return Failure;
      }
      return Ok;
    }

    struct EmbeddingArgs {
      std::string              input;
      std::string              lifting = "identity";
      std::vector<std::string> k;
      std::vector<std::string> choose;
      bool                     either = false;
    };

    ChainChoices parse_choices(std::vector<std::string> const& items) {
      ChainChoices choices;
      for (auto const& item : items) {
        auto const eq = item.find('=');
        if (eq == std::string::npos) {
          raise(ErrorKind::ParseError, "--choose expects LABEL=INDEX, got '" + item + "'");
        }
        try {
          choices[item.substr(0, eq)] = static_cast<Elem>(std::stoul(item.substr(eq + 1)));
        } catch (std::logic_error const&) {
          raise(ErrorKind::ParseError, "bad index in '" + item + "'");
        }
      }
      return choices;
    }

    int do_extract_embedding(Context const& c, EmbeddingArgs const& a) {
      // A lattice reference builds the chain diagram of K in L and a named
      // lifting of it; anything else is a lifting bundle.
      LiftingBundle bundle;
      auto          l = builtin_lattice(a.input);
      if (!l) {
        auto const j = read_json_file(a.input);
        if (j.is_object() && j.contains("source")) {
          bundle = lifting_from_json(j, c.limits);
        } else {
          l = lattice_from_json(j);
        }
      }
      if (l) {
        auto d = chain_diagram_of_partial(l, subset_of(l, a.k), c.limits);
        bundle = {d, named_lifting(c, a.lifting, d)};
      }
      auto const      choices = parse_choices(a.choose);
      EmbeddingReport r;
      Lifting         used = bundle.lifting;
      try {
        r = examine_embedding(bundle.lifted, used, choices, c.limits);
      } catch (Error const& e) {
        if (!a.either || e.kind() != ErrorKind::MissingDirectChain) {
          throw;
        }
        used       = dualized(bundle.lifting, c.limits);
        r          = examine_embedding(bundle.lifted, used, choices, c.limits);
        r.dualized = true;
      }
      int const code = r.passed() ? Ok : Failure;
      if (c.json_mode) {
        emit(c, embedding_report_to_json(r, bundle.lifted, used));
        return code;
      }
      auto const& top = bundle.lifted.node(bundle.lifted.poset().size() - 1).lattice();
      auto const& b   = used.source.node(used.source.poset().size() - 1).lattice();
      c.out << "embedding: " << (r.passed() ? "ok" : "FAILED")
            << (r.dualized ? " (dual lifting)" : "") << '\n';
      for (std::size_t i = 0; i < r.k.size(); ++i) {
        c.out << "  h(" << top->label(r.k[i]) << ") = " << b->label(r.h[i]) << '\n';
      }
      for (auto const* s : {&r.injectivity, &r.operations, &r.congruences, &r.coherence}) {
        c.out << "  " << s->name << ": " << (s->passed ? "ok" : s->detail) << '\n';
      }
      if (code != Ok) {
        c.err << "error: embedding check failed\n";
      }
      return code;
    }

    int do_find_chains(Context const& c, std::string const& ref, std::string const& u,
                       std::string const& v) {
      auto const b      = load_lattice(ref);
      auto const chains = find_congruence_chains(b, b->index_of(u), b->index_of(v), c.limits);
      if (c.json_mode) {
        json list = json::array();
        for (auto const& w : chains) {
          list.push_back(chain_witness_to_json(w, *b));
        }
        emit(c, {{"schema", 1}, {"lattice", b->name()}, {"chains", list}});
        return Ok;
      }
      auto const con = con_lattice(b, c.limits);
      c.out << "congruence chains from " << u << " to " << v << ": " << chains.size() << '\n';
      for (auto const& w : chains) {
        c.out << "  " << labels_of(*b, w.chain, " < ") << "  steps:";
        for (Elem s : w.sigma) {
          c.out << ' ' << (*con)[s].to_string();
        }
        c.out << '\n';
      }
      return Ok;
    }

    int do_dual(Context const& c, std::string const& ref) {
      emit(c, lattice_to_json(*dual(*load_lattice(ref))));
      return Ok;
    }

    json iso_json(std::optional<Homomorphism> const& f) {
      if (!f) {
        return nullptr;
      }
      json m = json::object();
      for (Elem x = 0; x < f->source()->size(); ++x) {
        m[f->source()->label(x)] = f->target()->label((*f)(x));
      }
      return m;
    }

    int do_iso(Context const& c, std::string const& kref, std::string const& lref) {
      auto const k  = load_lattice(kref);
      auto const l  = load_lattice(lref);
      auto const f  = is_isomorphic(k, l);
      auto const df = is_dual_isomorphic(k, l);
      if (c.json_mode) {
        emit(c, {{"schema", 1},
                 {"isomorphic", f.has_value()},
                 {"dually_isomorphic", df.has_value()},
                 {"iso", iso_json(f)},
                 {"dual_iso", iso_json(df)}});
        return Ok;
      }
      c.out << "isomorphic: " << yes(f.has_value()) << '\n';
      c.out << "dually isomorphic: " << yes(df.has_value()) << '\n';
      if (auto const& g = f ? f : df) {
        for (Elem x = 0; x < k->size(); ++x) {
          c.out << "  " << k->label(x) << " -> " << l->label((*g)(x)) << '\n';
        }
      }
      return Ok;
    }

    int do_conc_report(Context const& c, std::string const& kref, std::string const& lref) {
      auto const r = conc_class_report(load_lattice(kref), load_lattice(lref), c.limits);
      if (c.json_mode) {
        emit(c, conc_class_report_to_json(r));
        return Ok;
      }
      c.out << "relation: " << to_string(r.relation) << '\n';
      c.out << "Var K <= Var L: " << yes(r.k_in_l) << '\n';
      c.out << "Var K <= Var(dual L): " << yes(r.k_in_dual_l) << '\n';
      c.out << "Var L <= Var K: " << yes(r.l_in_k) << '\n';
      c.out << "Var L <= Var(dual K): " << yes(r.l_in_dual_k) << '\n';
      c.out << "isomorphic: " << yes(r.isomorphic)
            << ", dually isomorphic: " << yes(r.dually_isomorphic) << '\n';
      if (r.si_pair) {
        c.out << "SI pair: " << to_string(r.si_pair->verdict);
        if (!r.si_pair->note.empty()) {
          c.out << " (" << r.si_pair->note << ")";
        }
        c.out << '\n';
      }
      return Ok;
    }

    int do_export_dot(Context const& c, std::string const& ref) {
      if (auto l = builtin_lattice(ref)) {
        c.out << lattice_to_dot(*l);
        return Ok;
      }
      auto const j = read_json_file(ref);
      if (j.is_object() && j.contains("poset")) {
        c.out << diagram_to_dot(diagram_from_json(j, c.limits));
      } else if (j.is_object() && j.contains("source")) {
        c.out << diagram_to_dot(lifting_from_json(j, c.limits).lifting.source);
      } else {
        c.out << lattice_to_dot(*lattice_from_json(j));
      }
      return Ok;
    }

    std::optional<std::size_t> env_size(char const* name) {
      char const* v = std::getenv(name);
      if (v == nullptr || *v == '\0') {
        return std::nullopt;
      }
      try {
        return static_cast<std::size_t>(std::stoull(v));
      } catch (std::logic_error const&) {
        raise(ErrorKind::ParseError, std::string(name) + " must be a number, got '" + v + "'");
      }
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Limits const defaults;
    CLI::App     app{"Finite lattices, congruences, varieties and congruence liftings",
                 "critlat"};
    app.require_subcommand(1);
    app.fallthrough();

    bool        json_mode = false;
    std::size_t max_size = defaults.max_hs_size;
    std::size_t max_subuniverses = defaults.max_subuniverses;
    std::size_t max_product = defaults.max_product_size;
    std::size_t max_congruences = defaults.max_congruences;
    unsigned    threads = defaults.threads;
    app.add_flag("--json", json_mode, "Emit JSON (schema 1)");
    auto* size_opt = app.add_option(
        "--max-size", max_size,
        "Largest lattice searched exhaustively for sublattices and HS witnesses "
        "(default 8, or CRITLAT_MAX_SIZE)");
    app.add_option("--max-subuniverses", max_subuniverses,
                   "Cap on enumerated subuniverses (default 100000)");
    app.add_option("--max-product", max_product,
                   "Largest product lattice built explicitly (default 4096)");
    app.add_option("--max-congruences", max_congruences,
                   "Cap on the size of a congruence lattice (default 4096)");
    app.add_option("--threads", threads, "Worker threads; output does not depend on it")
        ->check(CLI::Range(1u, 256u));

    std::vector<std::pair<CLI::App*, std::function<int(Context const&)>>> verbs;
    auto verb = [&](char const* name, char const* help, auto action) {
      auto* sub = app.add_subcommand(name, help);
      sub->fallthrough();
      verbs.emplace_back(sub, action);
      return sub;
    };

    std::string a, b, u, v;
    auto        one = [&](char const* name, char const* help,
                   std::function<int(Context const&, std::string const&)> f) {
      verb(name, help, [&a, f](Context const& c) { return f(c, a); })
          ->add_option("lattice", a, "Builtin name or lattice JSON file")
          ->required();
    };
    auto two = [&](char const* name, char const* help,
                   std::function<int(Context const&, std::string const&, std::string const&)>
                       f) {
      auto* sub = verb(name, help, [&a, &b, f](Context const& c) { return f(c, a, b); });
      sub->add_option("K", a, "First lattice")->required();
      sub->add_option("L", b, "Second lattice")->required();
    };

    one("validate", "Check a lattice presentation", do_validate);
    one("con", "Congruence lattice", do_con);
    one("simple", "Whether Con L has two elements", do_simple);
    one("si", "Subdirectly irreducible quotients", do_si);
    one("dual", "Dual lattice as JSON", do_dual);
    one("export-dot", "Graphviz rendering of a lattice, diagram or lifting bundle",
        do_export_dot);
    two("hs-member", "Whether M is a quotient of a sublattice of L", do_hs_member);
    two("var-leq", "Whether Var K is contained in Var L", do_var_leq);
    two("crit-gate", "Critical point verdict for Var K against Var L", do_crit_gate);
    two("iso", "Isomorphism and dual isomorphism", do_iso);
    two("conc-report", "Relation between the Conc classes of Var K and Var L",
        do_conc_report);

    DiagramArgs da;
    auto*       cd = verb("chain-diagram", "Chain diagram of K inside L",
                    [&da](Context const& c) { return do_chain_diagram(c, da); });
    cd->add_option("lattice", da.lattice, "The lattice L")->required();
    cd->add_option("--k", da.k, "Labels of the partial sublattice K (default: all of L)")
        ->delimiter(',');
    cd->add_option("--chain", da.chains, "Explicit chain such as 0<a<1 (repeatable)");
    cd->add_option("--bundle", da.bundle, "Write a lifting bundle: identity or dual");
    cd->add_flag("--dot", da.dot, "Graphviz output");

    std::vector<std::string> chains;
    bool                     dot = false;
    auto* dd = verb("directing-diagram", "Directing diagram for a generator and three chains",
                    [&](Context const& c) { return do_directing_diagram(c, a, chains, dot); });
    dd->add_option("generator", a, "M:3 or N5 (or an isomorphic lattice)")->required();
    dd->add_option("chains", chains, "Three chains such as 0<a<1")->required()->expected(3);
    dd->add_flag("--dot", dot, "Graphviz output");

    std::vector<std::string> k;
    std::string              kgen = "M:3";
    auto* gd = verb("glued-diagram", "Chain diagram glued with directing diagrams",
                    [&](Context const& c) { return do_glued_diagram(c, a, k, kgen, dot); });
    gd->add_option("lattice", a, "The lattice L")->required();
    gd->add_option("--k", k, "Labels of K (default: all of L)")->delimiter(',');
    gd->add_option("--generator", kgen, "Generator lattice (default M:3)");
    gd->add_flag("--dot", dot, "Graphviz output");

    verb("lift-check", "Verify a lifting bundle",
         [&a](Context const& c) { return do_lift_check(c, a); })
        ->add_option("bundle", a, "Lifting bundle JSON file")
        ->required();

    EmbeddingArgs ea;
    auto*         ee = verb("extract-embedding", "Embedding of K read off a lifting",
                    [&ea](Context const& c) { return do_extract_embedding(c, ea); });
    ee->add_option("input", ea.input, "Lifting bundle file, or a lattice L")->required();
    ee->add_option("--lifting", ea.lifting, "For a lattice input: identity or dual");
    ee->add_option("--k", ea.k, "For a lattice input: labels of K")->delimiter(',');
    ee->add_option("--choose", ea.choose, "LABEL=INDEX: position of t_x in B_{C_x}");
    ee->add_flag("--either", ea.either, "Fall back to the dual lifting");

    auto* fc = verb("find-chains", "Congruence chains between two elements",
                    [&](Context const& c) { return do_find_chains(c, a, u, v); });
    fc->add_option("lattice", a, "The lattice B")->required();
    fc->add_option("u", u, "Lower extremity")->required();
    fc->add_option("v", v, "Upper extremity")->required();

    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? Ok : Failure;
    }

    try {
      Context c{json_mode, defaults, out, err};
      if (size_opt->count() == 0) {
        if (auto env = env_size("CRITLAT_MAX_SIZE")) {
          max_size = *env;
        }
      }
      // A sublattice search over L needs L inside both caps.
      c.limits.max_hs_size          = max_size;
      c.limits.max_subuniverse_size = std::max(max_size, defaults.max_subuniverse_size);
      c.limits.max_subuniverses     = max_subuniverses;
      c.limits.max_product_size     = max_product;
      c.limits.max_congruences      = max_congruences;
      c.limits.threads              = threads;
      for (auto const& [sub, action] : verbs) {
        if (sub->parsed()) {
          return action(c);
        }
      }
      return Failure;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
    } catch (json::exception const& e) {
      err << "error: ParseError: " << e.what() << '\n';
    } catch (std::exception const& e) {
      err << "error: " << e.what() << '\n';
    }
    return Failure;
  }

}  // namespace critlat::cli

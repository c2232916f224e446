#include "critlat/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace critlat {

  namespace {

    std::optional<std::size_t> parse_count(std::string const& s) {
      std::size_t value = 0;
      auto [ptr, ec]    = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
      }
      return value;
    }

    LatticePtr m_n(std::size_t n, std::string name) {
      std::vector<std::string>                         labels{"0"};
      std::vector<std::pair<std::string, std::string>> covers;
      for (std::size_t i = 1; i <= n; ++i) {
        labels.push_back("x" + std::to_string(i));
        covers.emplace_back("0", labels.back());
        covers.emplace_back(labels.back(), "1");
      }
      labels.push_back("1");
      return FiniteLattice::from_covers(std::move(name), labels, covers);
    }

  }  // namespace

  LatticePtr builtin_lattice(std::string const& name) {
    if (name.rfind("dual:", 0) == 0) {
      auto inner = load_lattice(name.substr(5));
      return dual(*inner);
    }
    if (name == "2") {
      return chain_lattice({"0", "1"}, "2");
    }
    if (name == "N5") {
      return FiniteLattice::from_covers(
          "N5",
          {"0", "x1", "x2", "x3", "1"},
          {{"0", "x1"}, {"x1", "x2"}, {"x2", "1"}, {"0", "x3"}, {"x3", "1"}});
    }
    if (name == "F22") {
      return FiniteLattice::from_covers("F22",
                                        {"0", "x1^x2", "x1", "x2", "x1vx2", "1"},
                                        {{"0", "x1^x2"},
                                         {"x1^x2", "x1"},
                                         {"x1^x2", "x2"},
                                         {"x1", "x1vx2"},
                                         {"x2", "x1vx2"},
                                         {"x1vx2", "1"}});
    }
    auto colon = name.find(':');
    if (colon == std::string::npos) {
      return nullptr;
    }
    std::string const kind = name.substr(0, colon);
    auto const        n    = parse_count(name.substr(colon + 1));
    if (kind != "chain" && kind != "M" && kind != "bool") {
      return nullptr;
    }
    if (!n || *n > 4096) {
      raise(ErrorKind::ParseError, "bad size in builtin '" + name + "'");
    }
    if (kind == "chain") {
      if (*n == 0) {
        return chain_lattice({"0"}, name);
      }
      std::vector<std::string> labels{"0"};
      for (std::size_t i = 1; i < *n; ++i) {
        labels.push_back("y" + std::to_string(i));
      }
      labels.push_back("1");
      return chain_lattice(std::move(labels), name);
    }
    if (kind == "M") {
      if (*n == 0) {
        raise(ErrorKind::ParseError, "M:n needs n >= 1");
      }
      return m_n(*n, name);
    }
    if (*n == 0) {
      return chain_lattice({"0"}, name);
    }
    if (*n > 12) {
      raise(ErrorKind::SizeCapExceeded, "bool:n is limited to n <= 12");
    }
    std::vector<LatticePtr> factors(*n, chain_lattice({"0", "1"}, "2"));
    Limits                  limits;
    limits.max_product_size = std::size_t{1} << *n;
    auto p                  = product(factors, limits).lattice;
    return FiniteLattice::from_tables(
        name, p->labels(), p->meet_table(), p->join_table(), p->covers());
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      raise(ErrorKind::ParseError, "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  LatticePtr load_lattice(std::string const& ref) {
    if (auto l = builtin_lattice(ref)) {
      return l;
    }
    json j;
    try {
      j = json::parse(read_file(ref));
    } catch (json::exception const& e) {
      raise(ErrorKind::ParseError, ref + ": " + e.what());
    }
    return lattice_from_json(j);
  }

  json lattice_to_json(FiniteLattice const& lattice) {
    json covers = json::array();
    for (auto const& [lo, hi] : lattice.covers()) {
      covers.push_back({lattice.label(lo), lattice.label(hi)});
    }
    return {{"schema", 1},
            {"name", lattice.name()},
            {"elements", lattice.labels()},
            {"covers", covers}};
  }

  LatticePtr lattice_from_json(json const& j) {
    try {
      if (!j.is_object() || !j.contains("elements")) {
        raise(ErrorKind::ParseError, "lattice object needs \"elements\"");
      }
      if (j.contains("schema") && j.at("schema") != 1) {
        raise(ErrorKind::ParseError, "unsupported schema version");
      }
      auto labels = j.at("elements").get<std::vector<std::string>>();
      std::vector<std::pair<std::string, std::string>> covers;
      if (j.contains("covers")) {
        for (auto const& c : j.at("covers")) {
          if (!c.is_array() || c.size() != 2) {
            raise(ErrorKind::ParseError, "a cover is a [lower, upper] pair");
          }
          covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
        }
      }
      return FiniteLattice::from_covers(j.value("name", std::string("L")),
                                        std::move(labels), covers);
    } catch (json::exception const& e) {
      raise(ErrorKind::ParseError, e.what());
    }
  }

  LatticePtr lattice_from_ref(json const& j) {
    if (j.is_string()) {
      return load_lattice(j.get<std::string>());
    }
    return lattice_from_json(j);
  }

  namespace {

    std::string quote(std::string const& s) {
      std::string r = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          r += '\\';
        }
        r += c;
      }
      return r + "\"";
    }

  }  // namespace

  std::string lattice_to_dot(FiniteLattice const& lattice) {
    std::ostringstream out;
    out << "digraph " << quote(lattice.name()) << " {\n";
    out << "  rankdir=BT;\n  node [shape=circle];\n";
    for (Elem x = 0; x < lattice.size(); ++x) {
      out << "  n" << x << " [label=" << quote(lattice.label(x)) << "];\n";
    }
    for (std::size_t h = 0; h <= lattice.length(); ++h) {
      out << "  { rank=same;";
      for (Elem x = 0; x < lattice.size(); ++x) {
        if (lattice.height(x) == h) {
          out << " n" << x << ";";
        }
      }
      out << " }\n";
    }
    for (auto const& [lo, hi] : lattice.covers()) {
      out << "  n" << lo << " -> n" << hi << " [arrowhead=none];\n";
    }
    out << "}\n";
    return out.str();
  }

  json congruence_to_json(Congruence const& theta) {
    json blocks = json::array();
    for (auto const& b : theta.blocks()) {
      json block = json::array();
      for (Elem x : b) {
        block.push_back(theta.host()->label(x));
      }
      blocks.push_back(block);
    }
    return blocks;
  }

  Congruence congruence_from_json(LatticePtr const& host, json const& j) {
    std::vector<std::vector<Elem>> blocks;
    try {
      for (auto const& b : j) {
        blocks.push_back(elements_of(*host, b.get<std::vector<std::string>>()));
      }
    } catch (json::exception const& e) {
      raise(ErrorKind::ParseError, e.what());
    }
    return Congruence::from_blocks(host, blocks);
  }

}  // namespace critlat

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ontmed::testing {

namespace {

using Matrix = std::vector<std::vector<bool>>;

std::set<std::pair<Iri, Iri>> floyd(const std::vector<Iri>& nodes,
                                    const std::vector<std::pair<Iri, Iri>>& edges) {
  const std::size_t n = nodes.size();
  std::map<Iri, std::size_t> at;
  for (std::size_t i = 0; i < n; ++i) at[nodes[i]] = i;
  Matrix r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& [a, b] : edges) r[at.at(a)][at.at(b)] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  std::set<std::pair<Iri, Iri>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j]) out.emplace(nodes[i], nodes[j]);
    }
  }
  return out;
}

}  // namespace

std::set<std::pair<Iri, Iri>> floyd_closure(const Ontology& o) {
  std::vector<std::pair<Iri, Iri>> edges;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::SubClassOf) edges.emplace_back(ax.first, ax.second);
    if (ax.kind == AxiomKind::EquivalentClasses) {
      edges.emplace_back(ax.first, ax.second);
      edges.emplace_back(ax.second, ax.first);
    }
  }
  return floyd(o.classes(), edges);
}

std::set<std::pair<Iri, Iri>> floyd_property_closure(const Ontology& o) {
  std::vector<std::pair<Iri, Iri>> edges;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::SubPropertyOf) edges.emplace_back(ax.first, ax.second);
  }
  return floyd(o.properties(), edges);
}

std::set<Iri> naive_unsatisfiable(const Ontology& o) {
  auto closure = floyd_closure(o);
  std::set<Iri> out;
  for (const auto& c : o.classes()) {
    for (const auto& ax : o.axioms_of(AxiomKind::DisjointClasses)) {
      if (closure.contains({c, ax.first}) && closure.contains({c, ax.second})) out.insert(c);
    }
  }
  return out;
}

std::set<std::vector<Iri>> kosaraju_cycles(const Ontology& o) {
  std::vector<Iri> nodes = o.classes();
  std::map<Iri, std::size_t> at;
  for (std::size_t i = 0; i < nodes.size(); ++i) at[nodes[i]] = i;
  std::vector<std::vector<std::size_t>> fwd(nodes.size()), rev(nodes.size());
  std::set<std::vector<Iri>> out;
  for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
    if (ax.first == ax.second) {
      out.insert({ax.first});
      continue;
    }
    fwd[at[ax.first]].push_back(at[ax.second]);
    rev[at[ax.second]].push_back(at[ax.first]);
  }

  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> finish;
  std::function<void(std::size_t)> dfs1 = [&](std::size_t v) {
    seen[v] = true;
    for (auto w : fwd[v]) {
      if (!seen[w]) dfs1(w);
    }
    finish.push_back(v);
  };
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (!seen[v]) dfs1(v);
  }

  std::vector<int> comp(nodes.size(), -1);
  std::function<void(std::size_t, int)> dfs2 = [&](std::size_t v, int c) {
    comp[v] = c;
    for (auto w : rev[v]) {
      if (comp[w] < 0) dfs2(w, c);
    }
  };
  int count = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] < 0) dfs2(*it, count++);
  }
  std::vector<std::vector<Iri>> groups(count);
  for (std::size_t v = 0; v < nodes.size(); ++v) groups[comp[v]].push_back(nodes[v]);
  for (auto& g : groups) {
    if (g.size() < 2) continue;
    std::sort(g.begin(), g.end());
    out.insert(g);
  }
  return out;
}

std::size_t wagner_fischer(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

std::set<Axiom> naive_redundant_subsumptions(const Ontology& o) {
  auto full = floyd_closure(o);
  std::set<Axiom> out;
  for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
    Ontology without = o;
    without.remove(ax);
    if (floyd_closure(without) == full) out.insert(ax);
  }
  return out;
}

std::optional<AnswerSet> materialized_answer(const ConjunctiveQuery& q, const MergedOntology& m,
                                             const std::vector<Ontology>& locals) {
  auto unsat = naive_unsatisfiable(m.global);
  for (const auto& a : q.atoms) {
    if (a.is_class && unsat.contains(a.predicate)) return std::nullopt;
  }

  // Global image by linear search through provenance.
  auto image = [&](const Iri& source, const Iri& local) {
    for (const auto& [global, refs] : m.provenance) {
      if (refs.contains({source, local})) return global;
    }
    return local;
  };

  auto classes = floyd_closure(m.global);
  auto props = floyd_property_closure(m.global);
  std::set<std::pair<Iri, Iri>> members;             // (individual, class)
  std::set<std::tuple<Iri, Iri, Iri>> facts;         // (subject, property, object)
  for (const auto& local : locals) {
    for (const auto& ax : local.axioms()) {
      if (ax.kind == AxiomKind::ClassAssertion) {
        Iri ind = image(local.id(), ax.first);
        Iri cls = image(local.id(), ax.second);
        for (const auto& [sub, sup] : classes) {
          if (sub == cls) members.emplace(ind, sup);
        }
      } else if (ax.kind == AxiomKind::PropertyAssertion) {
        Iri s = image(local.id(), ax.first);
        Iri p = image(local.id(), ax.second);
        Iri o = image(local.id(), ax.third);
        for (const auto& [sub, sup] : props) {
          if (sub == p) facts.emplace(s, sup, o);
        }
      }
    }
  }

  using Row = std::map<std::string, Iri>;
  std::vector<Row> rows{Row{}};
  auto bind = [](Row& row, const Term& t, const Iri& value) {
    if (!t.is_variable) return t.constant == value;
    auto it = row.find(t.variable);
    if (it == row.end()) {
      row[t.variable] = value;
      return true;
    }
    return it->second == value;
  };
  for (const auto& atom : q.atoms) {
    std::vector<Row> next;
    for (const auto& row : rows) {
      if (atom.is_class) {
        for (const auto& [ind, cls] : members) {
          if (cls != atom.predicate) continue;
          Row r = row;
          if (bind(r, atom.subject, ind)) next.push_back(std::move(r));
        }
      } else {
        for (const auto& [s, p, o] : facts) {
          if (p != atom.predicate) continue;
          Row r = row;
          if (bind(r, atom.subject, s) && bind(r, atom.object, o)) next.push_back(std::move(r));
        }
      }
    }
    rows = std::move(next);
  }

  AnswerSet out{q.id, {}};
  for (const auto& row : rows) {
    Tuple t;
    for (const auto& v : q.select) t.push_back(row.at(v));
    out.tuples.insert(std::move(t));
  }
  return out;
}

}  // namespace ontmed::testing

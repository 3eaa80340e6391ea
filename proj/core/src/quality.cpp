#include "ontmed/quality.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ontmed/reasoning.hpp"

namespace ontmed {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::CirculatoryError: return "CirculatoryError";
    case Category::PartitionError: return "PartitionError";
    case Category::SemanticInconsistency: return "SemanticInconsistency";
    case Category::IncompleteSpecification: return "IncompleteSpecification";
    case Category::PartitionOmission: return "PartitionOmission";
    case Category::RedundantSubsumption: return "RedundantSubsumption";
    case Category::DuplicateDefinition: return "DuplicateDefinition";
    case Category::RedundantInstantiation: return "RedundantInstantiation";
    case Category::LazyConcept: return "LazyConcept";
    case Category::ChainOfInheritance: return "ChainOfInheritance";
    case Category::LonelyDisjoint: return "LonelyDisjoint";
    case Category::PropertyClump: return "PropertyClump";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "Error";
    case Severity::Warning: return "Warning";
    case Severity::Info: return "Info";
  }
  return "?";
}

bool category_from_string(std::string_view name, Category& out) {
  for (Category c : kAllCategories) {
    if (to_string(c) == name) {
      out = c;
      return true;
    }
  }
  return false;
}

bool severity_from_string(std::string_view name, Severity& out) {
  for (Severity s : {Severity::Error, Severity::Warning, Severity::Info}) {
    if (to_string(s) == name) {
      out = s;
      return true;
    }
  }
  return false;
}

Severity severity_of(Category c) {
  switch (c) {
    case Category::CirculatoryError:
    case Category::PartitionError:
    case Category::SemanticInconsistency: return Severity::Error;
    case Category::IncompleteSpecification:
    case Category::PartitionOmission:
    case Category::RedundantSubsumption:
    case Category::DuplicateDefinition:
    case Category::RedundantInstantiation: return Severity::Warning;
    case Category::LazyConcept:
    case Category::ChainOfInheritance:
    case Category::LonelyDisjoint:
    case Category::PropertyClump: return Severity::Info;
  }
  return Severity::Info;
}

Finding Finding::make(Category c, std::vector<Iri> entities, std::string explanation) {
  return Finding{c, severity_of(c), std::move(entities), std::move(explanation)};
}

bool finding_less(const Finding& a, const Finding& b) {
  return std::tie(a.category, a.entities, a.explanation) < std::tie(b.category, b.entities, b.explanation);
}

std::size_t QualityReport::count(Category c) const {
  auto it = counts.find(c);
  return it == counts.end() ? 0 : it->second;
}

std::size_t QualityReport::count(Severity s) const {
  std::size_t n = 0;
  for (const auto& [c, k] : counts) {
    if (severity_of(c) == s) n += k;
  }
  return n;
}

QualityReport make_report(Iri target, std::vector<Finding> findings) {
  std::sort(findings.begin(), findings.end(), finding_less);
  findings.erase(std::unique(findings.begin(), findings.end()), findings.end());
  QualityReport r{std::move(target), std::move(findings), {}};
  for (const auto& f : r.findings) ++r.counts[f.category];
  return r;
}

namespace {

std::string join(const std::vector<Iri>& iris, std::string_view sep = ", ") {
  std::string out;
  for (const auto& iri : iris) {
    if (!out.empty()) out += sep;
    out += iri.str();
  }
  return out;
}

/// Direct asserted SubClassOf neighbours, self-loops excluded.
struct Taxonomy {
  std::map<Iri, std::set<Iri>> parents;
  std::map<Iri, std::set<Iri>> children;

  explicit Taxonomy(const Ontology& o) {
    for (const auto& c : o.classes()) {
      parents[c];
      children[c];
    }
    for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
      if (ax.first == ax.second) continue;
      parents[ax.first].insert(ax.second);
      children[ax.second].insert(ax.first);
    }
  }
};

/// Asserted plus inherited class memberships of each individual.
std::map<Iri, std::set<Iri>> memberships(const Ontology& o, const Hierarchy& h) {
  std::map<Iri, std::set<Iri>> out;
  for (const auto& ax : o.axioms_of(AxiomKind::ClassAssertion)) {
    auto up = h.ancestors(ax.second);
    out[ax.first].insert(up.begin(), up.end());
  }
  return out;
}

/// True when `target` is reachable from `from` over SubClassOf/equivalence
/// edges without using the SubClassOf axiom `skip`.
bool reachable_without(const std::map<Iri, std::vector<Iri>>& up, const Iri& from, const Iri& target,
                       const Axiom* skip) {
  if (from == target) return true;
  std::set<Iri> seen{from};
  std::vector<Iri> stack{from};
  bool skipped = false;
  while (!stack.empty()) {
    Iri cur = std::move(stack.back());
    stack.pop_back();
    auto it = up.find(cur);
    if (it == up.end()) continue;
    for (const auto& next : it->second) {
      // Only one copy is skipped; a parallel equivalence edge still counts.
      if (skip && !skipped && cur == skip->first && next == skip->second) {
        skipped = true;
        continue;
      }
      if (next == target) return true;
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return false;
}

std::map<Iri, std::vector<Iri>> upward_edges(const Ontology& o) {
  std::map<Iri, std::vector<Iri>> up;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::SubClassOf) {
      up[ax.first].push_back(ax.second);
    } else if (ax.kind == AxiomKind::EquivalentClasses) {
      up[ax.first].push_back(ax.second);
      up[ax.second].push_back(ax.first);
    }
  }
  return up;
}

std::vector<Axiom> redundant_assertions(const Ontology& o, const Hierarchy& h) {
  std::map<Iri, std::vector<Iri>> asserted;
  for (const auto& ax : o.axioms_of(AxiomKind::ClassAssertion)) asserted[ax.first].push_back(ax.second);
  std::vector<Axiom> out;
  for (const auto& [ind, classes] : asserted) {
    for (const auto& c : classes) {
      for (const auto& d : classes) {
        if (d != c && h.subsumed(d, c) && !h.subsumed(c, d)) {
          out.push_back(Axiom::class_assertion(ind, c));
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Inconsistency

std::vector<Finding> detect_circulatory(const Ontology& o) {
  // Tarjan's SCC over asserted SubClassOf edges only.
  std::vector<Iri> nodes = o.classes();
  std::map<Iri, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  std::vector<Finding> out;
  for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
    if (ax.first == ax.second) {
      out.push_back(Finding::make(Category::CirculatoryError, {ax.first},
                                  ax.first.str() + " is declared a subclass of itself"));
      continue;
    }
    adj[index.at(ax.first)].push_back(index.at(ax.second));
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(nodes.size(), kUnvisited);
  std::vector<std::size_t> low(nodes.size(), 0);
  std::vector<bool> on_stack(nodes.size(), false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  // Iterative DFS: (node, next edge position).
  for (std::size_t root = 0; root < nodes.size(); ++root) {
    if (order[root] != kUnvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] != order[done]) continue;
      std::vector<Iri> members;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        members.push_back(nodes[w]);
      } while (w != done);
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      std::string why = "subclass cycle through " + join(members);
      out.push_back(Finding::make(Category::CirculatoryError, std::move(members), std::move(why)));
    }
  }
  return out;
}

std::vector<Finding> detect_partition_errors(const Ontology& o) {
  Hierarchy h = Hierarchy::classes(o);
  DisjointnessIndex dj(o, h);
  std::vector<Finding> out;
  for (const auto& c : dj.unsatisfiable()) {
    out.push_back(Finding::make(Category::PartitionError, {c},
                                c.str() + " is a common subclass of disjoint classes"));
  }
  for (const auto& [ind, classes] : memberships(o, h)) {
    std::vector<Iri> list(classes.begin(), classes.end());
    bool reported = false;
    for (std::size_t i = 0; i < list.size() && !reported; ++i) {
      for (std::size_t j = i + 1; j < list.size() && !reported; ++j) {
        if (!dj.disjoint(list[i], list[j])) continue;
        out.push_back(Finding::make(Category::PartitionError, {ind},
                                    ind.str() + " is a member of disjoint classes " + list[i].str() +
                                        " and " + list[j].str()));
        reported = true;
      }
    }
  }
  return out;
}

std::vector<Finding> detect_semantic_inconsistency(const Ontology& o) {
  Hierarchy h = Hierarchy::classes(o);
  Hierarchy props = Hierarchy::properties(o);
  DisjointnessIndex dj(o, h);
  auto member = memberships(o, h);

  // Domains and ranges apply to sub-properties too.
  std::map<Iri, std::set<Iri>> domains;
  std::map<Iri, std::set<Iri>> ranges;
  for (const auto& ax : o.axioms()) {
    if (ax.kind != AxiomKind::Domain && ax.kind != AxiomKind::Range) continue;
    auto& target = ax.kind == AxiomKind::Domain ? domains : ranges;
    for (const auto& p : props.descendants(ax.first)) target[p].insert(ax.second);
  }

  std::vector<Finding> out;
  auto clash = [&](const Iri& ind, const std::set<Iri>& required) -> std::optional<std::pair<Iri, Iri>> {
    auto it = member.find(ind);
    if (it == member.end()) return std::nullopt;
    for (const auto& need : required) {
      for (const auto& have : it->second) {
        if (dj.disjoint(have, need)) return std::pair(have, need);
      }
    }
    return std::nullopt;
  };

  for (const auto& ax : o.axioms_of(AxiomKind::PropertyAssertion)) {
    const Iri& s = ax.first;
    const Iri& p = ax.second;
    const Iri& v = ax.third;
    if (auto d = domains.find(p); d != domains.end()) {
      if (auto hit = clash(s, d->second)) {
        out.push_back(Finding::make(Category::SemanticInconsistency, {s, p},
                                    s.str() + " is a member of " + hit->first.str() +
                                        ", disjoint with the domain " + hit->second.str() + " of " +
                                        p.str()));
      }
    }
    if (auto r = ranges.find(p); r != ranges.end()) {
      if (auto hit = clash(v, r->second)) {
        out.push_back(Finding::make(Category::SemanticInconsistency, {v, p},
                                    v.str() + " is a member of " + hit->first.str() +
                                        ", disjoint with the range " + hit->second.str() + " of " +
                                        p.str()));
      }
    }
  }
  for (const auto& ax : o.axioms_of(AxiomKind::ClassAssertion)) {
    if (!dj.unsatisfiable().contains(ax.second)) continue;
    out.push_back(Finding::make(Category::SemanticInconsistency, {ax.first, ax.second},
                                ax.first.str() + " is asserted into unsatisfiable class " +
                                    ax.second.str()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incompleteness

std::vector<Finding> detect_incompleteness(const Ontology& o) {
  std::set<Iri> mentioned;
  for (const auto& ax : o.axioms()) {
    for (const auto& arg : ax.arguments()) mentioned.insert(arg);
  }
  std::vector<Finding> out;
  for (const auto& c : o.classes()) {
    if (mentioned.contains(c) || !o.find(c)->labels.empty()) continue;
    out.push_back(Finding::make(Category::IncompleteSpecification, {c},
                                c.str() + " has no axioms and no label"));
  }

  Hierarchy h = Hierarchy::classes(o);
  DisjointnessIndex dj(o, h);
  Taxonomy tax(o);
  for (const auto& [parent, kids] : tax.children) {
    if (kids.size() < 2) continue;
    std::vector<Iri> list(kids.begin(), kids.end());
    bool any = false;
    for (std::size_t i = 0; i < list.size() && !any; ++i) {
      for (std::size_t j = i + 1; j < list.size() && !any; ++j) any = dj.disjoint(list[i], list[j]);
    }
    if (any) continue;
    out.push_back(Finding::make(Category::PartitionOmission, {parent},
                                parent.str() + " has subclasses " + join(list) +
                                    " with no disjointness between any of them"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Redundancy

std::vector<Finding> detect_redundancy(const Ontology& o) {
  std::vector<Finding> out;
  auto up = upward_edges(o);
  for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
    if (!reachable_without(up, ax.first, ax.second, &ax)) continue;
    out.push_back(Finding::make(Category::RedundantSubsumption, {ax.first, ax.second},
                                ax.first.str() + " subClassOf " + ax.second.str() +
                                    " is entailed by the remaining axioms"));
  }

  Hierarchy h = Hierarchy::classes(o);
  for (const auto& ax : redundant_assertions(o, h)) {
    out.push_back(Finding::make(Category::RedundantInstantiation, {ax.first, ax.second},
                                ax.first.str() + " is asserted into " + ax.second.str() +
                                    " and into one of its strict subclasses"));
  }

  // Classes whose axioms, with the class itself replaced by a placeholder,
  // coincide.
  std::map<std::set<Axiom>, std::vector<Iri>> by_shape;
  for (const auto& c : o.classes()) {
    std::set<Axiom> shape;
    for (const auto& ax : o.axioms()) {
      if (!ax.mentions(c)) continue;
      shape.insert(ax.rename([&](const Iri& x) { return x == c ? Iri() : x; }));
    }
    if (!shape.empty()) by_shape[std::move(shape)].push_back(c);
  }
  for (const auto& [_, group] : by_shape) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        out.push_back(Finding::make(Category::DuplicateDefinition, {group[i], group[j]},
                                    group[i].str() + " and " + group[j].str() +
                                        " have identical definitions"));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Design anomalies

std::vector<Finding> detect_design_anomalies(const Ontology& o, int chain_length, int clump_size) {
  if (chain_length < 2 || clump_size < 2) {
    throw std::invalid_argument("chain length and clump size must both be at least 2");
  }
  Taxonomy tax(o);
  std::vector<Finding> out;

  // Lazy concepts.
  std::set<Iri> instantiated;
  std::set<Iri> property_mentioned;
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::ClassAssertion) instantiated.insert(ax.second);
    if (ax.kind == AxiomKind::Domain || ax.kind == AxiomKind::Range) property_mentioned.insert(ax.second);
  }
  for (const auto& c : o.classes()) {
    if (!tax.children.at(c).empty() || instantiated.contains(c) || property_mentioned.contains(c) ||
        !o.find(c)->labels.empty()) {
      continue;
    }
    out.push_back(Finding::make(Category::LazyConcept, {c},
                                c.str() + " is a leaf with no instances, property use or label"));
  }

  // Chains of inheritance: maximal runs of bare interior classes.
  std::map<Iri, std::size_t> mentions;
  for (const auto& ax : o.axioms()) {
    for (const auto& arg : ax.arguments()) ++mentions[arg];
  }
  auto bare = [&](const Iri& c) {
    return tax.parents.at(c).size() == 1 && tax.children.at(c).size() == 1 && mentions[c] == 2 &&
           *tax.parents.at(c).begin() != *tax.children.at(c).begin();
  };
  std::set<Iri> visited;
  for (const auto& c : o.classes()) {
    if (!bare(c) || visited.contains(c)) continue;
    // Walk down to the first bare class of the run.
    Iri start = c;
    std::set<Iri> guard{start};
    bool cyclic = false;
    while (true) {
      const Iri& below = *tax.children.at(start).begin();
      if (!bare(below)) break;
      if (!guard.insert(below).second) {
        cyclic = true;
        break;
      }
      start = below;
    }
    if (cyclic) {
      visited.insert(guard.begin(), guard.end());
      continue;
    }
    std::vector<Iri> path{*tax.children.at(start).begin()};
    Iri cur = start;
    while (true) {
      path.push_back(cur);
      visited.insert(cur);
      const Iri& above = *tax.parents.at(cur).begin();
      if (!bare(above) || visited.contains(above)) {
        path.push_back(above);
        break;
      }
      cur = above;
    }
    int edges = static_cast<int>(path.size()) - 1;
    if (edges < chain_length) continue;
    std::string why = "inheritance chain of " + std::to_string(edges) + " links: " + join(path, " < ");
    out.push_back(Finding::make(Category::ChainOfInheritance, std::move(path), std::move(why)));
  }

  // Disjointness between classes without a common direct parent.
  for (const auto& ax : o.axioms_of(AxiomKind::DisjointClasses)) {
    const auto& pa = tax.parents.at(ax.first);
    const auto& pb = tax.parents.at(ax.second);
    bool shared = std::any_of(pa.begin(), pa.end(), [&](const Iri& p) { return pb.contains(p); });
    if (shared) continue;
    out.push_back(Finding::make(Category::LonelyDisjoint, {ax.first, ax.second},
                                ax.first.str() + " and " + ax.second.str() +
                                    " are disjoint but share no direct superclass"));
  }

  // Property clumps.
  std::map<Iri, std::set<Iri>> domain_sets;
  for (const auto& ax : o.axioms_of(AxiomKind::Domain)) domain_sets[ax.first].insert(ax.second);
  std::map<std::set<Iri>, std::vector<Iri>> clumps;
  for (const auto& [p, ds] : domain_sets) {
    if (ds.size() >= 2) clumps[ds].push_back(p);
  }
  for (const auto& [ds, props] : clumps) {
    if (static_cast<int>(props.size()) < clump_size) continue;
    std::vector<Iri> domains(ds.begin(), ds.end());
    out.push_back(Finding::make(Category::PropertyClump, props,
                                std::to_string(props.size()) + " properties share the domain set {" +
                                    join(domains) + "}"));
  }
  return out;
}

QualityReport lint(const Ontology& o, const LintThresholds& thresholds) {
  std::vector<Finding> all;
  auto append = [&](std::vector<Finding> part) {
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  append(detect_circulatory(o));
  append(detect_partition_errors(o));
  append(detect_semantic_inconsistency(o));
  append(detect_incompleteness(o));
  append(detect_redundancy(o));
  append(detect_design_anomalies(o, thresholds.chain_length, thresholds.clump_size));
  return make_report(o.id(), std::move(all));
}

// ---------------------------------------------------------------------------
// Repair

RepairRefused::RepairRefused(std::vector<Finding> cycles)
    : std::runtime_error("redundancy repair refused: subclass hierarchy contains cycles"),
      findings_(std::move(cycles)) {}

RedundancyRepair repair_redundancies(const Ontology& o) {
  auto cycles = detect_circulatory(o);
  if (!cycles.empty()) throw RepairRefused(std::move(cycles));

  RedundancyRepair result{o, {}};
  Hierarchy h = Hierarchy::classes(o);
  std::vector<Axiom> assertions = redundant_assertions(o, h);

  // One subsumption at a time against the current axiom set. On a DAG this
  // is the transitive reduction.
  for (const auto& ax : o.axioms_of(AxiomKind::SubClassOf)) {
    auto up = upward_edges(result.ontology);
    if (!reachable_without(up, ax.first, ax.second, &ax)) continue;
    result.ontology.remove(ax);
    result.removed.push_back(ax);
  }
  for (const auto& ax : assertions) {
    result.ontology.remove(ax);
    result.removed.push_back(ax);
  }
  std::sort(result.removed.begin(), result.removed.end());
  return result;
}

}  // namespace ontmed

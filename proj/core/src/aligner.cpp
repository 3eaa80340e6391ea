#include "ontmed/aligner.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ontmed/merger.hpp"
#include "ontmed/reasoning.hpp"

namespace ontmed {

std::string_view relation_token(Relation rel) {
  switch (rel) {
    case Relation::Equivalent: return "=";
    case Relation::Subsumes: return ">";
    case Relation::SubsumedBy: return "<";
  }
  return "?";
}

bool relation_from_token(std::string_view token, Relation& out) {
  if (token == "=") {
    out = Relation::Equivalent;
  } else if (token == ">") {
    out = Relation::Subsumes;
  } else if (token == "<") {
    out = Relation::SubsumedBy;
  } else {
    return false;
  }
  return true;
}

Relation mirror(Relation rel) {
  switch (rel) {
    case Relation::Subsumes: return Relation::SubsumedBy;
    case Relation::SubsumedBy: return Relation::Subsumes;
    case Relation::Equivalent: break;
  }
  return Relation::Equivalent;
}

std::string_view to_string(Principle p) {
  switch (p) {
    case Principle::Consistency: return "Consistency";
    case Principle::Locality: return "Locality";
    case Principle::Conservativity: return "Conservativity";
  }
  return "?";
}

bool key_less(const Correspondence& a, const Correspondence& b) {
  return std::tie(a.e1, a.e2, a.rel) < std::tie(b.e1, b.e2, b.rel);
}

void Alignment::normalize() {
  std::stable_sort(correspondences.begin(), correspondences.end(), key_less);
  auto same_key = [](const Correspondence& a, const Correspondence& b) {
    return a.e1 == b.e1 && a.e2 == b.e2 && a.rel == b.rel;
  };
  correspondences.erase(std::unique(correspondences.begin(), correspondences.end(), same_key),
                        correspondences.end());
}

// ---------------------------------------------------------------------------
// Lexical matching

namespace {

std::vector<std::string> name_tokens(std::string_view name) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(name[i]);
    if (c == '_' || c == '-' || std::isspace(c)) {
      flush();
      continue;
    }
    if (i > 0 && std::isupper(c) && std::islower(static_cast<unsigned char>(name[i - 1]))) flush();
    cur.push_back(static_cast<char>(std::tolower(c)));
  }
  flush();
  return tokens;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, subst});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::string> name_forms(const Entity& e) {
  std::vector<std::string> forms;
  std::string local = normalize_name(e.iri.local());
  if (!local.empty()) forms.push_back(std::move(local));
  for (const auto& label : e.labels) {
    std::string form = normalize_name(label);
    if (!form.empty()) forms.push_back(std::move(form));
  }
  return forms;
}

}  // namespace

std::string normalize_name(std::string_view name) {
  std::string joined;
  for (const auto& token : name_tokens(name)) joined += token;
  return joined;
}

namespace {

double normalized_similarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

}  // namespace

double name_similarity(std::string_view a, std::string_view b) {
  return normalized_similarity(normalize_name(a), normalize_name(b));
}

double entity_similarity(const Entity& a, const Entity& b) {
  double best = 0.0;
  for (const auto& fa : name_forms(a)) {
    for (const auto& fb : name_forms(b)) best = std::max(best, normalized_similarity(fa, fb));
  }
  return best;
}

Alignment compute_alignment(const Ontology& o1, const Ontology& o2, double theta) {
  if (o1.id() == o2.id()) {
    throw std::invalid_argument("cannot align ontology " + o1.id().str() + " with itself");
  }
  std::vector<Correspondence> candidates;
  for (const auto& [iri1, e1] : o1.entities()) {
    for (const auto& [iri2, e2] : o2.entities()) {
      if (e1.kind != e2.kind) continue;
      double sim = entity_similarity(e1, e2);
      if (sim >= theta) candidates.push_back({iri1, iri2, Relation::Equivalent, sim});
    }
  }
  // Highest confidence first; ties by the unordered IRI pair so that swapping
  // the inputs selects the mirrored set.
  auto tie_key = [](const Correspondence& c) {
    return c.e1 < c.e2 ? std::pair(c.e1, c.e2) : std::pair(c.e2, c.e1);
  };
  std::sort(candidates.begin(), candidates.end(), [&](const Correspondence& a, const Correspondence& b) {
    if (a.conf != b.conf) return a.conf > b.conf;
    return tie_key(a) < tie_key(b);
  });

  Alignment out{o1.id(), o2.id(), {}};
  std::set<Iri> used1;
  std::set<Iri> used2;
  for (auto& c : candidates) {
    if (used1.contains(c.e1) || used2.contains(c.e2)) continue;
    used1.insert(c.e1);
    used2.insert(c.e2);
    out.correspondences.push_back(std::move(c));
  }
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Principle checks

namespace {

void add_unique(std::vector<Correspondence>& list, const Correspondence& c) {
  for (const auto& existing : list) {
    if (existing.e1 == c.e1 && existing.e2 == c.e2 && existing.rel == c.rel) return;
  }
  list.push_back(c);
}

/// Correspondences with at least one endpoint mapped into `globals`.
std::vector<Correspondence> touching(const MergedOntology& m, const std::vector<Alignment>& alignments,
                                     const std::set<Iri>& globals) {
  std::vector<Correspondence> out;
  for (const auto& a : alignments) {
    for (const auto& c : a.correspondences) {
      const Iri* g1 = m.image(a.onto1, c.e1);
      const Iri* g2 = m.image(a.onto2, c.e2);
      if ((g1 && globals.contains(*g1)) || (g2 && globals.contains(*g2))) add_unique(out, c);
    }
  }
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<PrincipleViolation> consistency_on(const MergedOntology& m, const std::vector<Ontology>& locals,
                                               const std::vector<Alignment>& alignments) {
  Hierarchy h = Hierarchy::classes(m.global);
  DisjointnessIndex dj(m.global, h);

  // Unsatisfiability already present in a source is not the alignment's doing.
  std::set<LocalRef> unsat_locally;
  for (const auto& o : locals) {
    for (const auto& c : unsatisfiable_classes(o)) unsat_locally.emplace(o.id(), c);
  }

  std::vector<PrincipleViolation> out;
  for (const auto& c : dj.unsatisfiable()) {
    const auto& members = m.provenance.at(c);
    if (std::any_of(members.begin(), members.end(), [&](const LocalRef& r) { return unsat_locally.contains(r); })) {
      continue;
    }
    std::set<Iri> involved{c};
    std::ostringstream why;
    why << c.str() << " is unsatisfiable:";
    for (const auto& ax : m.global.axioms_of(AxiomKind::DisjointClasses)) {
      if (!h.subsumed(c, ax.first) || !h.subsumed(c, ax.second)) continue;
      why << " subsumed by disjoint " << ax.first.str() << " and " << ax.second.str() << ";";
      for (const auto& x : h.ancestors(c)) {
        if (h.subsumed(x, ax.first) || h.subsumed(x, ax.second)) involved.insert(x);
      }
    }
    PrincipleViolation v;
    v.principle = Principle::Consistency;
    v.witnesses = {c};
    v.implicated = touching(m, alignments, involved);
    v.explanation = why.str();
    v.explanation.pop_back();
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PrincipleViolation> conservativity_on(const MergedOntology& m,
                                                  const std::vector<Ontology>& locals,
                                                  const std::vector<Alignment>& alignments) {
  Hierarchy global = Hierarchy::classes(m.global);
  std::vector<const Ontology*> ordered;
  for (const auto& o : locals) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->id() < b->id(); });

  std::vector<PrincipleViolation> out;
  for (const Ontology* o : ordered) {
    if (o->classes().empty()) continue;
    Hierarchy own = Hierarchy::classes(*o);
    for (const auto& [x, y] : project_closure(m, o->id())) {
      if (own.subsumed(x, y)) continue;
      const Iri& gx = *m.image(o->id(), x);
      const Iri& gy = *m.image(o->id(), y);
      std::set<Iri> path;
      for (const auto& z : global.ancestors(gx)) {
        if (global.subsumed(z, gy)) path.insert(z);
      }
      PrincipleViolation v;
      v.principle = Principle::Conservativity;
      v.witnesses = {x, y};
      v.implicated = touching(m, alignments, path);
      v.explanation = x.str() + " is subsumed by " + y.str() + " after merging, but not in " +
                      o->id().str();
      out.push_back(std::move(v));
    }
  }
  return out;
}

const Ontology* find_by_id(const std::vector<Ontology>& locals, const Iri& id) {
  for (const auto& o : locals) {
    if (o.id() == id) return &o;
  }
  return nullptr;
}

}  // namespace

std::vector<PrincipleViolation> check_consistency_principle(const std::vector<Ontology>& locals,
                                                            const std::vector<Alignment>& alignments) {
  return consistency_on(merge(locals, alignments), locals, alignments);
}

std::vector<PrincipleViolation> check_locality_principle(const Ontology& o1, const Ontology& o2,
                                                         const Alignment& a, double tau) {
  auto neighborhood = [](const Ontology& o, const Iri& c) {
    std::set<Iri> out;
    for (const auto& ax : o.axioms()) {
      if (ax.kind != AxiomKind::SubClassOf || ax.first == ax.second) continue;
      if (ax.first == c) out.insert(ax.second);
      if (ax.second == c) out.insert(ax.first);
    }
    return out;
  };
  std::map<Iri, std::set<Iri>> counterpart;
  for (const auto& c : a.correspondences) counterpart[c.e1].insert(c.e2);

  std::vector<PrincipleViolation> out;
  for (const auto& c : a.correspondences) {
    if (o1.kind_of(c.e1) != EntityKind::Class || o2.kind_of(c.e2) != EntityKind::Class) continue;
    std::set<Iri> n1 = neighborhood(o1, c.e1);
    std::set<Iri> n2 = neighborhood(o2, c.e2);
    if (n1.empty() || n2.empty()) continue;
    std::set<Iri> mapped;
    for (const auto& x : n1) {
      auto it = counterpart.find(x);
      if (it != counterpart.end()) mapped.insert(it->second.begin(), it->second.end());
    }
    std::size_t common = 0;
    for (const auto& y : mapped) common += n2.contains(y) ? 1 : 0;
    std::size_t all = mapped.size() + n2.size() - common;
    double score = all == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(all);
    if (score >= tau) continue;
    PrincipleViolation v;
    v.principle = Principle::Locality;
    v.witnesses = {c.e1, c.e2};
    v.implicated = {c};
    std::ostringstream why;
    why << "neighborhood overlap " << score << " below " << tau << " for " << c.e1.str() << " / "
        << c.e2.str();
    v.explanation = why.str();
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PrincipleViolation> check_conservativity_principle(
    const std::vector<Ontology>& locals, const std::vector<Alignment>& alignments) {
  return conservativity_on(merge(locals, alignments), locals, alignments);
}

std::vector<PrincipleViolation> check_all_principles(const std::vector<Ontology>& locals,
                                                     const std::vector<Alignment>& alignments,
                                                     double tau) {
  MergedOntology m = merge(locals, alignments);
  std::vector<PrincipleViolation> out = consistency_on(m, locals, alignments);
  for (const auto& a : alignments) {
    const Ontology* o1 = find_by_id(locals, a.onto1);
    const Ontology* o2 = find_by_id(locals, a.onto2);
    if (!o1 || !o2) continue;
    auto local = check_locality_principle(*o1, *o2, a, tau);
    out.insert(out.end(), local.begin(), local.end());
  }
  auto cons = conservativity_on(m, locals, alignments);
  out.insert(out.end(), cons.begin(), cons.end());
  return out;
}

RepairResult repair_alignment(const std::vector<Ontology>& locals, std::vector<Alignment> alignments,
                              double tau) {
  RepairResult result;
  for (;;) {
    std::vector<Correspondence> candidates;
    for (const auto& v : check_all_principles(locals, alignments, tau)) {
      for (const auto& c : v.implicated) add_unique(candidates, c);
    }
    if (candidates.empty()) break;
    auto worst = std::min_element(candidates.begin(), candidates.end(),
                                  [](const Correspondence& a, const Correspondence& b) {
                                    if (a.conf != b.conf) return a.conf < b.conf;
                                    return key_less(a, b);
                                  });
    Correspondence victim = *worst;
    for (auto& a : alignments) {
      std::erase_if(a.correspondences, [&](const Correspondence& c) {
        return c.e1 == victim.e1 && c.e2 == victim.e2 && c.rel == victim.rel;
      });
    }
    result.removed.push_back(std::move(victim));
  }
  result.alignments = std::move(alignments);
  return result;
}

}  // namespace ontmed

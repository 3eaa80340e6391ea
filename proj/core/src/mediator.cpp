#include "ontmed/mediator.hpp"

#include <algorithm>
#include <functional>

namespace ontmed {

// ---------------------------------------------------------------------------
// SourceStore

SourceStore SourceStore::from_ontology(const Ontology& local) {
  SourceStore store(local.id());
  for (const auto& ax : local.axioms()) {
    if (ax.kind == AxiomKind::ClassAssertion) {
      store.add_membership(ax.first, ax.second);
    } else if (ax.kind == AxiomKind::PropertyAssertion) {
      store.add_fact(ax.first, ax.second, ax.third);
    }
  }
  return store;
}

void SourceStore::add_membership(const Iri& individual, const Iri& cls) {
  if (memberships_.emplace(individual, cls).second) by_class_[cls].insert(individual);
}

void SourceStore::add_fact(const Iri& subject, const Iri& property, const Iri& object) {
  if (facts_.emplace(subject, property, object).second) by_property_[property].emplace(subject, object);
}

const std::set<Iri>& SourceStore::members_of(const Iri& cls) const {
  static const std::set<Iri> kEmpty;
  auto it = by_class_.find(cls);
  return it == by_class_.end() ? kEmpty : it->second;
}

const std::set<std::pair<Iri, Iri>>& SourceStore::pairs_of(const Iri& property) const {
  static const std::set<std::pair<Iri, Iri>> kEmpty;
  auto it = by_property_.find(property);
  return it == by_property_.end() ? kEmpty : it->second;
}

// ---------------------------------------------------------------------------
// ConjunctiveQuery

std::vector<std::string> ConjunctiveQuery::variables() const {
  std::vector<std::string> out;
  auto note = [&](const Term& t) {
    if (t.is_variable && std::find(out.begin(), out.end(), t.variable) == out.end()) out.push_back(t.variable);
  };
  for (const auto& a : atoms) {
    note(a.subject);
    if (!a.is_class) note(a.object);
  }
  return out;
}

std::vector<Iri> ConjunctiveQuery::constants() const {
  std::set<Iri> seen;
  for (const auto& a : atoms) {
    seen.insert(a.predicate);
    if (!a.subject.is_variable) seen.insert(a.subject.constant);
    if (!a.is_class && !a.object.is_variable) seen.insert(a.object.constant);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

void require(const Ontology& global, const Iri& iri, EntityKind kind) {
  auto actual = global.kind_of(iri);
  if (!actual) throw QueryError("vocabulary not in global schema: " + iri.str());
  if (*actual != kind) {
    throw QueryError("vocabulary not in global schema: " + iri.str() + " is " +
                     std::string(to_string(*actual)) + ", used as " + std::string(to_string(kind)));
  }
}

void check_terms(const ConjunctiveQuery& q, const Ontology& global) {
  if (q.atoms.empty()) throw QueryError("query " + q.id + " has an empty body");
  for (const auto& a : q.atoms) {
    require(global, a.predicate, a.is_class ? EntityKind::Class : EntityKind::ObjectProperty);
    if (!a.subject.is_variable) require(global, a.subject.constant, EntityKind::Individual);
    if (!a.is_class && !a.object.is_variable) require(global, a.object.constant, EntityKind::Individual);
  }
}

std::set<ConjunctiveQuery> expand_with(const ConjunctiveQuery& q, const Hierarchy& classes,
                                       const Hierarchy& properties) {
  std::vector<std::vector<Iri>> options;
  options.reserve(q.atoms.size());
  for (const auto& a : q.atoms) {
    options.push_back(a.is_class ? classes.descendants(a.predicate) : properties.descendants(a.predicate));
  }
  std::set<ConjunctiveQuery> out;
  ConjunctiveQuery variant = q;
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == q.atoms.size()) {
      out.insert(variant);
      return;
    }
    for (const auto& choice : options[i]) {
      variant.atoms[i].predicate = choice;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

}  // namespace

std::set<ConjunctiveQuery> expand_query(const ConjunctiveQuery& q, const MergedOntology& m) {
  check_terms(q, m.global);
  return expand_with(q, Hierarchy::classes(m.global), Hierarchy::properties(m.global));
}

std::vector<ConjunctiveQuery> rewrite_for_source(const ConjunctiveQuery& q, const MergedOntology& m,
                                                 const Iri& source) {
  std::vector<Iri> constants = q.constants();
  std::vector<std::vector<Iri>> options;
  options.reserve(constants.size());
  for (const auto& c : constants) {
    auto pre = m.preimages(c, source);
    if (pre.empty()) return {};
    options.push_back(std::move(pre));
  }

  std::vector<ConjunctiveQuery> out;
  std::map<Iri, Iri> chosen;
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == constants.size()) {
      ConjunctiveQuery local = q;
      for (auto& a : local.atoms) {
        a.predicate = chosen.at(a.predicate);
        if (!a.subject.is_variable) a.subject.constant = chosen.at(a.subject.constant);
        if (!a.is_class && !a.object.is_variable) a.object.constant = chosen.at(a.object.constant);
      }
      out.push_back(std::move(local));
      return;
    }
    for (const auto& pick : options[i]) {
      chosen[constants[i]] = pick;
      fill(i + 1);
    }
  };
  fill(0);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

using Bindings = std::map<std::string, Iri>;

/// Binds `t` to `value` or checks it against an existing binding/constant.
/// Returns false on conflict; `bound_here` reports a fresh binding to undo.
bool unify(const Term& t, const Iri& value, Bindings& b, bool& bound_here) {
  bound_here = false;
  if (!t.is_variable) return t.constant == value;
  auto it = b.find(t.variable);
  if (it != b.end()) return it->second == value;
  b.emplace(t.variable, value);
  bound_here = true;
  return true;
}

std::size_t candidates(const Atom& a, const SourceStore& s) {
  return a.is_class ? s.members_of(a.predicate).size() : s.pairs_of(a.predicate).size();
}

}  // namespace

std::set<Tuple> evaluate_local(const ConjunctiveQuery& q, const SourceStore& store) {
  std::vector<const Atom*> order;
  order.reserve(q.atoms.size());
  for (const auto& a : q.atoms) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(), [&](const Atom* x, const Atom* y) {
    return candidates(*x, store) < candidates(*y, store);
  });

  std::set<Tuple> out;
  Bindings bindings;
  std::function<void(std::size_t)> solve = [&](std::size_t i) {
    if (i == order.size()) {
      Tuple row;
      row.reserve(q.select.size());
      for (const auto& v : q.select) row.push_back(bindings.at(v));
      out.insert(std::move(row));
      return;
    }
    const Atom& a = *order[i];
    if (a.is_class) {
      const auto& members = store.members_of(a.predicate);
      const Iri* fixed = nullptr;
      if (!a.subject.is_variable) {
        fixed = &a.subject.constant;
      } else if (auto it = bindings.find(a.subject.variable); it != bindings.end()) {
        fixed = &it->second;
      }
      if (fixed) {
        if (members.contains(*fixed)) solve(i + 1);
        return;
      }
      for (const auto& ind : members) {
        bindings[a.subject.variable] = ind;
        solve(i + 1);
      }
      bindings.erase(a.subject.variable);
      return;
    }
    const auto& pairs = store.pairs_of(a.predicate);
    // Pairs are ordered by subject, so a known subject narrows the scan to its run.
    const Iri* subject = nullptr;
    if (!a.subject.is_variable) {
      subject = &a.subject.constant;
    } else if (auto it = bindings.find(a.subject.variable); it != bindings.end()) {
      subject = &it->second;
    }
    auto first = subject ? pairs.lower_bound({*subject, Iri()}) : pairs.begin();
    for (auto it = first; it != pairs.end(); ++it) {
      const auto& [s, o] = *it;
      if (subject && s != *subject) break;
      bool bound_s = false;
      bool bound_o = false;
      if (unify(a.subject, s, bindings, bound_s) && unify(a.object, o, bindings, bound_o)) solve(i + 1);
      if (bound_s) bindings.erase(a.subject.variable);
      if (bound_o) bindings.erase(a.object.variable);
    }
  };
  solve(0);
  return out;
}

// ---------------------------------------------------------------------------
// Mediator

Mediator::Mediator(const MergedOntology& merged, std::vector<SourceStore> stores)
    : merged_(merged),
      stores_(std::move(stores)),
      classes_(Hierarchy::classes(merged_.global)),
      properties_(Hierarchy::properties(merged_.global)),
      unsatisfiable_(DisjointnessIndex(merged_.global, classes_).unsatisfiable()) {
  std::sort(stores_.begin(), stores_.end(),
            [](const SourceStore& a, const SourceStore& b) { return a.source() < b.source(); });
}

Iri Mediator::to_global(const Iri& source, const Iri& local) const {
  const Iri* g = merged_.image(source, local);
  return g ? *g : local;
}

void Mediator::check_vocabulary(const ConjunctiveQuery& q) const {
  check_terms(q, merged_.global);
  for (const auto& a : q.atoms) {
    if (a.is_class && unsatisfiable_.contains(a.predicate)) {
      throw QueryError("unanswerable: query " + q.id + " mentions unsatisfiable class " + a.predicate.str());
    }
  }
}

std::set<ConjunctiveQuery> Mediator::expand(const ConjunctiveQuery& q) const {
  return expand_with(q, classes_, properties_);
}

AnswerSet Mediator::answer(const ConjunctiveQuery& q) const {
  check_vocabulary(q);

  // Global facts for each predicate used by some variant, fetched from every
  // source through single-atom rewritings.
  SourceStore pooled(Iri(kGlobalNamespace, "mediator"));
  std::set<std::pair<bool, Iri>> fetched;
  auto fetch = [&](const Atom& atom) {
    if (!fetched.emplace(atom.is_class, atom.predicate).second) return;
    ConjunctiveQuery probe;
    probe.id = q.id;
    if (atom.is_class) {
      probe.select = {"s"};
      probe.atoms = {Atom::class_atom(Term::var("s"), atom.predicate)};
    } else {
      probe.select = {"s", "o"};
      probe.atoms = {Atom::property_atom(Term::var("s"), atom.predicate, Term::var("o"))};
    }
    for (const auto& store : stores_) {
      for (const auto& local : rewrite_for_source(probe, merged_, store.source())) {
        for (const auto& row : evaluate_local(local, store)) {
          Iri s = to_global(store.source(), row[0]);
          if (atom.is_class) {
            pooled.add_membership(s, atom.predicate);
          } else {
            pooled.add_fact(s, atom.predicate, to_global(store.source(), row[1]));
          }
        }
      }
    }
  };

  AnswerSet out{q.id, {}};
  for (const auto& variant : expand(q)) {
    for (const auto& atom : variant.atoms) fetch(atom);
    auto rows = evaluate_local(variant, pooled);
    out.tuples.insert(rows.begin(), rows.end());
  }
  return out;
}

AnswerSet answer_query(const ConjunctiveQuery& q, const MergedOntology& m,
                       const std::vector<SourceStore>& stores) {
  return Mediator(m, stores).answer(q);
}

}  // namespace ontmed

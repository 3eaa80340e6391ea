#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ontmed/merger.hpp"
#include "ontmed/ontology.hpp"
#include "ontmed/reasoning.hpp"

namespace ontmed {

/// Asserted facts of one source, in local vocabulary.
class SourceStore {
 public:
  SourceStore() = default;
  explicit SourceStore(Iri source) : source_(std::move(source)) {}

  /// Collects the ClassAssertion and PropertyAssertion axioms of `local`.
  static SourceStore from_ontology(const Ontology& local);

  const Iri& source() const { return source_; }

  void add_membership(const Iri& individual, const Iri& cls);
  void add_fact(const Iri& subject, const Iri& property, const Iri& object);

  const std::set<std::pair<Iri, Iri>>& memberships() const { return memberships_; }
  const std::set<std::tuple<Iri, Iri, Iri>>& facts() const { return facts_; }

  /// Individuals asserted into `cls`.
  const std::set<Iri>& members_of(const Iri& cls) const;
  /// (subject, object) pairs of `property`.
  const std::set<std::pair<Iri, Iri>>& pairs_of(const Iri& property) const;

  std::size_t size() const { return memberships_.size() + facts_.size(); }

 private:
  Iri source_;
  std::set<std::pair<Iri, Iri>> memberships_;
  std::set<std::tuple<Iri, Iri, Iri>> facts_;
  std::map<Iri, std::set<Iri>> by_class_;
  std::map<Iri, std::set<std::pair<Iri, Iri>>> by_property_;
};

/// A variable (name without `?`) or a constant IRI.
struct Term {
  bool is_variable = true;
  std::string variable;
  Iri constant;

  static Term var(std::string name) { return Term{true, std::move(name), {}}; }
  static Term iri(Iri value) { return Term{false, {}, std::move(value)}; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// ClassAtom(subject, predicate) when is_class, else
/// PropertyAtom(subject, predicate, object).
struct Atom {
  bool is_class = true;
  Term subject;
  Iri predicate;
  Term object;

  static Atom class_atom(Term t, Iri cls) { return Atom{true, std::move(t), std::move(cls), {}}; }
  static Atom property_atom(Term s, Iri prop, Term o) {
    return Atom{false, std::move(s), std::move(prop), std::move(o)};
  }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct ConjunctiveQuery {
  std::string id;
  std::vector<std::string> select;
  std::vector<Atom> atoms;

  /// Variables in first-occurrence order.
  std::vector<std::string> variables() const;
  std::vector<Iri> constants() const;

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
  friend auto operator<=>(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

using Tuple = std::vector<Iri>;

struct AnswerSet {
  std::string query_id;
  std::set<Tuple> tuples;

  friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

/// Vocabulary errors and unanswerable queries.
class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every global query variant obtained by replacing class and property atoms
/// with their subsumees. Throws QueryError on vocabulary outside the global schema.
std::set<ConjunctiveQuery> expand_query(const ConjunctiveQuery& q, const MergedOntology& m);

/// Local rewritings of a global variant for one source, one per combination
/// of preimages; empty when some constant has no preimage there.
std::vector<ConjunctiveQuery> rewrite_for_source(const ConjunctiveQuery& q,
                                                 const MergedOntology& m, const Iri& source);

/// Set-semantics evaluation against asserted facts, projected onto q.select.
std::set<Tuple> evaluate_local(const ConjunctiveQuery& q, const SourceStore& store);

/// Answers global queries over a fixed federation.
///
/// Each expanded variant is unfolded atom by atom: the atom is rewritten for
/// every source, evaluated there, and its bindings translated back to global
/// IRIs. The translated bindings are then joined at the mediator, so facts
/// about an individual aligned across sources combine. When no individual is
/// shared between sources this equals the union of whole-query per-source
/// evaluation.
class Mediator {
 public:
  Mediator(const MergedOntology& merged, std::vector<SourceStore> stores);

  /// Throws QueryError when vocabulary is unknown or the query mentions an
  /// unsatisfiable class.
  AnswerSet answer(const ConjunctiveQuery& q) const;

  const MergedOntology& merged() const { return merged_; }

 private:
  Iri to_global(const Iri& source, const Iri& local) const;
  void check_vocabulary(const ConjunctiveQuery& q) const;
  std::set<ConjunctiveQuery> expand(const ConjunctiveQuery& q) const;

  MergedOntology merged_;
  std::vector<SourceStore> stores_;
  Hierarchy classes_;
  Hierarchy properties_;
  std::set<Iri> unsatisfiable_;
};

AnswerSet answer_query(const ConjunctiveQuery& q, const MergedOntology& m,
                       const std::vector<SourceStore>& stores);

}  // namespace ontmed

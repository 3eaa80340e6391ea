#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontmed/iri.hpp"

namespace ontmed {

enum class EntityKind { Class, ObjectProperty, Individual };

std::string_view to_string(EntityKind kind);

struct Entity {
  EntityKind kind = EntityKind::Class;
  Iri iri;
  std::set<std::string> labels;

  friend bool operator==(const Entity&, const Entity&) = default;
};

enum class AxiomKind {
  SubClassOf,
  EquivalentClasses,
  DisjointClasses,
  SubPropertyOf,
  Domain,
  Range,
  ClassAssertion,
  PropertyAssertion,
};

std::string_view to_string(AxiomKind kind);

/// One TBox or ABox axiom over at most three IRIs.
///
/// Argument roles by kind:
///   SubClassOf(first ⊑ second), EquivalentClasses(first, second),
///   DisjointClasses(first, second), SubPropertyOf(first ⊑ second),
///   Domain(property=first, class=second), Range(property=first, class=second),
///   ClassAssertion(individual=first, class=second),
///   PropertyAssertion(subject=first, property=second, object=third).
/// Use the factory functions; they canonicalize the symmetric forms.
struct Axiom {
  AxiomKind kind = AxiomKind::SubClassOf;
  Iri first;
  Iri second;
  Iri third;

  static Axiom sub_class(Iri sub, Iri sup);
  static Axiom equivalent(Iri a, Iri b);
  static Axiom disjoint(Iri a, Iri b);
  static Axiom sub_property(Iri sub, Iri sup);
  static Axiom domain(Iri property, Iri cls);
  static Axiom range(Iri property, Iri cls);
  static Axiom class_assertion(Iri individual, Iri cls);
  static Axiom property_assertion(Iri subject, Iri property, Iri object);

  /// Same axiom kind with every argument passed through `map`, re-canonicalized.
  template <typename F>
  Axiom rename(F&& map) const {
    Axiom out = *this;
    out.first = map(first);
    out.second = map(second);
    if (kind == AxiomKind::PropertyAssertion) out.third = map(third);
    out.canonicalize();
    return out;
  }

  /// IRIs referenced by this axiom, in argument order.
  std::vector<Iri> arguments() const;
  bool mentions(const Iri& iri) const;

  void canonicalize();

  friend bool operator==(const Axiom&, const Axiom&) = default;
  friend auto operator<=>(const Axiom&, const Axiom&) = default;
};

/// Expected entity kind for each argument position of an axiom kind.
std::vector<EntityKind> argument_kinds(AxiomKind kind);

class OntologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declarations plus axioms of one source, or of a merged global schema.
///
/// Mutators keep the invariants: every axiom argument is declared with the
/// matching kind, an IRI has exactly one kind, and no axiom is stored twice.
/// Iteration over entities and axioms follows canonical IRI order.
class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(Iri id) : id_(std::move(id)) {}

  const Iri& id() const { return id_; }
  void set_id(Iri id) { id_ = std::move(id); }

  /// Declares an entity. Re-declaring with the same kind merges labels;
  /// a different kind throws OntologyError.
  const Entity& declare(EntityKind kind, const Iri& iri, std::set<std::string> labels = {});
  void add_label(const Iri& iri, std::string label);

  /// Throws OntologyError when an argument is undeclared or of the wrong kind.
  /// Returns false if the axiom was already present.
  bool add(Axiom axiom);
  bool remove(const Axiom& axiom);

  bool contains(const Iri& iri) const { return entities_.contains(iri); }
  bool contains(const Axiom& axiom) const { return axioms_.contains(axiom); }
  std::optional<EntityKind> kind_of(const Iri& iri) const;
  const Entity* find(const Iri& iri) const;

  const std::map<Iri, Entity>& entities() const { return entities_; }
  const std::set<Axiom>& axioms() const { return axioms_; }

  std::vector<Iri> entities_of(EntityKind kind) const;
  std::vector<Iri> classes() const { return entities_of(EntityKind::Class); }
  std::vector<Iri> properties() const { return entities_of(EntityKind::ObjectProperty); }
  std::vector<Iri> individuals() const { return entities_of(EntityKind::Individual); }

  std::vector<Axiom> axioms_of(AxiomKind kind) const;

  friend bool operator==(const Ontology&, const Ontology&) = default;

 private:
  Iri id_;
  std::map<Iri, Entity> entities_;
  std::set<Axiom> axioms_;
};

}  // namespace ontmed

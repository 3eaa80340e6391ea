#pragma once

#include <initializer_list>
#include <string>

#include "ontmed/ontology.hpp"

namespace ontmed::testing {

/// Terse ontology construction for tests: entities are named by local name
/// within one namespace.
class OntoBuilder {
 public:
  explicit OntoBuilder(std::string ns) : ns_(std::move(ns)), o_(Iri(ns_, "ontology")) {}

  Iri operator()(const std::string& local) const { return Iri(ns_, local); }

  OntoBuilder& classes(std::initializer_list<const char*> names) {
    for (auto n : names) o_.declare(EntityKind::Class, (*this)(n));
    return *this;
  }
  OntoBuilder& properties(std::initializer_list<const char*> names) {
    for (auto n : names) o_.declare(EntityKind::ObjectProperty, (*this)(n));
    return *this;
  }
  OntoBuilder& individuals(std::initializer_list<const char*> names) {
    for (auto n : names) o_.declare(EntityKind::Individual, (*this)(n));
    return *this;
  }
  OntoBuilder& label(const char* entity, std::string text) {
    o_.add_label((*this)(entity), std::move(text));
    return *this;
  }
  OntoBuilder& sub(const char* a, const char* b) { return add(Axiom::sub_class((*this)(a), (*this)(b))); }
  OntoBuilder& equiv(const char* a, const char* b) { return add(Axiom::equivalent((*this)(a), (*this)(b))); }
  OntoBuilder& disjoint(const char* a, const char* b) { return add(Axiom::disjoint((*this)(a), (*this)(b))); }
  OntoBuilder& subprop(const char* a, const char* b) { return add(Axiom::sub_property((*this)(a), (*this)(b))); }
  OntoBuilder& domain(const char* p, const char* c) { return add(Axiom::domain((*this)(p), (*this)(c))); }
  OntoBuilder& range(const char* p, const char* c) { return add(Axiom::range((*this)(p), (*this)(c))); }
  OntoBuilder& member(const char* i, const char* c) { return add(Axiom::class_assertion((*this)(i), (*this)(c))); }
  OntoBuilder& fact(const char* s, const char* p, const char* o) {
    return add(Axiom::property_assertion((*this)(s), (*this)(p), (*this)(o)));
  }

  OntoBuilder& add(Axiom ax) {
    o_.add(std::move(ax));
    return *this;
  }

  const Ontology& get() const { return o_; }
  Ontology build() const { return o_; }
  operator Ontology() const { return o_; }  // NOLINT(google-explicit-constructor)

 private:
  std::string ns_;
  Ontology o_;
};

}  // namespace ontmed::testing

#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontmed/ontology.hpp"

namespace ontmed {

enum class Category {
  CirculatoryError,
  PartitionError,
  SemanticInconsistency,
  IncompleteSpecification,
  PartitionOmission,
  RedundantSubsumption,
  DuplicateDefinition,
  RedundantInstantiation,
  LazyConcept,
  ChainOfInheritance,
  LonelyDisjoint,
  PropertyClump,
};

inline constexpr std::array kAllCategories = {
    Category::CirculatoryError,      Category::PartitionError,
    Category::SemanticInconsistency, Category::IncompleteSpecification,
    Category::PartitionOmission,     Category::RedundantSubsumption,
    Category::DuplicateDefinition,   Category::RedundantInstantiation,
    Category::LazyConcept,           Category::ChainOfInheritance,
    Category::LonelyDisjoint,        Category::PropertyClump,
};

enum class Severity { Error, Warning, Info };

std::string_view to_string(Category c);
std::string_view to_string(Severity s);
bool category_from_string(std::string_view name, Category& out);
bool severity_from_string(std::string_view name, Severity& out);

/// Inconsistency errors are Error, incompleteness and redundancy are
/// Warning, design anomalies are Info.
Severity severity_of(Category c);

struct Finding {
  Category category = Category::CirculatoryError;
  Severity severity = Severity::Error;
  std::vector<Iri> entities;
  std::string explanation;

  static Finding make(Category c, std::vector<Iri> entities, std::string explanation);

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Order by (category, entities), explanation as final tiebreak.
bool finding_less(const Finding& a, const Finding& b);

struct QualityReport {
  Iri target;
  std::vector<Finding> findings;
  std::map<Category, std::size_t> counts;

  std::size_t count(Category c) const;
  std::size_t count(Severity s) const;
  bool has_errors() const { return count(Severity::Error) > 0; }

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

/// Sorts, deduplicates and counts.
QualityReport make_report(Iri target, std::vector<Finding> findings);

struct LintThresholds {
  int chain_length = 3;
  int clump_size = 3;
};

std::vector<Finding> detect_circulatory(const Ontology& o);
std::vector<Finding> detect_partition_errors(const Ontology& o);
std::vector<Finding> detect_semantic_inconsistency(const Ontology& o);
std::vector<Finding> detect_incompleteness(const Ontology& o);
std::vector<Finding> detect_redundancy(const Ontology& o);
/// Throws std::invalid_argument unless chain_length >= 2 and clump_size >= 2.
std::vector<Finding> detect_design_anomalies(const Ontology& o, int chain_length = 3,
                                             int clump_size = 3);

QualityReport lint(const Ontology& o, const LintThresholds& thresholds = {});

/// Raised by repair_redundancies on a cyclic hierarchy.
class RepairRefused : public std::runtime_error {
 public:
  explicit RepairRefused(std::vector<Finding> cycles);
  const std::vector<Finding>& findings() const { return findings_; }

 private:
  std::vector<Finding> findings_;
};

struct RedundancyRepair {
  Ontology ontology;
  std::vector<Axiom> removed;
};

/// Drops every redundant SubClassOf and ClassAssertion; the subsumption
/// closure and all derivable memberships are unchanged.
RedundancyRepair repair_redundancies(const Ontology& o);

}  // namespace ontmed

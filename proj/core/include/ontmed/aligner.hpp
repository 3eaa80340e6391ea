#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ontmed/ontology.hpp"

namespace ontmed {

enum class Relation { Equivalent, Subsumes, SubsumedBy };

/// `=`, `>`, `<` respectively.
std::string_view relation_token(Relation rel);
/// False for any token other than `=`, `<`, `>`.
bool relation_from_token(std::string_view token, Relation& out);
Relation mirror(Relation rel);

/// A typed, confidence-weighted link between an entity of onto1 and one of onto2.
/// Subsumes means e1 ⊒ e2; SubsumedBy means e1 ⊑ e2.
struct Correspondence {
  Iri e1;
  Iri e2;
  Relation rel = Relation::Equivalent;
  double conf = 1.0;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// Canonical (e1, e2, rel) order; conf is not part of the key.
bool key_less(const Correspondence& a, const Correspondence& b);

struct Alignment {
  Iri onto1;
  Iri onto2;
  std::vector<Correspondence> correspondences;

  /// Sorts by (e1, e2, rel) and drops later duplicates of the same key.
  void normalize();

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

enum class Principle { Consistency, Locality, Conservativity };

std::string_view to_string(Principle p);

struct PrincipleViolation {
  Principle principle = Principle::Consistency;
  std::vector<Iri> witnesses;
  std::vector<Correspondence> implicated;
  std::string explanation;
};

inline constexpr double kDefaultTheta = 0.85;
inline constexpr double kDefaultTau = 0.5;

/// Case-folded name tokens joined without separators: `hasAuthor`,
/// `has_author` and `Has-Author` all normalize to `hasauthor`.
std::string normalize_name(std::string_view name);

/// 1 - levenshtein(a, b) / max(|a|, |b|) over the normalized names; 1 when
/// both normalize to the empty string.
double name_similarity(std::string_view a, std::string_view b);

/// Best similarity over the local names and labels of two entities.
double entity_similarity(const Entity& a, const Entity& b);

/// Lexical one-to-one matching of same-kind entities with similarity >= theta.
/// Throws std::invalid_argument when both ontologies share an id.
Alignment compute_alignment(const Ontology& o1, const Ontology& o2, double theta = kDefaultTheta);

/// One violation per global class made unsatisfiable by the merge; classes
/// with a member already unsatisfiable in its own source are not reported.
std::vector<PrincipleViolation> check_consistency_principle(const std::vector<Ontology>& locals,
                                                            const std::vector<Alignment>& alignments);

std::vector<PrincipleViolation> check_locality_principle(const Ontology& o1, const Ontology& o2,
                                                         const Alignment& a,
                                                         double tau = kDefaultTau);

std::vector<PrincipleViolation> check_conservativity_principle(
    const std::vector<Ontology>& locals, const std::vector<Alignment>& alignments);

/// All three checks; locality runs for every alignment whose ontologies are in `locals`.
std::vector<PrincipleViolation> check_all_principles(const std::vector<Ontology>& locals,
                                                     const std::vector<Alignment>& alignments,
                                                     double tau = kDefaultTau);

struct RepairResult {
  std::vector<Alignment> alignments;
  std::vector<Correspondence> removed;
};

/// Greedy repair: while violations exist, drop the implicated correspondence
/// with the lowest confidence (ties by (e1, e2)).
RepairResult repair_alignment(const std::vector<Ontology>& locals,
                              std::vector<Alignment> alignments, double tau = kDefaultTau);

}  // namespace ontmed

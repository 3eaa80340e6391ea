#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "ontmed/aligner.hpp"
#include "ontmed/ontology.hpp"
#include "ontmed/reasoning.hpp"

namespace ontmed {

inline constexpr std::string_view kGlobalNamespace = "http://ontmed.local/global#";

/// (source ontology id, local entity IRI)
using LocalRef = std::pair<Iri, Iri>;

/// Kind-homogeneous equivalence classes of local entities.
using EntityPartition = std::vector<std::set<LocalRef>>;

class MergeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MergedOntology {
  Ontology global;
  std::map<Iri, std::set<LocalRef>> provenance;

  /// Global entity for a local one, or nullptr.
  const Iri* image(const Iri& source, const Iri& local) const;
  /// Local IRIs of `global_iri` that belong to `source`, canonical order.
  std::vector<Iri> preimages(const Iri& global_iri, const Iri& source) const;
  std::set<Iri> sources() const;

  /// Rebuilds the reverse index; call after editing provenance directly.
  void reindex();

  friend bool operator==(const MergedOntology& a, const MergedOntology& b) {
    return a.global == b.global && a.provenance == b.provenance;
  }

 private:
  std::map<LocalRef, Iri> reverse_;
};

/// Union-find over local entities, joined by Equivalent correspondences.
/// Sets are sorted by their smallest member.
EntityPartition partition_entities(const std::vector<Ontology>& locals,
                                   const std::vector<Alignment>& alignments);

/// Builds the global ontology: one global entity per partition set, every
/// local axiom rewritten onto global entities, one SubClassOf (or
/// SubPropertyOf) per subsumption correspondence, labels unioned.
/// Result is independent of the order of `locals` and `alignments`.
MergedOntology merge(const std::vector<Ontology>& locals, const std::vector<Alignment>& alignments);

/// Global subsumption closure translated back onto `source`'s classes.
/// Throws MergeError for an unknown source.
std::set<IriPair> project_closure(const MergedOntology& m, const Iri& source);

}  // namespace ontmed

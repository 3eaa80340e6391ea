#include "ontmed/merger.hpp"

#include <algorithm>
#include <numeric>

namespace ontmed {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller root wins so the representative is the canonical minimum.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<const Ontology*> sorted_locals(const std::vector<Ontology>& locals) {
  std::vector<const Ontology*> out;
  out.reserve(locals.size());
  for (const auto& o : locals) out.push_back(&o);
  std::sort(out.begin(), out.end(), [](const Ontology* a, const Ontology* b) { return a->id() < b->id(); });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i - 1]->id() == out[i]->id()) {
      throw MergeError("duplicate local ontology id " + out[i]->id().str());
    }
  }
  return out;
}

const Ontology& find_local(const std::vector<const Ontology*>& locals, const Iri& id) {
  auto it = std::lower_bound(locals.begin(), locals.end(), id,
                             [](const Ontology* o, const Iri& key) { return o->id() < key; });
  if (it == locals.end() || (*it)->id() != id) {
    throw MergeError("alignment references unknown ontology " + id.str());
  }
  return **it;
}

EntityKind checked_kind(const Ontology& o, const Iri& iri) {
  auto kind = o.kind_of(iri);
  if (!kind) {
    throw MergeError("correspondence references unknown entity " + iri.str() + " in " + o.id().str());
  }
  return *kind;
}

struct Universe {
  std::vector<const Ontology*> locals;
  std::vector<LocalRef> refs;  // sorted
  std::vector<EntityKind> kinds;

  std::size_t index_of(const LocalRef& ref) const {
    auto it = std::lower_bound(refs.begin(), refs.end(), ref);
    return static_cast<std::size_t>(it - refs.begin());
  }
};

Universe build_universe(const std::vector<Ontology>& locals) {
  Universe u;
  u.locals = sorted_locals(locals);
  for (const Ontology* o : u.locals) {
    for (const auto& [iri, entity] : o->entities()) {
      u.refs.emplace_back(o->id(), iri);
      u.kinds.push_back(entity.kind);
    }
  }
  // Locals are visited in id order and entities in IRI order, so refs is sorted.
  return u;
}

std::vector<std::set<LocalRef>> partition(const Universe& u, const std::vector<Alignment>& alignments) {
  UnionFind uf(u.refs.size());
  for (const auto& a : alignments) {
    const Ontology& o1 = find_local(u.locals, a.onto1);
    const Ontology& o2 = find_local(u.locals, a.onto2);
    for (const auto& c : a.correspondences) {
      EntityKind k1 = checked_kind(o1, c.e1);
      EntityKind k2 = checked_kind(o2, c.e2);
      if (k1 != k2) {
        throw MergeError("kind-mismatched correspondence " + c.e1.str() + " (" +
                         std::string(to_string(k1)) + ") / " + c.e2.str() + " (" +
                         std::string(to_string(k2)) + ")");
      }
      if (c.rel == Relation::Equivalent) {
        uf.unite(u.index_of({a.onto1, c.e1}), u.index_of({a.onto2, c.e2}));
      }
    }
  }
  std::map<std::size_t, std::set<LocalRef>> groups;
  for (std::size_t i = 0; i < u.refs.size(); ++i) groups[uf.find(i)].insert(u.refs[i]);
  std::vector<std::set<LocalRef>> out;
  out.reserve(groups.size());
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  return out;
}

}  // namespace

const Iri* MergedOntology::image(const Iri& source, const Iri& local) const {
  auto it = reverse_.find({source, local});
  return it == reverse_.end() ? nullptr : &it->second;
}

std::vector<Iri> MergedOntology::preimages(const Iri& global_iri, const Iri& source) const {
  std::vector<Iri> out;
  auto it = provenance.find(global_iri);
  if (it == provenance.end()) return out;
  for (const auto& [src, local] : it->second) {
    if (src == source) out.push_back(local);
  }
  return out;
}

std::set<Iri> MergedOntology::sources() const {
  std::set<Iri> out;
  for (const auto& [_, refs] : provenance) {
    for (const auto& [src, __] : refs) out.insert(src);
  }
  return out;
}

void MergedOntology::reindex() {
  reverse_.clear();
  for (const auto& [g, refs] : provenance) {
    for (const auto& ref : refs) reverse_.emplace(ref, g);
  }
}

EntityPartition partition_entities(const std::vector<Ontology>& locals,
                                   const std::vector<Alignment>& alignments) {
  return partition(build_universe(locals), alignments);
}

MergedOntology merge(const std::vector<Ontology>& locals, const std::vector<Alignment>& alignments) {
  Universe u = build_universe(locals);
  EntityPartition sets = partition(u, alignments);

  // Name each set after its smallest member local name; later sets that
  // collide get -2, -3, ... in (name, smallest member) order.
  struct Named {
    std::string name;
    std::size_t set;
  };
  std::vector<Named> order;
  order.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string best;
    for (const auto& [_, local] : sets[i]) {
      std::string name(local.local());
      if (best.empty() || name < best) best = std::move(name);
    }
    order.push_back({std::move(best), i});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Named& a, const Named& b) { return a.name < b.name; });

  MergedOntology m;
  m.global = Ontology(Iri(kGlobalNamespace, "ontology"));
  std::set<std::string> taken;
  std::map<LocalRef, Iri> image;
  for (const auto& [name, set_index] : order) {
    std::string chosen = name;
    for (int suffix = 2; taken.contains(chosen); ++suffix) chosen = name + "-" + std::to_string(suffix);
    taken.insert(chosen);
    Iri global(kGlobalNamespace, chosen);

    const auto& members = sets[set_index];
    std::set<std::string> labels;
    std::optional<EntityKind> kind;
    for (const auto& ref : members) {
      const Ontology& local = find_local(u.locals, ref.first);
      const Entity* e = local.find(ref.second);
      if (kind && *kind != e->kind) {
        throw MergeError("equivalence set mixes entity kinds at " + ref.second.str());
      }
      kind = e->kind;
      labels.insert(e->labels.begin(), e->labels.end());
      image.emplace(ref, global);
    }
    m.global.declare(*kind, global, std::move(labels));
    m.provenance.emplace(global, members);
  }

  for (const Ontology* o : u.locals) {
    auto map = [&](const Iri& iri) -> Iri { return image.at({o->id(), iri}); };
    for (const auto& ax : o->axioms()) m.global.add(ax.rename(map));
  }

  for (const auto& a : alignments) {
    for (const auto& c : a.correspondences) {
      if (c.rel == Relation::Equivalent) continue;
      const Iri& g1 = image.at({a.onto1, c.e1});
      const Iri& g2 = image.at({a.onto2, c.e2});
      const Iri& sub = c.rel == Relation::SubsumedBy ? g1 : g2;
      const Iri& sup = c.rel == Relation::SubsumedBy ? g2 : g1;
      switch (*m.global.kind_of(g1)) {
        case EntityKind::Class: m.global.add(Axiom::sub_class(sub, sup)); break;
        case EntityKind::ObjectProperty: m.global.add(Axiom::sub_property(sub, sup)); break;
        case EntityKind::Individual:
          throw MergeError("subsumption correspondence between individuals " + c.e1.str() +
                           " and " + c.e2.str());
      }
    }
  }

  m.reindex();
  return m;
}

std::set<IriPair> project_closure(const MergedOntology& m, const Iri& source) {
  if (!m.sources().contains(source)) throw MergeError("unknown source " + source.str());
  Hierarchy h = Hierarchy::classes(m.global);
  std::map<Iri, std::vector<Iri>> pre;
  for (const auto& g : h.nodes()) {
    auto locals = m.preimages(g, source);
    if (!locals.empty()) pre.emplace(g, std::move(locals));
  }
  std::set<IriPair> out;
  for (const auto& [gx, xs] : pre) {
    for (const auto& [gy, ys] : pre) {
      if (!h.subsumed(gx, gy)) continue;
      for (const auto& x : xs) {
        for (const auto& y : ys) out.emplace(x, y);
      }
    }
  }
  return out;
}

}  // namespace ontmed

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "lexer.hpp"
#include "ontmed/docio.hpp"

namespace ontmed {

namespace {

using detail::Token;
using detail::TokenType;

constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";

bool is_builtin(const Iri& iri) {
  auto ns = iri.ns();
  return ns == kRdf || ns == kRdfs || ns == kOwl;
}

/// A resolved statement term.
struct Node {
  bool literal = false;
  Iri iri;
  std::string text;  // literal value, or source spelling of the IRI
  int line = 1;
  int column = 1;
};

struct Statement {
  Node subject;
  Node predicate;
  Node object;
};

class TurtleReader {
 public:
  TurtleReader(std::string_view text, std::string_view file) : file_(file), tokens_(detail::tokenize(text)) {
    prefixes_.emplace("rdf", std::string(kRdf));
    prefixes_.emplace("rdfs", std::string(kRdfs));
    prefixes_.emplace("owl", std::string(kOwl));
  }

  /// Splits the token stream into prefix directives and triples.
  std::vector<Statement> read() {
    std::vector<Statement> out;
    while (peek().type != TokenType::End) {
      const Token& first = peek();
      if (first.type == TokenType::Word && first.text == "@prefix") {
        read_prefix();
        continue;
      }
      std::optional<Node> s = term();
      std::optional<Node> p = s ? term() : std::nullopt;
      std::optional<Node> o = p ? term() : std::nullopt;
      if (!o) {
        recover();
        continue;
      }
      if (!expect_dot()) {
        recover();
        continue;
      }
      out.push_back({std::move(*s), std::move(*p), std::move(*o)});
    }
    return out;
  }

  std::vector<ParseDiagnostic>& diagnostics() { return diags_; }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  void error(int line, int column, std::string message) {
    diags_.push_back({file_, line, column, std::move(message), DiagnosticSeverity::Error});
  }
  void error(const Node& at, std::string message) { error(at.line, at.column, std::move(message)); }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.type != TokenType::End) ++pos_;
    return t;
  }

  void recover() {
    while (peek().type != TokenType::End) {
      const Token& t = next();
      if (t.type == TokenType::Punct && t.text == ".") return;
    }
  }

  bool expect_dot() {
    const Token& t = next();
    if (t.type == TokenType::Punct && t.text == ".") return true;
    error(t.line, t.column, "expected '.' to end the statement, found " + describe(t));
    return false;
  }

  static std::string describe(const Token& t) {
    if (t.type == TokenType::End) return "end of input";
    return "'" + t.raw + "'";
  }

  void read_prefix() {
    next();  // @prefix
    const Token& name = next();
    if (name.type != TokenType::PrefixedName || name.text.back() != ':') {
      error(name.line, name.column, "expected a prefix name like 'ex:' after @prefix, found " + describe(name));
      recover();
      return;
    }
    const Token& ns = next();
    if (ns.type != TokenType::IriRef) {
      error(ns.line, ns.column, "expected <namespace> after prefix name, found " + describe(ns));
      recover();
      return;
    }
    if (!is_valid_namespace(ns.text)) {
      error(ns.line, ns.column, "prefix namespace <" + ns.text + "> must be an absolute URI ending in '#' or '/'");
    }
    prefixes_[name.text.substr(0, name.text.size() - 1)] = ns.text;
    if (!expect_dot()) recover();
  }

  std::optional<Node> term() {
    const Token& t = next();
    Node n;
    n.line = t.line;
    n.column = t.column;
    n.text = t.raw;
    switch (t.type) {
      case TokenType::IriRef:
        if (!Iri::try_parse(t.text, n.iri)) {
          error(n, "invalid IRI " + t.raw);
          return std::nullopt;
        }
        return n;
      case TokenType::PrefixedName: {
        auto colon = t.text.find(':');
        std::string prefix = t.text.substr(0, colon);
        std::string local = t.text.substr(colon + 1);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
          error(n, "undeclared prefix '" + prefix + ":'");
          return std::nullopt;
        }
        if (local.empty() || !is_valid_namespace(it->second) || !is_valid_local_name(local)) {
          error(n, "invalid prefixed name " + t.raw);
          return std::nullopt;
        }
        n.iri = Iri(it->second, local);
        return n;
      }
      case TokenType::String:
        n.literal = true;
        n.text = t.text;
        return n;
      case TokenType::Invalid:
        error(n, t.text);
        return std::nullopt;
      default:
        error(n, "syntax error: unexpected " + describe(t));
        return std::nullopt;
    }
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
  std::vector<ParseDiagnostic> diags_;
};

enum class Mode { Ontology, Abox };

Iri builtin(std::string_view ns, std::string_view local) { return Iri(ns, local); }

/// Second and third passes: declarations, then axioms and labels.
class OntologyBuilder {
 public:
  OntologyBuilder(TurtleReader& reader, Mode mode, Ontology base)
      : reader_(reader), mode_(mode), onto_(std::move(base)) {}

  std::optional<Ontology> build(const std::vector<Statement>& statements) {
    const Iri type = builtin(kRdf, "type");
    std::optional<Iri> header;
    std::vector<const Statement*> rest;

    for (const auto& st : statements) {
      if (st.predicate.literal || st.predicate.iri != type || st.object.literal) {
        rest.push_back(&st);
        continue;
      }
      std::optional<EntityKind> kind = declared_kind(st.object.iri);
      bool ontology_header = st.object.iri == builtin(kOwl, "Ontology");
      if (!kind && !ontology_header) {
        rest.push_back(&st);
        continue;
      }
      if (st.subject.literal || is_builtin(st.subject.iri)) {
        reader_.error(st.subject, "expected an entity IRI as subject of a declaration");
        continue;
      }
      if (ontology_header) {
        if (mode_ == Mode::Abox) continue;
        if (header && *header != st.subject.iri) {
          reader_.error(st.subject, "duplicate ontology header " + st.subject.text);
        }
        header = st.subject.iri;
        continue;
      }
      if (mode_ == Mode::Abox && *kind != EntityKind::Individual) {
        reader_.error(st.subject, "ABox documents may only declare individuals, not " + st.subject.text);
        continue;
      }
      declare(*kind, st.subject);
    }

    for (const Statement* st : rest) statement(*st);

    if (mode_ == Mode::Ontology) {
      if (header) {
        onto_.set_id(*header);
      } else if (auto it = reader_.prefixes().find(""); it != reader_.prefixes().end() &&
                                                        is_valid_namespace(it->second)) {
        onto_.set_id(Iri(it->second, "ontology"));
      }
    }
    for (const auto& d : reader_.diagnostics()) {
      if (d.severity == DiagnosticSeverity::Error) return std::nullopt;
    }
    return std::move(onto_);
  }

 private:
  static std::optional<EntityKind> declared_kind(const Iri& object) {
    if (object == builtin(kOwl, "Class")) return EntityKind::Class;
    if (object == builtin(kOwl, "ObjectProperty")) return EntityKind::ObjectProperty;
    if (object == builtin(kOwl, "NamedIndividual")) return EntityKind::Individual;
    return std::nullopt;
  }

  void declare(EntityKind kind, const Node& n) {
    auto existing = onto_.kind_of(n.iri);
    if (existing && *existing != kind) {
      reader_.error(n, "duplicate conflicting declaration: " + n.text + " is already declared as " +
                           std::string(to_string(*existing)) + ", redeclared as " + std::string(to_string(kind)));
      return;
    }
    onto_.declare(kind, n.iri);
  }

  /// Checks that `n` is a declared entity of `kind`. In ABox mode an
  /// undeclared individual is declared on first use.
  bool require(const Node& n, EntityKind kind) {
    if (n.literal) {
      reader_.error(n, "unexpected string literal; expected " + std::string(to_string(kind)) + " IRI");
      return false;
    }
    if (is_builtin(n.iri)) {
      reader_.error(n, "unexpected built-in term " + n.text + "; expected " + std::string(to_string(kind)) + " IRI");
      return false;
    }
    auto actual = onto_.kind_of(n.iri);
    if (!actual) {
      if (mode_ == Mode::Abox && kind == EntityKind::Individual) {
        onto_.declare(EntityKind::Individual, n.iri);
        return true;
      }
      reader_.error(n, "undeclared entity " + n.text);
      return false;
    }
    if (*actual != kind) {
      reader_.error(n, "kind mismatch: " + n.text + " is " + std::string(to_string(*actual)) + ", used as " +
                           std::string(to_string(kind)));
      return false;
    }
    return true;
  }

  void add(Axiom axiom) {
    try {
      onto_.add(std::move(axiom));
    } catch (const OntologyError&) {
      // Arguments were validated by require(); nothing else can fail.
    }
  }

  void statement(const Statement& st) {
    using K = EntityKind;
    if (st.subject.literal) {
      reader_.error(st.subject, "string literal cannot be a subject");
      return;
    }
    if (st.predicate.literal) {
      reader_.error(st.predicate, "string literal cannot be a predicate");
      return;
    }
    const Iri& p = st.predicate.iri;
    const bool abox = mode_ == Mode::Abox;
    auto tbox_only = [&]() {
      if (abox) reader_.error(st.predicate, "only class and property assertions are allowed in ABox documents, found " + st.predicate.text);
      return !abox;
    };

    if (p == builtin(kRdf, "type")) {
      // Declarations were handled already, so the object must be a class.
      bool ok = require(st.subject, K::Individual);
      ok = require(st.object, K::Class) && ok;
      if (ok) add(Axiom::class_assertion(st.subject.iri, st.object.iri));
      return;
    }
    if (p == builtin(kRdfs, "label")) {
      if (!tbox_only()) return;
      if (!st.object.literal) {
        reader_.error(st.object, "rdfs:label expects a string literal");
        return;
      }
      if (is_builtin(st.subject.iri) || !onto_.contains(st.subject.iri)) {
        reader_.error(st.subject, "undeclared entity " + st.subject.text);
        return;
      }
      onto_.add_label(st.subject.iri, st.object.text);
      return;
    }

    struct Shape {
      std::string_view ns;
      std::string_view local;
      K subject;
      K object;
      Axiom (*make)(Iri, Iri);
    };
    static const Shape kShapes[] = {
        {kRdfs, "subClassOf", K::Class, K::Class, &Axiom::sub_class},
        {kOwl, "equivalentClass", K::Class, K::Class, &Axiom::equivalent},
        {kOwl, "disjointWith", K::Class, K::Class, &Axiom::disjoint},
        {kRdfs, "subPropertyOf", K::ObjectProperty, K::ObjectProperty, &Axiom::sub_property},
        {kRdfs, "domain", K::ObjectProperty, K::Class, &Axiom::domain},
        {kRdfs, "range", K::ObjectProperty, K::Class, &Axiom::range},
    };
    for (const auto& shape : kShapes) {
      if (p.ns() != shape.ns || p.local() != shape.local) continue;
      if (!tbox_only()) return;
      bool ok = require(st.subject, shape.subject);
      ok = require(st.object, shape.object) && ok;
      if (ok) add(shape.make(st.subject.iri, st.object.iri));
      return;
    }

    if (is_builtin(p)) {
      reader_.error(st.predicate, "unknown predicate " + st.predicate.text);
      return;
    }
    auto kind = onto_.kind_of(p);
    if (!kind) {
      reader_.error(st.predicate, "unknown predicate " + st.predicate.text);
      return;
    }
    if (*kind != K::ObjectProperty) {
      reader_.error(st.predicate, "kind mismatch: " + st.predicate.text + " is " + std::string(to_string(*kind)) +
                                      ", used as ObjectProperty");
      return;
    }
    bool ok = require(st.subject, K::Individual);
    ok = require(st.object, K::Individual) && ok;
    if (ok) add(Axiom::property_assertion(st.subject.iri, p, st.object.iri));
  }

  TurtleReader& reader_;
  Mode mode_;
  Ontology onto_;
};

Parsed<Ontology> parse_document(std::string_view text, std::string_view file, Mode mode, Ontology base) {
  TurtleReader reader(text, file);
  std::vector<Statement> statements = reader.read();
  OntologyBuilder builder(reader, mode, std::move(base));
  Parsed<Ontology> out;
  out.value = builder.build(statements);
  out.diagnostics = std::move(reader.diagnostics());
  if (std::any_of(out.diagnostics.begin(), out.diagnostics.end(),
                  [](const ParseDiagnostic& d) { return d.severity == DiagnosticSeverity::Error; })) {
    out.value.reset();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

class PrefixTable {
 public:
  explicit PrefixTable(const Ontology& o) {
    std::string main(o.id().ns());
    std::set<std::string> others;
    for (const auto& [iri, _] : o.entities()) {
      std::string ns(iri.ns());
      if (ns != main) others.insert(ns);
    }
    if (!main.empty()) names_.emplace(main, "");
    int k = 1;
    for (const auto& ns : others) names_.emplace(ns, "ns" + std::to_string(k++));
  }

  std::string header() const {
    std::ostringstream out;
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [ns, name] : names_) rows.emplace_back(name, ns);
    rows.emplace_back("owl", std::string(kOwl));
    rows.emplace_back("rdf", std::string(kRdf));
    rows.emplace_back("rdfs", std::string(kRdfs));
    std::sort(rows.begin(), rows.end());
    for (const auto& [name, ns] : rows) out << "@prefix " << name << ": <" << ns << "> .\n";
    return out.str();
  }

  std::string render(const Iri& iri) const {
    auto it = names_.find(std::string(iri.ns()));
    if (it != names_.end() && detail::is_plain_local(iri.local())) {
      return it->second + ":" + std::string(iri.local());
    }
    return "<" + iri.str() + ">";
  }

 private:
  std::map<std::string, std::string> names_;
};

std::string_view predicate_of(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::SubClassOf: return "rdfs:subClassOf";
    case AxiomKind::EquivalentClasses: return "owl:equivalentClass";
    case AxiomKind::DisjointClasses: return "owl:disjointWith";
    case AxiomKind::SubPropertyOf: return "rdfs:subPropertyOf";
    case AxiomKind::Domain: return "rdfs:domain";
    case AxiomKind::Range: return "rdfs:range";
    case AxiomKind::ClassAssertion: return "rdf:type";
    case AxiomKind::PropertyAssertion: break;
  }
  return "";
}

std::string_view declaration_of(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class: return "owl:Class";
    case EntityKind::ObjectProperty: return "owl:ObjectProperty";
    case EntityKind::Individual: return "owl:NamedIndividual";
  }
  return "";
}

}  // namespace

Parsed<Ontology> parse_ontology(std::string_view text, std::string_view file) {
  return parse_document(text, file, Mode::Ontology, Ontology());
}

Parsed<Ontology> parse_abox(std::string_view text, const Ontology& tbox, std::string_view file) {
  return parse_document(text, file, Mode::Abox, tbox);
}

std::string serialize_ontology(const Ontology& o) {
  PrefixTable prefixes(o);
  std::ostringstream out;
  out << prefixes.header();

  bool implicit_id = false;
  if (!o.id().empty()) {
    Iri fallback;
    implicit_id = Iri::try_parse(std::string(o.id().ns()) + "ontology", fallback) && fallback == o.id();
  }
  if (!o.id().empty() && !implicit_id) {
    out << "\n" << prefixes.render(o.id()) << " rdf:type owl:Ontology .\n";
  }

  if (!o.entities().empty()) {
    out << "\n";
    for (EntityKind kind : {EntityKind::Class, EntityKind::ObjectProperty, EntityKind::Individual}) {
      for (const auto& [iri, e] : o.entities()) {
        if (e.kind == kind) out << prefixes.render(iri) << " rdf:type " << declaration_of(kind) << " .\n";
      }
    }
  }

  bool any_label = false;
  for (const auto& [iri, e] : o.entities()) {
    for (const auto& label : e.labels) {
      if (!any_label) out << "\n";
      any_label = true;
      out << prefixes.render(iri) << " rdfs:label \"" << detail::escape_string(label) << "\" .\n";
    }
  }

  if (!o.axioms().empty()) out << "\n";
  for (const auto& ax : o.axioms()) {
    if (ax.kind == AxiomKind::PropertyAssertion) {
      out << prefixes.render(ax.first) << " " << prefixes.render(ax.second) << " " << prefixes.render(ax.third)
          << " .\n";
    } else {
      out << prefixes.render(ax.first) << " " << predicate_of(ax.kind) << " " << prefixes.render(ax.second)
          << " .\n";
    }
  }
  return out.str();
}

}  // namespace ontmed

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "ontmed/docio.hpp"

namespace ontmed {

namespace {

using detail::Token;
using detail::TokenType;

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

bool keyword(const Token& t, std::string_view word) {
  if (t.type != TokenType::Word || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

class QueryParser {
 public:
  QueryParser(std::string_view text, std::string_view file) : file_(file), tokens_(detail::tokenize(text)) {
    prefixes_[""] = std::string(kGlobalNamespace);
    prefixes_["rdf"] = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
  }

  std::optional<ConjunctiveQuery> parse(std::string id) {
    ConjunctiveQuery q;
    q.id = std::move(id);
    while (keyword(peek(), "PREFIX")) {
      if (!prefix()) return std::nullopt;
    }
    if (!keyword(peek(), "SELECT")) return fail(peek(), "expected SELECT, found " + describe(peek()));
    next();
    std::vector<const Token*> selected;
    while (peek().type == TokenType::Variable) {
      const Token& v = next();
      if (std::find(q.select.begin(), q.select.end(), v.text) != q.select.end()) {
        return fail(v, "duplicate select variable ?" + v.text);
      }
      q.select.push_back(v.text);
      selected.push_back(&v);
    }
    if (q.select.empty()) return fail(peek(), "expected at least one ?variable after SELECT");
    if (!keyword(peek(), "WHERE")) return fail(peek(), "expected WHERE, found " + describe(peek()));
    next();
    if (!punct(peek(), "{")) return fail(peek(), "expected '{', found " + describe(peek()));
    const Token& open = next();

    while (!punct(peek(), "}")) {
      if (peek().type == TokenType::End) return fail(peek(), "unterminated query body: expected '}'");
      auto atom = parse_atom();
      if (!atom) return std::nullopt;
      q.atoms.push_back(std::move(*atom));
      if (!punct(peek(), ".")) return fail(peek(), "expected '.' after atom, found " + describe(peek()));
      next();
    }
    next();
    if (peek().type != TokenType::End) return fail(peek(), "unexpected trailing " + describe(peek()));
    if (q.atoms.empty()) return fail(open, "empty query body");

    auto vars = q.variables();
    for (const Token* v : selected) {
      if (std::find(vars.begin(), vars.end(), v->text) == vars.end()) {
        return fail(*v, "unbound select variable ?" + v->text);
      }
    }
    return q;
  }

  std::vector<ParseDiagnostic>& diagnostics() { return diags_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.type != TokenType::End) ++pos_;
    return t;
  }
  static bool punct(const Token& t, std::string_view p) { return t.type == TokenType::Punct && t.text == p; }
  static std::string describe(const Token& t) {
    return t.type == TokenType::End ? std::string("end of input") : "'" + t.raw + "'";
  }

  std::nullopt_t fail(const Token& at, std::string message) {
    std::string text = at.type == TokenType::Invalid ? at.text : std::move(message);
    diags_.push_back({file_, at.line, at.column, std::move(text), DiagnosticSeverity::Error});
    return std::nullopt;
  }

  bool prefix() {
    next();
    const Token& name = next();
    if (name.type != TokenType::PrefixedName || name.text.back() != ':') {
      fail(name, "expected a prefix name like 'ex:' after PREFIX, found " + describe(name));
      return false;
    }
    const Token& ns = next();
    if (ns.type != TokenType::IriRef || !is_valid_namespace(ns.text)) {
      fail(ns, "expected <namespace> ending in '#' or '/', found " + describe(ns));
      return false;
    }
    prefixes_[name.text.substr(0, name.text.size() - 1)] = ns.text;
    return true;
  }

  std::optional<Iri> iri(const Token& t) {
    Iri out;
    if (t.type == TokenType::IriRef) {
      if (Iri::try_parse(t.text, out)) return out;
      fail(t, "invalid IRI " + t.raw);
      return std::nullopt;
    }
    if (t.type == TokenType::PrefixedName) {
      auto colon = t.text.find(':');
      auto it = prefixes_.find(t.text.substr(0, colon));
      if (it == prefixes_.end()) {
        fail(t, "undeclared prefix '" + t.text.substr(0, colon) + ":'");
        return std::nullopt;
      }
      std::string local = t.text.substr(colon + 1);
      if (!is_valid_local_name(local)) {
        fail(t, "invalid prefixed name " + t.raw);
        return std::nullopt;
      }
      return Iri(it->second, local);
    }
    fail(t, "expected an IRI, found " + describe(t));
    return std::nullopt;
  }

  std::optional<Term> term(const Token& t) {
    if (t.type == TokenType::Variable) return Term::var(t.text);
    auto value = iri(t);
    if (!value) return std::nullopt;
    return Term::iri(std::move(*value));
  }

  std::optional<Atom> parse_atom() {
    auto subject = term(next());
    if (!subject) return std::nullopt;
    const Token& pt = next();
    auto predicate = iri(pt);
    if (!predicate) return std::nullopt;
    const Token& ot = next();
    if (predicate->str() == kRdfType) {
      if (ot.type == TokenType::Variable) {
        fail(ot, "class atoms need a class IRI, not a variable");
        return std::nullopt;
      }
      auto cls = iri(ot);
      if (!cls) return std::nullopt;
      return Atom::class_atom(std::move(*subject), std::move(*cls));
    }
    auto object = term(ot);
    if (!object) return std::nullopt;
    return Atom::property_atom(std::move(*subject), std::move(*predicate), std::move(*object));
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
  std::vector<ParseDiagnostic> diags_;
};

std::string render(const Iri& iri) {
  if (iri.ns() == kGlobalNamespace && detail::is_plain_local(iri.local())) {
    return ":" + std::string(iri.local());
  }
  return "<" + iri.str() + ">";
}

std::string render(const Term& t) { return t.is_variable ? "?" + t.variable : render(t.constant); }

}  // namespace

Parsed<ConjunctiveQuery> parse_query(std::string_view text, std::string id, std::string_view file) {
  QueryParser parser(text, file);
  Parsed<ConjunctiveQuery> out;
  out.value = parser.parse(std::move(id));
  out.diagnostics = std::move(parser.diagnostics());
  return out;
}

std::string serialize_query(const ConjunctiveQuery& q) {
  std::ostringstream out;
  out << "PREFIX : <" << kGlobalNamespace << ">\n";
  out << "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n";
  out << "SELECT";
  for (const auto& v : q.select) out << " ?" << v;
  out << " WHERE {\n";
  for (const auto& a : q.atoms) {
    out << "  " << render(a.subject) << " ";
    if (a.is_class) {
      out << "rdf:type " << render(a.predicate);
    } else {
      out << render(a.predicate) << " " << render(a.object);
    }
    out << " .\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ontmed

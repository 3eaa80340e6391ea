#include "ontmed/iri.hpp"

#include <cctype>
#include <stdexcept>

namespace ontmed {

namespace {

bool forbidden(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' || c == '"' ||
         c == '{' || c == '}' || c == '|' || c == '\\' || c == '^' || c == '`';
}

}  // namespace

bool is_valid_namespace(std::string_view ns) {
  if (ns.size() < 3) return false;
  if (ns.back() != '#' && ns.back() != '/') return false;
  if (!std::isalpha(static_cast<unsigned char>(ns.front()))) return false;
  std::size_t colon = ns.find(':');
  if (colon == std::string_view::npos || colon + 1 >= ns.size()) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = ns[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : ns) {
    if (forbidden(c)) return false;
  }
  return true;
}

bool is_valid_local_name(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (forbidden(c) || c == '#' || c == '/') return false;
  }
  return true;
}

Iri::Iri(std::string_view ns, std::string_view local) {
  if (!is_valid_namespace(ns)) {
    throw std::invalid_argument("invalid IRI namespace '" + std::string(ns) + "'");
  }
  if (!is_valid_local_name(local)) {
    throw std::invalid_argument("invalid IRI local name '" + std::string(local) + "'");
  }
  full_.reserve(ns.size() + local.size());
  full_.append(ns).append(local);
  split_ = ns.size();
}

bool Iri::try_parse(std::string_view full, Iri& out) {
  std::size_t cut = full.find_last_of("#/");
  if (cut == std::string_view::npos) return false;
  std::string_view ns = full.substr(0, cut + 1);
  std::string_view local = full.substr(cut + 1);
  if (!is_valid_namespace(ns) || !is_valid_local_name(local)) return false;
  out = Iri(ns, local);
  return true;
}

Iri Iri::parse(std::string_view full) {
  Iri out;
  if (!try_parse(full, out)) {
    throw std::invalid_argument("invalid IRI '" + std::string(full) + "'");
  }
  return out;
}

}  // namespace ontmed

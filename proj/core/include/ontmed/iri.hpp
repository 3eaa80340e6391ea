#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace ontmed {

/// An absolute IRI split into namespace and local name.
///
/// The namespace is an absolute URI ending in `#` or `/`; the local name is
/// non-empty and contains no whitespace. Ordering and equality are defined on
/// the rendered form `namespace + local`.
class Iri {
 public:
  Iri() = default;

  /// Throws std::invalid_argument when either part is malformed.
  Iri(std::string_view ns, std::string_view local);

  /// Splits a full IRI at its last `#` or `/`.
  static Iri parse(std::string_view full);

  /// Non-throwing variant of parse(); false when the text is not a valid IRI.
  static bool try_parse(std::string_view full, Iri& out);

  std::string_view ns() const { return std::string_view(full_).substr(0, split_); }
  std::string_view local() const { return std::string_view(full_).substr(split_); }
  const std::string& str() const { return full_; }
  bool empty() const { return full_.empty(); }

  friend bool operator==(const Iri& a, const Iri& b) { return a.full_ == b.full_; }
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
    return a.full_.compare(b.full_) <=> 0;
  }

 private:
  std::string full_;
  std::size_t split_ = 0;
};

bool is_valid_namespace(std::string_view ns);
bool is_valid_local_name(std::string_view local);

}  // namespace ontmed

template <>
struct std::hash<ontmed::Iri> {
  std::size_t operator()(const ontmed::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.str());
  }
};

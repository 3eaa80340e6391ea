#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ontmed::detail {

enum class TokenType {
  IriRef,     // <http://...>, text holds the IRI without brackets
  PrefixedName,  // prefix:local, text holds both parts
  String,     // "...", text holds the unescaped value
  Variable,   // ?name, text holds the name
  Word,       // bare keyword (SELECT, WHERE, PREFIX) or @directive including '@'
  Punct,      // . { }
  Invalid,    // text holds the error message
  End,
};

struct Token {
  TokenType type = TokenType::End;
  std::string text;
  int line = 1;
  int column = 1;
  /// Source spelling, for diagnostics.
  std::string raw;
};

/// Tokenizes the shared Turtle/query surface syntax. `#` starts a comment
/// outside of IRIs and strings.
std::vector<Token> tokenize(std::string_view text);

bool is_pname_char(char c);
/// True when `local` can be written after `prefix:` without brackets.
bool is_plain_local(std::string_view local);

std::string escape_string(std::string_view value);

/// 1-based line and column of a byte offset.
void position_of(std::string_view text, std::size_t offset, int& line, int& column);

}  // namespace ontmed::detail

#include "lexer.hpp"

#include <cctype>

namespace ontmed::detail {

bool is_pname_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_plain_local(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (!is_pname_char(c)) return false;
  }
  return true;
}

std::string escape_string(std::string_view value) {
  std::string out;
  out.reserve(value.size() + 2);
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void position_of(std::string_view text, std::size_t offset, int& line, int& column) {
  line = 1;
  column = 1;
  if (offset > text.size()) offset = text.size();
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    std::size_t start = i;

    if (c == '<') {
      std::size_t end = text.find_first_of(">\n", i + 1);
      if (end == std::string_view::npos || text[end] != '>') {
        tok.type = TokenType::Invalid;
        tok.text = "unterminated IRI";
        advance(end == std::string_view::npos ? text.size() - i : end - i);
      } else {
        tok.type = TokenType::IriRef;
        tok.text = std::string(text.substr(i + 1, end - i - 1));
        advance(end + 1 - i);
      }
    } else if (c == '"') {
      advance(1);
      std::string value;
      bool closed = false;
      bool bad_escape = false;
      while (i < text.size() && text[i] != '\n') {
        char d = text[i];
        if (d == '"') {
          closed = true;
          advance(1);
          break;
        }
        if (d == '\\' && i + 1 < text.size()) {
          char e = text[i + 1];
          switch (e) {
            case '"': value += '"'; break;
            case '\\': value += '\\'; break;
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            case 't': value += '\t'; break;
            default: bad_escape = true;
          }
          advance(2);
          continue;
        }
        value += d;
        advance(1);
      }
      if (!closed) {
        tok.type = TokenType::Invalid;
        tok.text = "unterminated string literal";
      } else if (bad_escape) {
        tok.type = TokenType::Invalid;
        tok.text = "unsupported escape sequence in string literal";
      } else {
        tok.type = TokenType::String;
        tok.text = std::move(value);
      }
    } else if (c == '?') {
      advance(1);
      std::size_t b = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) advance(1);
      if (i == b) {
        tok.type = TokenType::Invalid;
        tok.text = "empty variable name";
      } else {
        tok.type = TokenType::Variable;
        tok.text = std::string(text.substr(b, i - b));
      }
    } else if (c == '.' || c == '{' || c == '}') {
      tok.type = TokenType::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else if (c == '@') {
      advance(1);
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) advance(1);
      tok.type = TokenType::Word;
      tok.text = std::string(text.substr(start, i - start));
    } else if (is_pname_char(c) || c == ':') {
      while (i < text.size() && is_pname_char(text[i])) advance(1);
      if (i < text.size() && text[i] == ':') {
        advance(1);
        // Local part; a trailing '.' terminates the statement instead.
        while (i < text.size()) {
          char d = text[i];
          if (is_pname_char(d)) {
            advance(1);
          } else if (d == '.' && i + 1 < text.size() && is_pname_char(text[i + 1])) {
            advance(1);
          } else {
            break;
          }
        }
        tok.type = TokenType::PrefixedName;
      } else {
        tok.type = TokenType::Word;
      }
      tok.text = std::string(text.substr(start, i - start));
    } else {
      tok.type = TokenType::Invalid;
      tok.text = std::string("unexpected character '") + c + "'";
      advance(1);
    }
    tok.raw = std::string(text.substr(start, i - start));
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = TokenType::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

}  // namespace ontmed::detail

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corename::java {

enum class TokenKind { Identifier, Number, Literal, Punct };

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string text;
  std::size_t line = 0;

  bool is(std::string_view s) const { return text == s; }
  bool ident() const { return kind == TokenKind::Identifier; }
};

class LexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tokenizes Java source. Comments are dropped; string, text-block and
/// character literals become a single Literal token. '<' and '>' are always
/// single tokens so nested generics close one bracket at a time.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);
bool is_primitive(std::string_view word);
bool is_modifier(std::string_view word);

}  // namespace corename::java

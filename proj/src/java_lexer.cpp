#include "java_lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace corename::java {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> words = {
      "abstract", "assert",    "boolean",    "break",     "byte",       "case",
      "catch",    "char",      "class",      "const",     "continue",   "default",
      "do",       "double",    "else",       "enum",      "extends",    "final",
      "finally",  "float",     "for",        "goto",      "if",         "implements",
      "import",   "instanceof", "int",       "interface", "long",       "native",
      "new",      "package",   "private",    "protected", "public",     "return",
      "short",    "static",    "strictfp",   "super",     "switch",     "synchronized",
      "this",     "throw",     "throws",     "transient", "try",        "void",
      "volatile", "while",     "true",       "false",     "null",       "yield",
      "record",   "sealed",    "permits"};
  return words;
}

// Longest first within each prefix group.
constexpr std::array<std::string_view, 22> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    ">=",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", "@"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

}  // namespace

bool is_keyword(std::string_view word) { return keywords().contains(word); }

bool is_primitive(std::string_view word) {
  return word == "int" || word == "long" || word == "short" || word == "byte" || word == "char" ||
         word == "boolean" || word == "float" || word == "double" || word == "void";
}

bool is_modifier(std::string_view word) {
  return word == "public" || word == "private" || word == "protected" || word == "static" ||
         word == "final" || word == "abstract" || word == "native" || word == "synchronized" ||
         word == "transient" || word == "volatile" || word == "strictfp" || word == "default" ||
         word == "sealed" || word == "non-sealed";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      std::size_t end = src.find("*/", i + 2);
      if (end == std::string_view::npos) throw LexError("unterminated comment at line " + std::to_string(line));
      for (std::size_t k = i; k < end; ++k) line += src[k] == '\n';
      i = end + 2;
      continue;
    }
    if (src.substr(i, 3) == "\"\"\"") {
      std::size_t end = src.find("\"\"\"", i + 3);
      if (end == std::string_view::npos) throw LexError("unterminated text block at line " + std::to_string(line));
      std::size_t start_line = line;
      for (std::size_t k = i; k < end; ++k) line += src[k] == '\n';
      out.push_back({TokenKind::Literal, "\"\"", start_line});
      i = end + 3;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t k = i + 1;
      while (k < n && src[k] != c) {
        if (src[k] == '\\') ++k;
        else if (src[k] == '\n') break;
        ++k;
      }
      if (k >= n || src[k] != c) throw LexError("unterminated literal at line " + std::to_string(line));
      out.push_back({TokenKind::Literal, std::string(1, c) + c, line});
      i = k + 1;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t k = i;
      while (k < n && (std::isalnum(static_cast<unsigned char>(src[k])) || src[k] == '.' || src[k] == '_' ||
                       ((src[k] == '+' || src[k] == '-') && (src[k - 1] == 'e' || src[k - 1] == 'E')))) {
        ++k;
      }
      out.push_back({TokenKind::Number, std::string(src.substr(i, k - i)), line});
      i = k;
      continue;
    }
    if (ident_start(c)) {
      std::size_t k = i;
      while (k < n && ident_part(src[k])) ++k;
      out.push_back({TokenKind::Identifier, std::string(src.substr(i, k - i)), line});
      i = k;
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (src.substr(i, op.size()) == op) {
        out.push_back({TokenKind::Punct, std::string(op), line});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      out.push_back({TokenKind::Punct, std::string(1, c), line});
      ++i;
    }
  }
  return out;
}

}  // namespace corename::java

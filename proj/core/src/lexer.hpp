// Tokeniser shared by the group-formula and successor-structure grammars.
#pragma once

#include "zsparse/errors.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

namespace zsparse::detail {

enum class Tok { Ident, Int, Plus, Minus, Star, Eq, Neq, Cong, EqMod, LParen, RParen, LBracket, RBracket, Comma, Caret, Dot, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t b, std::size_t e) { out.push_back(Token{k, s.substr(b, e - b), b, e}); };
  auto starts = [&](const char* lit) { return s.compare(i, std::char_traits<char>::length(lit), lit) == 0; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      push(Tok::Ident, b, i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      push(Tok::Int, b, i);
    } else if (starts("\xE2\x89\xA1")) {  // congruence sign, then _n
      i += 3;
      if (i >= s.size() || s[i] != '_') throw ParseError(i, "expected '_' and a modulus after the congruence sign");
      ++i;
      std::size_t digits = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (digits == i) throw ParseError(i, "expected a modulus after the congruence sign");
      out.push_back(Token{Tok::Cong, s.substr(digits, i - digits), b, i});
    } else if (starts("\xE2\x89\xA0")) {  // not-equal sign
      i += 3;
      push(Tok::Neq, b, i);
    } else if (starts("\xE2\x88\x92")) {  // unicode minus
      i += 3;
      push(Tok::Minus, b, i);
    } else if (starts("!=")) {
      i += 2;
      push(Tok::Neq, b, i);
    } else if (starts("=mod") && (i + 4 >= s.size() || !ident_char(s[i + 4]))) {
      i += 4;
      push(Tok::EqMod, b, i);
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '=': k = Tok::Eq; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case ',': k = Tok::Comma; break;
        case '^': k = Tok::Caret; break;
        case '.': k = Tok::Dot; break;
        default:
          throw ParseError(i, std::string("unknown symbol '") + c + "'");
      }
      ++i;
      push(k, b, i);
    }
  }
  out.push_back(Token{Tok::End, "", s.size(), s.size()});
  return out;
}

inline bool is_keyword(const std::string& w) {
  return w == "AND" || w == "OR" || w == "NOT" || w == "ALL" || w == "EXISTS" || w == "IN" || w == "TRUE" ||
         w == "FALSE";
}

/// Cursor over a token vector.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t j = pos_ + ahead;
    return j < toks_.size() ? toks_[j] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_word(const char* w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.begin, msg + ", found " + found);
  }
  std::size_t last_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace zsparse::detail

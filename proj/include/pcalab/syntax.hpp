#pragma once

// Canonical text syntax for terms.
//
//   term  := atom+                       juxtaposition, associating to the left
//   atom  := S | K | <decimal> | <primitive name> | v<decimal> | ( term )
//
// The printer emits the fewest parentheses: only arguments that are
// applications are wrapped. parse(print(t)) == t for every term.

#include "pcalab/term.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcalab {

class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Token {
  enum class Kind { Word, Number, LParen, RParen, Lambda, Dot, End } kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", i++});
    } else if (c == '.') {
      out.push_back({Token::Kind::Dot, ".", i++});
    } else if (c == '\\') {
      out.push_back({Token::Kind::Lambda, "\\", i++});
    } else if (src.substr(i, 2) == "\xCE\xBB") {  // UTF-8 lambda
      out.push_back({Token::Kind::Lambda, "\\", i});
      i += 2;
    } else if (std::isdigit(c)) {
      std::size_t start = i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), start});
    } else if (std::isalpha(c) || c == '_') {
      std::size_t start = i;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\'')) {
        ++i;
      }
      out.push_back({Token::Kind::Word, std::string(src.substr(start, i - start)), start});
    } else {
      throw SyntaxError("unexpected character '" + std::string(1, static_cast<char>(c)) + "' at " +
                        std::to_string(i));
    }
  }
  out.push_back({Token::Kind::End, "", src.size()});
  return out;
}

inline std::optional<Term> atom_for_word(const std::string& w) {
  if (w == "S") return Term::s();
  if (w == "K") return Term::k();
  if (auto p = prim_from_name(w)) return Term::prim(*p);
  return std::nullopt;
}

class TermParser {
 public:
  explicit TermParser(std::string_view src) : tokens_(tokenize(src)) {}

  Term parse() {
    Term t = parse_app();
    if (peek().kind != Token::Kind::End) fail("trailing input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at " + std::to_string(peek().pos));
  }
  bool starts_atom() const {
    auto k = peek().kind;
    return k == Token::Kind::Word || k == Token::Kind::Number || k == Token::Kind::LParen;
  }
  Term parse_app() {
    if (!starts_atom()) fail("expected a term");
    Term t = parse_atom();
    while (starts_atom()) t = Term::app(std::move(t), parse_atom());
    return t;
  }
  Term parse_atom() {
    Token tok = tokens_[pos_++];
    switch (tok.kind) {
      case Token::Kind::Number: return Term::numeral(parse_natural(tok.text));
      case Token::Kind::LParen: {
        Term t = parse_app();
        if (peek().kind != Token::Kind::RParen) fail("expected ')'");
        ++pos_;
        return t;
      }
      case Token::Kind::Word: {
        if (auto a = atom_for_word(tok.text)) return *a;
        if (tok.text.size() > 1 && tok.text[0] == 'v' &&
            tok.text.find_first_not_of("0123456789", 1) == std::string::npos) {
          return Term::var(static_cast<std::uint32_t>(std::stoul(tok.text.substr(1))));
        }
        --pos_;
        fail("unknown name '" + tok.text + "'");
      }
      default: --pos_; fail("expected a term");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::K: out += 'K'; return;
    case Kind::S: out += 'S'; return;
    case Kind::Numeral: out += t.numeral_value().str(); return;
    case Kind::Prim: out += prim_name(t.prim_op()); return;
    case Kind::Var:
      out += 'v';
      out += std::to_string(t.var_index());
      return;
    case Kind::App: {
      print_into(t.fun(), out);
      out += ' ';
      Term a = t.arg();
      if (a.is_app()) {
        out += '(';
        print_into(a, out);
        out += ')';
      } else {
        print_into(a, out);
      }
      return;
    }
  }
}

}  // namespace detail

inline Term parse_term(std::string_view src) { return detail::TermParser(src).parse(); }

inline std::string print(const Term& t) {
  std::string out;
  detail::print_into(t, out);
  return out;
}

}  // namespace pcalab

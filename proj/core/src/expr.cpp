#include "wallx/expr.hpp"

#include <cctype>
#include <vector>

namespace wallx {

ParseError::ParseError(const std::string& what, std::size_t column)
    : std::invalid_argument("column " + std::to_string(column) + ": " + what), column_(column) {}

namespace {

enum class Tok { Atom, Diamond, Int, Plus, Times, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0, col = 1;
  auto push = [&](Tok k, std::string t, std::size_t bytes) {
    out.push_back({k, std::move(t), col});
    i += bytes;
    col += 1;
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      ++col;
    } else if (s.compare(i, 3, "\xE2\x8A\x97") == 0) {  // ⊗
      push(Tok::Times, "⊗", 3);
    } else if (s.compare(i, 3, "\xE2\x8A\x95") == 0) {  // ⊕
      push(Tok::Plus, "⊕", 3);
    } else if (c == '*' || c == 'x') {
      push(Tok::Times, std::string(1, c), 1);
    } else if (c == '+') {
      push(Tok::Plus, "+", 1);
    } else if (c == '(') {
      push(Tok::LParen, "(", 1);
    } else if (c == ')') {
      push(Tok::RParen, ")", 1);
    } else if (c == ',') {
      push(Tok::Comma, ",", 1);
    } else if (std::isdigit(c) || c == '-') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (c == '-' && j == i + 1) throw ParseError("expected a digit after '-'", col);
      out.push_back({Tok::Int, s.substr(i, j - i), col});
      col += j - i;
      i = j;
    } else if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])) && s[j] != 'x') ++j;
      std::string word = s.substr(i, j - i);
      Tok k = word == "diamond" ? Tok::Diamond : Tok::Atom;
      if (k == Tok::Atom && word != "L" && word != "Ls" && word != "M" && word != "Ms" && word != "Mv" &&
          word != "P")
        throw ParseError("unknown atom '" + word + "'", col);
      out.push_back({k, word, col});
      col += j - i;
      i = j;
    } else {
      // Skip the rest of a multi-byte character for the message.
      std::size_t j = i + 1;
      while (j < s.size() && (static_cast<unsigned char>(s[j]) & 0xC0) == 0x80) ++j;
      throw ParseError("unexpected character '" + s.substr(i, j - i) + "'", col);
    }
  }
  out.push_back({Tok::End, "", col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  BlockModule parse() {
    BlockModule m = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().column);
    return m;
  }

 private:
  const Token& peek() const { return t_[p_]; }
  const Token& take() { return t_[p_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what +
                           (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"),
                       peek().column);
    ++p_;
  }

  BlockModule expr() {
    BlockModule m = tensor();
    while (peek().kind == Tok::Plus) {
      std::size_t col = take().column;
      BlockModule r = tensor();
      if (r.d != m.d)
        throw ParseError("direct sum of modules with " + std::to_string(m.d) + " and " + std::to_string(r.d) +
                             " factors",
                         col);
      m = direct_sum(m, r);
    }
    return m;
  }

  BlockModule tensor() {
    BlockModule m = factor();
    while (peek().kind == Tok::Times) {
      take();
      m = wallx::tensor(m, factor());
    }
    return m;
  }

  BlockModule factor() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Atom: {
        take();
        if (tok.text == "L") return simple_L();
        if (tok.text == "Ls" || tok.text == "Ms") return simple_Ls();
        if (tok.text == "M") return verma();
        if (tok.text == "Mv") return dual_verma();
        return big_projective();
      }
      case Tok::Diamond: {
        std::size_t col = take().column;
        expect(Tok::LParen, "'('");
        std::vector<long> params;
        while (true) {
          if (peek().kind != Tok::Int) expect(Tok::Int, "an integer");
          const Token& num = take();
          try {
            params.push_back(std::stol(num.text));
          } catch (const std::out_of_range&) {
            throw ParseError("integer out of range", num.column);
          }
          if (peek().kind == Tok::Comma) {
            take();
            continue;
          }
          expect(Tok::RParen, "',' or ')'");
          break;
        }
        if (params.size() != 2 && params.size() != 4)
          throw ParseError("diamond takes 2 or 4 parameters, got " + std::to_string(params.size()), col);
        try {
          return diamond(params.size() == 2 ? 1 : 2, params);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), col);
        }
      }
      case Tok::LParen: {
        take();
        BlockModule m = expr();
        expect(Tok::RParen, "')'");
        return m;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", tok.column);
      default:
        throw ParseError("unexpected '" + tok.text + "'", tok.column);
    }
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
};

}  // namespace

BlockModule parse_module(const std::string& text) { return Parser(lex(text)).parse(); }

}  // namespace wallx

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "wallx/blockO.hpp"

namespace wallx {

// Module expressions:
//
//   expr    = tensor { ( "⊕" | "+" ) tensor } ;
//   tensor  = factor { ( "⊗" | "*" | "x" ) factor } ;
//   factor  = atom | diamond | "(" expr ")" ;
//   diamond = "diamond" "(" integer { "," integer } ")" ;
//   atom    = "L" | "Ls" | "M" | "Ms" | "Mv" | "P" ;
//
// L = L(λ), Ls = Ms = L(sλ) = M(sλ), M = M(λ), Mv = M(λ)^∨, P = P(sλ).
// diamond takes 2 parameters (one factor) or 4 (two factors). Whitespace is
// ignored; both summands of ⊕ must have the same number of factors.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t column);
  std::size_t column() const { return column_; }  // 1-based, in characters

 private:
  std::size_t column_;
};

BlockModule parse_module(const std::string& text);

}  // namespace wallx

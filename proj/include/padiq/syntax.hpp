#pragma once

#include "padiq/formula.hpp"

#include <string>

namespace padiq {

/// Parse the ASCII formula language.
///
///   formula := ("E"|"A") ident ("," ident)* "." formula | disj ("->" formula)?
///   disj    := conj ("||" conj)*        conj := lit ("&&" lit)*
///   lit     := "!" lit | "(" formula ")" | "true" | "false" | quantified | atom
///   atom    := term "=" term | term "!=" term | "D" nat "(" term ")"
///            | "v" nat "(" term ")" cmp (int | "v" nat "(" term ")" (("+"|"-") nat)?)
///   cmp     := "<=" | "<" | ">=" | ">" | "="
///
/// Bound variables are renamed apart from free variables and from each other.
/// Throws ParseError on malformed text, an unknown prime, or a modulus < 1.
Formula parse(const std::string& text, const PrimeSet& primes);

/// Inverse of parse on canonical formulas.
std::string render(const Formula& f);
std::string render(const Atom& a);

}  // namespace padiq

#pragma once

// Line-oriented automaton format:
//
//   lattice goguen            # boolean | godel | goguen | lukasiewicz | chain K
//   alphabet x y
//   states 3
//   initial 1 0 0
//   terminal 0 1 0
//   transitions x
//   0 0.5 1
//   0 1 0
//   0 1 0.5
//   transitions y
//   ...
//
// `#` starts a comment, blank lines are ignored. `lattice`, `alphabet` and
// `states` must come before any vector or matrix. Row i of a transitions
// block lists the degrees from state i. Diagnostics number states and lines
// from 1.

#include <string>
#include <string_view>
#include <vector>

#include "fuzzydet/automaton.hpp"

namespace fuzzydet {

FuzzyAutomaton parse_automaton(std::string_view text);

/// Canonical form: blocks in the order above, transitions in alphabet order,
/// values in canonical syntax.
std::string serialize_automaton(const FuzzyAutomaton& a);

/// An n×n relation given as n lines of n values (comments allowed).
FuzzyMatrix parse_matrix(const LatticeKind& lattice, std::size_t n, std::string_view text);

/// `_` is the empty word, otherwise symbols joined by `.`.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);

std::string export_dot(const FuzzyAutomaton& a);
std::string export_dot(const Cdfa& c);

std::string read_file(const std::string& path);

}  // namespace fuzzydet

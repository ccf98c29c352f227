#pragma once

#include <string>

#include "fuzzydet/io.hpp"

namespace fuzzydet::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(FUZZYDET_FIXTURES) + "/" + name;
}

inline FuzzyAutomaton load_fixture(const std::string& name) {
  return parse_automaton(read_file(fixture_path(name)));
}

/// Vector over the automaton's lattice from value literals.
inline FuzzyVector vec(const LatticeKind& l, std::initializer_list<const char*> items) {
  std::vector<Value> vals;
  for (const char* s : items) vals.push_back(parse_value(l, s));
  return FuzzyVector(l, vals);
}

}  // namespace fuzzydet::testing

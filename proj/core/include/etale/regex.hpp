#pragma once

#include <string_view>

#include "etale/detail/dfa.hpp"
#include "etale/space.hpp"

namespace etale {

/// Compiles an anchored regular expression over the space's alphabet into
/// the canonical automaton of the open set ⋃_{w ∈ L} [w].
///
/// Syntax: symbols, concatenation, '|', postfix '*', parentheses, 'ε' (or
/// "()") for the empty word, '∅' for the empty language, '.' for any symbol.
/// Whitespace is ignored.
detail::Dfa compile_open_regex(const Space& space, std::string_view pattern);

}  // namespace etale

#pragma once

#include <cstddef>
#include <vector>

#include "pop/arch.hpp"

namespace pop {

// Strict precedence x < y: x and y share stem and per-stage block kinds,
// x != y, and each stage sequence of x embeds into the corresponding stage
// sequence of y via a strictly increasing position map with elementwise <=.
// This is the transitive closure of "delete one block" and "narrow one
// block", so a precedent is shallower and/or narrower than its successor.
bool precedes(const ArchitectureCode& x, const ArchitectureCode& y);

// All codes one elementary step below x: delete a block from a stage that
// has at least two, or lower one block's width to the adjacent lower
// alphabet value (keeping the width sequence non-decreasing). Every result
// m satisfies m < x. Empty for the lattice bottom. Deterministically
// ordered by canonical text.
std::vector<ArchitectureCode> elementary_shrinks(const ArchitectureCode& x,
                                                 const Alphabet& alphabet);

// |{m in space : m < x}|
std::size_t count_precedents(const ArchitectureCode& x,
                             const std::vector<ArchitectureCode>& space);

} // namespace pop

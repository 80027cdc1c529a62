#pragma once

#include <string>
#include <string_view>

#include "cellscope/cell.hpp"

namespace cellscope {

/// Parses the textual architecture encoding for `spec.kind`.
///
/// DARTS mode accepts the conventional
///   Genotype(normal=[('op', src), ...x8], normal_concat=[2, 3, 4, 5],
///            reduce=[...], reduce_concat=[2, 3, 4, 5])
/// with arbitrary whitespace and unsorted pairs; NB201 mode accepts the
/// 6-segment form |op~0|+|op~0|op~1|+|op~0|op~1|op~2|.
///
/// Wiring constraints are enforced here (wrong edge counts, bad source
/// indices, duplicate sources, unknown labels raise ParseError); the
/// reserved 'zero' label is accepted so disable schedules round-trip,
/// and is flagged by validate() instead.
Architecture parse_genotype(std::string_view text, const SpaceSpec& spec);

/// Emits the canonical form (within each node, pairs sorted by source
/// index then primitive name). parse . serialize is the identity on
/// canonical text and serialize . parse on architectures.
std::string serialize_genotype(const Architecture& arch, const SpaceSpec& spec);

std::string serialize_cell(const Cell& cell, const SpaceSpec& spec, CellKind kind);

}  // namespace cellscope

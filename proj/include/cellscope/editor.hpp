#pragma once

#include <string>
#include <vector>

#include "cellscope/cell.hpp"
#include "cellscope/importance.hpp"
#include "cellscope/rng.hpp"

namespace cellscope {

struct EditEntry {
  EdgeAddress address;
  Primitive old_op;
  Primitive new_op;
  std::string reason;
};

struct EditReport {
  Architecture edited;
  std::vector<EditEntry> edits;  // normal-cell replacements only
  int distance = 0;              // reduce := normal contributes 0
};

struct EditOptions {
  /// Kernel-size-matched replacement targets: 3x3-kernel primitives
  /// (dil_conv_3x3, both poolings) become sep_conv_3x3 and dil_conv_5x5
  /// becomes sep_conv_5x5. When false, replacements draw uniformly from
  /// {sep_conv_3x3, sep_conv_5x5}.
  bool kernel_match = true;
};

/// Minimal edit to residual-plus-separable-convolution compliance:
///  - every normal-cell primitive outside {sep_conv_3x3, sep_conv_5x5,
///    skip_connect} is replaced;
///  - if no input-origin skip exists, one is created by converting the
///    input-origin edge whose primitive is cheapest to lose (pooling,
///    then dilated, then separable convolutions; ties by edge address);
///  - skips between intermediate nodes become a separable convolution,
///    chosen uniformly at random;
///  - wiring is never altered, and the reduce cell is set identical to
///    the edited normal cell.
/// The distance counts every normal-cell primitive replacement.
EditReport edit_to_compliance(const Architecture& arch, Rng& rng, const EditOptions& opts = {});

/// Hamming distance over normal-cell primitive slots. Requires
/// identical normal-cell wiring; throws std::invalid_argument otherwise.
int edit_distance(const Architecture& a, const Architecture& b);

}  // namespace cellscope

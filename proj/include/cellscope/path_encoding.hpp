#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cellscope/cell.hpp"
#include "cellscope/rng.hpp"

namespace cellscope {

/// One input-to-output path through a cell: which input it starts at
/// and the primitive sequence along the way.
struct PathKey {
  int input = 0;  // 0 or 1 (NB201: always 0)
  std::vector<Primitive> ops;

  friend bool operator==(const PathKey&, const PathKey&) = default;
  friend auto operator<=>(const PathKey&, const PathKey&) = default;
};

/// All raw input->output paths of the cell, in depth-first order. In
/// DARTS every intermediate node reaches the output through the fixed
/// concatenation; in NB201 paths end at the last node.
std::vector<PathKey> enumerate_paths(const Cell& cell, const SpaceSpec& spec);

/// Frequency-truncated path vocabulary for a space. The untruncated
/// path set is far too wide to be a usable feature vector, so the
/// vocabulary keeps the `dimension` most frequent paths over a seeded
/// sampling corpus (ties broken by key order).
class PathVocabulary {
 public:
  static constexpr int kDefaultDimension = 2048;
  static constexpr int kDefaultCorpus = 100000;

  static PathVocabulary build(const SpaceSpec& spec, int dimension, std::uint64_t seed,
                              int corpus_size = kDefaultCorpus);

  const SpaceSpec& space() const { return spec_; }
  int dimension() const { return static_cast<int>(keys_.size()); }
  const std::vector<PathKey>& keys() const { return keys_; }
  int index_of(const PathKey& key) const;  // -1 when truncated away

 private:
  SpaceSpec spec_;
  std::vector<PathKey> keys_;
  std::map<PathKey, int> index_;
};

/// Binary indicator vector over the vocabulary: bit i set iff path i
/// exists in the cell. Invariant under within-node edge reordering.
/// Throws DataError when the vocabulary was built for another space.
std::vector<std::uint8_t> path_encode(const Cell& cell, const SpaceSpec& spec,
                                      const PathVocabulary& vocabulary);

}  // namespace cellscope

#include "cellscope/path_encoding.hpp"

#include <algorithm>
#include <functional>

#include "cellscope/errors.hpp"
#include "cellscope/sampler.hpp"

namespace cellscope {

std::vector<PathKey> enumerate_paths(const Cell& cell, const SpaceSpec& spec) {
  std::vector<PathKey> out;
  std::vector<Primitive> ops;

  if (spec.kind == SpaceKind::darts) {
    // out-adjacency over source coding: src 0,1 inputs, 2+t intermediates
    std::function<void(int, int)> walk = [&](int node, int input) {
      if (node >= 2) out.push_back({input, ops});  // reaches out via concat
      for (const Edge& e : cell.edges()) {
        if (e.src != node) continue;
        ops.push_back(e.op);
        walk(2 + e.dst, input);
        ops.pop_back();
      }
    };
    for (int input = 0; input < 2; ++input) walk(input, input);
  } else {
    int last = spec.nodes() - 1;
    std::function<void(int)> walk = [&](int node) {
      if (node == last) {
        out.push_back({0, ops});
        return;
      }
      for (const Edge& e : cell.edges()) {
        if (e.src != node || e.op == Primitive::none) continue;
        ops.push_back(e.op);
        walk(e.dst);
        ops.pop_back();
      }
    };
    walk(0);
  }
  return out;
}

PathVocabulary PathVocabulary::build(const SpaceSpec& spec, int dimension, std::uint64_t seed,
                                     int corpus_size) {
  Rng rng(seed);
  std::map<PathKey, long long> freq;
  for (int i = 0; i < corpus_size; ++i) {
    Architecture arch = sample(spec, {}, rng);
    for (const PathKey& k : enumerate_paths(arch.normal, spec)) ++freq[k];
    if (arch.reduce) {
      for (const PathKey& k : enumerate_paths(*arch.reduce, spec)) ++freq[k];
    }
  }
  std::vector<std::pair<const PathKey*, long long>> ranked;
  ranked.reserve(freq.size());
  for (const auto& [k, n] : freq) ranked.emplace_back(&k, n);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return *a.first < *b.first;
  });
  if (static_cast<int>(ranked.size()) > dimension) {
    ranked.resize(static_cast<std::size_t>(dimension));
  }

  PathVocabulary v;
  v.spec_ = spec;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    v.keys_.push_back(*ranked[i].first);
    v.index_.emplace(*ranked[i].first, static_cast<int>(i));
  }
  return v;
}

int PathVocabulary::index_of(const PathKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::uint8_t> path_encode(const Cell& cell, const SpaceSpec& spec,
                                      const PathVocabulary& vocabulary) {
  if (vocabulary.space().kind != spec.kind) {
    throw DataError("path vocabulary was built for a different space");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(vocabulary.dimension()), 0);
  for (const PathKey& k : enumerate_paths(cell, spec)) {
    int i = vocabulary.index_of(k);
    if (i >= 0) bits[static_cast<std::size_t>(i)] = 1;
  }
  return bits;
}

}  // namespace cellscope

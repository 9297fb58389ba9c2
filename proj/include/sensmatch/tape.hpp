#pragma once

// Identity-keyed randomness.
//
// Every draw is a pure function of (master seed, draw kind, invocation scope,
// structural key). Nothing depends on call order or on which edges happen to
// be present, so running an algorithm on G and on G-e with the same tape
// yields coupled executions.
//
// Key encoding (pinned; changing it changes every reproduced result):
//   mix64      = SplitMix64 finalizer
//   combine64  = mix64(h ^ mix64(word))
//   scope      = fold of combine64 over (label, index) frames, starting at
//                kRootScope
//   draw       = combine64 over [seed, kind, scope digest, key words...]
// Edges are keyed by their normalized endpoints (u < v).

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sensmatch/graph.hpp"

namespace sensmatch {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine64(std::uint64_t h, std::uint64_t word) noexcept {
  return mix64(h ^ mix64(word));
}

/// Top 53 bits as a double in [0, 1).
constexpr double unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

__extension__ typedef unsigned __int128 Uint128;

/// Maps 64 random bits onto [0, bound) (multiply-high reduction).
constexpr std::uint64_t reduce_below(std::uint64_t bits, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<Uint128>(bits) * bound) >> 64);
}

/// Frame labels of an InvocationPath.
enum class Frame : std::uint32_t {
  kInitialGreedy = 1,
  kPhase = 2,
  kRound = 3,
  kFindPathsIter = 4,
  kGreedyCall = 5,
  kWeightedOrder = 6,
  kOnline = 7,
  kTrial = 8,
  kUser = 100,
};

/// Identifies one algorithmic call site. Two executions with identical
/// parameters walk identical paths regardless of graph content.
class InvocationPath {
 public:
  static constexpr std::uint64_t kRootScope = 0x5ca1ab1e0ddba11ULL;

  InvocationPath() = default;

  InvocationPath child(Frame label, std::uint64_t index) const noexcept {
    InvocationPath p;
    p.digest_ = combine64(combine64(digest_, static_cast<std::uint64_t>(label)), index);
    p.depth_ = depth_ + 1;
    return p;
  }

  std::uint64_t digest() const noexcept { return digest_; }
  std::uint32_t depth() const noexcept { return depth_; }

  friend bool operator==(const InvocationPath&, const InvocationPath&) = default;

 private:
  std::uint64_t digest_ = kRootScope;
  std::uint32_t depth_ = 0;
};

/// Position of a matched edge in the layered graph.
struct MatchedSlot {
  Vertex upper = 0;  ///< endpoint on the side of the higher layers
  Vertex lower = 0;
  std::uint32_t layer = 1;  ///< in [1, l]

  friend bool operator==(const MatchedSlot&, const MatchedSlot&) = default;
};

class RandomTape {
 public:
  enum class Kind : std::uint64_t {
    kEdgeRank = 1,
    kFreeSide = 2,
    kMatchedSlot = 3,
    kLayeredPair = 4,
    kVertexRank = 5,
    kDerivedSeed = 6,
  };

  explicit RandomTape(std::uint64_t seed = 0) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Raw 64-bit draw for an arbitrary structural key.
  std::uint64_t bits(Kind kind, const InvocationPath& scope,
                     std::initializer_list<std::uint64_t> key) const noexcept {
    std::uint64_t h = combine64(mix64(seed_), static_cast<std::uint64_t>(kind));
    h = combine64(h, scope.digest());
    for (std::uint64_t w : key) h = combine64(h, w);
    return h;
  }

  std::uint64_t edge_rank_bits(Edge e, const InvocationPath& scope) const noexcept {
    return bits(Kind::kEdgeRank, scope, {e.u, e.v});
  }
  /// Uniform in [0, 1). Restricting ranks to any edge subset gives a uniformly
  /// random order of that subset.
  double edge_rank(Edge e, const InvocationPath& scope) const noexcept {
    return unit_interval(edge_rank_bits(e, scope));
  }

  /// 0 or l+1, each with probability 1/2.
  std::uint32_t free_vertex_side(Vertex v, std::uint32_t path_param,
                                 const InvocationPath& scope) const noexcept {
    return (bits(Kind::kFreeSide, scope, {v}) >> 63) ? path_param + 1 : 0;
  }

  /// Uniform over the 2*l (orientation, layer) outcomes.
  MatchedSlot matched_edge_slot(Edge e, std::uint32_t path_param,
                                const InvocationPath& scope) const noexcept {
    const std::uint64_t cell = reduce_below(bits(Kind::kMatchedSlot, scope, {e.u, e.v}),
                                            2ULL * path_param);
    MatchedSlot slot;
    if (cell % 2 == 0) {
      slot.upper = e.u;
      slot.lower = e.v;
    } else {
      slot.upper = e.v;
      slot.lower = e.u;
    }
    slot.layer = static_cast<std::uint32_t>(cell / 2) + 1;
    return slot;
  }

  std::uint64_t vertex_rank_bits(Vertex v, const InvocationPath& scope) const noexcept {
    return bits(Kind::kVertexRank, scope, {v});
  }

  /// Independent tape for trial `index` of an experiment seeded with seed().
  RandomTape derive(std::uint64_t index) const noexcept {
    return RandomTape(bits(Kind::kDerivedSeed, InvocationPath{}, {index}));
  }

 private:
  std::uint64_t seed_;
};

/// Sequential generator for instance construction (not for coupled draws).
/// std::mt19937_64 is bit-exact across platforms; the conversions below are
/// fixed here because std distributions are implementation-defined.
class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return unit_interval(engine_()); }
  std::uint64_t below(std::uint64_t bound) { return reduce_below(engine_(), bound); }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sensmatch

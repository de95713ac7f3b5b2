#pragma once

#include <array>
#include <cstdint>

namespace amsp {

// Philox 4x64 counter-based block cipher, 10 rounds (Salmon, Moraes, Dror,
// Shaw, SC 2011).  The block function is bit-compatible with
// numpy.random.Philox; note numpy's generator advances its counter before
// producing each block, so it emits blocks counter+1, counter+2, ...
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

// Identifier of an independent random stream.  Identical identifiers
// reproduce identical draw sequences; distinct identifiers give
// statistically independent streams.
//
//   seed    — experiment-level seed
//   run     — repetition index within an experiment
//   replica — path / particle index
//   branch  — incremented every time a particle is re-branched (cloned)
//   domain  — separates path randomness (0) from algorithm-level
//             decisions such as kill-subset and parent draws (1)
struct StreamId {
  std::uint64_t seed = 0;
  std::uint32_t run = 0;
  std::uint32_t replica = 0;
  std::uint64_t branch = 0;
  std::uint32_t domain = 0;
};

// Counter-based random stream.  Copyable; a copy continues the same
// sequence independently of the original.  When `mirrored` is set the
// stream yields the antithetic images of the base draws: uniforms are
// reflected u -> 1-u and gaussians negated (exact on the 52-bit grid).
class RngStream {
 public:
  RngStream() : RngStream(StreamId{}) {}
  explicit RngStream(const StreamId& id);
  RngStream(std::uint64_t seed, std::uint32_t run, std::uint32_t replica,
            std::uint64_t branch = 0, std::uint32_t domain = 0)
      : RngStream(StreamId{seed, run, replica, branch, domain}) {}

  const StreamId& id() const { return id_; }
  bool mirrored() const { return mirrored_; }

  // Returns a copy producing the antithetic draw sequence.
  RngStream mirrored_copy() const;

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1), 52-bit resolution.
  double uniform();

  // Standard normal via inverse-CDF of uniform(); one u64 per draw.
  double gaussian();

  // Uniform integer in [0, n), unbiased (rejection sampling).  n >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  void refill();

  StreamId id_{};
  std::array<std::uint64_t, 2> key_{};
  std::array<std::uint64_t, 4> counter_{};
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
  bool mirrored_ = false;
};

}  // namespace amsp

#include "amsp/rng.hpp"

#include <stdexcept>

#include "amsp/math.hpp"

namespace amsp {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline void philox_round(std::array<std::uint64_t, 4>& x,
                         const std::array<std::uint64_t, 2>& k) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, x[0], hi0, lo0);
  mulhilo(kPhiloxM1, x[2], hi1, lo1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    philox_round(counter, key);
  }
  return counter;
}

RngStream::RngStream(const StreamId& id) : id_(id) {
  key_ = {id.seed, 0x243F6A8885A308D3ULL};
  counter_ = {0, id.branch,
              (static_cast<std::uint64_t>(id.domain) << 32) | id.replica,
              static_cast<std::uint64_t>(id.run)};
}

RngStream RngStream::mirrored_copy() const {
  RngStream s = *this;
  s.mirrored_ = !mirrored_;
  return s;
}

void RngStream::refill() {
  buf_ = philox4x64(counter_, key_);
  pos_ = 0;
  for (int i = 0; i < 4; ++i) {
    if (++counter_[i] != 0) break;  // carry, matching numpy semantics
  }
}

std::uint64_t RngStream::next_u64() {
  if (pos_ == 4) refill();
  return buf_[pos_++];
}

double RngStream::uniform() {
  // (k + 0.5) * 2^-52 with k < 2^52: every grid point is an exact double
  // strictly inside (0,1), and the grid is exactly closed under
  // u -> 1-u, so antithetic reflection loses nothing.  (A 53-bit k would
  // make k + 0.5 a rounding tie for k >= 2^52, letting u collapse to
  // 1.0 at the top of the range.)
  double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  return mirrored_ ? 1.0 - u : u;
}

double RngStream::gaussian() {
  double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  double z = norm_inv(u);
  return mirrored_ ? -z : z;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below: n must be >= 1");
  if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
  std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

}  // namespace amsp

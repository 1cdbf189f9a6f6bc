#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace rmt {

/// Philox-4x32 with 10 rounds. Counter-based: the output block is a pure
/// function of (key, counter), so substreams can be addressed directly
/// without sequential state. Constants are the published ones.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
          std::uint32_t(p1),
          std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
          std::uint32_t(p0),
      };
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// One reproducible noise substream, addressed by (master_seed, trial_index,
/// purpose). Distinct addresses give statistically independent streams and
/// the draw sequence is identical regardless of which thread consumes it.
/// Normals come from Box-Muller on Philox uniforms, so the bit pattern is
/// fixed by the address alone. trial_index must fit in 56 bits and purpose
/// in 8.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t master_seed, std::uint64_t trial_index,
              std::uint32_t purpose = 0)
      : key_{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)},
        trial_lo_(std::uint32_t(trial_index)),
        trial_hi_tag_(std::uint32_t(trial_index >> 32) |
                      (purpose << 24)) {}

  /// Uniform in (0, 1].
  double next_uniform() {
    return to_unit(next_u64());
  }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const auto b = next_block();
    const double u1 = to_unit(join(b[0], b[1]));
    const double u2 = to_unit(join(b[2], b[3]));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  void fill_normal(std::span<double> out) {
    for (double& x : out) x = next_normal();
  }

 private:
  std::array<std::uint32_t, 4> next_block() {
    const std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(block_index_), std::uint32_t(block_index_ >> 32),
        trial_lo_, trial_hi_tag_};
    ++block_index_;
    return Philox4x32::block(ctr, key_);
  }

  std::uint64_t next_u64() {
    const auto b = next_block();
    return join(b[0], b[1]);
  }

  static std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
    return std::uint64_t(lo) | (std::uint64_t(hi) << 32);
  }

  // (x >> 11) is 53 random bits; +1 keeps the value strictly positive so
  // log() in Box-Muller is always finite.
  static double to_unit(std::uint64_t x) {
    return double((x >> 11) + 1) * 0x1.0p-53;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint32_t trial_lo_;
  std::uint32_t trial_hi_tag_;
  std::uint64_t block_index_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rmt

#pragma once

#include <cstdint>

namespace mobo {

/// Finalizer step of the splitmix64 generator. Bijective on uint64.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent child seed from a master seed, a stream tag and a
/// counter. Used everywhere a component needs its own reproducible stream,
/// so that reordering or parallelizing consumers cannot change the draws.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t counter);

// Stream tags. Each consumer of derive_seed owns one so that no two
// components ever share a sequence.
inline constexpr std::uint64_t kStreamHypervolumeMc = 0x48564d43;  // "HVMC"
inline constexpr std::uint64_t kStreamEhviMc = 0x45485649;         // "EHVI"
inline constexpr std::uint64_t kStreamWarmStart = 0x5741524d;      // "WARM"
inline constexpr std::uint64_t kStreamGpFit = 0x47504649;          // "GPFI"
inline constexpr std::uint64_t kStreamProposal = 0x50524f50;       // "PROP"
inline constexpr std::uint64_t kStreamIteration = 0x49544552;      // "ITER"
inline constexpr std::uint64_t kStreamDataset = 0x44415441;        // "DATA"

/// Small deterministic generator with identical output on every platform.
/// std::mt19937 would also be portable but the distributions on top of it
/// are not, so uniforms and normals are produced here directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1) with 53 random mantissa bits.
  double uniform();

  /// Uniform draw in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller. Draws are cached in pairs.
  double normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mobo

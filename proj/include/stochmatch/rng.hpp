#pragma once

#include <array>
#include <cstdint>

namespace stochmatch {

// Counter-based generator (Philox4x32-10). Every random quantity in the
// library is a pure function of (seed, domain, trial, index), so results do
// not depend on how work is split across threads.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

// SplitMix64 finalizer; used to derive sub-seeds and tie-break scores.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt + 0x632be59bd9b4e019ull));
}

// Separates the random streams used by different parts of an experiment.
enum class Domain : std::uint32_t {
  kStats = 1,        // q / OPT estimation trials
  kBuild = 2,        // Algorithm 1 rounds
  kEvaluate = 3,     // evaluation of a query set
  kHidden = 4,       // hidden ground truth of adaptive runs
  kAdaptive = 5,     // conditional realizations inside adaptive rounds
  kProcedure = 6,    // fresh realization handed to the analysis procedures
  kConditional = 7,  // resampling inside sample_crucial_matching
  kGenerator = 8,    // random instance generation
  kMisc = 9,
};

// A keyed stream: draw(i) returns 64 random bits for index i of `trial`.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, Domain domain, std::uint64_t trial)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        trial_(trial),
        domain_(static_cast<std::uint32_t>(domain)) {}

  // 128 random bits for block `block`.
  std::array<std::uint64_t, 2> block(std::uint32_t block) const {
    const auto out = Philox4x32::generate(
        {block, static_cast<std::uint32_t>(trial_),
         static_cast<std::uint32_t>(trial_ >> 32), domain_},
        key_);
    return {(std::uint64_t{out[1]} << 32) | out[0],
            (std::uint64_t{out[3]} << 32) | out[2]};
  }

  std::uint64_t bits(std::uint64_t index) const {
    return block(static_cast<std::uint32_t>(index >> 1))[index & 1];
  }

  double uniform(std::uint64_t index) const { return to_unit(bits(index)); }

  static double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t trial_;
  std::uint32_t domain_;
};

// Sequential engine on top of a CounterStream, for code that just needs
// "the next number" (generators, sampling inside a single trial).
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  StreamEngine(std::uint64_t seed, Domain domain, std::uint64_t trial)
      : stream_(seed, domain, trial) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return stream_.bits(next_++); }
  double uniform() { return CounterStream::to_unit((*this)()); }

 private:
  CounterStream stream_;
  std::uint64_t next_ = 0;
};

// Integer threshold t with P(bits < t) = prob for uniform 64-bit `bits`.
inline std::uint64_t bernoulli_threshold(double prob) {
  if (prob <= 0.0) return 0;
  if (prob >= 1.0) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(prob * 0x1.0p64);
}

}  // namespace stochmatch

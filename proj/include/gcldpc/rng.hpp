#ifndef GCLDPC_RNG_HPP
#define GCLDPC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace gcldpc {

/// Counter-based generator (splitmix64 finalizer over key + counter).
/// Output depends only on (key, counter), so independent streams keyed by
/// e.g. (seed, snr index, frame index) are reproducible across platforms
/// and schedule-independent under any worker partition.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0)
    {
        std::uint64_t k = mix(seed + 0x632BE59BD9B4E019ULL);
        k = mix(k ^ mix(a + 0x9E3779B97F4A7C15ULL));
        k = mix(k ^ mix(b + 0xD1B54A32D192ED03ULL));
        return k;
    }

    std::uint64_t next_u64() { return at(ctr_++); }

    /// Value at an absolute counter position, independent of call order.
    std::uint64_t at(std::uint64_t ctr) const
    {
        return mix(key_ + 0x9E3779B97F4A7C15ULL * (ctr + 1));
    }

    bool next_bit() { return (next_u64() >> 63) & 1; }

    /// Uniform in (0, 1].
    double next_unit()
    {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound)
    {
        // Modulo is fine here: bounds are tiny next to 2^64.
        return next_u64() % bound;
    }

    /// Standard normal via Box-Muller; consumes two draws per sample.
    double next_gaussian()
    {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace gcldpc

#endif  // GCLDPC_RNG_HPP

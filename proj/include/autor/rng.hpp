#ifndef AUTOR_RNG_HPP
#define AUTOR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace autor {

// Counter-based random stream. Every draw is a pure function of
// (key, counter), so independent streams can be derived for parallel
// work and replayed bit-identically regardless of thread count.
//
// Streams are derived as hash(seed, purpose-string, index); the
// generator itself is a strengthened SplitMix64 walked by counter.
class Rng {
  public:
    explicit Rng(std::uint64_t key) : key_(key), counter_(0) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t hash_string(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Derive a child stream; stream(seed, "x", i) != stream(seed, "x", j).
    static Rng stream(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0) {
        std::uint64_t k = mix(seed);
        k = mix(k ^ hash_string(purpose));
        k = mix(k ^ index);
        return Rng(k);
    }

    Rng substream(std::string_view purpose, std::uint64_t index = 0) const {
        std::uint64_t k = mix(key_ ^ hash_string(purpose));
        return Rng(mix(k ^ index));
    }

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    // standard normal via Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // exponential with unit rate
    double exponential() {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log(u);
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace autor

#endif

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tandem {

// splitmix64; used only for seed derivation, never as a loss stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Named substream seed: mix(master, episode) xor'd with the label hash and
// mixed again. Distinct labels give independent-looking streams and the
// derivation is reproducible across runs and thread schedules.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t episode_index,
                                        std::string_view label) {
    const std::uint64_t base = splitmix64(master_seed ^ splitmix64(episode_index + 1));
    return splitmix64(base ^ fnv1a64(label));
}

// mt19937_64 with uniform/bernoulli draws built from raw 64-bit output, so
// streams are identical across standard libraries (std distributions are
// implementation-defined).
class RandomStream {
  public:
    RandomStream() : engine_(0) {}
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to remove modulo bias
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x > limit);
        return x % n;
    }

  private:
    std::mt19937_64 engine_;
};

// The named substreams one episode may consume. "shared" models the shared
// randomness (Theta, U) both players see before the game starts; the loss
// streams are the environment's.
struct EpisodeStreams {
    RandomStream shared;
    RandomStream loss;       // SharedBandit loss sequence
    RandomStream loss_a;     // IndependentFullInfo, player A
    RandomStream loss_b;     // IndependentFullInfo, player B
    RandomStream instance;   // instance sampling

    static EpisodeStreams make(std::uint64_t master_seed, std::uint64_t episode_index) {
        EpisodeStreams s;
        s.shared = RandomStream(derive_stream_seed(master_seed, episode_index, "shared"));
        s.loss = RandomStream(derive_stream_seed(master_seed, episode_index, "loss"));
        s.loss_a = RandomStream(derive_stream_seed(master_seed, episode_index, "loss_a"));
        s.loss_b = RandomStream(derive_stream_seed(master_seed, episode_index, "loss_b"));
        s.instance = RandomStream(derive_stream_seed(master_seed, episode_index, "instance"));
        return s;
    }
};

}  // namespace tandem

#pragma once

#include <cstdint>
#include <vector>

namespace regtri {

// SplitMix64 stream generator. Deterministic across platforms and compilers,
// unlike std::uniform_int_distribution. split() derives independent child
// streams from (seed, stream-id) so parallel shards never share state.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        state_ = mix(seed ^ 0x7c159e3779b97f4aULL);
        state_ = mix(state_ + mix(stream));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from {0, ..., bound-1}; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t floor = (0 - bound) % bound;
            while (lo < floor) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0,1) with 53 random bits.
    double real01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    Rng split(std::uint64_t stream) const {
        Rng child(0);
        child.state_ = mix(state_ ^ mix(stream + 0x9e3779b97f4a7c15ULL));
        return child;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_ = 0;
};

} // namespace regtri

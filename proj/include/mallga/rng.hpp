#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

namespace mallga {

// xoshiro256** with splitmix64 seeding (Blackman/Vigna). Used instead of the
// std distributions so that streams are reproducible across platforms and
// compiler versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    std::uint64_t u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, n), n > 0; Lemire's multiply-shift
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t x = u64();
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * n) >> 64);
    }

    // uniform integer in [lo, hi], inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // uniform in [0, 1)
    double real01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool bernoulli(double p) { return real01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    // Independent stream derived from this rng's original seed and a tag.
    Rng substream(std::uint64_t tag) const { return Rng(mix(seed_, tag)); }
    Rng substream(std::string_view tag) const { return substream(fnv1a(tag)); }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
        return splitmix64(x);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t s_[4];
};

}  // namespace mallga

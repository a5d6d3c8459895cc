#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace fliplab {

// Seedable, portable random source. mt19937_64 output is pinned by the C++
// standard, so a (generator id, seed) pair reproduces every run bit for bit;
// both are recorded in certificates and run manifests.
class Prng {
  public:
    static constexpr const char* kId = "mt19937_64";

    explicit Prng(uint64_t seed) : seed_(seed), gen_(seed) {}

    static Prng from_seed_string(const std::string& s) {
        size_t pos = 0;
        uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad seed: " + s);
        return Prng(v);
    }

    uint64_t seed() const { return seed_; }
    std::string seed_string() const { return std::to_string(seed_); }

    uint64_t next_u64() { return gen_(); }

    bool next_bit() { return (gen_() >> 63) != 0; }

    // Uniform in [0, n).
    uint64_t next_below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below(0)");
        uint64_t lim = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do {
            v = gen_();
        } while (v >= lim);
        return v % n;
    }

    int64_t next_in(int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

  private:
    uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace fliplab

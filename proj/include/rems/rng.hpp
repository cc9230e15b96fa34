#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rems {

// Deterministic RNG. All sampling goes through the helpers below instead of
// std distributions, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    int uniform_int(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    // Uniform double in [0, 1).
    double uniform01() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

    // Uniform index into a container of the given size. Requires size > 0.
    std::size_t uniform_index(std::size_t size) { return static_cast<std::size_t>(next() % size); }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[uniform_index(v.size())];
    }

private:
    std::mt19937_64 eng_;
};

} // namespace rems

#include "evospread/rng.hpp"

#include <cmath>

namespace evospread {

Engine make_stream(std::uint64_t master_seed, std::uint64_t index, StreamTag tag) {
    const auto t = static_cast<std::uint64_t>(tag);
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(t),
        0x65766f73u,  // "evos"
    };
    return Engine(seq);
}

double exponential(Engine& engine, double rate) {
    // 1 - u lies in (0, 1], so the log is finite.
    return -std::log(1.0 - uniform01(engine)) / rate;
}

std::uint64_t uniform_index(Engine& engine, std::uint64_t bound) {
    // Lemire-style rejection keeps the draw exactly uniform.
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    std::uint64_t v;
    do {
        v = engine();
    } while (v > limit);
    return v % bound;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace evospread

#pragma once

#include <cstdint>
#include <random>

namespace evospread {

using Engine = std::mt19937_64;

/// Stream tags keep graph generation and dynamics on disjoint streams.
enum class StreamTag : std::uint64_t {
    Simulation = 0,
    Graph = 1,
    FixedGraph = 2,
};

/// Derives an independent engine from (master_seed, index, tag) through
/// std::seed_seq mixing. The same triple always yields the same engine.
Engine make_stream(std::uint64_t master_seed, std::uint64_t index,
                   StreamTag tag = StreamTag::Simulation);

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Exponential waiting time with the given positive rate.
double exponential(Engine& engine, double rate);

/// Uniform integer in [0, bound).
std::uint64_t uniform_index(Engine& engine, std::uint64_t bound);

/// Seed drawn from std::random_device, for runs without an explicit seed.
std::uint64_t entropy_seed();

}  // namespace evospread

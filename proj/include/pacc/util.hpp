#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace pacc {

// ---------------------------------------------------------------------------
// Deterministic randomness. All stochastic behavior in the toolkit goes
// through these helpers; distributions are derived from raw engine output so
// results do not depend on the standard library's distribution internals.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n). Modulo bias is irrelevant at 64-bit range.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

/// Standard normal via Box-Muller on engine-derived uniforms.
inline double normal(Rng& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// In-place Fisher-Yates shuffle with an explicit engine.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Stable sub-seed derivation so independent consumers (epoch shuffles,
/// dropout masks, data generators) never share a stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t step = 0) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(base);
    mix(stream);
    mix(step);
    return h;
}

// ---------------------------------------------------------------------------
// FNV-1a content hashing (used for run provenance records).
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ull) {
    return fnv1a(s.data(), s.size(), seed);
}

// ---------------------------------------------------------------------------
// Little-endian scalar packing for the binary file formats.
// ---------------------------------------------------------------------------

template <typename T>
void put_le(std::string& out, T value) {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const unsigned char* p) {
    static_assert(std::is_integral_v<T>);
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(p[i]) << (8 * i);
    return static_cast<T>(u);
}

inline void put_f32_le(std::string& out, float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    put_le<std::uint32_t>(out, u);
}

inline void put_f64_le(std::string& out, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    put_le<std::uint64_t>(out, u);
}

inline float get_f32_le(const unsigned char* p) {
    std::uint32_t u = get_le<std::uint32_t>(p);
    float v;
    std::memcpy(&v, &u, 4);
    return v;
}

inline double get_f64_le(const unsigned char* p) {
    std::uint64_t u = get_le<std::uint64_t>(p);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

// ---------------------------------------------------------------------------
// Bounded parallel loop. Thread count is capped by the PACC_THREADS
// environment variable; work is pre-partitioned by index so results are
// identical to the sequential order no matter how many threads run.
// ---------------------------------------------------------------------------

inline unsigned max_threads() {
    if (const char* env = std::getenv("PACC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned threads = max_threads();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += threads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace pacc

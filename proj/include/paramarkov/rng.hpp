#pragma once

#include <cmath>
#include <cstdint>

namespace paramarkov {

// Deterministic 64-bit generator with named streams: a 128-bit LCG with
// XSL-RR output (PCG64 construction, period 2^128). Distinct stream ids
// select distinct odd increments, so streams are independent sequences by
// construction and a (seed, stream_id) pair always reproduces bit-identical
// output. One stream per Monte Carlo replica.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        const unsigned __int128 init_seq =
            ((unsigned __int128)splitmix(stream_id ^ 0xda3e39cb94b95bdbULL) << 64) |
            splitmix(stream_id + 0x9e3779b97f4a7c15ULL);
        inc_ = (init_seq << 1) | 1u;
        state_ = 0;
        step();
        const unsigned __int128 s =
            ((unsigned __int128)splitmix(seed ^ 0x853c49e6748fea9bULL) << 64) | splitmix(seed);
        state_ += s;
        step();
    }

    std::uint64_t next_u64() {
        step();
        const std::uint64_t xored = (std::uint64_t)(state_ >> 64) ^ (std::uint64_t)state_;
        const unsigned rot = (unsigned)(state_ >> 122);
        return (xored >> rot) | (xored << ((-rot) & 63u));
    }

    // Uniform on (0,1); never returns 0, so log() is always safe.
    double uniform() {
        return ((double)(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    void step() { state_ = state_ * kMult + inc_; }

    static constexpr unsigned __int128 kMult =
        ((unsigned __int128)2549297995355413924ULL << 64) | 4865540595714422341ULL;

    unsigned __int128 state_;
    unsigned __int128 inc_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

} // namespace paramarkov

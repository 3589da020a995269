#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rqip {

// Deterministic, label-derived random streams (xoshiro256++ core).
//
// Every stochastic routine in the library takes an explicit Rng. A stream is
// identified by a 64-bit key derived from (master seed, label); substreams
// are derived from (parent key, index or label). Two streams with the same
// derivation path produce bit-identical output, independent of how work is
// scheduled across threads.
class Rng {
public:
    Rng(std::uint64_t master_seed, std::string_view label);

    // Substream for a work unit (trial index, support index, cell index...).
    Rng child(std::uint64_t index) const;
    Rng child(std::string_view label) const;

    std::uint64_t next_u64();

    // Uniform on the open interval (0,1).
    double uniform01();

    // Uniform on the open interval (-pi/2, pi/2).
    double uniform_angle();

    // Standard exponential, Exp(1).
    double exponential();

    // Standard normal via Box-Muller.
    double normal();

    // Gamma(shape, 1) via Marsaglia-Tsang, with the usual shape<1 boost.
    double gamma_variate(double shape);

    const std::string& label() const { return label_; }
    std::uint64_t key() const { return key_; }

private:
    struct FromKey {};
    Rng(FromKey, std::uint64_t key, std::string label);

    std::uint64_t key_;
    std::uint64_t state_[4];
    std::string label_;
};

}  // namespace rqip

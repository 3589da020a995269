#include "rqip/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "rqip/errors.hpp"

namespace rqip {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::string_view label)
    : Rng(FromKey{}, mix(master_seed, fnv1a(label)), std::string(label)) {}

Rng::Rng(FromKey, std::uint64_t key, std::string label) : key_(key), label_(std::move(label)) {
    std::uint64_t s = key_;
    for (auto& w : state_) w = splitmix64(s);
    // xoshiro state must not be all-zero; splitmix output makes that
    // astronomically unlikely, but guard anyway.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
}

Rng Rng::child(std::uint64_t index) const {
    return Rng(FromKey{}, mix(key_, index), label_ + "/" + std::to_string(index));
}

Rng Rng::child(std::string_view label) const {
    return Rng(FromKey{}, mix(key_, fnv1a(label)), label_ + "/" + std::string(label));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double Rng::uniform01() {
    // 53 random bits; reject exact zero to stay in the open interval.
    for (;;) {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double Rng::uniform_angle() {
    return std::numbers::pi * (uniform01() - 0.5);
}

double Rng::exponential() {
    return -std::log(uniform01());
}

double Rng::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma_variate(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma_variate: shape must be positive");
    if (shape < 1.0) {
        const double boost = std::pow(uniform01(), 1.0 / shape);
        return gamma_variate(shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace rqip

#include "wegan/rng.hpp"

#include <cmath>
#include <numbers>

namespace wegan {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed ^ rotl(salt, 17);
    splitmix64(s);
    return splitmix64(s) ^ salt;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

RngStream RngStream::child(std::string_view name) const { return RngStream(derive(seed_, fnv1a(name))); }

RngStream RngStream::child(std::string_view name, std::uint64_t index) const {
    std::uint64_t s = index;
    return RngStream(derive(derive(seed_, fnv1a(name)), splitmix64(s)));
}

std::uint64_t RngStream::next_u64() {
    ++draws_;
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RngStream::below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<u128>(next_u64()) * n) >> 64);
}

double RngStream::normal() {
    if (spare_normal_) {
        const double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    return r * std::cos(theta);
}

}  // namespace wegan

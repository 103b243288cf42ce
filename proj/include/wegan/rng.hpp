#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace wegan {

/// SplitMix64 step. Used for seeding and for deriving child-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seeded, splittable random stream.
///
/// Generator: xoshiro256** with its state filled from SplitMix64(seed).
/// Uniforms take the top 53 bits of a draw. Normals use the Box-Muller
/// transform on two uniforms, u1 in (0,1] and u2 in [0,1):
///   r = sqrt(-2 ln u1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2)
/// z0 is returned first and z1 is kept for the next normal() call.
///
/// child(name) derives an independent stream from this stream's seed and a
/// FNV-1a hash of the name; it does not consume draws from the parent.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    RngStream child(std::string_view name) const;
    RngStream child(std::string_view name, std::uint64_t index) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Standard normal variate.
    double normal();

    std::uint64_t draws() const { return draws_; }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
    std::optional<double> spare_normal_;
    std::uint64_t draws_ = 0;
};

}  // namespace wegan

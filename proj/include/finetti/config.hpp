#pragma once

#include <cstdint>
#include <random>

namespace finetti {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 26;

/// Enumeration cap in effect for the process: the last set_enumeration_cap
/// value, else FINETTI_CAP when set to a positive integer, else
/// kDefaultEnumerationCap.
std::uint64_t default_enumeration_cap();
void set_enumeration_cap(std::uint64_t cap);

/// Slack used when float evaluations of analytic inequalities are compared.
inline constexpr double kInequalitySlack = 1e-12;

/// Seeded 64-bit Mersenne Twister with bounded draws defined here rather
/// than through <random> distributions, whose outputs vary across standard
/// libraries. Same seed, same stream, on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t draw = engine_();
        while (draw >= limit) draw = engine_();
        return draw % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace finetti

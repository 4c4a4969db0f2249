#pragma once

// Seeded generators for property tests. Everything is drawn from SeededRng
// so a failing case reproduces from its seed.

#include "finetti/exchangeable.hpp"
#include "finetti/types.hpp"

#include <vector>

namespace finetti::testing {

/// Rational PMF on `size` outcomes with denominators up to `resolution`.
/// Some entries may be zero unless full_support is set.
inline Pmf random_rational_pmf(SeededRng& rng, std::size_t size, std::uint64_t resolution = 30,
                               bool full_support = false) {
    std::vector<std::uint64_t> raw(size);
    std::uint64_t total = 0;
    while (total == 0) {
        total = 0;
        for (auto& r : raw) {
            r = rng.below(resolution) + (full_support ? 1 : 0);
            total += r;
        }
    }
    std::vector<Rational> probs;
    probs.reserve(size);
    for (auto r : raw) {
        Rational p{Integer(r), Integer(total)};
        p.canonicalize();
        probs.push_back(p);
    }
    return Pmf(std::move(probs));
}

/// Float PMF from exponential-ish weights; zeros appear with probability
/// zero_rate per entry (at least one entry stays positive).
inline FloatPmf random_float_pmf(SeededRng& rng, std::size_t size, double zero_rate = 0.0) {
    std::vector<double> w(size);
    double total = 0.0;
    while (total == 0.0) {
        total = 0.0;
        for (auto& x : w) {
            x = rng.unit() < zero_rate ? 0.0 : -std::log1p(-rng.unit());
            total += x;
        }
    }
    for (auto& x : w) x /= total;
    // Push the rounding residue into the largest entry.
    double sum = 0.0;
    std::size_t big = 0;
    for (std::size_t i = 0; i < size; ++i) {
        sum += w[i];
        if (w[i] > w[big]) big = i;
    }
    w[big] += 1.0 - sum;
    return FloatPmf(std::move(w));
}

inline TypeVector random_type(SeededRng& rng, std::uint32_t m, Count n) {
    std::vector<Count> counts(m, 0);
    for (Count i = 0; i < n; ++i) ++counts[rng.below(m)];
    return TypeVector(std::move(counts));
}

inline std::vector<Symbol> random_string(SeededRng& rng, std::uint32_t m, std::size_t n) {
    std::vector<Symbol> x(n);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(m));
    return x;
}

/// All strings of length n over m symbols, in encode_string order.
inline std::vector<std::vector<Symbol>> all_strings(std::uint32_t m, std::uint32_t n) {
    std::vector<std::vector<Symbol>> out;
    const std::uint64_t total = block_space_size(m, n);
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(decode_string(i, m, n));
    return out;
}

}  // namespace finetti::testing

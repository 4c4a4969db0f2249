#pragma once

// The explicit finite de Finetti bound eps(n, k) and its end-to-end
// verification on exchangeable laws.

#include "finetti/exchangeable.hpp"
#include "finetti/types.hpp"

#include <optional>
#include <vector>

namespace finetti {

struct BoundParams {
    Count n = 0;
    std::uint32_t k = 0;
    std::uint32_t m = 0;
    double alpha = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;     // nats; +inf when the tail term overflows
    double log_tail = 0.0;    // log of k e^{-(n/k) delta} (n/k + 1)^{2 m^k} log n
    bool vacuous = false;     // epsilon saturated to +inf
    bool valid_range = false; // k <= (n/100)^{1/3}, i.e. 100 k^3 <= n
};

/// alpha = [(2k/sqrt n)((1+2k)/sqrt n + 1)]^{1/2}, delta = alpha log(m^k/alpha),
/// eps = 2 delta + k e^{-(n/k) delta} (n/k+1)^{2m^k} log n with the second
/// term assembled in log space.
BoundParams theorem_constants(Count n, std::uint32_t k, std::uint32_t m);

/// k * floor(n / k).
Count effective_n(Count n, std::uint32_t k);

/// 5 k^2 log n / (n - k), the earlier binary-alphabet bound. Throws
/// DomainError when k >= n.
double binary_reference_bound(Count n, std::uint32_t k);

struct TypeDiagnostic {
    TypeVector type;
    Rational weight;                 // mu(T)
    double conditional_divergence;   // D(law of X_1^k given type T || (T/n)^k)
};

enum class Backend { Exact, Float };

struct VerificationReport {
    BoundParams params;          // evaluated at effective_n
    Count n = 0;                 // length of the law
    Count effective_n = 0;
    bool remark2_adjusted = false;  // n was not a multiple of k
    double divergence = 0.0;     // D(P_k || M_{mu,k}) in nats
    bool exact_zero = false;     // P_k == M_{mu,k} as exact rationals
    bool exact_arithmetic = false;
    bool holds = false;          // divergence <= epsilon
    std::optional<double> binary_reference;
    std::vector<TypeDiagnostic> diagnostics;
};

/// Runs the full pipeline: mu, P_k, M_{mu,k}, D, eps(effective_n, k).
/// Exact rationals are used when backend is Exact and m^k <= 64.
VerificationReport verify_theorem(const ExchangeableLaw& law, std::uint32_t k, Backend backend = Backend::Exact,
                                  bool with_diagnostics = false);

struct ConvexityChain {
    double mixture_divergence = 0.0;     // D(P_k || M_{mu,k})
    double averaged_divergence = 0.0;    // sum_T mu(T) D(E[W | E_k(T)] || T^k)
    double expected_divergence = 0.0;    // sum_T mu(T) E[D(W || T^k) | E_k(T)]
    bool nondecreasing = false;
};

/// The three stages of the joint-convexity reduction. Stage two and three
/// come from enumerating the lattice points of E_k(T) for every type in the
/// support of mu; requires n to be a multiple of k.
ConvexityChain convexity_chain_gap(const ExchangeableLaw& law, std::uint32_t k,
                                   std::uint64_t cap = default_enumeration_cap());

}  // namespace finetti

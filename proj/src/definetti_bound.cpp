#include "finetti/definetti_bound.hpp"

#include "finetti/gibbs.hpp"
#include "finetti/info_measures.hpp"
#include "finetti/marginal_sets.hpp"

#include <cmath>
#include <limits>

namespace finetti {

namespace {
constexpr std::uint64_t kExactBlockLimit = 64;
}

BoundParams theorem_constants(Count n, std::uint32_t k, std::uint32_t m) {
    if (n < 1 || k < 1) throw InputError("theorem constants need n >= 1 and k >= 1");
    if (k > n) throw InputError("theorem constants need k <= n");
    if (m < 2) throw InputError("theorem constants need m >= 2");

    BoundParams p;
    p.n = n;
    p.k = k;
    p.m = m;
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double sqrt_n = std::sqrt(nd);
    p.alpha = std::sqrt((2.0 * kd / sqrt_n) * ((1.0 + 2.0 * kd) / sqrt_n + 1.0));
    const double log_blocks = kd * std::log(static_cast<double>(m));  // log m^k
    p.delta = p.alpha * (log_blocks - std::log(p.alpha));

    // log[k e^{-(n/k) delta} (n/k + 1)^{2 m^k} log n]; m^k itself may overflow.
    const double ratio = nd / kd;
    const double log_n = std::log(nd);
    const double two_blocks_log = std::log(2.0) + log_blocks;  // log(2 m^k)
    const double exponent_term = std::exp(two_blocks_log) * std::log1p(ratio);
    p.log_tail = std::log(kd) - ratio * p.delta + exponent_term + std::log(log_n);
    if (log_n == 0.0) p.log_tail = -std::numeric_limits<double>::infinity();

    const double tail = std::exp(p.log_tail);
    p.epsilon = 2.0 * p.delta + tail;
    if (!std::isfinite(p.epsilon)) {
        p.epsilon = std::numeric_limits<double>::infinity();
        p.vacuous = true;
    }
    const unsigned __int128 k3 = static_cast<unsigned __int128>(k) * k * k;
    p.valid_range = 100 * k3 <= static_cast<unsigned __int128>(n);
    return p;
}

Count effective_n(Count n, std::uint32_t k) {
    if (k < 1 || k > n) throw InputError("effective_n needs 1 <= k <= n");
    return k * (n / k);
}

double binary_reference_bound(Count n, std::uint32_t k) {
    if (k >= n) throw DomainError("binary reference bound needs k < n");
    const double kd = static_cast<double>(k);
    return 5.0 * kd * kd * std::log(static_cast<double>(n)) / static_cast<double>(n - k);
}

VerificationReport verify_theorem(const ExchangeableLaw& law, std::uint32_t k, Backend backend,
                                  bool with_diagnostics) {
    if (k < 1 || k > law.n()) throw InputError("verify needs 1 <= k <= n");
    VerificationReport report;
    report.n = law.n();
    report.effective_n = effective_n(law.n(), k);
    report.remark2_adjusted = report.effective_n != law.n();
    report.params = theorem_constants(report.effective_n, k, law.m());

    const std::uint64_t cells = block_space_size(law.m(), k);
    report.exact_arithmetic = backend == Backend::Exact && cells <= kExactBlockLimit;
    if (report.exact_arithmetic) {
        const Pmf pk = marginal<Rational>(law, k);
        const Pmf mk = mixture_iid<Rational>(law, k);
        report.exact_zero = pk == mk;
        report.divergence = relative_entropy(pk, mk).value;
    } else {
        const FloatPmf pk = marginal<double>(law, k);
        const FloatPmf mk = mixture_iid<double>(law, k);
        report.divergence = relative_entropy(pk, mk).value;
    }
    report.holds = report.divergence <= report.params.epsilon;
    if (law.m() == 2 && k < law.n()) report.binary_reference = binary_reference_bound(law.n(), k);

    if (with_diagnostics) {
        const auto& types = law.types();
        const auto& mu = law.type_weights();
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (mu[i] == 0) continue;
            const Pmf product = product_pmf(type_to_pmf(types[i]), k);
            double d = 0.0;
            if (report.exact_arithmetic) {
                d = relative_entropy(conditional_block_law(types[i], k), product).value;
            } else {
                d = relative_entropy(conditional_block_law_float(types[i], k), to_float(product)).value;
            }
            report.diagnostics.push_back({types[i], mu[i], d});
        }
    }
    return report;
}

ConvexityChain convexity_chain_gap(const ExchangeableLaw& law, std::uint32_t k, std::uint64_t cap) {
    if (k < 1 || k > law.n()) throw InputError("convexity chain needs 1 <= k <= n");
    if (law.n() % k != 0) throw InputError("convexity chain needs n to be a multiple of k");
    const Count l = law.n() / k;
    ConvexityChain chain;
    chain.mixture_divergence = relative_entropy(marginal<Rational>(law, k), mixture_iid<Rational>(law, k)).value;

    const auto& types = law.types();
    const auto& mu = law.type_weights();
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (mu[i] == 0) continue;
        const ConditionalMean cm = conditional_mean_divergence(types[i], k, l, false, cap);
        const Pmf product = product_pmf(type_to_pmf(types[i]), k);
        const double weight = to_double(mu[i]);
        chain.averaged_divergence += weight * relative_entropy(cm.expected_type, product).value;
        chain.expected_divergence += weight * cm.divergence;
    }
    chain.nondecreasing = chain.mixture_divergence <= chain.averaged_divergence + kInequalitySlack &&
                          chain.averaged_divergence <= chain.expected_divergence + kInequalitySlack;
    return chain;
}

}  // namespace finetti

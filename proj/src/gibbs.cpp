#include "finetti/gibbs.hpp"

#include "finetti/exchangeable.hpp"
#include "finetti/info_measures.hpp"
#include "finetti/marginal_sets.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace finetti {

Pmf conditional_block_law(const TypeVector& t, std::uint32_t k) {
    if (k < 1 || k > t.n()) throw InputError("block length k must satisfy 1 <= k <= n");
    const std::uint64_t cells = block_space_size(t.m(), k);
    std::vector<Rational> probs;
    probs.reserve(cells);
    for (std::uint64_t c = 0; c < cells; ++c) probs.push_back(conditional_given_type(t, decode_string(c, t.m(), k)));
    return Pmf(std::move(probs));
}

FloatPmf conditional_block_law_float(const TypeVector& t, std::uint32_t k) {
    if (k < 1 || k > t.n()) throw InputError("block length k must satisfy 1 <= k <= n");
    const std::uint64_t cells = block_space_size(t.m(), k);
    std::vector<double> probs(cells);
    std::vector<Count> used(t.m());
    double total = 0.0;
    for (std::uint64_t c = 0; c < cells; ++c) {
        std::fill(used.begin(), used.end(), 0);
        double p = 1.0;
        std::uint32_t i = 0;
        for (Symbol s : decode_string(c, t.m(), k)) {
            if (t[s] <= used[s]) {
                p = 0.0;
                break;
            }
            p *= static_cast<double>(t[s] - used[s]) / static_cast<double>(t.n() - i);
            ++used[s];
            ++i;
        }
        probs[c] = p;
        total += p;
    }
    for (double& p : probs) p /= total;
    return FloatPmf(std::move(probs));
}

TypeVector round_to_type(const Pmf& target, Count n) {
    if (n == 0) throw InputError("type length must be positive");
    const std::size_t m = target.size();
    std::vector<Count> counts(m);
    std::vector<Rational> remainders(m);
    Count assigned = 0;
    for (std::size_t a = 0; a < m; ++a) {
        const Rational quota = target[a] * Integer(n);
        const Integer floor_q = Integer(quota.get_num()) / Integer(quota.get_den());
        counts[a] = floor_q.get_ui();
        remainders[a] = quota - Rational(floor_q);
        assigned += counts[a];
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return remainders[x] > remainders[y]; });
    for (Count i = 0; assigned < n; ++i, ++assigned) ++counts[order[i]];
    return TypeVector(std::move(counts));
}

ConvergenceTrace convergence_trace(const Pmf& target, std::uint32_t k, const std::vector<Count>& n_list,
                                   Count exact_limit) {
    if (n_list.empty()) throw InputError("convergence trace needs at least one n");
    if (k < 1) throw InputError("block length k must be positive");
    ConvergenceTrace trace{target, k, {}};
    const Pmf product = product_pmf(target, k);
    const FloatPmf product_float = to_float(product);
    for (Count n : n_list) {
        if (n == 0 || n % k != 0)
            throw InputError("trace length " + std::to_string(n) + " is not a positive multiple of k");
        TypeVector type = round_to_type(target, n);
        double divergence = 0.0;
        double deviation = 0.0;
        if (n <= exact_limit) {
            const Pmf law = conditional_block_law(type, k);
            divergence = relative_entropy(law, product).value;
            deviation = max_abs_deviation(law, product);
        } else {
            const FloatPmf law = conditional_block_law_float(type, k);
            divergence = relative_entropy(law, product_float).value;
            deviation = max_abs_deviation(law, product_float);
        }
        trace.points.push_back({n, std::move(type), divergence, deviation});
    }
    return trace;
}

bool trace_converges(const ConvergenceTrace& trace, double threshold) {
    if (trace.points.empty()) return false;
    const auto& first = trace.points.front();
    const auto& last = trace.points.back();
    if (!(last.divergence < threshold)) return false;
    const bool increasing = std::adjacent_find(trace.points.begin(), trace.points.end(),
                                               [](const TracePoint& a, const TracePoint& b) { return a.n >= b.n; }) ==
                            trace.points.end();
    if (increasing && last.n >= 8 * first.n && first.divergence > 0.0) return last.divergence < first.divergence;
    return true;
}

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out) {
    out << "n,divergence_nats,max_abs_deviation\n";
    char buffer[64];
    for (const auto& p : trace.points) {
        out << p.n << ',';
        std::snprintf(buffer, sizeof buffer, "%.17g", p.divergence);
        out << buffer << ',';
        std::snprintf(buffer, sizeof buffer, "%.17g", p.max_abs_deviation);
        out << buffer << '\n';
    }
}

}  // namespace finetti

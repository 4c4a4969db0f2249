#pragma once

// Entropy, relative entropy and distances between PMFs, in nats.
// Conventions: 0 log 0 = 0 and 0 log(0/0) = 0.

#include "finetti/log_combination.hpp"
#include "finetti/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finetti {

/// Relative entropy in nats; +infinity when absolute continuity fails.
struct Divergence {
    double value = 0.0;

    static Divergence infinite() { return {std::numeric_limits<double>::infinity()}; }
    bool finite() const { return std::isfinite(value); }
};

template <class Scalar>
double entropy(const BasicPmf<Scalar>& p) {
    double h = 0.0;
    for (const auto& x : p.probs()) {
        if (x == 0) continue;
        h -= to_double(x) * log_of(x);
    }
    return std::max(h, 0.0);
}

/// Terms where P(x) == Q(x) contribute exactly zero, so identical rational
/// PMFs give exactly 0.
template <class Scalar>
Divergence relative_entropy(const BasicPmf<Scalar>& p, const BasicPmf<Scalar>& q) {
    if (p.size() != q.size()) throw InputError("relative entropy of pmfs on different spaces");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (q[i] == 0) return Divergence::infinite();
        if (p[i] == q[i]) continue;
        d += to_double(p[i]) * log_ratio(p[i], q[i]);
    }
    return {std::max(d, 0.0)};
}

template <class Scalar>
double l1_distance(const BasicPmf<Scalar>& p, const BasicPmf<Scalar>& q) {
    if (p.size() != q.size()) throw InputError("l1 distance of pmfs on different spaces");
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(to_double(p[i]) - to_double(q[i]));
    return total;
}

template <class Scalar>
double max_abs_deviation(const BasicPmf<Scalar>& p, const BasicPmf<Scalar>& q) {
    if (p.size() != q.size()) throw InputError("max deviation of pmfs on different spaces");
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(to_double(p[i]) - to_double(q[i])));
    return worst;
}

/// D(P||Q) - (1/2)||P - Q||_1^2, never negative by Pinsker's inequality in
/// nats. +infinity when D is.
template <class Scalar>
double pinsker_gap(const BasicPmf<Scalar>& p, const BasicPmf<Scalar>& q) {
    const Divergence d = relative_entropy(p, q);
    if (!d.finite()) return d.value;
    const double l1 = l1_distance(p, q);
    return d.value - 0.5 * l1 * l1;
}

/// -M log(M / N), the entropy-continuity bound for two PMFs on N outcomes
/// within distance M. Throws DomainError unless 0 < M < 1/2 and N >= 2.
double entropy_continuity_bound(double deviation, std::uint64_t support_size);

/// The same expression without the domain restriction on M (M > 0).
double continuity_expression(double deviation, double support_size);

/// Exact entropy and divergence of rational PMFs as log-combinations.
/// relative_entropy_exact throws DomainError when absolute continuity fails.
LogCombination entropy_exact(const Pmf& p);
LogCombination relative_entropy_exact(const Pmf& p, const Pmf& q);

}  // namespace finetti

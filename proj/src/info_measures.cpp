#include "finetti/info_measures.hpp"

namespace finetti {

double entropy_continuity_bound(double deviation, std::uint64_t support_size) {
    if (!(deviation > 0.0 && deviation < 0.5))
        throw DomainError("entropy continuity bound needs 0 < M < 1/2");
    if (support_size < 2) throw DomainError("entropy continuity bound needs N >= 2");
    return continuity_expression(deviation, static_cast<double>(support_size));
}

double continuity_expression(double deviation, double support_size) {
    if (!(deviation > 0.0)) throw DomainError("continuity expression needs M > 0");
    return -deviation * std::log(deviation / support_size);
}

LogCombination entropy_exact(const Pmf& p) {
    LogCombination h;
    for (const auto& x : p.probs()) {
        if (x == 0) continue;
        h -= LogCombination::log_of(x) * x;
    }
    return h;
}

LogCombination relative_entropy_exact(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) throw InputError("relative entropy of pmfs on different spaces");
    LogCombination d;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0 || p[i] == q[i]) continue;
        if (q[i] == 0) throw DomainError("exact relative entropy is infinite");
        d += LogCombination::log_of(Rational(p[i] / q[i])) * p[i];
    }
    return d;
}

}  // namespace finetti

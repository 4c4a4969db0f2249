#include "finetti/types.hpp"

#include "finetti/info_measures.hpp"

#include <cmath>

namespace finetti {

TypeVector::TypeVector(std::vector<Count> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InputError("type vector needs at least one symbol");
    for (Count c : counts_) n_ += c;
    if (n_ == 0) throw InputError("type vector must have positive length");
}

std::string to_string(const TypeVector& t) {
    std::string out = "(";
    for (std::size_t a = 0; a < t.m(); ++a) {
        if (a) out += ',';
        out += std::to_string(t[a]);
    }
    return out + ")";
}

FloatPmf to_float(const Pmf& pmf) {
    std::vector<double> probs;
    probs.reserve(pmf.size());
    for (const auto& p : pmf.probs()) probs.push_back(to_double(p));
    // Entries are left as rounded unless the accumulated rounding on a very
    // large support would fail the normalization check.
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-13)
        for (double& p : probs) p /= total;
    return FloatPmf(std::move(probs));
}

Integer type_count(std::uint32_t m, Count n) {
    if (m == 0) throw InputError("alphabet must have at least one symbol");
    return binomial(n + m - 1, m - 1);
}

void for_each_type(std::uint32_t m, Count n, const std::function<void(const TypeVector&)>& visit) {
    if (m == 0) throw InputError("alphabet must have at least one symbol");
    if (n == 0) throw InputError("type length must be positive");
    std::vector<Count> counts(m, 0);
    // Odometer over the first m-1 coordinates; the last takes the remainder.
    auto recurse = [&](auto&& self, std::size_t pos, Count remaining) -> void {
        if (pos + 1 == m) {
            counts[pos] = remaining;
            visit(TypeVector(counts));
            return;
        }
        for (Count c = 0; c <= remaining; ++c) {
            counts[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    recurse(recurse, 0, n);
}

std::vector<TypeVector> enumerate_types(Alphabet alphabet, Count n, std::uint64_t cap) {
    if (n == 0) throw InputError("type length must be positive");
    const Integer count = type_count(alphabet.size(), n);
    if (count > Integer(static_cast<unsigned long>(cap)))
        throw CapacityError("enumerating " + count.get_str() + " types exceeds the cap of " +
                            std::to_string(cap));
    std::vector<TypeVector> out;
    out.reserve(count.get_ui());
    for_each_type(alphabet.size(), n, [&](const TypeVector& t) { out.push_back(t); });
    return out;
}

Integer type_class_size(const TypeVector& t) {
    Integer size = factorial(t.n());
    for (Count c : t.counts()) size /= factorial(c);
    return size;
}

Rational type_class_probability(const TypeVector& t, const Pmf& q) {
    if (q.size() != t.m()) throw InputError("pmf and type vector have different alphabets");
    Rational prob(type_class_size(t));
    for (std::size_t a = 0; a < t.m(); ++a) {
        if (t[a] == 0) continue;
        if (q[a] == 0) return Rational(0);
        prob *= power(q[a], t[a]);
    }
    prob.canonicalize();
    return prob;
}

double type_class_probability(const TypeVector& t, const FloatPmf& q) {
    if (q.size() != t.m()) throw InputError("pmf and type vector have different alphabets");
    double log_prob = std::lgamma(static_cast<double>(t.n()) + 1.0);
    for (std::size_t a = 0; a < t.m(); ++a) {
        if (t[a] == 0) continue;
        if (q[a] == 0.0) return 0.0;
        const double c = static_cast<double>(t[a]);
        log_prob += c * std::log(q[a]) - std::lgamma(c + 1.0);
    }
    return std::exp(log_prob);
}

TypeVector empirical_type(std::span<const Symbol> x, Alphabet alphabet) {
    if (x.empty()) throw InputError("empirical type of an empty string");
    std::vector<Count> counts(alphabet.size(), 0);
    for (Symbol s : x) {
        if (s >= alphabet.size())
            throw InputError("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(alphabet.size()));
        ++counts[s];
    }
    return TypeVector(std::move(counts));
}

Pmf type_to_pmf(const TypeVector& t) {
    std::vector<Rational> probs;
    probs.reserve(t.m());
    for (Count c : t.counts()) {
        Rational p(Integer(c), Integer(t.n()));
        p.canonicalize();
        probs.push_back(std::move(p));
    }
    return Pmf(std::move(probs));
}

SequenceIdentity<Rational> sequence_probability_identity(std::span<const Symbol> x, const Pmf& q) {
    const TypeVector type = empirical_type(x, Alphabet(static_cast<std::uint32_t>(q.size())));
    Rational lhs(1);
    for (Symbol s : x) lhs *= q[s];
    lhs.canonicalize();

    const Integer n(type.n());
    Rational entropy_factor(1);     // exp(-n H(P))
    Rational divergence_factor(1);  // exp(-n D(P||Q))
    for (std::size_t a = 0; a < type.m(); ++a) {
        const Count c = type[a];
        if (c == 0) continue;
        Rational p(Integer(c), n);
        p.canonicalize();
        entropy_factor *= power(p, c);
        divergence_factor *= power(Rational(q[a] / p), c);
    }
    Rational rhs = entropy_factor * divergence_factor;
    rhs.canonicalize();
    return {lhs, rhs};
}

SequenceIdentity<double> sequence_probability_identity(std::span<const Symbol> x, const FloatPmf& q) {
    const TypeVector type = empirical_type(x, Alphabet(static_cast<std::uint32_t>(q.size())));
    double lhs = 1.0;
    for (Symbol s : x) {
        if (q[s] == 0.0) throw DomainError("log form of the sequence identity needs Q(x_i) > 0");
        lhs *= q[s];
    }
    const FloatPmf p = to_float(type_to_pmf(type));
    const double n = static_cast<double>(type.n());
    const double rhs = std::exp(-n * (entropy(p) + relative_entropy(p, q).value));
    return {lhs, rhs};
}

TypeBoundsCheck check_type_bounds(const TypeVector& t, const Pmf& q) {
    if (q.size() != t.m()) throw InputError("pmf and type vector have different alphabets");
    TypeBoundsCheck check;
    const Count n = t.n();
    const Integer slack = power(Integer(n + 1), t.m());  // (n+1)^m

    check.type_count_bound = type_count(t.m(), n) <= slack;

    // e^{nH(P)} = n^n / prod c^c.
    const Integer size = type_class_size(t);
    Integer prod_cc(1);
    for (Count c : t.counts()) prod_cc *= power(Integer(c), c);
    const Integer n_pow_n = power(Integer(n), n);
    check.size_upper = size * prod_cc <= n_pow_n;
    check.size_lower = n_pow_n <= slack * size * prod_cc;

    // e^{-nD(P||Q)} = prod_{c_a > 0} (n Q(a) / c_a)^{c_a}; zero when Q misses the support.
    Rational exp_neg_nd(1);
    for (std::size_t a = 0; a < t.m(); ++a) {
        const Count c = t[a];
        if (c == 0) continue;
        Rational ratio = q[a] * Integer(n) / Integer(c);
        exp_neg_nd *= power(ratio, c);
    }
    const Rational prob = type_class_probability(t, q);
    check.probability_upper = prob <= exp_neg_nd;
    check.probability_lower = exp_neg_nd <= Rational(slack) * prob;
    return check;
}

}  // namespace finetti

#include "finetti/marginal_sets.hpp"

#include "finetti/exchangeable.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <type_traits>

namespace finetti {

namespace {

struct BlockSpace {
    std::uint32_t m;
    std::uint32_t k;
    std::uint64_t cells;
    std::vector<std::vector<Count>> mult;  // mult[c][a]: occurrences of a in block c

    BlockSpace(std::uint32_t m_, std::uint32_t k_) : m(m_), k(k_), cells(block_space_size(m_, k_)) {
        mult.assign(cells, std::vector<Count>(m, 0));
        for (std::uint64_t c = 0; c < cells; ++c)
            for (Symbol s : decode_string(c, m, k)) ++mult[c][s];
    }
};

std::uint32_t infer_block_length(std::size_t w_size, std::size_t m) {
    if (m == 1) {
        if (w_size != 1) throw InputError("block pmf size is not a power of the alphabet size");
        return 1;
    }
    std::uint32_t k = 0;
    std::size_t size = 1;
    while (size < w_size) {
        size *= m;
        ++k;
    }
    if (size != w_size || k == 0) throw InputError("block pmf size is not a power of the alphabet size");
    return k;
}

Count lattice_size(const TypeVector& q, std::uint32_t k) {
    if (k < 1) throw InputError("block length k must be positive");
    if (q.n() % k != 0) throw InputError("n = " + std::to_string(q.n()) + " is not a multiple of k");
    return q.n() / k;
}

Pmf block_type_to_pmf(const LtypeOnBlocks& w) { return type_to_pmf(w); }

}  // namespace

template <class Scalar>
BasicPmf<Scalar> product_pmf(const BasicPmf<Scalar>& q, std::uint32_t k) {
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint64_t cells = block_space_size(m, k);
    std::vector<Scalar> probs(cells);
    for (std::uint64_t c = 0; c < cells; ++c) {
        Scalar p = 1;
        for (Symbol s : decode_string(c, m, k)) p *= q[s];
        probs[c] = p;
    }
    if constexpr (std::is_same_v<Scalar, double>) {
        double total = 0.0;
        for (double p : probs) total += p;
        for (double& p : probs) p /= total;
    }
    return BasicPmf<Scalar>(std::move(probs));
}

template <class Scalar>
std::vector<Scalar> average_marginal(const BasicPmf<Scalar>& w, std::uint32_t m, std::uint32_t k) {
    if (w.size() != block_space_size(m, k)) throw InputError("block pmf size differs from m^k");
    std::vector<Scalar> avg(m, Scalar(0));
    for (std::uint64_t c = 0; c < w.size(); ++c) {
        if (w[c] == 0) continue;
        for (Symbol s : decode_string(c, m, k)) avg[s] += w[c];
    }
    for (auto& v : avg) v /= Scalar(k);
    return avg;
}

template FloatPmf product_pmf<double>(const FloatPmf&, std::uint32_t);
template Pmf product_pmf<Rational>(const Pmf&, std::uint32_t);
template std::vector<double> average_marginal<double>(const FloatPmf&, std::uint32_t, std::uint32_t);
template std::vector<Rational> average_marginal<Rational>(const Pmf&, std::uint32_t, std::uint32_t);

bool in_E_k(const Pmf& w, const Pmf& q) {
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t k = infer_block_length(w.size(), m);
    const auto avg = average_marginal(w, m, k);
    for (std::uint32_t a = 0; a < m; ++a)
        if (avg[a] != q[a]) return false;
    return true;
}

bool in_E_k(const FloatPmf& w, const FloatPmf& q) {
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t k = infer_block_length(w.size(), m);
    const auto avg = average_marginal(w, m, k);
    for (std::uint32_t a = 0; a < m; ++a)
        if (std::abs(avg[a] - q[a]) > 1e-12) return false;
    return true;
}

void for_each_E_k_type(const TypeVector& q, std::uint32_t k, const std::function<void(const LtypeOnBlocks&)>& visit,
                       std::uint64_t cap) {
    (void)lattice_size(q, k);
    const BlockSpace space(q.m(), k);
    const std::uint32_t m = q.m();

    // Last block containing each symbol; its count is forced there.
    std::vector<std::int64_t> last_cell(m, -1);
    for (std::uint64_t c = 0; c < space.cells; ++c)
        for (std::uint32_t a = 0; a < m; ++a)
            if (space.mult[c][a] > 0) last_cell[a] = static_cast<std::int64_t>(c);

    std::vector<Count> remaining = q.counts();
    std::vector<Count> counts(space.cells, 0);
    std::uint64_t nodes = 0;

    auto recurse = [&](auto&& self, std::uint64_t c) -> void {
        if (++nodes > cap)
            throw CapacityError("lattice search of E_k(Q) exceeds the cap of " + std::to_string(cap) + " nodes");
        for (std::uint32_t a = 0; a < m; ++a)
            if (last_cell[a] < static_cast<std::int64_t>(c) && remaining[a] != 0) return;
        if (c == space.cells) {
            visit(TypeVector(counts));
            return;
        }
        const auto& mult = space.mult[c];
        Count hi = ~Count{0};
        std::optional<Count> forced;
        for (std::uint32_t a = 0; a < m; ++a) {
            if (mult[a] == 0) continue;
            hi = std::min(hi, remaining[a] / mult[a]);
            if (last_cell[a] == static_cast<std::int64_t>(c)) {
                if (remaining[a] % mult[a] != 0) return;
                const Count need = remaining[a] / mult[a];
                if (forced && *forced != need) return;
                forced = need;
            }
        }
        Count lo = 0;
        if (forced) {
            if (*forced > hi) return;
            lo = hi = *forced;
        }
        for (Count w = lo; w <= hi; ++w) {
            counts[c] = w;
            for (std::uint32_t a = 0; a < m; ++a) remaining[a] -= w * mult[a];
            self(self, c + 1);
            for (std::uint32_t a = 0; a < m; ++a) remaining[a] += w * mult[a];
        }
        counts[c] = 0;
    };
    recurse(recurse, 0);
}

std::vector<LtypeOnBlocks> enumerate_E_k_types(const TypeVector& q, std::uint32_t k, std::uint64_t cap) {
    std::vector<LtypeOnBlocks> out;
    for_each_E_k_type(q, k, [&](const LtypeOnBlocks& w) { out.push_back(w); }, cap);
    return out;
}

std::vector<LtypeOnBlocks> enumerate_E_k_types(const Pmf& q, std::uint32_t k, Count l, std::uint64_t cap) {
    if (k < 1 || l < 1) throw InputError("k and l must be positive");
    std::vector<Count> counts;
    counts.reserve(q.size());
    for (const auto& p : q.probs()) {
        const Rational scaled = p * Integer(static_cast<unsigned long>(k) * l);
        if (scaled.get_den() != 1) return {};
        counts.push_back(Integer(scaled.get_num()).get_ui());
    }
    return enumerate_E_k_types(TypeVector(std::move(counts)), k, cap);
}

DivergenceDecomposition divergence_decomposition(const Pmf& w, const Pmf& q) {
    if (!in_E_k(w, q)) throw PreconditionError("W is not in E_k(Q)");
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t k = infer_block_length(w.size(), m);
    const Pmf qk = product_pmf(q, k);
    const Pmf uniform = Pmf::uniform(w.size());

    const LogCombination to_uniform = relative_entropy_exact(w, uniform);
    const LogCombination to_product = relative_entropy_exact(w, qk);
    const LogCombination product_to_uniform = relative_entropy_exact(qk, uniform);
    const LogCombination linear = entropy_exact(q) * Rational(k) - entropy_exact(w);

    DivergenceDecomposition out;
    out.to_uniform = to_uniform.to_double();
    out.to_product = to_product.to_double();
    out.product_to_uniform = product_to_uniform.to_double();
    out.pythagorean_holds = to_uniform == to_product + product_to_uniform;
    out.linear_entropy_holds = to_product == linear;
    return out;
}

DivergenceDecomposition divergence_decomposition(const FloatPmf& w, const FloatPmf& q) {
    if (!in_E_k(w, q)) throw PreconditionError("W is not in E_k(Q)");
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t k = infer_block_length(w.size(), m);
    const FloatPmf qk = product_pmf(q, k);
    const FloatPmf uniform = FloatPmf::uniform(w.size());

    DivergenceDecomposition out;
    out.to_uniform = relative_entropy(w, uniform).value;
    out.to_product = relative_entropy(w, qk).value;
    out.product_to_uniform = relative_entropy(qk, uniform).value;
    constexpr double tol = 1e-10;
    out.pythagorean_holds = std::abs(out.to_uniform - (out.to_product + out.product_to_uniform)) <= tol;
    out.linear_entropy_holds = std::abs(out.to_product - (k * entropy(q) - entropy(w))) <= tol;
    return out;
}

namespace {

// Solves the square system a x = b exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t r = b.size();
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t pivot = col;
        while (pivot < r && a[pivot][col] == 0) ++pivot;
        if (pivot == r) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < r; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational f = a[row][col] / a[col][col];
            for (std::size_t j = col; j < r; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<Rational> x(r);
    for (std::size_t i = 0; i < r; ++i) {
        x[i] = b[i] / a[i][i];
        x[i].canonicalize();
    }
    return x;
}

constexpr std::uint64_t kMaxVertexCells = 64;

}  // namespace

MaxDivergenceResult max_divergence_over_E_k(const TypeVector& q, std::uint32_t k, MaxDivergenceMode mode,
                                            std::uint64_t cap) {
    if (k < 1) throw InputError("block length k must be positive");
    const std::uint32_t m = q.m();
    const Pmf q_pmf = type_to_pmf(q);
    const Pmf qk = product_pmf(q_pmf, k);
    const LogCombination k_entropy = entropy_exact(q_pmf) * Rational(k);

    MaxDivergenceResult best;
    bool have_best = false;
    auto consider = [&](const Pmf& w) {
        ++best.candidates;
        const LogCombination d = relative_entropy_exact(w, qk);
        const double value = d.to_double();
        if (!have_best || value > best.value) {
            best.value = value;
            best.exact = d;
            best.argmax = w;
            have_best = true;
        }
    };

    if (mode == MaxDivergenceMode::Grid) {
        for_each_E_k_type(q, k, [&](const LtypeOnBlocks& w) { consider(block_type_to_pmf(w)); }, cap);
        if (!have_best) throw PreconditionError("E_k(Q) has no lattice points");
        return best;
    }

    const BlockSpace space(m, k);
    if (space.cells > kMaxVertexCells)
        throw CapacityError("vertex enumeration is limited to m^k <= " + std::to_string(kMaxVertexCells) + " blocks");

    std::vector<std::uint32_t> support;
    for (std::uint32_t a = 0; a < m; ++a)
        if (q[a] > 0) support.push_back(a);
    std::vector<std::uint64_t> cells;
    for (std::uint64_t c = 0; c < space.cells; ++c)
        if (qk[c] > 0) cells.push_back(c);

    const std::size_t r = support.size();
    if (binomial(cells.size(), r) > Integer(static_cast<unsigned long>(cap)))
        throw CapacityError("vertex enumeration exceeds the cap of " + std::to_string(cap) + " bases");

    std::vector<Rational> rhs(r);
    for (std::size_t i = 0; i < r; ++i) rhs[i] = q_pmf[support[i]] * Integer(k);

    std::set<std::vector<Rational>> seen;
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) a[i][j] = Rational(space.mult[cells[pick[j]]][support[i]]);
        if (auto x = solve_exact(std::move(a), rhs)) {
            if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; })) {
                std::vector<Rational> w(space.cells, Rational(0));
                for (std::size_t j = 0; j < r; ++j) w[cells[pick[j]]] = (*x)[j];
                if (seen.insert(w).second) consider(Pmf(std::move(w)));
            }
        }
        // Next r-combination of cell positions.
        std::size_t i = r;
        while (i > 0 && pick[i - 1] == cells.size() - r + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!have_best) throw PreconditionError("E_k(Q) has no vertices");
    // Cross-check against the linear-entropy identity.
    if (!(best.exact == k_entropy - entropy_exact(best.argmax)))
        throw std::logic_error("linear-entropy identity failed at the maximizing vertex");
    return best;
}

double lemma1_constant(Count l, std::uint32_t k) {
    if (k < 1 || l <= k) throw DomainError("lemma1_constant needs l > k >= 1");
    const double ld = static_cast<double>(l);
    const double kd = static_cast<double>(k);
    return std::sqrt(2.0 / ld + 4.0 * kd / ld + 2.0 * std::sqrt(kd / ld));
}

Lemma1Sampler::Lemma1Sampler(const TypeVector& q, std::uint32_t k, std::uint64_t seed)
    : q_(q), k_(k), l_(lattice_size(q, k)), rng_(seed) {
    arrangement_.reserve(q.n());
    for (std::uint32_t a = 0; a < q.m(); ++a) arrangement_.insert(arrangement_.end(), q[a], a);
    const FloatPmf qk = product_pmf(to_float(type_to_pmf(q)), k);
    product_ = qk.probs();
    product_entropy_ = entropy(qk);
}

Lemma1Sample Lemma1Sampler::next() {
    for (std::size_t i = arrangement_.size(); i > 1; --i) std::swap(arrangement_[i - 1], arrangement_[rng_.below(i)]);
    std::vector<Count> block_counts(product_.size(), 0);
    for (Count b = 0; b < l_; ++b)
        ++block_counts[encode_string(std::span<const Symbol>(arrangement_).subspan(b * k_, k_), q_.m())];
    return evaluate(std::move(block_counts));
}

Lemma1Sample Lemma1Sampler::evaluate(std::vector<Count> block_counts) const {
    Lemma1Sample s{TypeVector(std::move(block_counts))};
    const double ld = static_cast<double>(l_);
    double sum_clogc = 0.0;
    for (std::size_t c = 0; c < product_.size(); ++c) {
        const double count = static_cast<double>(s.blocks[c]);
        const double diff = std::abs(count / ld - product_[c]);
        s.deviation = std::max(s.deviation, diff);
        s.l1_deviation += diff;
        if (count > 0) sum_clogc += count * std::log(count);
    }
    const double h = std::log(ld) - sum_clogc / ld;
    s.entropy_gap = std::abs(h - product_entropy_);
    return s;
}

Lemma1Result lemma1_construct(const TypeVector& q, std::uint32_t k, Count l, std::uint64_t seed,
                              std::size_t max_tries, std::uint64_t cap) {
    if (lattice_size(q, k) != l) throw InputError("lemma1_construct needs n = k * l");
    const double bound = lemma1_constant(l, k);
    Lemma1Sampler sampler(q, k, seed);

    std::optional<Lemma1Sample> accepted;
    std::size_t tries = 0;
    while (tries < max_tries && !accepted) {
        ++tries;
        Lemma1Sample s = sampler.next();
        if (s.deviation <= bound) accepted = std::move(s);
    }
    const bool used_fallback = !accepted;
    if (!accepted) {
        // Exhaustive fallback: the lattice point closest to Q^k.
        const FloatPmf qk = product_pmf(to_float(type_to_pmf(q)), k);
        std::optional<LtypeOnBlocks> best;
        double best_dev = 0.0;
        try {
            for_each_E_k_type(q, k, [&](const LtypeOnBlocks& w) {
                const double dev = max_abs_deviation(to_float(type_to_pmf(w)), qk);
                if (!best || dev < best_dev) {
                    best = w;
                    best_dev = dev;
                }
            }, cap);
        } catch (const CapacityError&) {
            throw ExhaustedError("no l-type within M after " + std::to_string(max_tries) +
                                 " permutations and the exhaustive search exceeds the cap");
        }
        if (!best || best_dev > bound) throw ExhaustedError("no l-type within M of Q^k exists");
        const FloatPmf w = to_float(type_to_pmf(*best));
        accepted = Lemma1Sample{*best, best_dev, l1_distance(w, qk), std::abs(entropy(w) - entropy(qk))};
    }

    Lemma1Result result{*accepted, bound, tries, used_fallback};
    if (k >= 2 && Count{100} * k * k <= l) {
        result.continuity_checked = true;
        result.continuity_bound = entropy_continuity_bound(bound, block_space_size(q.m(), k));
        result.continuity_holds = result.sample.entropy_gap <= result.continuity_bound + kInequalitySlack;
    }
    return result;
}

ConditionalMean conditional_mean_divergence(const TypeVector& q, std::uint32_t k, Count l, bool exact,
                                            std::uint64_t cap) {
    if (lattice_size(q, k) != l) throw InputError("conditional_mean_divergence needs n = k * l");
    const Pmf q_pmf = type_to_pmf(q);
    const Pmf qk = product_pmf(q_pmf, k);
    const FloatPmf qk_float = to_float(qk);
    const std::uint64_t cells = qk.size();

    std::vector<Integer> fact(l + 1);
    fact[0] = 1;
    for (Count i = 1; i <= l; ++i) fact[i] = fact[i - 1] * Integer(i);

    std::vector<Integer> class_sizes;
    std::vector<double> divergences;
    std::vector<LtypeOnBlocks> members;
    Integer total(0);
    const double ld = static_cast<double>(l);
    for_each_E_k_type(q, k, [&](const LtypeOnBlocks& w) {
        Integer size = fact[l];
        double d = 0.0;
        for (std::uint64_t c = 0; c < cells; ++c) {
            const Count count = w[c];
            size /= fact[count];
            if (count == 0) continue;
            const double p = static_cast<double>(count) / ld;
            d += p * std::log(p / qk_float[c]);
        }
        total += size;
        class_sizes.push_back(std::move(size));
        divergences.push_back(std::max(d, 0.0));
        members.push_back(w);
    }, cap);
    if (members.empty()) throw PreconditionError("E_k(Q) has no lattice points");

    ConditionalMean out;
    out.members = members.size();
    std::vector<Rational> expected(cells, Rational(0));
    std::optional<LogCombination> exact_mean;
    if (exact) exact_mean.emplace();
    for (std::size_t i = 0; i < members.size(); ++i) {
        Rational weight(class_sizes[i], total);
        weight.canonicalize();
        out.divergence += to_double(weight) * divergences[i];
        for (std::uint64_t c = 0; c < cells; ++c)
            if (members[i][c] != 0) expected[c] += weight * Integer(members[i][c]);
        if (exact) *exact_mean += relative_entropy_exact(type_to_pmf(members[i]), qk) * weight;
    }
    for (auto& e : expected) {
        e /= Integer(l);
        e.canonicalize();
    }
    out.expected_type = Pmf(std::move(expected));
    out.exact = std::move(exact_mean);
    if (out.exact) out.divergence = out.exact->to_double();
    return out;
}

TailBound partition_tail_bound(const TypeVector& q, std::uint32_t k, Count l, double delta, bool with_exact,
                               std::uint64_t cap) {
    if (lattice_size(q, k) != l) throw InputError("partition_tail_bound needs n = k * l");
    if (!(delta > 0.0)) throw DomainError("partition_tail_bound needs delta > 0");
    TailBound out;
    const double cells = std::pow(static_cast<double>(q.m()), static_cast<double>(k));
    out.log_bound = 2.0 * cells * std::log(static_cast<double>(l) + 1.0) - static_cast<double>(l) * delta;
    out.bound = std::exp(out.log_bound);
    if (!with_exact) return out;

    const FloatPmf q_float = to_float(type_to_pmf(q));
    const FloatPmf qk = product_pmf(q_float, k);
    const FloatPmf uniform = FloatPmf::uniform(qk.size());
    const double d_star = relative_entropy(qk, uniform).value;

    std::vector<Integer> fact(l + 1);
    fact[0] = 1;
    for (Count i = 1; i <= l; ++i) fact[i] = fact[i - 1] * Integer(i);
    Integer total(0);
    Integer outside(0);
    for_each_E_k_type(q, k, [&](const LtypeOnBlocks& w) {
        Integer size = fact[l];
        for (Count c : w.counts()) size /= fact[c];
        total += size;
        const double d = relative_entropy(to_float(type_to_pmf(w)), uniform).value;
        if (d > d_star + 2.0 * delta) outside += size;
    }, cap);
    Rational fraction(outside, total);
    fraction.canonicalize();
    out.exact = to_double(fraction);
    out.exact_within_bound = *out.exact <= out.bound + kInequalitySlack;
    return out;
}

}  // namespace finetti

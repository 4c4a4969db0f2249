// Command-line front end: counting bounds, theorem verification sweeps,
// lemma oracles and Gibbs traces.
//
// Exit codes: 0 pass, 1 a bound or check failed, 2 enumeration cap hit,
// 3 bad input.

#include "finetti/definetti_bound.hpp"
#include "finetti/errors.hpp"
#include "finetti/exchangeable.hpp"
#include "finetti/gibbs.hpp"
#include "finetti/info_measures.hpp"
#include "finetti/law_io.hpp"
#include "finetti/marginal_sets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace finetti;
using nlohmann::json;

enum ExitCode : int { kPass = 0, kViolation = 1, kCapacity = 2, kInputError = 3 };

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (out.empty()) throw InputError("empty list");
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
    return out;
}

std::vector<Count> parse_count_list(const std::string& text) {
    std::vector<Count> out;
    for (const auto& item : split(text, ',')) {
        const Rational r = parse_rational(item);
        if (r < 0 || r.get_den() != 1 || !r.get_num().fits_ulong_p())
            throw InputError("expected a non-negative integer, got '" + item + "'");
        out.push_back(r.get_num().get_ui());
    }
    return out;
}

std::uint32_t to_u32(Count value, const char* what) {
    if (value > 0xffffffffu) throw InputError(std::string(what) + " is too large");
    return static_cast<std::uint32_t>(value);
}

json pmf_to_json(const Pmf& p) {
    json out = json::array();
    for (const auto& x : p.probs()) out.push_back(rational_to_json(x));
    return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

/// Runs task(i) for i in [0, count) on up to `jobs` threads and returns the
/// results in index order. The first exception by index is rethrown.
template <class Result>
std::vector<Result> ordered_map(std::size_t count, unsigned jobs, const std::function<Result(std::size_t)>& task) {
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(task(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<Result> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// ---------------------------------------------------------------- types

struct TypesOptions {
    std::uint32_t m = 2;
    Count n = 1;
    std::string q;
};

int run_types(const TypesOptions& opt) {
    const Pmf q = opt.q.empty() ? Pmf::uniform(opt.m) : Pmf(parse_rational_list(opt.q));
    if (q.size() != opt.m) throw InputError("--q has " + std::to_string(q.size()) + " entries but m = " +
                                            std::to_string(opt.m));
    const auto types = enumerate_types(Alphabet(opt.m), opt.n);
    json rows = json::array();
    Rational total = 0;
    bool all = true;
    for (const auto& t : types) {
        const Rational prob = type_class_probability(t, q);
        total += prob;
        const TypeBoundsCheck c = check_type_bounds(t, q);
        all = all && c.all();
        rows.push_back({{"counts", t.counts()},
                        {"class_size", to_string(type_class_size(t))},
                        {"probability", rational_to_json(prob)},
                        {"bounds",
                         {{"type_count", c.type_count_bound},
                          {"size_lower", c.size_lower},
                          {"size_upper", c.size_upper},
                          {"probability_lower", c.probability_lower},
                          {"probability_upper", c.probability_upper}}}});
    }
    const bool sums_to_one = total == 1;
    print_json({{"m", opt.m},
                {"n", opt.n},
                {"q", pmf_to_json(q)},
                {"type_count", types.size()},
                {"probability_sum", to_string(total)},
                {"types", rows},
                {"pass", all && sums_to_one}});
    return all && sums_to_one ? kPass : kViolation;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::string law_file;
    std::string family;
    std::string p;
    std::string init;
    std::string counts;
    std::optional<std::uint64_t> seed;
    std::uint32_t m = 2;
    std::string n_list;
    std::string k_list;
    std::string backend = "exact";
    std::string format = "json";
    bool diagnostics = false;
};

struct LawSource {
    std::function<ExchangeableLaw(Count)> build;
    std::optional<Count> fixed_n;  // the source only exists at this n
    json description;
};

LawSource law_source(const VerifyOptions& opt) {
    if (opt.law_file.empty() == opt.family.empty()) throw InputError("give exactly one of --law and --family");
    if (!opt.law_file.empty()) {
        std::ifstream in(opt.law_file);
        if (!in) throw InputError("cannot open law file " + opt.law_file);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InputError("cannot parse " + opt.law_file + ": " + e.what());
        }
        LawSource src{[j](Count n) { return law_from_json(j, n); }, std::nullopt, {{"law", opt.law_file}}};
        if (j.contains("typeWeights")) src.fixed_n = law_from_json(j).n();
        return src;
    }
    const std::string& f = opt.family;
    if (f == "fair-coin") {
        const Pmf q = Pmf::uniform(opt.m);
        return {[q](Count n) { return iid_law(q, n); }, std::nullopt, {{"family", f}, {"m", opt.m}}};
    }
    if (f == "biased") {
        if (opt.p.empty()) throw InputError("--family biased needs --p");
        std::vector<Rational> probs = parse_rational_list(opt.p);
        if (probs.size() == 1) probs.push_back(Rational(1) - probs[0]);
        const Pmf q(probs);
        return {[q](Count n) { return iid_law(q, n); }, std::nullopt, {{"family", f}, {"p", pmf_to_json(q)}}};
    }
    if (f == "polya") {
        if (opt.init.empty()) throw InputError("--family polya needs --init");
        const std::vector<Count> init = parse_count_list(opt.init);
        return {[init](Count n) { return polya_urn_law(init, n); }, std::nullopt, {{"family", f}, {"init", init}}};
    }
    if (f == "delta-type") {
        if (opt.counts.empty()) throw InputError("--family delta-type needs --counts");
        const TypeVector t(parse_count_list(opt.counts));
        return {[t](Count) { return delta_type_law(t); }, t.n(), {{"family", f}, {"counts", t.counts()}}};
    }
    if (f == "random") {
        if (!opt.seed) throw InputError("--family random needs --seed");
        const std::uint64_t seed = *opt.seed;
        const std::uint32_t m = opt.m;
        return {[m, seed](Count n) { return random_type_weight_law(m, n, seed); },
                std::nullopt,
                {{"family", f}, {"m", m}, {"seed", seed}}};
    }
    throw InputError("unknown family '" + f + "' (fair-coin, biased, polya, delta-type, random)");
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

int run_verify(const VerifyOptions& opt, unsigned jobs) {
    const LawSource src = law_source(opt);
    if (opt.backend != "exact" && opt.backend != "float") throw InputError("--backend must be exact or float");
    if (opt.format != "json" && opt.format != "csv") throw InputError("--format must be json or csv");
    const Backend backend = opt.backend == "exact" ? Backend::Exact : Backend::Float;

    std::vector<Count> ns;
    if (!opt.n_list.empty()) ns = parse_count_list(opt.n_list);
    else if (src.fixed_n) ns = {*src.fixed_n};
    else throw InputError("--n is required for this law source");
    if (src.fixed_n)
        for (Count n : ns)
            if (n != *src.fixed_n)
                throw InputError("this law has n = " + std::to_string(*src.fixed_n) + ", asked for n = " +
                                 std::to_string(n));
    const std::vector<Count> ks = parse_count_list(opt.k_list);

    struct Cell {
        std::size_t law;
        std::uint32_t k;
    };
    std::vector<ExchangeableLaw> laws;
    std::vector<Cell> cells;
    for (Count n : ns) {
        if (n == 0) throw InputError("n must be positive");
        laws.push_back(src.build(n));
        for (Count k : ks) {
            if (k < 1 || k > n)
                throw InputError("grid cell (n = " + std::to_string(n) + ", k = " + std::to_string(k) +
                                 ") needs 1 <= k <= n");
            cells.push_back({laws.size() - 1, to_u32(k, "k")});
        }
    }
    const auto reports = ordered_map<VerificationReport>(cells.size(), jobs, [&](std::size_t i) {
        return verify_theorem(laws[cells[i].law], cells[i].k, backend, opt.diagnostics);
    });

    bool pass = true;
    json rows = json::array();
    for (const auto& r : reports) {
        // k = 1 is an exact identity at every n; k >= 2 counts only inside
        // the stated validity range.
        const bool k1 = r.params.k == 1;
        const bool cell_ok = k1 && r.exact_arithmetic ? r.exact_zero : r.holds;
        const bool counted = k1 || r.params.valid_range;
        if (counted && !cell_ok) pass = false;
        json j = to_json(r);
        j["counted"] = counted;
        rows.push_back(std::move(j));
    }
    if (opt.format == "csv") {
        std::cout << "n,k,m,alpha,delta,epsilon,divergence,holds,valid_range,effective_n,binary_reference\n";
        for (const auto& r : reports) {
            const auto& p = r.params;
            std::cout << r.n << ',' << p.k << ',' << p.m << ',' << format_double(p.alpha) << ','
                      << format_double(p.delta) << ',' << format_double(p.epsilon) << ','
                      << format_double(r.divergence) << ',' << (r.holds ? "true" : "false") << ','
                      << (p.valid_range ? "true" : "false") << ',' << r.effective_n << ','
                      << (r.binary_reference ? format_double(*r.binary_reference) : "") << '\n';
        }
    } else {
        print_json({{"source", src.description}, {"backend", opt.backend}, {"reports", rows}, {"pass", pass}});
    }
    return pass ? kPass : kViolation;
}

// ---------------------------------------------------------------- lemma

struct LemmaOptions {
    std::string name;
    std::optional<std::uint32_t> m;
    std::uint32_t k = 2;
    std::string q;
    std::optional<Count> l;
    std::optional<std::uint64_t> seed;
    std::size_t max_tries = 1000;
    std::size_t samples = 0;
    bool exact_tail = false;
};

/// Q from --q, or the type nearest to uniform with n = k * l.
TypeVector lemma_type(const LemmaOptions& opt) {
    if (!opt.q.empty()) {
        const TypeVector t(parse_count_list(opt.q));
        if (opt.m && *opt.m != t.m()) throw InputError("--q has " + std::to_string(t.m()) + " symbols but m = " +
                                                       std::to_string(*opt.m));
        if (opt.l && *opt.l * opt.k != t.n())
            throw InputError("--q has n = " + std::to_string(t.n()) + ", not k * l");
        return t;
    }
    if (!opt.l) throw InputError("give --q or --l");
    const std::uint32_t m = opt.m.value_or(2);
    return round_to_type(Pmf::uniform(m), opt.k * *opt.l);
}

Count lemma_l(const TypeVector& q, std::uint32_t k) {
    if (k < 1) throw InputError("k must be positive");
    if (q.n() % k != 0) throw InputError("n = " + std::to_string(q.n()) + " is not a multiple of k");
    return q.n() / k;
}

int run_lemma1(const LemmaOptions& opt) {
    if (!opt.seed) throw InputError("lemma1 is randomized and needs --seed");
    const TypeVector q = lemma_type(opt);
    const Count l = lemma_l(q, opt.k);
    const Lemma1Result r = lemma1_construct(q, opt.k, l, *opt.seed, opt.max_tries);
    const double cells = static_cast<double>(block_space_size(q.m(), opt.k));
    json out{{"lemma", "lemma1"},
             {"q", q.counts()},
             {"k", opt.k},
             {"l", l},
             {"seed", *opt.seed},
             {"M", r.bound},
             {"blocks", r.sample.blocks.counts()},
             {"deviation", r.sample.deviation},
             {"l1_deviation", r.sample.l1_deviation},
             {"entropy_gap", r.sample.entropy_gap},
             {"entropy_gap_bound", continuity_expression(r.bound, cells)},
             {"tries", r.tries},
             {"used_fallback", r.used_fallback},
             {"continuity_checked", r.continuity_checked}};
    bool pass = r.sample.deviation <= r.bound && r.continuity_holds;
    if (r.continuity_checked) out["continuity_holds"] = r.continuity_holds;
    if (opt.samples > 0) {
        Lemma1Sampler sampler(q, opt.k, *opt.seed);
        const double gap_bound = continuity_expression(r.bound, cells);
        std::size_t accepted = 0;
        double worst_gap = 0.0;
        for (std::size_t i = 0; i < opt.samples; ++i) {
            const Lemma1Sample s = sampler.next();
            if (s.deviation > r.bound) continue;
            ++accepted;
            worst_gap = std::max(worst_gap, s.entropy_gap);
        }
        const bool gaps_ok = worst_gap <= gap_bound + kInequalitySlack;
        out["samples"] = {{"drawn", opt.samples},
                          {"accepted", accepted},
                          {"max_entropy_gap", worst_gap},
                          {"entropy_gap_bound", gap_bound},
                          {"pass", accepted > 0 && gaps_ok}};
        pass = pass && accepted > 0 && gaps_ok;
    }
    out["pass"] = pass;
    print_json(out);
    return pass ? kPass : kViolation;
}

int run_lemma3(const LemmaOptions& opt) {
    const TypeVector q = lemma_type(opt);
    const MaxDivergenceResult r = max_divergence_over_E_k(q, opt.k);
    const double bound = opt.k * std::log(static_cast<double>(q.n()));
    LogCombination bound_exact = LogCombination::log_of(Rational(Integer(q.n()))) * Rational(opt.k);
    json out{{"lemma", "lemma3"},
             {"q", q.counts()},
             {"k", opt.k},
             {"n", q.n()},
             {"max", r.value},
             {"max_exact", to_string(r.exact)},
             {"argmax", pmf_to_json(r.argmax)},
             {"vertices", r.candidates},
             {"bound", bound},
             {"bound_exact", to_string(bound_exact)}};
    if (q.n() % opt.k == 0) {
        const MaxDivergenceResult grid = max_divergence_over_E_k(q, opt.k, MaxDivergenceMode::Grid);
        out["lattice_max"] = grid.value;
        out["lattice_points"] = grid.candidates;
    }
    const bool pass = r.value <= bound + kInequalitySlack;
    out["pass"] = pass;
    print_json(out);
    return pass ? kPass : kViolation;
}

int run_dbound(const LemmaOptions& opt) {
    const TypeVector q = lemma_type(opt);
    const Count l = lemma_l(q, opt.k);
    const BoundParams p = theorem_constants(q.n(), opt.k, q.m());
    const std::uint64_t cells = block_space_size(q.m(), opt.k);
    const ConditionalMean cm = conditional_mean_divergence(q, opt.k, l, cells <= 16 && l <= 64);
    const TailBound tail = partition_tail_bound(q, opt.k, l, p.delta, opt.exact_tail);
    json out{{"lemma", "dbound"},
             {"q", q.counts()},
             {"k", opt.k},
             {"l", l},
             {"lattice_points", cm.members},
             {"conditional_mean_divergence", cm.divergence},
             {"epsilon", p.vacuous ? json(nullptr) : json(p.epsilon)},
             {"delta", p.delta},
             {"tail_log_bound", tail.log_bound},
             {"valid_range", p.valid_range}};
    if (cm.exact) out["conditional_mean_exact"] = to_string(*cm.exact);
    if (tail.exact) {
        out["tail_exact"] = *tail.exact;
        out["tail_exact_within_bound"] = tail.exact_within_bound;
    }
    // The random-permutation point must lie inside B_delta, i.e.
    // -M log(M / m^k) <= delta. With n = k l the two sides coincide
    // (alpha(n, k) = M(l, k)), so compare with float slack.
    if (l > opt.k) {
        const double w0 = continuity_expression(lemma1_constant(l, opt.k), static_cast<double>(cells));
        out["w0_radius"] = w0;
        out["w0_in_B_delta"] = w0 <= p.delta + kInequalitySlack;
    }
    const bool pass = cm.divergence <= p.epsilon && tail.exact_within_bound;
    out["pass"] = pass;
    print_json(out);
    return pass ? kPass : kViolation;
}

int run_pythagoras(const LemmaOptions& opt) {
    const TypeVector q = lemma_type(opt);
    const Count l = lemma_l(q, opt.k);
    const Pmf target = type_to_pmf(q);
    const Pmf product = product_pmf(target, opt.k);
    const Pmf uniform = Pmf::uniform(product.size());
    std::size_t members = 0;
    std::size_t pythagorean = 0;
    std::size_t linear = 0;
    std::optional<LtypeOnBlocks> argmin;
    LogCombination best;
    for_each_E_k_type(q, opt.k, [&](const LtypeOnBlocks& w) {
        const Pmf wp = type_to_pmf(w);
        const DivergenceDecomposition d = divergence_decomposition(wp, target);
        ++members;
        pythagorean += d.pythagorean_holds;
        linear += d.linear_entropy_holds;
        const LogCombination to_uniform = relative_entropy_exact(wp, uniform);
        if (!argmin || to_uniform.to_double() < best.to_double()) {
            argmin = w;
            best = to_uniform;
        }
    });
    bool product_on_lattice = true;
    for (const auto& x : product.probs()) {
        const Rational scaled = x * Integer(l);
        if (scaled.get_den() != 1) product_on_lattice = false;
    }
    const bool argmin_is_product = argmin && type_to_pmf(*argmin) == product;
    const bool pass = members > 0 && pythagorean == members && linear == members &&
                      (!product_on_lattice || argmin_is_product);
    print_json({{"lemma", "pythagoras"},
                {"q", q.counts()},
                {"k", opt.k},
                {"l", l},
                {"lattice_points", members},
                {"pythagorean_exact", pythagorean},
                {"linear_entropy_exact", linear},
                {"product_on_lattice", product_on_lattice},
                {"argmin_to_uniform", argmin ? json(argmin->counts()) : json(nullptr)},
                {"argmin_is_product", argmin_is_product},
                {"pass", pass}});
    return pass ? kPass : kViolation;
}

int run_lemma(const LemmaOptions& opt) {
    if (opt.name == "lemma1") return run_lemma1(opt);
    if (opt.name == "lemma3") return run_lemma3(opt);
    if (opt.name == "dbound") return run_dbound(opt);
    if (opt.name == "pythagoras") return run_pythagoras(opt);
    throw InputError("unknown lemma '" + opt.name + "' (lemma1, lemma3, dbound, pythagoras)");
}

// ---------------------------------------------------------------- gibbs

struct GibbsOptions {
    std::string target;
    std::uint32_t k = 2;
    std::string n_list;
    double threshold = 1e-2;
    Count exact_limit = 512;
};

int run_gibbs(const GibbsOptions& opt, unsigned jobs) {
    const Pmf target(parse_rational_list(opt.target));
    const std::vector<Count> ns = parse_count_list(opt.n_list);
    if (opt.k < 1) throw InputError("k must be positive");
    for (Count n : ns)
        if (n == 0 || n % opt.k != 0)
            throw InputError("trace length " + std::to_string(n) + " is not a positive multiple of k");
    const auto points = ordered_map<TracePoint>(ns.size(), jobs, [&](std::size_t i) {
        return convergence_trace(target, opt.k, {ns[i]}, opt.exact_limit).points.front();
    });
    const ConvergenceTrace trace{target, opt.k, points};
    write_trace_csv(trace, std::cout);
    return trace_converges(trace, opt.threshold) ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite de Finetti bounds: exact method-of-types checks and theorem verification"};
    app.require_subcommand(1);
    unsigned jobs = 1;
    std::optional<std::uint64_t> cap;
    app.add_option("--jobs", jobs, "Worker threads for grid cells and trace points")->check(CLI::PositiveNumber);
    app.add_option("--cap", cap, "Enumeration cap (overrides FINETTI_CAP)")->check(CLI::PositiveNumber);

    TypesOptions types;
    auto* types_cmd = app.add_subcommand("types", "Check the counting bounds for every n-type");
    types_cmd->add_option("--m", types.m, "Alphabet size")->required()->check(CLI::PositiveNumber);
    types_cmd->add_option("--n", types.n, "String length")->required()->check(CLI::PositiveNumber);
    types_cmd->add_option("--q", types.q, "Reference PMF as p/q list (default uniform)");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Verify the finite de Finetti bound on a law");
    verify_cmd->add_option("--law", verify.law_file, "Law file (JSON)");
    verify_cmd->add_option("--family", verify.family, "fair-coin | biased | polya | delta-type | random");
    verify_cmd->add_option("--p", verify.p, "biased: PMF, or P(0) when m = 2");
    verify_cmd->add_option("--init", verify.init, "polya: initial urn counts");
    verify_cmd->add_option("--counts", verify.counts, "delta-type: the type");
    verify_cmd->add_option("--seed", verify.seed, "random: seed");
    verify_cmd->add_option("--m", verify.m, "Alphabet size for fair-coin and random")->check(CLI::Range(2u, 1u << 16));
    verify_cmd->add_option("--n", verify.n_list, "Comma-separated law lengths");
    verify_cmd->add_option("--k", verify.k_list, "Comma-separated block lengths")->required();
    verify_cmd->add_option("--backend", verify.backend, "exact | float");
    verify_cmd->add_option("--format", verify.format, "json | csv");
    verify_cmd->add_flag("--diagnostics", verify.diagnostics, "Per-type conditional divergences");

    LemmaOptions lemma;
    auto* lemma_cmd = app.add_subcommand("lemma", "Run a lemma oracle");
    lemma_cmd->add_option("name", lemma.name, "lemma1 | lemma3 | dbound | pythagoras")->required();
    lemma_cmd->add_option("--m", lemma.m, "Alphabet size")->check(CLI::PositiveNumber);
    lemma_cmd->add_option("--k", lemma.k, "Block length")->check(CLI::PositiveNumber);
    lemma_cmd->add_option("--q", lemma.q, "Type Q as counts");
    lemma_cmd->add_option("--l", lemma.l, "Number of blocks")->check(CLI::PositiveNumber);
    lemma_cmd->add_option("--seed", lemma.seed, "Seed for lemma1");
    lemma_cmd->add_option("--max-tries", lemma.max_tries, "lemma1 permutations before the exhaustive fallback");
    lemma_cmd->add_option("--samples", lemma.samples, "lemma1: also draw this many permutations and tally");
    lemma_cmd->add_flag("--exact-tail", lemma.exact_tail, "dbound: enumerate the exact tail probability");

    GibbsOptions gibbs;
    auto* gibbs_cmd = app.add_subcommand("gibbs", "Trace conditional block laws toward product form (CSV)");
    gibbs_cmd->add_option("--target", gibbs.target, "Target PMF as p/q list")->required();
    gibbs_cmd->add_option("--k", gibbs.k, "Block length")->check(CLI::PositiveNumber);
    gibbs_cmd->add_option("--n", gibbs.n_list, "Comma-separated lengths (multiples of k)")->required();
    gibbs_cmd->add_option("--threshold", gibbs.threshold, "Pass when the final divergence is below this");
    gibbs_cmd->add_option("--exact-limit", gibbs.exact_limit, "Largest n computed in exact rationals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (cap) set_enumeration_cap(*cap);
        if (types_cmd->parsed()) return run_types(types);
        if (verify_cmd->parsed()) return run_verify(verify, jobs);
        if (lemma_cmd->parsed()) return run_lemma(lemma);
        if (gibbs_cmd->parsed()) return run_gibbs(gibbs, jobs);
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kCapacity;
    } catch (const ExhaustedError& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return kViolation;
    } catch (const InputError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

#pragma once

// Conditional block laws given a type and their convergence to product
// form along sequences of types approaching a target PMF.

#include "finetti/types.hpp"

#include <iosfwd>
#include <vector>

namespace finetti {

/// Law of the first k symbols of a uniformly random arrangement of the
/// multiset t, as a PMF on A^k.
Pmf conditional_block_law(const TypeVector& t, std::uint32_t k);
FloatPmf conditional_block_law_float(const TypeVector& t, std::uint32_t k);

/// Largest-remainder apportionment of n * target; ties go to the lowest
/// symbol index.
TypeVector round_to_type(const Pmf& target, Count n);

struct TracePoint {
    Count n;
    TypeVector type;
    double divergence;         // D(conditional block law || target^k)
    double max_abs_deviation;  // max |conditional block law - target^k|
};

struct ConvergenceTrace {
    Pmf target;
    std::uint32_t k;
    std::vector<TracePoint> points;
};

/// Points with n <= exact_limit are computed in exact rationals, larger n in
/// binary64. Throws InputError for an empty list or an n that is not a
/// positive multiple of k.
ConvergenceTrace convergence_trace(const Pmf& target, std::uint32_t k, const std::vector<Count>& n_list,
                                   Count exact_limit = 512);

/// The final divergence is below threshold and, when the n list is
/// increasing and spans at least a factor of 8, below the first point.
bool trace_converges(const ConvergenceTrace& trace, double threshold);

/// CSV with header n,divergence_nats,max_abs_deviation.
void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out);

}  // namespace finetti

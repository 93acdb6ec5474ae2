#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "boolecc/gadget.hpp"
#include "boolecc/oracle.hpp"

namespace boolecc {

/// Parameters of the three-stage unique corrector.
///
/// t_levels: the paper's recursion depth is T = C*log(log(1/eta)/log(1/delta))
/// with an unspecified constant; here it is explicit. At desk scale the
/// subcube stage already reduces the error below the small-error threshold
/// 1/(8q), so the formula gives T = 0 and that is the default. Levels only
/// help when the incoming error is well below 1/(3 q_red^2).
struct CorrectorParams {
    int d = 1;
    Rat delta = Rat(0);                        // assumed input error bound
    Rat eta = Rat(1, 1000);                    // target reduced error
    std::uint32_t reps = 5;                    // plurality repetitions, odd
    std::optional<std::uint32_t> k_subcube = 10;  // nullopt: skip stage 3
    std::uint32_t t_levels = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Gadget-based corrector for degree-1 polynomials at small error:
/// `reps` independent draws of sum_j c_j f(y^(j)), plurality vote.
/// Exactly 2*ceil(log2 n) + 3 queries per repetition.
GroupValue correct_small_error(QueryOracle& f, const PointN& a, std::uint32_t reps,
                               std::uint64_t seed);

/// One step of error reduction: three independent reduction-gadget
/// evaluations at `a` with rho = 1/10, plurality of the three results.
GroupValue base_reduce(QueryOracle& g, const PointN& a, int d, std::uint64_t seed);

/// Derived oracle running t_levels of base_reduce; level 0 is f itself.
/// Per-level randomness (the gadget bucket maps) is fixed at construction,
/// so the result is a deterministic function of (point, seed). Queries
/// multiply by K = 3 * q_red per level. Keeps a reference to f.
std::unique_ptr<QueryOracle> reduced_oracle(QueryOracle& f, int d, std::uint32_t t_levels,
                                            std::uint64_t seed);

/// Algorithm-3 stage: tabulate f on a random k-dimensional subcube through
/// `a`, uniquely decode the restriction, return its value at a (the group
/// zero when no codeword lies within the unique decoding radius).
GroupValue subcube_reduce(QueryOracle& f, const PointN& a, std::uint32_t k, int d,
                          std::uint64_t seed);

/// Same with a caller-fixed bucket map (the pipeline fixes h per oracle).
GroupValue subcube_reduce_with_h(QueryOracle& f, const PointN& a, std::uint32_t k, int d,
                                 const std::vector<std::uint32_t>& h);

/// Subcube-stage oracle wrapper: fixed h drawn from the seed, answers any
/// point by unique decoding on the subcube through it.
std::unique_ptr<QueryOracle> subcube_stage_oracle(QueryOracle& f, std::uint32_t k, int d,
                                                  std::uint64_t seed);

/// Full pipeline: subcube stage (when configured), t_levels of reduction,
/// then the small-error corrector.
GroupValue unique_correct(QueryOracle& f, const PointN& a, const CorrectorParams& params);

/// Queries to the reduction gadget for degree d at rho = 1/10 (nonzero ball
/// terms; 21 for d = 1).
std::uint32_t reduction_query_count(int d);

/// Closed-form f-query count of unique_correct:
/// (2 ceil(log2 n) + 3) * reps * (3 q_red)^t_levels * 2^k_subcube.
std::uint64_t unique_correct_query_formula(std::uint32_t n, const CorrectorParams& params);

}  // namespace boolecc

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boolecc/poly.hpp"

namespace boolecc {

/// Unboxed evaluation table for cyclic groups with small modulus; the fast
/// lane behind the generic DenseTable paths.
struct CompactTable {
    std::uint32_t n = 0;
    std::uint32_t m = 0;  // modulus, 2 <= m <= 255
    std::vector<std::uint8_t> values;
};

DenseTable to_dense(const CompactTable& ct);
std::optional<CompactTable> to_compact(const DenseTable& t);

struct ListDecodeConfig {
    /// Strategy (a) cap: give up enumeration when |G|^{#monomials} exceeds this.
    std::uint64_t enum_budget = std::uint64_t(1) << 22;
    /// Strategy (b) cap on visited slope assignments.
    std::uint64_t assembly_budget = std::uint64_t(1) << 22;
    /// Strategy (b) per-coordinate candidate cap; 0 means ceil(1/(2 eps')).
    std::uint32_t per_coord_cap = 0;
};

/// Majority-logic unique decoding (top-degree coefficients by plurality over
/// all complement assignments, subtract, recurse). Returns the unique
/// degree-<=d polynomial strictly within distance 1/2^{d+1} of f, or nullopt
/// when the reconstruction fails the final verification pass.
std::optional<MultilinearPoly> unique_decode(const DenseTable& f, int d);

/// Compact-lane unique decoding; same output as unique_decode on the boxed
/// equivalent table.
std::optional<MultilinearPoly> unique_decode_compact(const CompactTable& f, int d,
                                                     const GroupSpecPtr& group);

/// All degree-<=d polynomials within `radius` of f, each exactly once,
/// ordered by exact distance then canonical serialization. Strategy ladder:
/// Walsh-Hadamard agreement transform (cyclic(2), d=1), degree-1
/// coefficient-candidate assembly (radius < 1/2), full enumeration (small
/// finite groups). Throws budget_exceeded_error when no strategy fits.
std::vector<MultilinearPoly> list_decode(const DenseTable& f, int d, const Rat& radius,
                                         const ListDecodeConfig& cfg = {});

/// Test oracle: enumerate every degree-<=d polynomial over the (finite)
/// group and filter by exact distance <= radius. Same output order.
std::vector<MultilinearPoly> brute_force_list(const DenseTable& f, int d, const Rat& radius,
                                              const ListDecodeConfig& cfg = {});

/// Affine form over cyclic(2): x -> c0 + sum of slope bits of x. The compact
/// candidate representation used by the Walsh-Hadamard strategy.
struct CompactAffine {
    std::uint64_t slope = 0;
    std::uint8_t c0 = 0;
    std::uint64_t mismatches = 0;  // Hamming distance count against the table

    bool eval(std::uint64_t x) const {
        return (static_cast<std::uint32_t>(std::popcount(slope & x)) + c0) & 1;
    }
};

/// Exact distances to all affine forms via one Walsh-Hadamard transform;
/// returns the forms with mismatches/2^n <= radius in canonical list order.
std::vector<CompactAffine> wht_affine_list(const CompactTable& f, const Rat& radius);

MultilinearPoly affine_to_poly(const CompactAffine& a, std::uint32_t n, const GroupSpecPtr& z2);

}  // namespace boolecc

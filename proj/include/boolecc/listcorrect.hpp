#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "boolecc/correct.hpp"
#include "boolecc/cube.hpp"
#include "boolecc/decode.hpp"
#include "boolecc/oracle.hpp"

namespace boolecc {

/// Advice for one approximating oracle psi_{C, sigma, Q}: a k-dimensional
/// subcube (k even), the shared pairing permutation of [2k], and a degree-1
/// advice polynomial on the subcube.
struct ApproxOracle {
    SubcubeEmbedding C;
    std::vector<std::uint32_t> sigma;
    MultilinearPoly Q;
    Rat eps;

    std::uint64_t fingerprint() const;
};

/// Advice harvesting: ell iterations of (random k-subcube, query all 2^k
/// points, list-decode at radius 1/2 - eps/2), accumulating one ApproxOracle
/// per found polynomial, each bound to the subcube of its own iteration.
/// One sigma is drawn after the loop and shared by all oracles.
/// Total queries: ell * 2^k. k must be even.
std::vector<ApproxOracle> build_approx_oracles(QueryOracle& f, const Rat& eps, std::uint32_t k,
                                               std::uint32_t ell, std::uint64_t seed);

/// Optional memo for psi evaluations, keyed by (subcube fingerprint, point).
/// psi is deterministic given (C, sigma, Q, b), so memoized answers are
/// identical to fresh ones; fresh evaluations are still the path that
/// witnesses the exact 2^{2k} query count. Off unless explicitly passed.
class PsiCache {
public:
    struct Decoded {
        bool compact = false;
        std::vector<CompactAffine> affine;       // compact lane candidates
        std::vector<MultilinearPoly> polys;      // generic candidates
    };
    Decoded* find(std::uint64_t cube_fp, const PointN& b);
    void store(std::uint64_t cube_fp, const PointN& b, Decoded d);
    size_t size() const { return map_.size(); }

private:
    std::map<std::pair<std::uint64_t, PointN>, Decoded> map_;
};

/// Approximating algorithm: span the 2k-cube through b, query all 2^{2k}
/// points, list-decode at radius 1/2 - eps/2, keep candidates whose pairing
/// restriction equals the advice, return the first one's value at w (group
/// zero when none match).
GroupValue psi_eval(const ApproxOracle& oracle, QueryOracle& f, const PointN& b,
                    PsiCache* cache = nullptr);

struct ListCorrectParams {
    std::uint32_t k = 8;       // even; the paper's 2 L(eps/2)^3 ceil(1/eps^5) is impractical
    std::uint32_t ell = 0;     // 0: ceil(log2(list_cap)) + 1
    std::uint32_t list_cap = 16;
    /// Pipeline wrapped around each psi; psi is ~1/100-erroneous, so the
    /// large-error and reduction stages stay off by default.
    CorrectorParams wrapper{.d = 1,
                            .delta = Rat(1, 100),
                            .eta = Rat(1, 100),
                            .reps = 1,
                            .k_subcube = std::nullopt,
                            .t_levels = 0,
                            .seed = 0};
    std::uint64_t seed = 0;

    std::uint32_t effective_ell() const;
};

/// One output point-corrector: the psi oracle composed with the unique
/// correction pipeline (psi treated as a 1/100-erroneous oracle).
struct PointCorrector {
    ApproxOracle oracle;
    CorrectorParams wrapper;

    GroupValue correct_at(QueryOracle& f, const PointN& b, std::uint64_t seed,
                          PsiCache* cache = nullptr) const;
};

std::vector<PointCorrector> local_list_correct(QueryOracle& f, const Rat& eps,
                                               const ListCorrectParams& params);

}  // namespace boolecc

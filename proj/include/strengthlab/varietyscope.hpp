#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "strengthlab/detkernel.hpp"
#include "strengthlab/polyring.hpp"

namespace strengthlab {

/// Counts can reach q^ambient at desk scale, which overflows 64 bits.
using BigCount = unsigned __int128;
std::string big_to_string(BigCount n);

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Number of F_{q^e}-points of one variety, per tower level.
struct CountLevel {
    uint32_t level = 0;  // tower level: field is F_{q_base^level}
    uint64_t q = 0;
    BigCount count = 0;
};

struct CountProfile {
    std::string tag;
    uint32_t ambient = 0;
    std::vector<CountLevel> levels;
};

enum class DimMethod { slope, exact_structured, exact_stratified };

struct DimensionEstimate {
    bool empty_variety = false;  // no points at any level: codim = ambient + 1 by convention
    int dim = 0;
    int codim = 0;
    DimMethod method = DimMethod::slope;
    bool exact = false;  // only exact_structured results count as exact
    bool small_field_noise = false;
    bool missing_rational_points_risk = false;
};

struct InvariantResult {
    CountProfile profile;
    DimensionEstimate est;
};

/// Polynomial conditions over the base field cutting out a variety in
/// affine space; a point lies on the variety iff every condition vanishes.
struct VarietyConditions {
    FieldRef fld;
    uint32_t ambient = 0;
    std::vector<Poly> conditions;
};

VarietyConditions conditions_ZP(const MultilinearForm& P, uint32_t pivot = 0);
/// Ambient (v, x) with the v block first, matching the defining incidence
/// v in ker H_f(x).
VarietyConditions conditions_Zsym(const HomogeneousPoly& f);
VarietyConditions conditions_sing(const HomogeneousPoly& f);
/// Rank-drop locus of the Jacobian of the collection: all s x s minors.
VarietyConditions conditions_S(const std::vector<HomogeneousPoly>& fs);
VarietyConditions conditions_Z_collection(const std::vector<MultilinearForm>& Ps,
                                          uint32_t pivot = 0);
VarietyConditions conditions_Zsym_collection(const std::vector<HomogeneousPoly>& fs);
/// Kernel incidence of the differential, over (x, v) with the x block first.
VarietyConditions conditions_TB(const std::vector<HomogeneousPoly>& map);

/// Exact dimension for varieties whose non-monomial conditions vanish on the
/// coordinate-subspace union cut out by their monomial conditions. In that
/// case the variety equals that union over every field extension, so the
/// maximal face size is the true dimension.
std::optional<uint32_t> structured_dimension(const VarietyConditions& vc);

struct CountOptions {
    uint64_t budget = 100'000'000;  // enumerated points (= corank evaluations) per count
};

CountProfile count_ZP(const MultilinearForm& P, const FieldTower& tower,
                      const CountOptions& opts = {}, uint32_t pivot = 0,
                      uint32_t kernel_factor = 1);
CountProfile count_Zsym(const HomogeneousPoly& f, const FieldTower& tower,
                        const CountOptions& opts = {});
CountProfile count_sing(const HomogeneousPoly& f, const FieldTower& tower,
                        const CountOptions& opts = {});

enum class CollectionKind { Z_collection, Zsym_collection, S_collection };

struct CollectionCount {
    CountProfile profile;
    bool union_checked = false;  // pointwise union-formula audit ran (level 1)
    bool union_holds = false;
};

CollectionCount count_collection(const std::vector<MultilinearForm>& Ps, const FieldTower& tower,
                                 const CountOptions& opts = {}, bool verify_union = true,
                                 uint32_t pivot = 0);
CollectionCount count_collection(const std::vector<HomogeneousPoly>& fs, CollectionKind kind,
                                 const FieldTower& tower, const CountOptions& opts = {},
                                 bool verify_union = true);

/// Slope estimate from the two largest levels with points. Three-level
/// disagreement and degenerate smallness raise confidence flags.
DimensionEstimate estimate_dimension(const CountProfile& profile, uint64_t q_base);

InvariantResult g_invariant(const MultilinearForm& P, const FieldTower& tower,
                            const CountOptions& opts = {});
InvariantResult g_sym_invariant(const HomogeneousPoly& f, const FieldTower& tower,
                                const CountOptions& opts = {});
InvariantResult c_invariant(const HomogeneousPoly& f, const FieldTower& tower,
                            const CountOptions& opts = {});
InvariantResult c_prime_invariant(const std::vector<HomogeneousPoly>& fs, const FieldTower& tower,
                                  const CountOptions& opts = {});
InvariantResult g_collection_invariant(const std::vector<MultilinearForm>& Ps,
                                       const FieldTower& tower, const CountOptions& opts = {});
InvariantResult g_sym_collection_invariant(const std::vector<HomogeneousPoly>& fs,
                                           const FieldTower& tower, const CountOptions& opts = {});

/// codim, within the tangent bundle V x V, of {(x,v) : dphi_x(v) = 0}.
InvariantResult tb_rank(const std::vector<HomogeneousPoly>& map, const FieldTower& tower,
                        const CountOptions& opts = {});

struct StratumCount {
    uint32_t corank = 0;  // stratum S_{>= corank} intersected with (f = 0)
    CountProfile profile;
    DimensionEstimate est;
};

std::vector<StratumCount> corank_strata(const HomogeneousPoly& f, const FieldTower& tower,
                                        const CountOptions& opts = {});

struct RankHistogramLevel {
    uint32_t level = 0;
    uint64_t q = 0;
    std::vector<BigCount> count_by_rank;  // index r: base points with rank exactly r
};

std::vector<RankHistogramLevel> rank_stratification(const MultilinearForm& P,
                                                    const FieldTower& tower,
                                                    const CountOptions& opts = {},
                                                    uint32_t pivot = 0,
                                                    uint32_t kernel_factor = 1);

/// dim of the kernel-side variety as max over rank strata of
/// (stratum slope dim) + (kernel dim - r).
DimensionEstimate estimate_dimension_stratified(const std::vector<RankHistogramLevel>& strata,
                                                uint32_t ambient, uint32_t kernel_dim,
                                                uint64_t q_base);

struct DiagonalCheck {
    bool checked = false;
    bool matches_gradient_locus = false;  // {x : H(x) x = 0} == {grad f = 0}, needs char != d-1 divisor
    bool matches_singular_locus = false;  // additionally == Sing(f), needs char not dividing d
};

/// Prop-style diagonal consistency of Z^sym with the singular locus, checked
/// pointwise at tower level 1.
DiagonalCheck diagonal_consistency(const HomogeneousPoly& f, const FieldTower& tower,
                                   const CountOptions& opts = {});

}  // namespace strengthlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normsurf/lp.hpp"
#include "normsurf/mumford.hpp"
#include "normsurf/surface.hpp"

namespace normsurf {
namespace contract {

/// Outcome of the contractibility machinery. All verdicts are model-relative:
/// "every curve" means every declared curve, and certificates say so. There
/// is deliberately no NotContractible status; everything in scope is a
/// sufficient criterion.
struct ContractionVerdict {
    enum class Status { CertifiedContractible, CertifiedByRule, Unknown };
    Status status = Status::Unknown;
    std::optional<Divisor> certificate; // effective, zero on R, >= 1 elsewhere
    std::vector<std::string> rule_trace;
    bool model_relative = true;
    std::optional<LPCertificate> lp_certificate; // complementary-curve system evidence
};

/// True iff the pairing restriction to the named downstairs curves has
/// signature (0, 0, |R|).
bool is_negative_definite(const NormalSurfaceModel& model,
                          const std::vector<std::string>& curves);

/// Effective integral divisor with support exactly R pairing strictly
/// negatively against every component; exists for every connected negative
/// definite R because the inverse pairing matrix has strictly negative
/// entries.
Divisor anti_ample_on(const NormalSurfaceModel& model, const std::vector<std::string>& curves);

/// Splits a divisor of positive square into its positive and negative part
/// and returns whichever part has positive square (the inequality
/// 0 < A^2 <= A_+^2 + A_-^2 guarantees one does). nullopt when A^2 <= 0.
std::optional<Divisor> positive_square_witness(const NormalSurfaceModel& model,
                                               const Divisor& a);

/// True iff the curves are connected and carry some divisor of positive
/// square, i.e. the complement of their union is almost affine.
bool is_almost_affine_complement(const NormalSurfaceModel& model,
                                 const std::vector<std::string>& curves);

/// Effective integral divisor supported on all of C pairing >= 1 against
/// every component of C. C must be connected (ContractViolation otherwise);
/// returns nullopt (no seed) exactly when the pairing restriction is negative
/// semidefinite. Construction: a positive-square seed extracted from the
/// symmetric decomposition, grown along a breadth-first walk with
/// lexicographic tie-breaks, each step scaling by the least positive integer
/// that keeps all visited pairings >= 1; repeated visits patch vertices the
/// seed pairs badly against.
std::optional<Divisor> ample_on_itself(const NormalSurfaceModel& model,
                                       const std::vector<std::string>& curves);

/// Searches for an effective complementary divisor: zero against every
/// component of R and >= 1 against every other declared curve, with
/// nonnegative coefficients on the non-R curves (which encodes disjointness
/// from R). Feasible: CertifiedContractible with the integerized divisor.
/// Infeasible: falls through to the rule engine, keeping the Farkas
/// certificate of the failed system.
ContractionVerdict contraction_certificate(const NormalSurfaceModel& model,
                                           const std::vector<std::string>& curves);

enum class CondStatus { Holds, Fails, Unknown };

/// The three conditions a Weil divisor must meet to define the contraction
/// of R: locally principal near R, nonnegative degrees vanishing exactly on
/// R, and trivial linear class on the infinitesimal neighborhoods of R. The
/// first two are computed exactly; the third is discharged from declared
/// facts only, since linear equivalence on thickenings has no numerical
/// shadow.
struct ComplementConditionReport {
    CondStatus cartier_near_r = CondStatus::Unknown;
    CondStatus positive_complement = CondStatus::Unknown;
    CondStatus formal_triviality = CondStatus::Unknown; // never Fails
    std::vector<std::string> detail;
};

ComplementConditionReport complement_conditions(const NormalSurfaceModel& model,
                                                const std::vector<std::string>& curves,
                                                const Divisor& a);

/// Sufficient-criteria rule engine, applied in fixed order; first firing rule
/// wins. Every verdict carries a trace naming each hypothesis used and its
/// provenance (computed from the model vs declared by the caller).
ContractionVerdict criteria_engine(const NormalSurfaceModel& model,
                                   const std::vector<std::string>& curves);

} // namespace contract
} // namespace normsurf

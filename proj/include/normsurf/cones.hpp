#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normsurf/lp.hpp"
#include "normsurf/mumford.hpp"
#include "normsurf/surface.hpp"

namespace normsurf {
namespace cones {

/// Class of a divisor in the numerical group N(X), represented faithfully
/// (relative to the declared curves) by its pairings against the downstairs
/// prime divisors, in model order.
struct NumericalClass {
    QVec coords;
    friend bool operator==(const NumericalClass&, const NumericalClass&) = default;
};

NumericalClass numerical_class(const NormalSurfaceModel& model, const Divisor& d);

struct HodgeReport {
    Inertia inertia;   // of the pairing matrix of all downstairs divisors
    bool consistent;   // n_plus <= 1
};

HodgeReport hodge_check(const NormalSurfaceModel& model);

enum class FaceKind { NegDefCurveFace, BoundaryIsotropicFace, NotExtremal };

/// Result of support_function: the separating divisor when one exists over
/// the declared curves, always together with the LP evidence.
struct SupportFunctionResult {
    std::optional<Divisor> divisor; // integer coefficients, pair >= 1 off the face
    LPCertificate certificate;
    std::vector<std::string> notes;
};

/// Sign-unrestricted rational divisor A over the downstairs primes with
/// pair(A, R_i) = 0 on the face and pair(A, C) >= 1 on every other declared
/// curve; strictness comes from scaling freedom. The returned divisor is the
/// least positive multiple of the primitive integer vector that restores the
/// >= 1 margins.
SupportFunctionResult support_function(const NormalSurfaceModel& model,
                                       const std::vector<std::string>& face);

struct FaceReport {
    FaceKind kind = FaceKind::NotExtremal;
    std::optional<Divisor> support_function;       // for NegDefCurveFace
    std::optional<LPCertificate> finiteness_check; // the P cap Q = 0 system, expected infeasible
    std::optional<Divisor> isotropic_class;        // for BoundaryIsotropicFace, descriptive
    std::vector<std::string> notes;
};

/// Decides whether the given curves span an extremal face of negative
/// definite type: the pairing restriction must be negative definite and a
/// support function must exist over the declared curves. The finiteness
/// certificate shows no nonzero nonnegative combination of the face curves
/// equals a nonnegative combination of the other declared curves. Isotropic
/// boundary faces are reported descriptively, with no completeness claim.
FaceReport is_extremal_negdef_face(const NormalSurfaceModel& model,
                                   const std::vector<std::string>& face);

} // namespace cones
} // namespace normsurf

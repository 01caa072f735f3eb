#pragma once

#include <map>
#include <string>
#include <vector>

#include "normsurf/surface.hpp"

namespace normsurf {
namespace mumford {

/// Pullback of a downstairs divisor to the resolution. The correction over
/// each singular point is the unique rational vector restoring orthogonality
/// against that point's exceptional curves.
struct PullbackResult {
    Divisor upstairs; // Level::Upstairs, input coefficients plus corrections
    std::map<std::string, QVec> per_point; // singular point id -> q, in exceptional order
};

/// Solves, over each singular point with exceptional gram G and incidence
/// vector b, the system G q = -b. Negative definiteness of G makes the
/// solution unique, so no choices are involved.
PullbackResult pullback(const NormalSurfaceModel& model, const Divisor& d);

/// The rational intersection pairing of X. Downstairs arguments are pulled
/// back first; Upstairs arguments are paired on the resolution as given.
Rat pair(const NormalSurfaceModel& model, const Divisor& a, const Divisor& b);

/// Pairing on a unibranched surface whose normalization is the model:
/// length d of the local ring at the generic point times the normal pairing.
Rat unibranched_pair(const NormalSurfaceModel& model, long multiplicity, const Divisor& a,
                     const Divisor& b);

/// Matrix of pairings pair(C_i, C_j) for the named prime divisors.
QMat pairing_matrix(const NormalSurfaceModel& model, const std::vector<std::size_t>& idx);

struct CartierReport {
    BigInt index = 1;   // least n >= 1 with n * pullback(d) integral everywhere
    bool certified = false;
    std::vector<std::string> assumption_trail;
    std::map<std::string, BigInt> point_denominators; // per singular point
};

/// Least multiple with integral pullback, and whether numerical integrality
/// actually certifies a Cartier multiple. It does at rational singularities;
/// at points not flagged rational the report stays uncertified and names
/// them. Failure of Q-Cartier is never claimed: it is invisible to
/// intersection numbers.
CartierReport cartier_index(const NormalSurfaceModel& model, const Divisor& d);

} // namespace mumford
} // namespace normsurf

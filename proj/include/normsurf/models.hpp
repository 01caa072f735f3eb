#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normsurf/mumford.hpp"
#include "normsurf/surface.hpp"

namespace normsurf {
namespace models {

/// Declared movable/fixed decomposition D = M + F. M and F are inputs; this
/// library never computes section rings, it only classifies from their
/// intersection numbers.
struct MovableFixedData {
    Divisor d;
    Divisor m;
    Divisor f;
};

struct SplitReport {
    bool ok = false;
    std::vector<std::string> errors;
    // connected components of Supp(F), split by their degree against M
    Divisor f_prime;        // components meeting M positively
    Divisor f_double_prime; // the rest
    std::vector<std::string> notes;
};

/// Verifies D = M + F coefficientwise, F effective, M numerically movable
/// (nonnegative against every declared curve), and reports the F'/F'' split.
SplitReport split_check(const NormalSurfaceModel& model, const MovableFixedData& data);

struct ZariskiDecomposition {
    Divisor positive_part; // nonnegative against every declared curve
    Divisor negative_part; // effective, negative definite support, orthogonal to P
};

/// Numerical Zariski-type helper: grows the support of N from the curves the
/// divisor meets negatively, solving the negative definite system at each
/// stage. nullopt when the accumulated support fails to stay negative
/// definite or the solved coefficients fail to stay nonnegative (the divisor
/// is then not pseudo-effective relative to the declared curves).
std::optional<ZariskiDecomposition> zariski_decompose(const NormalSurfaceModel& model,
                                                      const Divisor& d);

enum class ModelKind { Empty, AffineHull, Curve, Surface };
enum class Properness { Yes, No, UncertifiedYes, NotApplicable };

struct ModelClass {
    ModelKind kind = ModelKind::Empty;
    Properness proper = Properness::NotApplicable;
    std::vector<std::string> assumptions;
};

/// Dimension/properness trichotomy of the divisorial model defined by D,
/// computed from M^2, M.F and the Q-Cartier certification of M. Requires a
/// passing split_check and data presented at the stabilized stage (recorded
/// as an assumption, not verified - it would take all multiples of D).
ModelClass classify_model(const NormalSurfaceModel& model, const MovableFixedData& data);

} // namespace models
} // namespace normsurf

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "normsurf/rat.hpp"

namespace normsurf {

enum class Rel { Ge, Eq };

/// One linear condition row . x REL bound over rational unknowns.
struct LinearConstraint {
    QVec row;
    Rel rel = Rel::Ge;
    Rat bound;
};

/// Outcome of a rational feasibility problem, always with checkable evidence:
/// a feasible point that satisfies every constraint exactly, or a Farkas
/// multiplier vector combining the constraints into 0 >= c with c > 0.
/// Multipliers of Ge constraints are nonnegative; multipliers of Eq
/// constraints may have either sign (the equality used in reverse).
struct LPCertificate {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    QVec witness; // feasible point (num_vars entries) or dual (one per constraint)

    bool feasible() const { return status == Status::Feasible; }
};

/// Raised by the elimination route when the intermediate system outgrows its
/// row budget; the dispatcher reroutes such systems to the simplex.
class EliminationOverflow : public std::runtime_error {
public:
    explicit EliminationOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Decides feasibility of a finite rational constraint system, exactly.
/// Fourier-Motzkin elimination for small systems (<= 8 unknowns), exact
/// simplex with Bland's rule above that or when elimination blows up; both
/// routes emit certificates.
LPCertificate lp_feasible(const std::vector<LinearConstraint>& cs, std::size_t num_vars);

/// Forced-route entry points; the dispatcher above picks between them.
LPCertificate lp_feasible_fourier_motzkin(const std::vector<LinearConstraint>& cs,
                                          std::size_t num_vars);
LPCertificate lp_feasible_simplex(const std::vector<LinearConstraint>& cs,
                                  std::size_t num_vars);

/// Re-substitutes a certificate into the system it came from.
bool lp_certificate_valid(const std::vector<LinearConstraint>& cs, std::size_t num_vars,
                          const LPCertificate& cert);

} // namespace normsurf

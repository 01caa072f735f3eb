#include "normsurf/cones.hpp"

#include <algorithm>

namespace normsurf {
namespace cones {

namespace {

// least positive integer multiple of the primitive direction keeping every
// strict margin at >= 1; preserves equalities
Divisor normalized_integer_divisor(const NormalSurfaceModel& model, const QVec& coeffs,
                                   const std::vector<std::size_t>& vars,
                                   const std::vector<std::size_t>& strict_targets,
                                   const QMat& pairing, // vars x all-downstairs
                                   const std::vector<std::size_t>& all_downstairs) {
    QVec prim = primitive_integer_vector(coeffs);
    BigInt mult = 1;
    for (std::size_t t : strict_targets) {
        auto pos = std::find(all_downstairs.begin(), all_downstairs.end(), t);
        std::size_t col = static_cast<std::size_t>(pos - all_downstairs.begin());
        Rat v;
        for (std::size_t a = 0; a < vars.size(); ++a) v += prim[a] * pairing.at(a, col);
        if (v.sign() <= 0) continue; // equality rows and (impossible) slack
        // need mult * v >= 1
        mult = std::max(mult, (Rat(1) / v).ceil());
    }
    QVec scaled = prim;
    for (auto& x : scaled) x *= Rat(mult);
    QVec dense(model.resolution.size());
    for (std::size_t a = 0; a < vars.size(); ++a) dense[vars[a]] = scaled[a];
    return from_dense(model, dense, Level::Downstairs);
}

} // namespace

NumericalClass numerical_class(const NormalSurfaceModel& model, const Divisor& d) {
    require_valid(model);
    auto down = model.downstairs_indices();
    NumericalClass nc;
    nc.coords.reserve(down.size());
    for (std::size_t i : down)
        nc.coords.push_back(
            mumford::pair(model, d, Divisor::prime(model.resolution.divisors[i])));
    return nc;
}

HodgeReport hodge_check(const NormalSurfaceModel& model) {
    require_valid(model);
    QMat g = mumford::pairing_matrix(model, model.downstairs_indices());
    Inertia in = ldlt_inertia(g);
    return {in, in.n_plus <= 1};
}

SupportFunctionResult support_function(const NormalSurfaceModel& model,
                                       const std::vector<std::string>& face) {
    require_valid(model);
    auto face_idx = resolve_ids(model, face);
    if (face_idx.empty()) throw ContractViolation("support_function: empty face");
    for (std::size_t i : face_idx)
        if (model.is_exceptional(i))
            throw ContractViolation("support_function: face must consist of downstairs curves");
    if (!ldlt_inertia(mumford::pairing_matrix(model, face_idx)).negative_definite())
        throw ContractViolation("support_function: face is not negative definite");

    auto down = model.downstairs_indices();
    std::vector<std::size_t> others;
    for (std::size_t i : down)
        if (std::find(face_idx.begin(), face_idx.end(), i) == face_idx.end())
            others.push_back(i);

    SupportFunctionResult out;
    if (others.empty()) {
        out.certificate.status = LPCertificate::Status::Infeasible;
        out.notes.push_back("no declared curve lies outside the face; nothing to separate");
        return out;
    }

    // variables: coefficients over all downstairs primes, unrestricted in sign
    QMat pm = mumford::pairing_matrix(model, down);
    std::vector<LinearConstraint> cs;
    auto col_of = [&](std::size_t model_idx) {
        return static_cast<std::size_t>(
            std::find(down.begin(), down.end(), model_idx) - down.begin());
    };
    for (std::size_t r : face_idx) {
        LinearConstraint c;
        c.rel = Rel::Eq;
        c.bound = Rat(0);
        c.row.resize(down.size());
        for (std::size_t v = 0; v < down.size(); ++v) c.row[v] = pm.at(v, col_of(r));
        cs.push_back(std::move(c));
    }
    for (std::size_t t : others) {
        LinearConstraint c;
        c.rel = Rel::Ge;
        c.bound = Rat(1);
        c.row.resize(down.size());
        for (std::size_t v = 0; v < down.size(); ++v) c.row[v] = pm.at(v, col_of(t));
        cs.push_back(std::move(c));
    }

    out.certificate = lp_feasible(cs, down.size());
    if (out.certificate.feasible()) {
        QMat pairing(down.size(), down.size());
        for (std::size_t a = 0; a < down.size(); ++a)
            for (std::size_t b = 0; b < down.size(); ++b) pairing.at(a, b) = pm.at(a, b);
        out.divisor = normalized_integer_divisor(model, out.certificate.witness, down, others,
                                                 pairing, down);
    } else {
        out.notes.push_back(
            "no support function exists over the declared curves (model-relative verdict)");
    }
    return out;
}

FaceReport is_extremal_negdef_face(const NormalSurfaceModel& model,
                                   const std::vector<std::string>& face) {
    require_valid(model);
    auto face_idx = resolve_ids(model, face);
    if (face_idx.empty()) throw ContractViolation("is_extremal_negdef_face: empty set");
    for (std::size_t i : face_idx)
        if (model.is_exceptional(i))
            throw ContractViolation("is_extremal_negdef_face: set must be downstairs curves");

    FaceReport rep;
    QMat g = mumford::pairing_matrix(model, face_idx);
    Inertia in = ldlt_inertia(g);

    if (in.negative_definite()) {
        SupportFunctionResult sf = support_function(model, face);
        if (sf.divisor) {
            rep.kind = FaceKind::NegDefCurveFace;
            rep.support_function = sf.divisor;
            rep.notes.push_back("negative definite with a separating support function");

            // P cap Q = 0: only the zero class is a nonnegative combination on
            // both sides; normalization sum(lambda) = 1 rules out zero
            auto down = model.downstairs_indices();
            std::vector<std::size_t> others;
            for (std::size_t i : down)
                if (std::find(face_idx.begin(), face_idx.end(), i) == face_idx.end())
                    others.push_back(i);
            QMat pm = mumford::pairing_matrix(model, down);
            auto col_of = [&](std::size_t model_idx) {
                return static_cast<std::size_t>(
                    std::find(down.begin(), down.end(), model_idx) - down.begin());
            };
            const std::size_t nl = face_idx.size(), nm = others.size();
            std::vector<LinearConstraint> cs;
            for (std::size_t k = 0; k < down.size(); ++k) {
                LinearConstraint c;
                c.rel = Rel::Eq;
                c.bound = Rat(0);
                c.row.resize(nl + nm);
                for (std::size_t a = 0; a < nl; ++a)
                    c.row[a] = pm.at(col_of(face_idx[a]), k);
                for (std::size_t b = 0; b < nm; ++b)
                    c.row[nl + b] = -pm.at(col_of(others[b]), k);
                cs.push_back(std::move(c));
            }
            {
                LinearConstraint norm;
                norm.rel = Rel::Eq;
                norm.bound = Rat(1);
                norm.row.assign(nl + nm, Rat(0));
                for (std::size_t a = 0; a < nl; ++a) norm.row[a] = Rat(1);
                cs.push_back(std::move(norm));
            }
            for (std::size_t v = 0; v < nl + nm; ++v) {
                LinearConstraint nn;
                nn.rel = Rel::Ge;
                nn.bound = Rat(0);
                nn.row.assign(nl + nm, Rat(0));
                nn.row[v] = Rat(1);
                cs.push_back(std::move(nn));
            }
            rep.finiteness_check = lp_feasible(cs, nl + nm);
            if (rep.finiteness_check->feasible())
                rep.notes.push_back("finiteness check failed: the face meets the cone of the "
                                    "remaining declared curves");
        } else {
            rep.kind = FaceKind::NotExtremal;
            rep.notes.push_back("negative definite, but no support function over the declared "
                                "curves");
        }
        return rep;
    }

    if (in.n_plus == 0) {
        // descriptive isotropic boundary report for the reduced total class
        Divisor total;
        for (const auto& n : face) total.set(n, Rat(1));
        if (mumford::pair(model, total, total).is_zero()) {
            bool all_nonneg = true;
            for (std::size_t i : model.downstairs_indices()) {
                Rat v = mumford::pair(model, total,
                                      Divisor::prime(model.resolution.divisors[i]));
                if (v.sign() < 0) { all_nonneg = false; break; }
            }
            if (all_nonneg) {
                rep.kind = FaceKind::BoundaryIsotropicFace;
                rep.isotropic_class = total;
                rep.notes.push_back(
                    "isotropic boundary class (descriptive; no completeness claim)");
                return rep;
            }
        }
    }

    rep.kind = FaceKind::NotExtremal;
    rep.notes.push_back("pairing restriction is not negative definite");
    return rep;
}

} // namespace cones
} // namespace normsurf

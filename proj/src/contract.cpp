#include "normsurf/contract.hpp"

#include <algorithm>

namespace normsurf {
namespace contract {

namespace {

std::vector<std::size_t> resolve_downstairs(const NormalSurfaceModel& model,
                                            const std::vector<std::string>& names,
                                            const char* who) {
    auto idx = resolve_ids(model, names);
    for (std::size_t i : idx)
        if (model.is_exceptional(i))
            throw ContractViolation(std::string(who) + ": '" + model.resolution.divisors[i] +
                                    "' is exceptional, not a curve of X");
    return idx;
}

Rat quad(const QMat& g, const QVec& x) {
    Rat s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!x[j].is_zero()) s += x[i] * x[j] * g.at(i, j);
    }
    return s;
}

// primitive integer direction, then the least positive multiple putting every
// recomputed strict margin back at >= 1
Divisor normalize_effective(const NormalSurfaceModel& model, const QVec& coeffs,
                            const std::vector<std::size_t>& support_idx,
                            const std::vector<std::size_t>& strict_targets) {
    QVec prim = primitive_integer_vector(coeffs);
    QVec dense(model.resolution.size());
    for (std::size_t a = 0; a < support_idx.size(); ++a) dense[support_idx[a]] = prim[a];
    Divisor d = from_dense(model, dense, Level::Downstairs);
    BigInt mult = 1;
    for (std::size_t t : strict_targets) {
        Rat v = mumford::pair(model, d, Divisor::prime(model.resolution.divisors[t]));
        if (v.sign() <= 0)
            throw std::logic_error("normalize_effective: margin not positive");
        mult = std::max(mult, (Rat(1) / v).ceil());
    }
    if (mult != 1) d = Rat(mult) * d;
    return d;
}

} // namespace

bool is_negative_definite(const NormalSurfaceModel& model,
                          const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "is_negative_definite");
    return ldlt_inertia(mumford::pairing_matrix(model, idx)).negative_definite();
}

Divisor anti_ample_on(const NormalSurfaceModel& model, const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "anti_ample_on");
    if (idx.empty()) throw ContractViolation("anti_ample_on: empty curve set");
    if (adjacency_components(model, curves).size() != 1)
        throw ContractViolation("anti_ample_on: curve set is not connected");
    QMat g = mumford::pairing_matrix(model, idx);
    if (!ldlt_inertia(g).negative_definite())
        throw ContractViolation("anti_ample_on: curve set is not negative definite");

    QVec minus_one(idx.size(), Rat(-1));
    QVec q = solve_linear(g, minus_one);
    for (const auto& x : q)
        if (x.sign() <= 0) throw std::logic_error("anti_ample_on: correction not positive");
    QVec n = primitive_integer_vector(q);
    QVec dense(model.resolution.size());
    for (std::size_t a = 0; a < idx.size(); ++a) dense[idx[a]] = n[a];
    return from_dense(model, dense, Level::Downstairs);
}

std::optional<Divisor> positive_square_witness(const NormalSurfaceModel& model,
                                               const Divisor& a) {
    require_valid(model);
    if (mumford::pair(model, a, a).sign() <= 0) return std::nullopt;
    Divisor plus, minus;
    plus.level = minus.level = a.level;
    for (const auto& [n, c] : a.coeffs) {
        if (c.sign() > 0) plus.set(n, c);
        else minus.set(n, -c);
    }
    if (mumford::pair(model, plus, plus).sign() > 0) return plus;
    if (mumford::pair(model, minus, minus).sign() > 0) return minus;
    throw std::logic_error("positive_square_witness: neither part has positive square");
}

bool is_almost_affine_complement(const NormalSurfaceModel& model,
                                 const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "is_almost_affine_complement");
    if (idx.empty()) return false;
    if (adjacency_components(model, curves).size() != 1) return false;
    return ldlt_inertia(mumford::pairing_matrix(model, idx)).n_plus >= 1;
}

std::optional<Divisor> ample_on_itself(const NormalSurfaceModel& model,
                                       const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "ample_on_itself");
    if (idx.empty()) throw ContractViolation("ample_on_itself: empty curve set");
    if (adjacency_components(model, curves).size() != 1)
        throw ContractViolation("ample_on_itself: curve set is not connected");

    const std::size_t m = idx.size();
    QMat g = mumford::pairing_matrix(model, idx);
    SymmetricDiagonalization diag = ldlt_diagonalize(g);
    if (diag.inertia.n_plus == 0) return std::nullopt; // no supported divisor of positive square

    auto name = [&](std::size_t a) -> const std::string& {
        return model.resolution.divisors[idx[a]];
    };

    // effective seed of positive square from the decomposition witness
    QVec w = primitive_integer_vector(*diag.positive_witness);
    QVec seed_plus(m), seed_minus(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (w[i].sign() > 0) seed_plus[i] = w[i];
        else if (w[i].sign() < 0) seed_minus[i] = -w[i];
    }
    QVec a;
    if (quad(g, seed_plus).sign() > 0) a = seed_plus;
    else if (quad(g, seed_minus).sign() > 0) a = seed_minus;
    else throw std::logic_error("ample_on_itself: seed split lost positivity");

    QVec p = g.mul(a); // pairings of the running divisor against each component

    // breadth-first walk from a component the seed meets positively
    std::size_t start = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].sign() > 0 && p[i].sign() > 0 && (start == m || name(i) < name(start)))
            start = i;
    }
    if (start == m) throw std::logic_error("ample_on_itself: no starting component");

    std::vector<std::size_t> order;
    {
        std::vector<bool> enqueued(m, false);
        std::vector<std::size_t> queue{start};
        enqueued[start] = true;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            std::size_t u = queue[h];
            order.push_back(u);
            std::vector<std::size_t> nb;
            for (std::size_t vtx = 0; vtx < m; ++vtx)
                if (!enqueued[vtx] && model.resolution.gram[idx[u]][idx[vtx]] > 0)
                    nb.push_back(vtx);
            std::sort(nb.begin(), nb.end(),
                      [&](std::size_t x, std::size_t y) { return name(x) < name(y); });
            for (std::size_t vtx : nb) {
                enqueued[vtx] = true;
                queue.push_back(vtx);
            }
        }
    }

    auto apply = [&](std::size_t u, const BigInt& lambda) { // A <- lambda A + C_u
        const Rat lam{lambda};
        for (std::size_t i = 0; i < m; ++i) a[i] *= lam;
        a[u] += Rat(1);
        for (std::size_t i = 0; i < m; ++i) p[i] = lam * p[i] + g.at(i, u);
    };

    std::vector<bool> visited(m, false);
    bool walk_ok = true;
    for (std::size_t v : order) {
        // repeated visits of an earlier component raise p_v when the seed
        // pairs badly against v
        std::size_t guard = 16 * m + 64;
        while (p[v].sign() <= 0 && walk_ok) {
            std::size_t u = m;
            for (std::size_t c = 0; c < m; ++c)
                if (visited[c] && g.at(c, v).sign() > 0 && (u == m || name(c) < name(u)))
                    u = c;
            if (u == m || guard-- == 0) { walk_ok = false; break; }
            Rat need = Rat(1) - g.at(u, u);
            BigInt lambda = 1;
            if (need.sign() > 0) lambda = std::max(lambda, (need / p[u]).ceil());
            Rat before = p[v];
            apply(u, lambda);
            if (!(p[v] > before)) { walk_ok = false; break; }
        }
        if (!walk_ok) break;
        Rat need = Rat(1) - g.at(v, v);
        BigInt lambda = 1;
        if (need.sign() > 0) lambda = std::max(lambda, (need / p[v]).ceil());
        apply(v, lambda);
        visited[v] = true;
    }

    if (walk_ok) {
        std::vector<std::size_t> all_targets = idx;
        return normalize_effective(model, a, idx, all_targets);
    }

    // The walk can stall when the seed pairs negatively against unvisited
    // parts of its own support. The divisor still exists (positive square on
    // a connected curve), so fall back to the feasibility system and
    // integerize its witness.
    std::vector<LinearConstraint> cs;
    for (std::size_t i = 0; i < m; ++i) {
        LinearConstraint lower;
        lower.rel = Rel::Ge;
        lower.bound = Rat(1);
        lower.row.assign(m, Rat(0));
        lower.row[i] = Rat(1);
        cs.push_back(std::move(lower));
        LinearConstraint margin;
        margin.rel = Rel::Ge;
        margin.bound = Rat(1);
        margin.row.resize(m);
        for (std::size_t j = 0; j < m; ++j) margin.row[j] = g.at(i, j);
        cs.push_back(std::move(margin));
    }
    LPCertificate lp = lp_feasible(cs, m);
    if (!lp.feasible()) return std::nullopt;
    return normalize_effective(model, lp.witness, idx, idx);
}

ContractionVerdict contraction_certificate(const NormalSurfaceModel& model,
                                           const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "contraction_certificate");
    if (idx.empty()) throw ContractViolation("contraction_certificate: empty curve set");
    if (adjacency_components(model, curves).size() != 1)
        throw ContractViolation(
            "contraction_certificate: curve set is not connected; treat components separately");
    if (!ldlt_inertia(mumford::pairing_matrix(model, idx)).negative_definite())
        throw ContractViolation("contraction_certificate: curve set is not negative definite");

    auto down = model.downstairs_indices();
    std::vector<std::size_t> others;
    for (std::size_t i : down)
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) others.push_back(i);

    ContractionVerdict v;
    v.model_relative = true;
    if (others.empty()) {
        v.rule_trace.push_back(
            "complementary-curve search skipped: no declared curve outside R");
        ContractionVerdict byrule = criteria_engine(model, curves);
        byrule.rule_trace.insert(byrule.rule_trace.begin(), v.rule_trace.begin(),
                                 v.rule_trace.end());
        return byrule;
    }

    // one pullback pass for all pairings
    std::vector<std::size_t> cols = idx;
    cols.insert(cols.end(), others.begin(), others.end());
    std::vector<std::size_t> rows = others;
    QMat pm = mumford::pairing_matrix(model, down);
    auto pos_in_down = [&](std::size_t model_idx) {
        return static_cast<std::size_t>(
            std::find(down.begin(), down.end(), model_idx) - down.begin());
    };

    std::vector<LinearConstraint> cs;
    for (std::size_t r : idx) {
        LinearConstraint c;
        c.rel = Rel::Eq;
        c.bound = Rat(0);
        c.row.resize(others.size());
        for (std::size_t a = 0; a < others.size(); ++a)
            c.row[a] = pm.at(pos_in_down(others[a]), pos_in_down(r));
        cs.push_back(std::move(c));
    }
    for (std::size_t t : others) {
        LinearConstraint c;
        c.rel = Rel::Ge;
        c.bound = Rat(1);
        c.row.resize(others.size());
        for (std::size_t a = 0; a < others.size(); ++a)
            c.row[a] = pm.at(pos_in_down(others[a]), pos_in_down(t));
        cs.push_back(std::move(c));
    }
    for (std::size_t a = 0; a < others.size(); ++a) {
        LinearConstraint c;
        c.rel = Rel::Ge;
        c.bound = Rat(0);
        c.row.assign(others.size(), Rat(0));
        c.row[a] = Rat(1);
        cs.push_back(std::move(c));
    }

    LPCertificate cert = lp_feasible(cs, others.size());
    v.lp_certificate = cert;
    if (cert.feasible()) {
        v.status = ContractionVerdict::Status::CertifiedContractible;
        v.certificate = normalize_effective(model, cert.witness, others, others);
        v.rule_trace.push_back(
            "complementary curve found: effective, zero against every component of R, "
            ">= 1 against every other declared curve (verdict relative to declared curves)");
        return v;
    }

    ContractionVerdict byrule = criteria_engine(model, curves);
    byrule.rule_trace.insert(
        byrule.rule_trace.begin(),
        "complementary-curve system infeasible over the declared curves "
        "(Farkas certificate attached); falling through to the rule engine");
    byrule.lp_certificate = cert;
    return byrule;
}

ComplementConditionReport complement_conditions(const NormalSurfaceModel& model,
                                                const std::vector<std::string>& curves,
                                                const Divisor& a) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "complement_conditions");
    if (idx.empty()) throw ContractViolation("complement_conditions: empty curve set");
    if (!ldlt_inertia(mumford::pairing_matrix(model, idx)).negative_definite())
        throw ContractViolation("complement_conditions: curve set is not negative definite");
    if (a.level != Level::Downstairs)
        throw ContractViolation("complement_conditions: divisor must live on X");

    ComplementConditionReport rep;

    // (i) locally principal near R, judged from pullback denominators at the
    // singular points whose configurations meet R
    if (!a.is_integral()) {
        rep.cartier_near_r = CondStatus::Fails;
        rep.detail.push_back("cartier_near_r: divisor is not integral");
    } else {
        mumford::PullbackResult pb = mumford::pullback(model, a);
        rep.cartier_near_r = CondStatus::Holds;
        for (const auto& sp : model.singular_points) {
            bool meets_r = false;
            for (const auto& e : sp.exceptional) {
                std::size_t ei = *model.resolution.index_of(e);
                for (std::size_t r : idx)
                    if (model.resolution.gram[ei][r] > 0) { meets_r = true; break; }
                if (meets_r) break;
            }
            if (!meets_r) continue;
            BigInt den = common_denominator(pb.per_point.at(sp.id));
            if (den != 1) {
                rep.cartier_near_r = CondStatus::Fails;
                rep.detail.push_back("cartier_near_r: pullback has denominator " + den.get_str() +
                                     " at singular point '" + sp.id + "'");
            } else if (!sp.rational_singularity) {
                rep.cartier_near_r = CondStatus::Fails;
                rep.detail.push_back(
                    "cartier_near_r: integral pullback at non-rational singular point '" + sp.id +
                    "' does not certify local principality");
            }
        }
        if (rep.cartier_near_r == CondStatus::Holds)
            rep.detail.push_back("cartier_near_r: computed from pullback denominators and "
                                 "rational-singularity flags near R");
    }

    // (ii) nonnegative degrees, vanishing exactly on R
    rep.positive_complement = CondStatus::Holds;
    bool trivial_on_r = true;
    for (std::size_t i : model.downstairs_indices()) {
        Rat d = mumford::pair(model, a, Divisor::prime(model.resolution.divisors[i]));
        const bool in_r = std::find(idx.begin(), idx.end(), i) != idx.end();
        if (in_r && !d.is_zero()) {
            trivial_on_r = false;
            rep.positive_complement = CondStatus::Fails;
            rep.detail.push_back("positive_complement: degree on '" +
                                 model.resolution.divisors[i] + "' is " + d.str() +
                                 ", expected 0");
        }
        if (!in_r && d.sign() <= 0) {
            rep.positive_complement = CondStatus::Fails;
            rep.detail.push_back("positive_complement: degree on '" +
                                 model.resolution.divisors[i] + "' is " + d.str() +
                                 ", expected > 0");
        }
    }

    // (iii) discharged from declared facts only
    if (model.has_fact("mR_in_base_scheme_all_m")) {
        rep.formal_triviality = CondStatus::Holds;
        rep.detail.push_back("formal_triviality: declared: mR_in_base_scheme_all_m");
    } else if (model.field.characteristic > 0 && model.has_fact("pic0_cokernel_unipotent") &&
               trivial_on_r) {
        rep.formal_triviality = CondStatus::Holds;
        rep.detail.push_back("formal_triviality: computed: characteristic " +
                             std::to_string(model.field.characteristic) +
                             " and divisor is numerically trivial on R; declared: "
                             "pic0_cokernel_unipotent");
    } else {
        rep.formal_triviality = CondStatus::Unknown;
        rep.detail.push_back(
            "formal_triviality: no declared fact discharges the infinitesimal condition");
    }
    return rep;
}

ContractionVerdict criteria_engine(const NormalSurfaceModel& model,
                                   const std::vector<std::string>& curves) {
    require_valid(model);
    auto idx = resolve_downstairs(model, curves, "criteria_engine");
    if (idx.empty()) throw ContractViolation("criteria_engine: empty curve set");
    if (!ldlt_inertia(mumford::pairing_matrix(model, idx)).negative_definite())
        throw ContractViolation("criteria_engine: curve set is not negative definite");

    ContractionVerdict v;
    v.model_relative = true;
    auto& tr = v.rule_trace;
    auto fire = [&](const std::string& rule) {
        v.status = ContractionVerdict::Status::CertifiedByRule;
        tr.push_back("rule " + rule + " fired");
    };

    // 1. finite ground field
    if (model.field.finite_field) {
        tr.push_back("finite-field-contraction: computed: field.finite = true; every "
                     "negative definite curve over a finite field is contractible");
        fire("finite-field-contraction");
        return v;
    }
    tr.push_back("finite-field-contraction: skipped (field.finite = false)");

    // 2. irreducible curve of nonpositive canonical degree, on a surface that
    // is numerically Q-factorial near R
    {
        std::string qfact;
        if (model.field.h2_zero)
            qfact = "computed: field.h2_zero = true establishes numerical Q-factoriality";
        else if (model.has_fact("numerically_Q_factorial_at_R"))
            qfact = "declared: numerically_Q_factorial_at_R";
        if (qfact.empty()) {
            tr.push_back("castelnuovo-criterion: skipped (numerical Q-factoriality near R "
                         "not established)");
        } else if (idx.size() != 1) {
            tr.push_back("castelnuovo-criterion: skipped (R is not irreducible)");
        } else if (!model.resolution.kvec) {
            tr.push_back("castelnuovo-criterion: skipped (kvec absent)");
        } else {
            long long kdeg = (*model.resolution.kvec)[idx[0]];
            if (kdeg <= 0) {
                tr.push_back("castelnuovo-criterion: " + qfact);
                tr.push_back("castelnuovo-criterion: computed: R irreducible with R.K = " +
                             std::to_string(kdeg) + " <= 0");
                fire("castelnuovo-criterion");
                return v;
            }
            tr.push_back("castelnuovo-criterion: skipped (R.K = " + std::to_string(kdeg) +
                         " > 0)");
        }
    }

    // 3. adjoint classes declared non-effective
    if (model.has_fact("KplusmR_not_effective")) {
        tr.push_back("adjoint-never-effective: declared: KplusmR_not_effective");
        fire("adjoint-never-effective");
        return v;
    }
    tr.push_back("adjoint-never-effective: skipped (fact not declared)");
    if (model.field.characteristic > 0 && model.has_fact("KplusR_not_effective")) {
        tr.push_back("adjoint-not-effective-char-p: computed: characteristic = " +
                     std::to_string(model.field.characteristic) +
                     "; declared: KplusR_not_effective");
        fire("adjoint-not-effective-char-p");
        return v;
    }
    tr.push_back("adjoint-not-effective-char-p: skipped");

    // 4. Q-factoriality near R plus a triviality mechanism on thickenings
    {
        std::string qfact;
        if (model.has_fact("numerically_Q_factorial_at_R"))
            qfact = "declared: numerically_Q_factorial_at_R";
        else if (model.field.h2_zero)
            qfact = "computed: field.h2_zero = true establishes numerical Q-factoriality";
        if (qfact.empty()) {
            tr.push_back("base-scheme-triviality: skipped (numerical Q-factoriality near R "
                         "not established)");
        } else if (model.has_fact("mR_in_base_scheme_all_m")) {
            tr.push_back("base-scheme-triviality: " + qfact);
            tr.push_back("base-scheme-triviality: declared: mR_in_base_scheme_all_m");
            fire("base-scheme-triviality");
            return v;
        } else if (model.field.characteristic > 0 &&
                   model.has_fact("pic0_cokernel_unipotent")) {
            tr.push_back("unipotent-cokernel-triviality: " + qfact);
            tr.push_back("unipotent-cokernel-triviality: computed: characteristic = " +
                         std::to_string(model.field.characteristic) +
                         "; declared: pic0_cokernel_unipotent");
            fire("unipotent-cokernel-triviality");
            return v;
        } else {
            tr.push_back("base-scheme-triviality: skipped (no triviality fact declared)");
        }
    }

    v.status = ContractionVerdict::Status::Unknown;
    tr.push_back("no sufficient criterion fired; verdict Unknown (criteria are sufficient, "
                 "never necessary)");
    return v;
}

} // namespace contract
} // namespace normsurf

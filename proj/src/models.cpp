#include "normsurf/models.hpp"

#include <algorithm>
#include <set>

namespace normsurf {
namespace models {

SplitReport split_check(const NormalSurfaceModel& model, const MovableFixedData& data) {
    require_valid(model);
    SplitReport rep;

    Divisor sum = data.m + data.f;
    if (!(sum == data.d))
        rep.errors.push_back("decomposition does not add up: D differs from M + F");
    if (!data.f.is_effective())
        rep.errors.push_back("fixed part F has a negative coefficient");

    for (std::size_t i : model.downstairs_indices()) {
        Rat deg = mumford::pair(model, data.m, Divisor::prime(model.resolution.divisors[i]));
        if (deg.sign() < 0)
            rep.errors.push_back("M is not movable: degree on '" + model.resolution.divisors[i] +
                                 "' is " + deg.str());
    }
    rep.ok = rep.errors.empty();
    if (!rep.ok) return rep;

    std::vector<std::string> support;
    for (const auto& [n, c] : data.f.coeffs)
        if (!c.is_zero()) support.push_back(n);
    rep.f_prime.level = rep.f_double_prime.level = data.f.level;
    for (const auto& comp : adjacency_components(model, support)) {
        Divisor part;
        part.level = data.f.level;
        for (const auto& n : comp) part.set(n, data.f.coeff(n));
        Rat deg = mumford::pair(model, data.m, part);
        if (deg.sign() > 0) {
            rep.f_prime = rep.f_prime + part;
            rep.notes.push_back("component {" + part.str() + "} meets M with degree " +
                                deg.str() + " (F')");
        } else {
            rep.f_double_prime = rep.f_double_prime + part;
            rep.notes.push_back("component {" + part.str() + "} meets M with degree " +
                                deg.str() + " (F'')");
        }
    }
    return rep;
}

std::optional<ZariskiDecomposition> zariski_decompose(const NormalSurfaceModel& model,
                                                      const Divisor& d) {
    require_valid(model);
    if (d.level != Level::Downstairs)
        throw ContractViolation("zariski_decompose: divisor must live on X");

    auto down = model.downstairs_indices();
    QMat pm = mumford::pairing_matrix(model, down);
    QVec dense = to_dense(model, d);

    // degree of d against each downstairs prime, via the pulled-back matrix:
    // d is a combination of downstairs primes, so its pairings are the
    // corresponding combination of matrix rows
    QVec deg(down.size());
    for (std::size_t i = 0; i < down.size(); ++i)
        for (std::size_t j = 0; j < down.size(); ++j) {
            const Rat& c = dense[down[j]];
            if (!c.is_zero()) deg[i] += c * pm.at(j, i);
        }

    std::set<std::size_t> support; // positions within `down`
    QVec ncoef(down.size());
    for (;;) {
        // current degrees of P = D - N
        QVec pdeg = deg;
        for (std::size_t j = 0; j < down.size(); ++j) {
            if (ncoef[j].is_zero()) continue;
            for (std::size_t i = 0; i < down.size(); ++i)
                pdeg[i] -= ncoef[j] * pm.at(j, i);
        }
        bool grew = false;
        for (std::size_t i = 0; i < down.size(); ++i)
            if (pdeg[i].sign() < 0 && !support.count(i)) {
                support.insert(i);
                grew = true;
            }
        if (!grew) break;

        std::vector<std::size_t> s(support.begin(), support.end());
        QMat gs(s.size(), s.size());
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b) gs.at(a, b) = pm.at(s[a], s[b]);
        if (!ldlt_inertia(gs).negative_definite()) return std::nullopt;

        QVec rhs(s.size());
        for (std::size_t a = 0; a < s.size(); ++a) rhs[a] = deg[s[a]];
        QVec sol = solve_linear(gs, rhs); // pair(D - N, s) = 0 on the support
        ncoef.assign(down.size(), Rat(0));
        for (std::size_t a = 0; a < s.size(); ++a) ncoef[s[a]] = sol[a];
    }

    for (const auto& c : ncoef)
        if (c.sign() < 0) return std::nullopt;

    ZariskiDecomposition z;
    QVec ndense(model.resolution.size());
    for (std::size_t j = 0; j < down.size(); ++j) ndense[down[j]] = ncoef[j];
    z.negative_part = from_dense(model, ndense, Level::Downstairs);
    z.positive_part = d - z.negative_part;
    z.positive_part.level = Level::Downstairs;
    return z;
}

ModelClass classify_model(const NormalSurfaceModel& model, const MovableFixedData& data) {
    SplitReport split = split_check(model, data);
    if (!split.ok)
        throw ContractViolation("classify_model: split_check failed: " + split.errors.front());

    ModelClass out;
    out.assumptions.push_back(
        "movable/fixed data assumed stabilized: supports of the base scheme and fixed "
        "curve taken independent of the multiple (caller responsibility)");

    if (data.m.is_zero()) {
        out.kind = ModelKind::AffineHull;
        out.proper = Properness::NotApplicable;
        return out;
    }

    Rat m2 = mumford::pair(model, data.m, data.m);
    Rat mf = mumford::pair(model, data.m, data.f);
    if (m2.sign() < 0)
        throw ContractViolation(
            "classify_model: movable part with negative self-pairing contradicts movability");

    if (m2.is_zero() && mf.is_zero()) {
        out.kind = ModelKind::Curve;
        out.proper = Properness::Yes; // one-dimensional models are projective
        return out;
    }

    out.kind = ModelKind::Surface;
    if (!mf.is_zero()) {
        out.proper = Properness::No;
        out.assumptions.push_back("not proper: M meets the fixed part, M.F = " + mf.str());
        return out;
    }

    // M.F = 0 and M^2 > 0: properness reduces to M being Q-Cartier
    Divisor m_integral = data.m;
    BigInt scale = 1;
    if (!data.m.is_integral()) {
        QVec cs;
        for (const auto& [_, c] : data.m.coeffs) cs.push_back(c);
        scale = common_denominator(cs);
        m_integral = Rat(scale) * data.m;
        out.assumptions.push_back("Q-Cartier test run on " + scale.get_str() +
                                  "*M to clear denominators");
    }
    mumford::CartierReport cr = mumford::cartier_index(model, m_integral);
    out.proper = cr.certified ? Properness::Yes : Properness::UncertifiedYes;
    for (const auto& line : cr.assumption_trail) out.assumptions.push_back(line);
    return out;
}

} // namespace models
} // namespace normsurf

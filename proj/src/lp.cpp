#include "normsurf/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "normsurf/errors.hpp"
#include "normsurf/linalg.hpp"

namespace normsurf {

namespace {

constexpr std::size_t kFourierMotzkinVarLimit = 8;
constexpr std::size_t kRowExplosionLimit = 20000;

// -------------------------------------------------------------------------
// Fourier-Motzkin elimination with multiplier tracking.
// Every working inequality is a . x >= b together with the multipliers that
// produced it from the caller's constraints, so infeasibility falls out of
// the elimination as a ready-made Farkas certificate.

struct Ineq {
    QVec a;
    Rat b;
    QVec mult; // over original constraints, signed for Eq rows
};

// Scales to the primitive integer representative of (a, b); direction and
// multiplier validity are preserved (positive scaling).
void normalize(Ineq& q) {
    QVec all = q.a;
    all.push_back(q.b);
    BigInt l = common_denominator(all);
    BigInt g = 0;
    for (const auto& x : all) g = gcd(g, x.num() * (l / x.den()));
    if (g == 0) return;
    Rat f{l, g};
    for (auto& x : q.a) x *= f;
    q.b *= f;
    for (auto& x : q.mult) x *= f;
}

std::string key_of(const Ineq& q) {
    std::string k;
    for (const auto& x : q.a) { k += x.str(); k += ','; }
    k += '|';
    k += q.b.str();
    return k;
}

// Drops tautologies and duplicates; returns a contradiction row if one shows up.
std::optional<Ineq> sweep(std::vector<Ineq>& rows) {
    std::vector<Ineq> kept;
    std::map<std::string, bool> seen;
    for (auto& q : rows) {
        bool zero_row = std::all_of(q.a.begin(), q.a.end(),
                                    [](const Rat& x) { return x.is_zero(); });
        if (zero_row) {
            if (q.b.sign() > 0) return q; // 0 >= positive
            continue;
        }
        normalize(q);
        auto [it, inserted] = seen.emplace(key_of(q), true);
        if (inserted) kept.push_back(std::move(q));
    }
    rows = std::move(kept);
    return std::nullopt;
}

} // namespace

LPCertificate lp_feasible_fourier_motzkin(const std::vector<LinearConstraint>& cs,
                                          std::size_t num_vars) {
    const std::size_t m = cs.size();
    std::vector<Ineq> rows;
    for (std::size_t j = 0; j < m; ++j) {
        if (cs[j].row.size() != num_vars)
            throw ContractViolation("lp_feasible: constraint row length mismatch");
        Ineq q{cs[j].row, cs[j].bound, QVec(m)};
        q.mult[j] = Rat(1);
        rows.push_back(q);
        if (cs[j].rel == Rel::Eq) {
            Ineq r{QVec(num_vars), -cs[j].bound, QVec(m)};
            for (std::size_t k = 0; k < num_vars; ++k) r.a[k] = -cs[j].row[k];
            r.mult[j] = Rat(-1);
            rows.push_back(std::move(r));
        }
    }

    auto contradiction = sweep(rows);
    if (contradiction)
        return {LPCertificate::Status::Infeasible, contradiction->mult};

    // (variable eliminated, system in which it still occurred)
    std::vector<std::pair<std::size_t, std::vector<Ineq>>> stages;
    std::vector<bool> eliminated(num_vars, false);

    for (;;) {
        // cheapest variable first: fewest product rows
        std::size_t best_var = num_vars;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < num_vars; ++v) {
            if (eliminated[v]) continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& q : rows) {
                int s = q.a[v].sign();
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
            }
            if (pos + neg == 0) { eliminated[v] = true; continue; }
            std::size_t cost = pos * neg;
            if (best_var == num_vars || cost < best_cost) { best_var = v; best_cost = cost; }
        }
        if (best_var == num_vars) break;

        const std::size_t v = best_var;
        stages.emplace_back(v, rows);
        std::vector<Ineq> next;
        std::vector<const Ineq*> pos, neg;
        for (const auto& q : rows) {
            int s = q.a[v].sign();
            if (s > 0) pos.push_back(&q);
            else if (s < 0) neg.push_back(&q);
            else next.push_back(q);
        }
        for (const Ineq* p : pos)
            for (const Ineq* nrow : neg) {
                // (-c_n) p + c_p n kills the variable; both factors positive
                const Rat cp = p->a[v];
                const Rat cn = -nrow->a[v];
                Ineq q{QVec(num_vars), cn * p->b + cp * nrow->b, QVec(m)};
                for (std::size_t k = 0; k < num_vars; ++k)
                    q.a[k] = cn * p->a[k] + cp * nrow->a[k];
                for (std::size_t k = 0; k < m; ++k)
                    q.mult[k] = cn * p->mult[k] + cp * nrow->mult[k];
                next.push_back(std::move(q));
                if (next.size() > kRowExplosionLimit)
                    throw EliminationOverflow("elimination outgrew its row budget");
            }
        rows = std::move(next);
        eliminated[v] = true;
        auto bad = sweep(rows);
        if (bad) return {LPCertificate::Status::Infeasible, bad->mult};
    }

    // feasible: walk the stages backwards, boxing each variable in turn
    QVec x(num_vars);
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        const std::size_t v = it->first;
        std::optional<Rat> lo, hi;
        for (const auto& q : it->second) {
            const int s = q.a[v].sign();
            if (s == 0) continue;
            Rat rest = q.b;
            for (std::size_t k = 0; k < num_vars; ++k)
                if (k != v && !q.a[k].is_zero()) rest -= q.a[k] * x[k];
            Rat bound = rest / q.a[v];
            if (s > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (lo && hi) x[v] = (*lo + *hi) / Rat(2);
        else if (lo) x[v] = *lo;
        else if (hi) x[v] = *hi;
    }
    return {LPCertificate::Status::Feasible, x};
}

// -------------------------------------------------------------------------
// Exact phase-1 simplex. Free unknowns are split into nonnegative pairs,
// every row gets an artificial variable, and Bland's rule on both the
// entering and leaving choice rules out cycling.

LPCertificate lp_feasible_simplex(const std::vector<LinearConstraint>& cs,
                                  std::size_t num_vars) {
    const std::size_t m = cs.size();
    std::size_t n_ge = 0;
    for (const auto& c : cs) {
        if (c.row.size() != num_vars)
            throw ContractViolation("lp_feasible: constraint row length mismatch");
        if (c.rel == Rel::Ge) ++n_ge;
    }

    const std::size_t col_u = 0;
    const std::size_t col_w = num_vars;
    const std::size_t col_s = 2 * num_vars;
    const std::size_t col_z = col_s + n_ge;
    const std::size_t ncols = col_z + m; // + rhs held separately

    std::vector<QVec> tab(m, QVec(ncols));
    QVec rhs(m);
    std::vector<int> flip(m, 1);
    std::vector<std::size_t> basis(m);

    std::size_t slack = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const int sigma = cs[i].bound.sign() < 0 ? -1 : 1;
        flip[i] = sigma;
        const Rat sig{sigma};
        for (std::size_t j = 0; j < num_vars; ++j) {
            tab[i][col_u + j] = sig * cs[i].row[j];
            tab[i][col_w + j] = -sig * cs[i].row[j];
        }
        if (cs[i].rel == Rel::Ge) {
            tab[i][col_s + slack] = -sig;
            ++slack;
        }
        tab[i][col_z + i] = Rat(1);
        rhs[i] = sig * cs[i].bound;
        basis[i] = col_z + i;
    }

    // reduced costs for phase-1 objective (cost 1 on artificials)
    QVec red(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
        Rat s;
        for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
        red[j] = (j >= col_z ? Rat(1) : Rat(0)) - s;
    }

    auto pivot = [&](std::size_t r, std::size_t c) {
        const Rat piv = tab[r][c];
        for (auto& x : tab[r]) x /= piv;
        rhs[r] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || tab[i][c].is_zero()) continue;
            const Rat f = tab[i][c];
            for (std::size_t j = 0; j < ncols; ++j) tab[i][j] -= f * tab[r][j];
            rhs[i] -= f * rhs[r];
        }
        if (!red[c].is_zero()) {
            const Rat f = red[c];
            for (std::size_t j = 0; j < ncols; ++j) red[j] -= f * tab[r][j];
        }
        basis[r] = c;
    };

    for (;;) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (red[j].sign() < 0) { enter = j; break; }
        if (enter == ncols) break;

        std::size_t leave = m;
        Rat best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter].sign() <= 0) continue;
            Rat ratio = rhs[i] / tab[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m)
            throw std::logic_error("lp_feasible: phase-1 objective unbounded");
        pivot(leave, enter);
    }

    Rat obj;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= col_z) obj += rhs[i];

    if (obj.sign() > 0) {
        // y = c_B B^{-1} read from the artificial columns; flips map it back
        QVec mu(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rat y = Rat(1) - red[col_z + i];
            mu[i] = Rat(flip[i]) * y;
        }
        return {LPCertificate::Status::Infeasible, mu};
    }

    QVec x(num_vars);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < col_w) x[basis[i] - col_u] += rhs[i];
        else if (basis[i] < col_s) x[basis[i] - col_w] -= rhs[i];
    }
    return {LPCertificate::Status::Feasible, x};
}

LPCertificate lp_feasible(const std::vector<LinearConstraint>& cs, std::size_t num_vars) {
    if (num_vars <= kFourierMotzkinVarLimit) {
        try {
            return lp_feasible_fourier_motzkin(cs, num_vars);
        } catch (const EliminationOverflow&) {
            // dense unlucky systems can square their row count at every
            // elimination; the simplex route costs more per pivot but is
            // immune to that
        }
    }
    return lp_feasible_simplex(cs, num_vars);
}

bool lp_certificate_valid(const std::vector<LinearConstraint>& cs, std::size_t num_vars,
                          const LPCertificate& cert) {
    if (cert.feasible()) {
        if (cert.witness.size() != num_vars) return false;
        for (const auto& c : cs) {
            Rat v = dot(c.row, cert.witness);
            if (c.rel == Rel::Eq ? v != c.bound : v < c.bound) return false;
        }
        return true;
    }
    if (cert.witness.size() != cs.size()) return false;
    QVec combo(num_vars);
    Rat total;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        const Rat& mu = cert.witness[j];
        if (cs[j].rel == Rel::Ge && mu.sign() < 0) return false;
        for (std::size_t k = 0; k < num_vars; ++k) combo[k] += mu * cs[j].row[k];
        total += mu * cs[j].bound;
    }
    for (const auto& x : combo)
        if (!x.is_zero()) return false;
    return total.sign() > 0;
}

} // namespace normsurf

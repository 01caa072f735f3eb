#include "normsurf/surface.hpp"

#include <algorithm>
#include <set>

namespace normsurf {

const std::vector<std::string>& known_fact_tags() {
    static const std::vector<std::string> tags = {
        "KplusmR_not_effective",
        "KplusR_not_effective",
        "mR_in_base_scheme_all_m",
        "pic0_cokernel_unipotent",
        "numerically_Q_factorial_at_R",
        "extension_split",
    };
    return tags;
}

std::string Divisor::str() const {
    if (coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [n, c] : coeffs) {
        if (!first) out += " + ";
        first = false;
        if (c == Rat(1)) out += n;
        else out += c.str() + "*" + n;
    }
    return out;
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    auto head = [](char c) { return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(s[0])) return false;
    return std::all_of(s.begin() + 1, s.end(), tail);
}

} // namespace

std::vector<std::size_t> resolve_ids(const NormalSurfaceModel& model,
                                     const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    std::set<std::size_t> seen;
    for (const auto& n : names) {
        auto i = model.resolution.index_of(n);
        if (!i) throw ContractViolation("unknown prime divisor: " + n);
        if (!seen.insert(*i).second) throw ContractViolation("duplicate prime divisor: " + n);
        idx.push_back(*i);
    }
    return idx;
}

QMat gram_restriction(const NormalSurfaceModel& model, const std::vector<std::size_t>& idx) {
    QMat g(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            g.at(a, b) = Rat(model.resolution.gram[idx[a]][idx[b]]);
    return g;
}

ValidationReport validate(const NormalSurfaceModel& model) {
    ValidationReport rep;
    auto err = [&](std::string code, std::string msg) {
        rep.errors.push_back({std::move(code), std::move(msg)});
    };
    const auto& res = model.resolution;
    const std::size_t n = res.size();

    std::set<std::string> names;
    for (const auto& d : res.divisors) {
        if (!valid_name(d)) err("name_invalid", "divisor name '" + d + "' is not an identifier");
        if (!names.insert(d).second) err("name_duplicate", "divisor name '" + d + "' repeats");
    }

    if (res.gram.size() != n) {
        err("gram_shape", "gram must have one row per divisor");
        return rep; // nothing below makes sense with a ragged matrix
    }
    for (const auto& row : res.gram)
        if (row.size() != n) {
            err("gram_shape", "gram rows must have one entry per divisor");
            return rep;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (res.gram[i][j] != res.gram[j][i])
                err("gram_not_symmetric",
                    "gram(" + res.divisors[i] + "," + res.divisors[j] + ") differs from its mirror");
            if (res.gram[i][j] < 0)
                err("gram_offdiag_negative",
                    "distinct prime divisors must meet non-negatively: gram(" + res.divisors[i] +
                        "," + res.divisors[j] + ") < 0");
        }
    if (res.kvec && res.kvec->size() != n)
        err("kvec_shape", "kvec must have one entry per divisor");

    const bool gram_ok = rep.ok();

    // exceptional configurations
    std::map<std::string, std::string> owner; // divisor -> singular point id
    std::set<std::string> sp_ids;
    for (const auto& sp : model.singular_points) {
        if (!sp_ids.insert(sp.id).second)
            err("sp_duplicate_id", "singular point id '" + sp.id + "' repeats");
        if (sp.exceptional.empty()) {
            err("sp_empty", "singular point '" + sp.id + "' has an empty exceptional set");
            continue;
        }
        bool resolved = true;
        std::vector<std::size_t> idx;
        std::set<std::size_t> dup;
        for (const auto& e : sp.exceptional) {
            auto i = res.index_of(e);
            if (!i) {
                err("sp_unknown_divisor",
                    "singular point '" + sp.id + "' names unknown divisor '" + e + "'");
                resolved = false;
                continue;
            }
            if (!dup.insert(*i).second) {
                err("sp_duplicate_divisor",
                    "singular point '" + sp.id + "' repeats divisor '" + e + "'");
                resolved = false;
                continue;
            }
            idx.push_back(*i);
            auto it = owner.find(e);
            if (it != owner.end() && it->second != sp.id)
                err("sp_overlap", "divisor '" + e + "' lies over both '" + it->second + "' and '" +
                                      sp.id + "'");
            owner[e] = sp.id;
        }
        if (!resolved || !gram_ok) continue;

        QMat g = gram_restriction(model, idx);
        if (!ldlt_inertia(g).negative_definite())
            err("sp_not_negative_definite",
                "exceptional set of '" + sp.id + "' is not negative definite");
        // connectivity inside the configuration
        std::vector<bool> seen(idx.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (!seen[b] && res.gram[idx[a]][idx[b]] > 0) {
                    seen[b] = true;
                    stack.push_back(b);
                }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }))
            err("sp_not_connected", "exceptional set of '" + sp.id + "' is not connected");
    }

    // configurations over distinct points cannot meet on the resolution
    if (gram_ok) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto oi = owner.find(res.divisors[i]);
                auto oj = owner.find(res.divisors[j]);
                if (oi != owner.end() && oj != owner.end() && oi->second != oj->second &&
                    res.gram[i][j] != 0)
                    err("sp_configurations_meet",
                        "exceptional curves of distinct singular points meet: " + res.divisors[i] +
                            ", " + res.divisors[j]);
            }
    }

    if (model.downstairs_indices().empty())
        err("no_downstairs", "the model declares no downstairs prime divisor");

    for (const auto& f : model.facts) {
        const auto& tags = known_fact_tags();
        if (std::find(tags.begin(), tags.end(), f) == tags.end())
            err("fact_unknown", "unknown hypothesis tag '" + f + "'");
    }
    if (model.field.characteristic < 0)
        err("field_char", "characteristic must be 0 or a prime");

    if (rep.ok()) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        Inertia in = ldlt_inertia(gram_restriction(model, all));
        if (in.n_plus > 1)
            rep.warnings.push_back(
                {"hodge_inertia", "resolution gram has " + std::to_string(in.n_plus) +
                                      " positive eigenvalues; a surface admits exactly one"});
    }
    return rep;
}

void require_valid(const NormalSurfaceModel& model) {
    ValidationReport rep = validate(model);
    if (!rep.ok())
        throw ContractViolation("invalid model: " + rep.errors.front().message + " [" +
                                rep.errors.front().code + "]");
}

std::vector<std::vector<std::string>>
adjacency_components(const NormalSurfaceModel& model, const std::vector<std::string>& subset) {
    auto idx = resolve_ids(model, subset);
    std::sort(idx.begin(), idx.end());
    std::vector<std::vector<std::string>> out;
    std::set<std::size_t> left(idx.begin(), idx.end());
    while (!left.empty()) {
        std::vector<std::size_t> comp;
        std::vector<std::size_t> stack{*left.begin()};
        left.erase(left.begin());
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            comp.push_back(a);
            for (auto it = left.begin(); it != left.end();) {
                if (model.resolution.gram[a][*it] > 0) {
                    stack.push_back(*it);
                    it = left.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        std::vector<std::string> names;
        for (auto i : comp) names.push_back(model.resolution.divisors[i]);
        out.push_back(std::move(names));
    }
    return out;
}

QVec to_dense(const NormalSurfaceModel& model, const Divisor& d) {
    QVec v(model.resolution.size());
    for (const auto& [name, c] : d.coeffs) {
        auto i = model.resolution.index_of(name);
        if (!i) throw ContractViolation("divisor names unknown prime divisor: " + name);
        if (d.level == Level::Downstairs && model.is_exceptional(*i))
            throw ContractViolation("downstairs divisor has exceptional support on: " + name);
        v[*i] = c;
    }
    return v;
}

Divisor from_dense(const NormalSurfaceModel& model, const QVec& v, Level level) {
    Divisor d;
    d.level = level;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) d.coeffs[model.resolution.divisors[i]] = v[i];
    return d;
}

} // namespace normsurf

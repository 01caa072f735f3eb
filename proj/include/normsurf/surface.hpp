#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normsurf/errors.hpp"
#include "normsurf/linalg.hpp"
#include "normsurf/rat.hpp"

namespace normsurf {

/// Ground-field hypotheses carried by a model. `characteristic` is 0 or a
/// prime; the booleans are declared facts about the surface, not computed.
struct FieldFacts {
    long characteristic = 0;
    bool finite_field = false;
    bool h2_zero = false;
};

/// One singular point of the surface, presented by the connected negative
/// definite configuration of resolution curves lying over it.
struct SingularPoint {
    std::string id;
    std::vector<std::string> exceptional;
    bool rational_singularity = false;
};

/// The resolution X': named prime divisors with their integer intersection
/// matrix, plus (optionally) the intersection numbers against the canonical
/// class. The canonical class itself is never stored as a coefficient vector.
struct RegularSurfaceModel {
    std::vector<std::string> divisors;
    std::vector<std::vector<long long>> gram;
    std::optional<std::vector<long long>> kvec;

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < divisors.size(); ++i)
            if (divisors[i] == name) return i;
        return std::nullopt;
    }
    std::size_t size() const { return divisors.size(); }
};

/// Declared hypothesis tags usable in `facts`. Tags are caller-declared
/// inputs; the rule engine never computes them.
const std::vector<std::string>& known_fact_tags();

/// A proper normal surface X, presented through a resolution X' -> X.
/// Divisors not lying over a singular point are the curves of X itself
/// ("downstairs"); the rest are exceptional.
struct NormalSurfaceModel {
    RegularSurfaceModel resolution;
    std::vector<SingularPoint> singular_points;
    FieldFacts field;
    std::vector<std::string> facts;

    bool has_fact(const std::string& tag) const {
        for (const auto& f : facts)
            if (f == tag) return true;
        return false;
    }

    /// True when divisor index i lies in some exceptional configuration.
    bool is_exceptional(std::size_t i) const {
        const auto& name = resolution.divisors[i];
        for (const auto& sp : singular_points)
            for (const auto& e : sp.exceptional)
                if (e == name) return true;
        return false;
    }

    std::vector<std::size_t> downstairs_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < resolution.size(); ++i)
            if (!is_exceptional(i)) out.push_back(i);
        return out;
    }
};

enum class Level { Downstairs, Upstairs };

/// Sparse rational divisor over the model's prime divisor names. Downstairs
/// divisors live on X (no exceptional support); Upstairs divisors live on the
/// resolution and may touch anything.
struct Divisor {
    std::map<std::string, Rat> coeffs; // zero entries are dropped
    Level level = Level::Downstairs;

    static Divisor prime(const std::string& name, Level lv = Level::Downstairs) {
        Divisor d;
        d.level = lv;
        d.coeffs[name] = Rat(1);
        return d;
    }

    bool is_zero() const { return coeffs.empty(); }
    bool is_integral() const {
        for (const auto& [_, c] : coeffs)
            if (!c.is_integer()) return false;
        return true;
    }
    bool is_effective() const {
        for (const auto& [_, c] : coeffs)
            if (c.sign() < 0) return false;
        return true;
    }

    void set(const std::string& name, const Rat& c) {
        if (c.is_zero()) coeffs.erase(name);
        else coeffs[name] = c;
    }
    Rat coeff(const std::string& name) const {
        auto it = coeffs.find(name);
        return it == coeffs.end() ? Rat(0) : it->second;
    }

    Divisor& add_scaled(const Divisor& o, const Rat& s) {
        for (const auto& [n, c] : o.coeffs) set(n, coeff(n) + s * c);
        return *this;
    }
    friend Divisor operator+(Divisor a, const Divisor& b) { return a.add_scaled(b, Rat(1)); }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a.add_scaled(b, Rat(-1)); }
    friend Divisor operator*(const Rat& s, const Divisor& d) {
        Divisor r;
        r.level = d.level;
        r.add_scaled(d, s);
        return r;
    }
    friend bool operator==(const Divisor& a, const Divisor& b) {
        return a.level == b.level && a.coeffs == b.coeffs;
    }

    std::string str() const;
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool ok() const { return errors.empty(); }
};

/// Structural checks: symmetric integer gram with non-negative off-diagonal
/// entries, negative definite and connected exceptional configurations,
/// pairwise disjoint and mutually non-meeting configurations, at least one
/// downstairs divisor, well-formed names and facts. One warning: a resolution
/// gram with more than one positive eigenvalue.
ValidationReport validate(const NormalSurfaceModel& model);

/// Throws ContractViolation carrying the first validation error, if any.
void require_valid(const NormalSurfaceModel& model);

/// Connected components of the subset under the meeting relation
/// gram(i,j) > 0. Components and their members follow model order.
std::vector<std::vector<std::string>>
adjacency_components(const NormalSurfaceModel& model, const std::vector<std::string>& subset);

// ---- dense views over resolution indices (internal plumbing, shared by the
// pairing and cone machinery) ----

/// Coefficient vector of d over resolution indices. Validates names; for
/// Downstairs level also enforces zero coefficients on exceptional divisors.
QVec to_dense(const NormalSurfaceModel& model, const Divisor& d);

/// Repackages a dense vector as a sparse divisor.
Divisor from_dense(const NormalSurfaceModel& model, const QVec& v, Level level);

/// Resolution gram matrix restricted to the given indices, as rationals.
QMat gram_restriction(const NormalSurfaceModel& model, const std::vector<std::size_t>& idx);

/// Resolves names to model indices; throws ContractViolation on unknowns or
/// duplicates.
std::vector<std::size_t> resolve_ids(const NormalSurfaceModel& model,
                                     const std::vector<std::string>& names);

} // namespace normsurf

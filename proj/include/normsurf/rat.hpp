#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normsurf {

using BigInt = mpz_class;

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator; every arithmetic operation is exact. There is no floating
/// point anywhere in this library.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(int n) : v_(static_cast<long>(n)) {}
    Rat(long long n) { set_ll(n); }
    Rat(const BigInt& n) : v_(n) {}
    Rat(long long num, long long den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        Rat n(num), d(den);
        *this = n / d;
    }
    Rat(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    /// Least integer >= *this.
    BigInt ceil() const {
        BigInt q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }

    /// Greatest integer <= *this.
    BigInt floor() const {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }

    /// Canonical text form: "p/q" when the denominator is nontrivial, "p" otherwise.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Parses "p/q" or "n" (optional leading '-'). Returns nullopt on malformed input.
    static std::optional<Rat> parse(std::string_view s) {
        if (s.empty()) return std::nullopt;
        auto slash = s.find('/');
        auto is_int = [](std::string_view t) {
            if (t.empty()) return false;
            std::size_t i = (t[0] == '-') ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (slash == std::string_view::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rat(BigInt(std::string(s)));
        }
        auto nums = s.substr(0, slash);
        auto dens = s.substr(slash + 1);
        // canonical form only: the denominator is a plain positive integer
        if (!is_int(nums) || !is_int(dens) || dens[0] == '-') return std::nullopt;
        BigInt den{std::string(dens)};
        if (den == 0) return std::nullopt;
        return Rat(BigInt(std::string(nums)), den);
    }

private:
    void set_ll(long long n) {
        if (n >= LONG_MIN && n <= LONG_MAX) {
            v_ = static_cast<long>(n);
        } else {
            v_ = mpq_class(std::to_string(n));
        }
    }

    mpq_class v_;
};

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

using QVec = std::vector<Rat>;

/// Common denominator of a rational vector (1 for the empty vector).
inline BigInt common_denominator(const QVec& v) {
    BigInt l = 1;
    for (const auto& x : v) l = lcm(l, x.den());
    return l;
}

/// gcd of the numerators of an integer-valued rational vector (0 for all-zero input).
inline BigInt integer_content(const QVec& v) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x.num());
    return g;
}

/// Scales v to an integer vector and divides out the content, preserving direction.
/// All-zero vectors are returned unchanged.
inline QVec primitive_integer_vector(const QVec& v) {
    BigInt l = common_denominator(v);
    QVec w;
    w.reserve(v.size());
    for (const auto& x : v) w.push_back(x * Rat(l));
    BigInt g = integer_content(w);
    if (g == 0) return w;
    for (auto& x : w) x /= Rat(g);
    return w;
}

} // namespace normsurf

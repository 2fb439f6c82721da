#pragma once

// Exact scalar types usable as Eigen scalars.
//
//   Rational  arbitrary-precision rationals (GMP), always in lowest terms
//   ModP      residues modulo a prime fixed at runtime through ModP::Scope

#include <atomic>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include "affsim/errors.hpp"

namespace affsim {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Element of F_p. The modulus is process-wide and installed with ModP::Scope,
/// in the style of NTL's ZZ_p context; values never carry their own modulus.
class ModP {
public:
    using rep = std::uint64_t;

    /// Largest accepted modulus; keeps products of two residues inside 64 bits.
    static constexpr rep max_modulus = (rep{1} << 32) - 1;

    ModP() = default;
    ModP(long long v) {  // NOLINT(google-explicit-constructor): Eigen needs Scalar(int)
        if (v == 0) return;
        const rep p = require_modulus();
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        value_ = static_cast<rep>(r);
    }
    ModP(int v) : ModP(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)

    static ModP from_residue(rep r) {
        ModP x;
        x.value_ = r % require_modulus();
        return x;
    }

    rep value() const noexcept { return value_; }

    static rep modulus() noexcept { return modulus_.load(std::memory_order_relaxed); }

    static bool is_prime(rep p) noexcept {
        if (p < 2) return false;
        for (rep d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    /// Installs a prime modulus for the lifetime of the scope and restores the
    /// previous one afterwards. Scopes must not be opened concurrently.
    class Scope {
    public:
        explicit Scope(rep p) : previous_(modulus()) {
            if (!is_prime(p)) throw ConfigError("F_p modulus " + std::to_string(p) + " is not prime");
            if (p > max_modulus) throw ConfigError("F_p modulus " + std::to_string(p) + " exceeds 2^32 - 1");
            modulus_.store(p, std::memory_order_relaxed);
        }
        ~Scope() { modulus_.store(previous_, std::memory_order_relaxed); }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        rep previous_;
    };

    ModP& operator+=(const ModP& o) noexcept {
        const rep p = modulus();
        value_ += o.value_;
        if (value_ >= p) value_ -= p;
        return *this;
    }
    ModP& operator-=(const ModP& o) noexcept {
        const rep p = modulus();
        value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + p - o.value_;
        return *this;
    }
    ModP& operator*=(const ModP& o) noexcept {
        value_ = (value_ * o.value_) % modulus();
        return *this;
    }
    ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }

    ModP operator-() const noexcept {
        ModP r;
        r.value_ = value_ == 0 ? 0 : modulus() - value_;
        return r;
    }

    ModP inverse() const {
        if (value_ == 0) throw std::domain_error("ModP: inverse of zero");
        // extended Euclid on signed 64-bit; both operands < 2^32
        long long a = static_cast<long long>(value_), m = static_cast<long long>(modulus());
        long long x0 = 1, x1 = 0;
        while (m != 0) {
            const long long q = a / m;
            long long t = a - q * m;
            a = m;
            m = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        return ModP(x0);
    }

    friend ModP operator+(ModP a, const ModP& b) noexcept { return a += b; }
    friend ModP operator-(ModP a, const ModP& b) noexcept { return a -= b; }
    friend ModP operator*(ModP a, const ModP& b) noexcept { return a *= b; }
    friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
    friend bool operator==(const ModP& a, const ModP& b) noexcept { return a.value_ == b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const ModP& x) { return os << x.value_; }

private:
    static rep require_modulus() {
        const rep p = modulus();
        if (p == 0) throw UnsupportedFieldError("ModP used without an active ModP::Scope");
        return p;
    }

    inline static std::atomic<rep> modulus_{0};
    rep value_ = 0;
};

// Eigen occasionally calls these on scalars (e.g. in norms); they are never
// meaningful for finite-field elements beyond returning the value itself.
inline const ModP& conj(const ModP& x) { return x; }
inline const ModP& real(const ModP& x) { return x; }
inline ModP imag(const ModP&) { return ModP{}; }
inline ModP abs(const ModP& x) { return x; }
inline ModP abs2(const ModP& x) { return x * x; }

template <typename S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static std::uint64_t characteristic() noexcept { return 0; }
};

template <>
struct FieldTraits<ModP> {
    static std::uint64_t characteristic() noexcept { return ModP::modulus(); }
};

template <typename S>
concept ExactField = requires { FieldTraits<S>::characteristic(); };

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) noexcept { return x.value() == 0; }

inline Rational inverse(const Rational& x) {
    if (x.is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(1) / x;
}
inline ModP inverse(const ModP& x) { return x.inverse(); }

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const ModP& x) { return std::to_string(x.value()); }

namespace detail {

struct ParsedFraction {
    BigInt numerator;
    BigInt denominator;
};

inline ParsedFraction parse_fraction(std::string_view text) {
    std::size_t pos = 0;
    auto digits = [&](std::string_view what) {
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) throw ParseError("expected digits in " + std::string(what), pos);
        return BigInt(std::string(text.substr(start, pos - start)));
    };
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
    ParsedFraction out{digits("numerator"), BigInt(1)};
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        out.denominator = digits("denominator");
        if (out.denominator == 0) throw ParseError("zero denominator", pos - 1);
    }
    if (pos != text.size()) throw ParseError("unexpected character in scalar '" + std::string(text) + "'", pos);
    if (negative) out.numerator = -out.numerator;
    return out;
}

}  // namespace detail

template <typename S>
S parse_scalar(std::string_view text);

/// Accepts "p", "-p", "p/q".
template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
    const auto f = detail::parse_fraction(text);
    return Rational(f.numerator, f.denominator);
}

/// "p/q" is read as p * q^{-1} in F_p; q must be a unit.
template <>
inline ModP parse_scalar<ModP>(std::string_view text) {
    const auto f = detail::parse_fraction(text);
    const BigInt p(ModP::modulus());
    if (p == 0) throw UnsupportedFieldError("ModP parse without an active ModP::Scope");
    auto residue = [&](BigInt v) {
        v %= p;
        if (v < 0) v += p;
        return ModP::from_residue(v.convert_to<ModP::rep>());
    };
    const ModP den = residue(f.denominator);
    if (is_zero(den)) throw ParseError("denominator vanishes modulo " + p.str(), 0);
    return residue(f.numerator) / den;
}

}  // namespace affsim

namespace Eigen {

template <>
struct NumTraits<affsim::ModP> : GenericNumTraits<affsim::ModP> {
    using Real = affsim::ModP;
    using NonInteger = affsim::ModP;
    using Literal = affsim::ModP;
    using Nested = affsim::ModP;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return Real{}; }
    static inline Real dummy_precision() { return Real{}; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

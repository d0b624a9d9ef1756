#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "homeolab/errors.hpp"

namespace homeolab {

/// Exact rational scalar. Every quantity in this library (breakpoints,
/// rotation numbers, spectral angles, sampled parameters) is a Rat; there is
/// no floating-point path anywhere.
///
/// Values are always kept in lowest terms with a positive denominator.
/// Arithmetic is total except division by zero, which throws DomainError.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
    Rat(long num, long den);
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(const mpq_class& q);

    /// Parses "p/q" or a bare integer "p". Throws ParseError on anything else.
    static Rat from_string(const std::string& text);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Largest integer <= value.
    mpz_class floor() const;
    /// value - floor(value), in [0, 1).
    Rat frac() const;
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Canonical "p/q" emission (always with the slash: "0/1", "1/1", "-3/4").
    std::string str() const;

  private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

/// Midpoint, used all over the sign-certification code.
inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

/// j / 2^bits as an exact rational, for dyadic sampling.
Rat dyadic(std::uint64_t j, unsigned bits);

}  // namespace homeolab

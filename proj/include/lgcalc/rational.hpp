#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lg {

/** Error type for all contract violations in this library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Arbitrary-precision rational, a thin value wrapper over GMP's mpq_class.
 *
 * The wrapper exists so the rest of the code never touches gmpxx expression
 * templates: every operator here returns a materialized Rational, `auto` is
 * always safe, and values are always canonicalized (gcd-reduced, positive
 * denominator).
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}        // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(static_cast<signed long>(n)) {}         // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw Error("rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /** Parse "p" or "p/q" (q > 0 after canonicalization). Throws Error on junk. */
    static Rational from_string(const std::string& s);

    /** Canonical text form "p" or "p/q" with q > 1, p carrying the sign. */
    std::string str() const { return v_.get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /** Numerator / denominator as arbitrary-precision integers (text form). */
    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    /** Exact long value; throws if not an integer fitting in long. */
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw Error("rational: " + str() + " is not a machine integer");
        return v_.get_num().get_si();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class v_;
};

Rational abs(const Rational& r);

}  // namespace lg

#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace graphce {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "3", "-1/2", "+4/6" into a canonical rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/**
 * A rational extended by a single distinguished element -inf.
 *
 * -inf absorbs addition and compares below every finite value. It is a
 * symbol, not a sentinel: no finite magnitude ever stands in for it here.
 */
class ExtendedRational {
  public:
    ExtendedRational() = default;
    ExtendedRational(Rational value) : value_(std::move(value)) {}
    ExtendedRational(int value) : value_(value) {}

    static ExtendedRational neg_inf() {
        ExtendedRational r;
        r.neg_inf_ = true;
        return r;
    }

    bool is_neg_inf() const { return neg_inf_; }
    bool is_finite() const { return !neg_inf_; }

    /// Throws std::domain_error when called on -inf.
    const Rational& value() const;

    ExtendedRational& operator+=(const ExtendedRational& other);
    friend ExtendedRational operator+(ExtendedRational lhs, const ExtendedRational& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

  private:
    Rational value_{0};
    bool neg_inf_ = false;
};

/// "-inf" or the rational's canonical "p/q" / "p" text.
std::string to_string(const ExtendedRational& r);

/// Accepts everything parse_rational accepts, plus the literal "-inf".
ExtendedRational parse_extended(std::string_view text);

}  // namespace graphce

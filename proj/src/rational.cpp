#include "graphce/rational.hpp"

#include <cctype>

namespace graphce {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    std::string_view num = body;
    std::string_view den = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

    using boost::multiprecision::mpz_int;
    mpz_int n{std::string(num)};
    mpz_int d{std::string(den)};
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r = Rational(n) / Rational(d);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

const Rational& ExtendedRational::value() const {
    if (neg_inf_)
        throw std::domain_error("value() of -inf");
    return value_;
}

ExtendedRational& ExtendedRational::operator+=(const ExtendedRational& other) {
    if (neg_inf_ || other.neg_inf_) {
        neg_inf_ = true;
        value_ = 0;
    } else {
        value_ += other.value_;
    }
    return *this;
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.neg_inf_ || b.neg_inf_)
        return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.neg_inf_ && b.neg_inf_)
        return std::strong_ordering::equal;
    if (a.neg_inf_)
        return std::strong_ordering::less;
    if (b.neg_inf_)
        return std::strong_ordering::greater;
    if (a.value_ < b.value_)
        return std::strong_ordering::less;
    if (a.value_ > b.value_)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const ExtendedRational& r) {
    return r.is_neg_inf() ? std::string("-inf") : to_string(r.value());
}

ExtendedRational parse_extended(std::string_view text) {
    if (text == "-inf")
        return ExtendedRational::neg_inf();
    return parse_rational(text);
}

}  // namespace graphce

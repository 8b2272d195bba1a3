#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

#include "errors.hpp"

namespace orlicz {

/// A value in [0, +inf]. NaN and negative values are rejected at construction.
class ExtendedReal
{
public:
    constexpr ExtendedReal() = default;

    explicit ExtendedReal(double v) : v_(v)
    {
        if (std::isnan(v) || v < 0.0)
            throw InputError("ExtendedReal: value must lie in [0, +inf]");
    }

    static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(v_); }
    bool is_finite() const { return !is_infinite(); }
    double value() const { return v_; }

    friend auto operator<=>(const ExtendedReal&, const ExtendedReal&) = default;
    friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

    friend bool operator<=(const ExtendedReal& a, double b) { return a.v_ <= b; }
    friend bool operator>(const ExtendedReal& a, double b) { return a.v_ > b; }

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) { return ExtendedReal(a.v_ + b.v_); }

    // Scaling by a finite positive factor; 0 * inf is taken as 0.
    friend ExtendedReal operator*(double s, ExtendedReal a)
    {
        if (s == 0.0)
            return ExtendedReal(0.0);
        return ExtendedReal(s * a.v_);
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& a)
    {
        if (a.is_infinite())
            return os << "inf";
        return os << a.v_;
    }

private:
    double v_ = 0.0;
};

} // namespace orlicz

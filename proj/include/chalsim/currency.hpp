#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

#include "chalsim/error.hpp"

namespace chalsim {

// Exact currency amount: signed 64-bit count of minor units, 9 decimal places.
// All protocol accounting (deposits, rewards, fees, utilities) runs on this type
// so conservation checks compare integers, never floats.
class Currency {
public:
    static constexpr int kDecimals = 9;
    static constexpr int64_t kScale = 1'000'000'000;

    constexpr Currency() = default;

    static constexpr Currency from_minor(int64_t minor) { return Currency(minor); }
    static Currency from_units(int64_t units);

    // Parses a plain decimal string ("12", "-0.5", "0.000000001").
    // Rejects exponents, more than 9 fractional digits, and out-of-range values.
    static Currency parse(std::string_view text);

    // Canonical rendering: no exponent, trailing fractional zeros trimmed,
    // no decimal point for whole amounts. parse(to_string(x)) == x.
    std::string to_string() const;

    constexpr int64_t minor() const { return minor_; }
    double to_double() const { return static_cast<double>(minor_) / static_cast<double>(kScale); }

    constexpr bool is_zero() const { return minor_ == 0; }
    constexpr bool is_negative() const { return minor_ < 0; }

    friend constexpr auto operator<=>(Currency, Currency) = default;

    Currency operator+(Currency o) const;
    Currency operator-(Currency o) const;
    Currency operator-() const;
    Currency& operator+=(Currency o) { return *this = *this + o; }
    Currency& operator-=(Currency o) { return *this = *this - o; }

    // this * n, overflow-checked.
    Currency scaled(int64_t n) const;

private:
    explicit constexpr Currency(int64_t minor) : minor_(minor) {}
    int64_t minor_ = 0;
};

inline namespace currency_literals {
// Whole-unit literal: 10_units == Currency::from_units(10).
Currency operator""_units(unsigned long long v);
} // namespace currency_literals

} // namespace chalsim

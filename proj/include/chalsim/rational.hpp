#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "chalsim/currency.hpp"
#include "chalsim/error.hpp"

namespace chalsim {

// Exact rational on int64 numerator/denominator (denominator > 0, always reduced).
// Calibration bounds are weak inequalities, so boundary cases like lower == upper
// must classify without floating-point noise; every comparison here is exact.
class Rat {
public:
    constexpr Rat() = default;
    Rat(int64_t num, int64_t den);
    static Rat from_int(int64_t v) { return Rat(v, 1); }

    // Parses a plain decimal string; denominator becomes a power of ten.
    static Rat parse(std::string_view text);
    static Rat from_currency(Currency c) { return Rat(c.minor(), Currency::kScale); }

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this == o || *this < o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const; // errc::division_by_zero on o == 0

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "num/den" (always exact).
    std::string to_fraction_string() const;

    // Decimal rendering: exact when the expansion terminates within max_dp digits,
    // otherwise rounded half-even at max_dp.
    std::string to_decimal_string(int max_dp = 18) const;

    // Floor of this * (a / b) in integer arithmetic; b > 0 required.
    int64_t mul_floor(int64_t a, int64_t b) const;

private:
    int64_t num_ = 0;
    int64_t den_ = 1;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace chalsim

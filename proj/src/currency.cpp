#include "chalsim/currency.hpp"

#include <cctype>
#include <limits>

namespace chalsim {

namespace {

[[noreturn]] void bad_amount(std::string_view text, const char* why) {
    fail(errc::parse_error, "bad currency amount '" + std::string(text) + "': " + why);
}

int64_t checked_add(int64_t a, int64_t b) {
    int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) fail(errc::range_error, "currency overflow");
    return out;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) fail(errc::range_error, "currency overflow");
    return out;
}

} // namespace

Currency Currency::from_units(int64_t units) {
    return Currency(checked_mul(units, kScale));
}

Currency Currency::parse(std::string_view text) {
    if (text.empty()) bad_amount(text, "empty");
    size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size()) bad_amount(text, "no digits");

    int64_t whole = 0;
    bool any_whole = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        any_whole = true;
        whole = checked_add(checked_mul(whole, 10), text[pos] - '0');
        ++pos;
    }

    int64_t frac = 0;
    int frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        if (pos == text.size()) bad_amount(text, "trailing decimal point");
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (frac_digits == kDecimals) {
                // Extra digits are only tolerable when zero; anything else is precision loss.
                if (text[pos] != '0') bad_amount(text, "more than 9 fractional digits");
            } else {
                frac = frac * 10 + (text[pos] - '0');
                ++frac_digits;
            }
            ++pos;
        }
    }
    if (pos != text.size()) bad_amount(text, "unexpected character");
    if (!any_whole && frac_digits == 0) bad_amount(text, "no digits");

    for (int i = frac_digits; i < kDecimals; ++i) frac *= 10;
    int64_t minor = checked_add(checked_mul(whole, kScale), frac);
    return Currency(negative ? -minor : minor);
}

std::string Currency::to_string() const {
    int64_t m = minor_;
    std::string sign;
    uint64_t mag;
    if (m < 0) {
        sign = "-";
        mag = static_cast<uint64_t>(-(m + 1)) + 1; // safe for INT64_MIN
    } else {
        mag = static_cast<uint64_t>(m);
    }
    uint64_t whole = mag / kScale;
    uint64_t frac = mag % kScale;
    std::string out = sign + std::to_string(whole);
    if (frac != 0) {
        std::string f = std::to_string(frac);
        f.insert(f.begin(), kDecimals - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

Currency Currency::operator+(Currency o) const { return Currency(checked_add(minor_, o.minor_)); }
Currency Currency::operator-(Currency o) const {
    int64_t out = 0;
    if (__builtin_sub_overflow(minor_, o.minor_, &out)) fail(errc::range_error, "currency overflow");
    return Currency(out);
}
Currency Currency::operator-() const {
    if (minor_ == std::numeric_limits<int64_t>::min()) fail(errc::range_error, "currency overflow");
    return Currency(-minor_);
}
Currency Currency::scaled(int64_t n) const { return Currency(checked_mul(minor_, n)); }

inline namespace currency_literals {
Currency operator""_units(unsigned long long v) {
    return Currency::from_units(static_cast<int64_t>(v));
}
} // namespace currency_literals

} // namespace chalsim

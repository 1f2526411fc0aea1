#include "chalsim/rational.hpp"

#include <limits>
#include <numeric>

namespace chalsim {

namespace {

using i128 = __int128;

int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
        fail(errc::range_error, std::string("rational overflow in ") + what);
    return static_cast<int64_t>(v);
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat make(i128 num, i128 den, const char* what) {
    if (den == 0) fail(errc::division_by_zero, std::string("zero denominator in ") + what);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat(narrow(num, what), narrow(den, what));
}

} // namespace

Rat::Rat(int64_t num, int64_t den) : num_(num), den_(den) {
    if (den_ == 0) fail(errc::division_by_zero, "rational with zero denominator");
    if (den_ < 0) {
        if (num_ == std::numeric_limits<int64_t>::min() || den_ == std::numeric_limits<int64_t>::min())
            fail(errc::range_error, "rational overflow in normalize");
        num_ = -num_;
        den_ = -den_;
    }
    int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::parse(std::string_view text) {
    // Reuse the currency parser's digit handling, then rescale: a 9dp decimal is
    // exactly minor/10^9.
    Currency c = Currency::parse(text);
    return Rat(c.minor(), Currency::kScale);
}

bool Rat::operator<(const Rat& o) const {
    return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
}

Rat Rat::operator+(const Rat& o) const {
    return make(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_, "add");
}

Rat Rat::operator-(const Rat& o) const {
    return make(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_, "sub");
}

Rat Rat::operator*(const Rat& o) const {
    return make(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_, "mul");
}

Rat Rat::operator/(const Rat& o) const {
    if (o.num_ == 0) fail(errc::division_by_zero, "rational division by zero");
    return make(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_, "div");
}

std::string Rat::to_fraction_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rat::to_decimal_string(int max_dp) const {
    i128 num = num_;
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    i128 den = den_;
    i128 whole = num / den;
    i128 rem = num % den;

    std::string digits;
    for (int i = 0; i < max_dp && rem != 0; ++i) {
        rem *= 10;
        digits.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
        rem %= den;
    }
    if (rem != 0) {
        // Round half-even at max_dp.
        i128 twice = rem * 2;
        bool up = twice > den;
        if (twice == den) up = !digits.empty() && ((digits.back() - '0') % 2 == 1);
        if (up) {
            int i = static_cast<int>(digits.size()) - 1;
            while (i >= 0 && digits[i] == '9') digits[i--] = '0';
            if (i < 0)
                whole += 1;
            else
                digits[i] += 1;
        }
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();

    std::string whole_str;
    if (whole == 0) {
        whole_str = "0";
    } else {
        while (whole > 0) {
            whole_str.insert(whole_str.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
            whole /= 10;
        }
    }
    std::string out = sign + whole_str;
    if (!digits.empty()) out += "." + digits;
    return out;
}

int64_t Rat::mul_floor(int64_t a, int64_t b) const {
    if (b <= 0) fail(errc::invalid_argument, "mul_floor requires positive divisor");
    i128 num = static_cast<i128>(num_) * a;
    i128 den = static_cast<i128>(den_) * b;
    i128 q = num / den;
    if (num % den != 0 && ((num < 0) != (den < 0))) q -= 1;
    return narrow(q, "mul_floor");
}

} // namespace chalsim

#pragma once

#include <stdexcept>
#include <string>

namespace chalsim {

enum class errc {
    invalid_argument,
    parse_error,
    range_error,
    division_by_zero,
    no_winners,
    empty_dispute,
    invalid_population,
    invalid_trials,
    unknown_theorem,
};

// Single exception type for the library; the C boundary maps `code` to a status.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace chalsim

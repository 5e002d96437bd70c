#ifndef QSL2_COMMON_HPP
#define QSL2_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsl2 {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Division by a zero field element.
struct DivideByZeroError : Error {
    DivideByZeroError() : Error("division by zero field element") {}
};

/// Malformed textual input (field elements, labels, points).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

/// Arguments outside the range an operation is defined for.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A structural assumption the engine relies on failed; indicates a bug
/// or an input outside the classified module families.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

/// Deterministic splitmix64 stream. All randomized searches in the library
/// take their stream from here so runs are reproducible given the seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi], both ends included.
    long next_in(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

} // namespace qsl2

#endif

// Typed errors shared across modules.
#pragma once

#include <stdexcept>

namespace arcline {

struct MalformedPairing : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CatalanOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};
struct ParityViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InsufficientRoom : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CrossingSigma : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OddGap : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EnumerationTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SizeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TriesExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SubjectTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace arcline

#pragma once

#include <stdexcept>
#include <string>

namespace bentforge {

// Breach of a structural invariant the library itself guarantees.
// Reaching one of these means a bug, never bad user input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Integer overflow in exact arithmetic. Results would be silently wrong,
// so we abort the computation instead.
struct overflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bentforge

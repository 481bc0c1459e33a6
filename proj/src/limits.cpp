#include "rif/limits.hpp"

#include <string>

#include "rif/error.hpp"

namespace rif {

namespace {
thread_local std::size_t active_limit = 0;
}

ScopedStateLimit::ScopedStateLimit(std::size_t max_states) : previous_(active_limit) {
    active_limit = max_states;
}

ScopedStateLimit::~ScopedStateLimit() { active_limit = previous_; }

std::size_t current_state_limit() noexcept { return active_limit; }

void check_state_limit(std::size_t states, std::string_view construction) {
    if (active_limit != 0 && states > active_limit)
        throw StateLimitExceeded(std::string(construction), active_limit);
}

} // namespace rif

#pragma once

#include <cstddef>
#include <string_view>

namespace rif {

/**
 * Installs a per-thread ceiling on the number of states a single construction
 * (product, subset construction, transducer application) may create. The
 * previous ceiling is restored on destruction. Zero means unlimited.
 */
class ScopedStateLimit {
public:
    explicit ScopedStateLimit(std::size_t max_states);
    ~ScopedStateLimit();
    ScopedStateLimit(const ScopedStateLimit&) = delete;
    ScopedStateLimit& operator=(const ScopedStateLimit&) = delete;

private:
    std::size_t previous_;
};

std::size_t current_state_limit() noexcept;

/// Throws StateLimitExceeded when `states` is above the active ceiling.
void check_state_limit(std::size_t states, std::string_view construction);

} // namespace rif

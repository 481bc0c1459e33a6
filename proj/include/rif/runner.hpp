#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rif/property_file.hpp"

namespace rif {

enum class Status { holds, fails, error, aborted };

std::string_view status_name(Status s); // HOLDS, FAILS, ERROR, ABORTED

struct AssertionResult {
    std::size_t index = 0; // 1-based position in the file
    std::string kind;      // inclusion, bsp, opacity, disclosure-scan
    std::string label;
    Status status = Status::error;
    std::optional<std::string> witness;     // always set for FAILS
    std::optional<std::string> observation; // opacity failures
    std::vector<std::string> notes;         // warnings, extra disclosing words
    std::string message;                    // ERROR / ABORTED reason
    std::size_t states = 0;                 // largest automaton built
    std::size_t transitions = 0;
    double millis = 0;
};

struct Report {
    std::vector<AssertionResult> results;
    std::size_t count(Status s) const;
    /// 0 all hold, 1 some fail, 2 some assertion errored, 3 state ceiling hit.
    int exit_code() const;
};

struct RunOptions {
    std::size_t max_states = 0; // 0: unlimited
    unsigned jobs = 1;
};

/// Ceiling from RIF_MAX_STATES, or 0 when unset or malformed.
std::size_t default_state_limit();

/// Binds the file and checks every assertion. Results keep the file order.
/// Binding errors other than the state ceiling propagate as ParseError.
Report run(const PropertyFile& file, const RunOptions& options = {});

/// Deterministic renderings; wall times only when `timings` is set.
std::string render_text(const Report& report, bool timings = false);
std::string render_structured(const Report& report, bool timings = false);

} // namespace rif

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rif/engine.hpp"
#include "rif/nfa.hpp"
#include "rif/observers.hpp"
#include "rif/transducer.hpp"

namespace rif {

struct DisclosureReport {
    Word disclosing_word;
    Word observation;
    Nfa class_automaton; // [w] = L ∩ O⁻¹(O(w)), contained in the secret
};

struct OpacityVerdict {
    bool opaque = false;
    Verdict inclusion; // O(O_φ(L)) ⊆ O(O_¬φ(L))
    /// On failure: least observation of the secret that no other trace produces,
    /// and the least secret word observed that way.
    std::optional<Word> observation;
    std::optional<Word> disclosing_word;
    std::vector<std::string> warnings;
};

/// φ is opaque in L for O iff O(φ) ⊆ O(L ∖ φ). Throws PreconditionError when φ ⊄ L.
/// Relational observers are accepted with a warning.
OpacityVerdict is_opaque(const Nfa& system, const Nfa& secret, const Transducer& observer);

/// L ∩ O⁻¹(O(w)). Requires w ∈ L and a functional observer.
Nfa observation_class(const Nfa& system, const Transducer& observer, const Word& w);

/// The report when [w] ⊆ secret, nothing otherwise.
std::optional<DisclosureReport> discloses(const Nfa& system, const Transducer& observer, const Nfa& secret,
                                          const Word& w);

/// Secret words up to length `bound` that disclose the secret, in length-lexicographic order.
std::vector<Word> disclosure_scan(const Nfa& system, const Transducer& observer, const Nfa& secret,
                                  std::size_t bound);

struct ReductionResult {
    Verdict inclusion;     // O(L) ⊆ L
    OpacityVerdict opacity; // φ_O = non_fixpoints(O, L) opaque in L for O
};

/// For an erasing-shaped idempotent function O, O(L) ⊆ L iff φ_O is opaque.
/// Throws PreconditionError for other observers and InternalInconsistency if
/// the two verdicts disagree.
ReductionResult opacity_iff_inclusion(const Nfa& system, const Transducer& observer);

struct SigmaVerdict {
    Word sigma;
    std::string name;
    OpacityVerdict verdict;
};

struct PerSigmaResult {
    std::vector<SigmaVerdict> components;
    bool opaque = false; // conjunction, checked against the global verdict
};

/// Opacity for O_SD decomposed over the views O_σ restricted to W_σ.
PerSigmaResult opacity_per_sigma(const Nfa& system, const InisdObserver& observer, const Nfa& secret);

} // namespace rif

#include "rif/opacity.hpp"

#include "rif/error.hpp"

namespace rif {

OpacityVerdict is_opaque(const Nfa& system, const Nfa& secret, const Transducer& observer) {
    require_same_alphabet(system.alphabet(), secret.alphabet(), "opacity");
    require_same_alphabet(system.alphabet(), observer.in_alphabet(), "opacity");
    if (auto sub = includes(secret, system); !sub.holds)
        throw PreconditionError("the secret is not contained in the system; " +
                                system.alphabet()->render(sub.witness->word) + " is secret but not a trace");
    OpacityVerdict out;
    if (!is_functional(observer))
        out.warnings.push_back("observer '" + observer.tag().name +
                               "' is not functional; the inclusion form is used as is");

    Environment env;
    env.languages.emplace("L", system);
    env.observers.emplace("O", observer);
    env.observers.emplace("O_phi", o_k(secret));
    env.observers.emplace("O_notphi", o_k(complement(secret)));
    Assertion a{apply_expr("O", apply_expr("O_phi", lang("L"))), apply_expr("O", apply_expr("O_notphi", lang("L")))};
    out.inclusion = check(a, env);
    out.opaque = out.inclusion.holds;
    if (!out.opaque) {
        out.observation = out.inclusion.witness;
        Nfa preimages = intersect(secret, apply(inverse(observer), word_language(observer.out_alphabet(), *out.observation)));
        auto r = is_empty(preimages);
        if (r.empty)
            throw InternalInconsistency("opacity witness has no secret preimage");
        out.disclosing_word = r.witness->word;
    }
    return out;
}

Nfa observation_class(const Nfa& system, const Transducer& observer, const Word& w) {
    require_same_alphabet(system.alphabet(), observer.in_alphabet(), "observation class");
    if (!accepts(system, w))
        throw PreconditionError(system.alphabet()->render(w) + " is not a trace of the system");
    if (!is_functional(observer))
        throw PreconditionError("observation classes need a functional observer; '" + observer.tag().name +
                                "' is not");
    return trim(intersect(system, apply(inverse(observer), apply(observer, w))));
}

std::optional<DisclosureReport> discloses(const Nfa& system, const Transducer& observer, const Nfa& secret,
                                          const Word& w) {
    Nfa cls = observation_class(system, observer, w);
    if (!includes(cls, secret).holds)
        return std::nullopt;
    auto obs = is_empty(apply(observer, w));
    return DisclosureReport{w, obs.witness ? obs.witness->word : Word{}, std::move(cls)};
}

std::vector<Word> disclosure_scan(const Nfa& system, const Transducer& observer, const Nfa& secret,
                                  std::size_t bound) {
    std::vector<Word> out;
    for (const auto& w : enumerate(intersect(secret, system), bound))
        if (discloses(system, observer, secret, w))
            out.push_back(w);
    return out;
}

ReductionResult opacity_iff_inclusion(const Nfa& system, const Transducer& observer) {
    if (!is_idempotent(observer))
        throw PreconditionError("observer '" + observer.tag().name + "' is not an idempotent function");
    Nfa phi = non_fixpoints(observer, system);
    ReductionResult out;
    Environment env;
    env.languages.emplace("L", system);
    env.observers.emplace("O", observer);
    out.inclusion = check({apply_expr("O", lang("L")), lang("L")}, env);
    out.opacity = is_opaque(system, phi, observer);
    if (out.inclusion.holds != out.opacity.opaque)
        throw InternalInconsistency("inclusion and opacity verdicts disagree for '" + observer.tag().name + "'");
    return out;
}

PerSigmaResult opacity_per_sigma(const Nfa& system, const InisdObserver& observer, const Nfa& secret) {
    PerSigmaResult out;
    out.opaque = true;
    for (std::size_t i = 0; i < observer.view_count(); ++i) {
        const Nfa& w = observer.domain_of(i);
        SigmaVerdict sv{observer.sequences()[i], observer.view(i).tag().name,
                        is_opaque(intersect(system, w), intersect(secret, w), observer.view(i))};
        out.opaque = out.opaque && sv.verdict.opaque;
        out.components.push_back(std::move(sv));
    }
    if (is_opaque(system, secret, observer.transducer()).opaque != out.opaque)
        throw InternalInconsistency("per-σ opacity disagrees with the global verdict");
    return out;
}

} // namespace rif

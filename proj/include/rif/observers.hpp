#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rif/error.hpp"
#include "rif/expr.hpp"
#include "rif/nfa.hpp"
#include "rif/transducer.hpp"

namespace rif {

// ---------------------------------------------------------------------------
// Errors raised while validating Orwellian observers

/// Two view domains intersect; word() lies in both.
class OverlappingDomains : public Error {
public:
    OverlappingDomains(std::string first, std::string second, Word word, std::string rendered)
        : Error("views '" + first + "' and '" + second + "' overlap on " + rendered), first_(std::move(first)),
          second_(std::move(second)), word_(std::move(word)) {}
    const std::string& first() const noexcept { return first_; }
    const std::string& second() const noexcept { return second_; }
    const Word& word() const noexcept { return word_; }

private:
    std::string first_, second_;
    Word word_;
};

/// The view domains do not cover A*; word() is the least uncovered word.
class IncompleteDomains : public Error {
public:
    IncompleteDomains(Word word, std::string rendered)
        : Error("no view is defined on " + rendered), word_(std::move(word)) {}
    const Word& word() const noexcept { return word_; }

private:
    Word word_;
};

class NonFunctionalView : public Error {
public:
    explicit NonFunctionalView(std::string view)
        : Error("view '" + view + "' is not functional"), view_(std::move(view)) {}
    const std::string& view() const noexcept { return view_; }

private:
    std::string view_;
};

// ---------------------------------------------------------------------------
// Basic observers

/// π_keep: a ↦ a for a in keep, a ↦ ε otherwise.
Transducer projection(AlphabetPtr alphabet, const SymbolSet& keep);
/// O_K(w) = {w} ∩ K.
Transducer o_k(const Nfa& k);

/// Verifies the functional/idempotent claims of a tag. Throws PreconditionError naming the observer.
void verify_claims(const Transducer& t);

// ---------------------------------------------------------------------------
// Orwellian observers

struct View {
    std::string name;
    Transducer transducer;
};

/// Disjoint union of functional views whose domains partition A*.
class OrwellianObserver {
public:
    const std::vector<View>& views() const noexcept { return views_; }
    /// union_t of the views, tagged as a functional Orwellian observer.
    const Transducer& transducer() const noexcept { return combined_; }

private:
    friend OrwellianObserver orwellian(std::vector<View> views, std::string name);
    OrwellianObserver(std::vector<View> views, Transducer combined)
        : views_(std::move(views)), combined_(std::move(combined)) {}
    std::vector<View> views_;
    Transducer combined_;
};

/// Validates functionality and the partition of domains. Throws
/// NonFunctionalView, OverlappingDomains or IncompleteDomains.
OrwellianObserver orwellian(std::vector<View> views, std::string name = "O");

/// The three views of the running example over {a, b}: O_a keeps the b's of
/// words ending in a, O_b keeps the a's of words ending in b, O_ε maps ε to ε.
std::vector<View> last_letter_views(AlphabetPtr alphabet);

/// π_{V,D}: projection on V unless D, as the two views O_ε ⊎ O_D. Uses the
/// alphabet roles V, C, D.
OrwellianObserver ini_projection(AlphabetPtr alphabet);

// ---------------------------------------------------------------------------
// Selective declassification

/// Repetition-free sequences over `d`, shortest first, then lexicographic.
std::vector<Word> sigma_sequences(const SymbolSet& d);
/// Σ_{k=0..n} n!/(n-k)!
std::size_t sigma_count(std::size_t n);

/// Subalphabets V_{σ,0..n}.
std::vector<SymbolSet> v_sigma(const Alphabet& alphabet, const Word& sigma);
/// W_σ over the alphabet's V/C/D roles.
Nfa w_sigma(AlphabetPtr alphabet, const Word& sigma);
/// The view O_σ, with domain W_σ.
Transducer o_sigma(AlphabetPtr alphabet, const Word& sigma);

/**
 * O_SD = ⊎_σ O_σ over Σ(D). Views are built on demand; building every view
 * needs |Σ(D)| of them, which grows super-exponentially, so construction is
 * refused above `max_declass` downgrading symbols.
 */
class InisdObserver {
public:
    static constexpr std::size_t kDefaultMaxDeclass = 5;

    explicit InisdObserver(AlphabetPtr alphabet, std::size_t max_declass = kDefaultMaxDeclass);

    const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
    const std::vector<Word>& sequences() const noexcept { return sequences_; }
    std::size_t view_count() const noexcept { return sequences_.size(); }
    /// Human-readable size note, with a warning above 100 views.
    std::string size_report() const;

    const Transducer& view(std::size_t i) const;
    const Nfa& domain_of(std::size_t i) const;
    /// All views as one transducer (built once).
    const Transducer& transducer() const;
    /// Full validation as an Orwellian observer (partition and functionality).
    OrwellianObserver validated() const;

private:
    AlphabetPtr alphabet_;
    std::vector<Word> sequences_;
    mutable std::vector<std::optional<Transducer>> views_;
    mutable std::vector<std::optional<Nfa>> domains_;
    mutable std::optional<Transducer> combined_;
    mutable std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Basic security predicates

enum class BspKind { SR, R, SD, D, BSD, FCD, SI, I, BSI, FCI, SIA, IA, BSIA, FCIA };

inline constexpr BspKind kAllBspKinds[] = {BspKind::SR,  BspKind::R,   BspKind::SD,   BspKind::D,   BspKind::BSD,
                                           BspKind::FCD, BspKind::SI,  BspKind::I,    BspKind::BSI, BspKind::FCI,
                                           BspKind::SIA, BspKind::IA,  BspKind::BSIA, BspKind::FCIA};

std::string_view bsp_name(BspKind kind);
std::optional<BspKind> bsp_from_name(std::string_view name);
bool bsp_needs_subsets(BspKind kind);   // V', C', N'
bool bsp_needs_admissible(BspKind kind); // X

struct BspParams {
    std::optional<SymbolSet> v_prime, c_prime, n_prime;
    std::optional<SymbolSet> admissible;
};

/// "L satisfies the predicate" iff the assertion holds once "L" is bound in `env`.
struct BspTemplate {
    Environment env; // observers only
    Assertion assertion;
    /// Output alphabet of the observers used on both sides.
    AlphabetPtr compared_alphabet;
};

/// Builds the inclusion template for `kind`. The alphabet must carry V/C/N roles
/// (missing role sets are empty). Throws PreconditionError on missing params.
BspTemplate bsp_template(BspKind kind, AlphabetPtr alphabet, const BspParams& params = {});

/// w and w with its last confidential event deleted.
Transducer l_del(AlphabetPtr alphabet);
/// Inserts a confidential event after which only V ∪ N events follow (or nothing).
Transducer l_ins(AlphabetPtr alphabet, std::optional<Symbol> only = std::nullopt);
/// ⋃_k l-del^k.
Transducer o_del(AlphabetPtr alphabet);
/// The drawn BSD transducer: delete the last c, then rewrite N events freely.
Transducer bsd_figure(AlphabetPtr alphabet);
/// The drawn FCD transducer over the subsets V', C', N'.
Transducer fcd_figure(AlphabetPtr alphabet, const SymbolSet& v_prime, const SymbolSet& c_prime,
                      const SymbolSet& n_prime);
/// O_c^X(u) = π_X⁻¹(π_X(c⁻¹u)) · c · (V ⊎ N)*.
Transducer admissible_observer(AlphabetPtr alphabet, Symbol c, const SymbolSet& x);

// ---------------------------------------------------------------------------
// Anonymity

enum class AnonymityKind { SA, WA, CSA, CWA };

std::string_view anonymity_name(AnonymityKind kind);

/// O_SA^P: substitution replacing each P symbol by any P symbol.
Transducer strong_anonymity(AlphabetPtr alphabet, const SymbolSet& p);
/// O_WA^P: union of the permutation morphisms of P (partial-injection construction).
Transducer weak_anonymity(AlphabetPtr alphabet, const SymbolSet& p);
/// Words whose set of R symbols is exactly `sigma`.
Nfa revocation_context(AlphabetPtr alphabet, const SymbolSet& sigma);
/// P ∖ ⋃_{r ∈ σ} P(r).
SymbolSet legitimate_participants(const Alphabet& alphabet, const SymbolSet& sigma);
/// SA/WA use roles P; CSA/CWA use roles P, R and the revocation table.
Transducer anonymity_observer(AnonymityKind kind, AlphabetPtr alphabet);

} // namespace rif

#include "rif/observers.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rif/limits.hpp"

namespace rif {

namespace {

SymbolSet minus(const SymbolSet& a, const SymbolSet& b) {
    SymbolSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

SymbolSet join(const SymbolSet& a, const SymbolSet& b) {
    SymbolSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

// One-state transducer; `label` decides the output of each symbol.
template <typename F>
Transducer one_state(AlphabetPtr in, AlphabetPtr out, F label) {
    Transducer t(in, std::move(out));
    State s = t.add_state();
    t.set_initial(s);
    t.set_final(s);
    for (Symbol a = 0; a < in->size(); ++a)
        for (Symbol b : label(a))
            t.add_transition(s, a, b, s);
    return t;
}

} // namespace

Transducer projection(AlphabetPtr alphabet, const SymbolSet& keep) {
    auto t = one_state(alphabet, alphabet, [&](Symbol a) {
        return std::vector<Symbol>{keep.contains(a) ? a : kEpsilon};
    });
    t.set_tag({"pi" + render_set(*alphabet, keep), ObserverKind::static_view, true, true});
    return t;
}

Transducer o_k(const Nfa& k) {
    Transducer t = identity(k);
    t.set_tag({"O_K", ObserverKind::static_view, true, true});
    return t;
}

void verify_claims(const Transducer& t) {
    const auto& tag = t.tag();
    if (tag.functional_claimed && !is_functional(t))
        throw PreconditionError("observer '" + tag.name + "' is tagged functional but is not");
    if (tag.idempotent_claimed && !is_idempotent(t))
        throw PreconditionError("observer '" + tag.name + "' is tagged idempotent but is not");
}

// ---------------------------------------------------------------------------
// Orwellian observers

OrwellianObserver orwellian(std::vector<View> views, std::string name) {
    if (views.empty())
        throw PreconditionError("an Orwellian observer needs at least one view");
    const auto& A = views.front().transducer.in_alphabet();
    std::vector<Nfa> domains;
    for (const auto& v : views) {
        require_same_alphabet(A, v.transducer.in_alphabet(), "orwellian");
        require_same_alphabet(views.front().transducer.out_alphabet(), v.transducer.out_alphabet(), "orwellian");
        if (!is_functional(v.transducer))
            throw NonFunctionalView(v.name);
        domains.push_back(domain(v.transducer));
    }
    for (std::size_t i = 0; i < views.size(); ++i)
        for (std::size_t j = i + 1; j < views.size(); ++j) {
            auto r = is_empty(intersect(domains[i], domains[j]));
            if (!r.empty)
                throw OverlappingDomains(views[i].name, views[j].name, r.witness->word, A->render(r.witness->word));
        }
    Nfa covered = domains.front();
    for (std::size_t i = 1; i < domains.size(); ++i)
        covered = unite(covered, domains[i]);
    auto r = includes(universal(A), covered);
    if (!r.holds)
        throw IncompleteDomains(r.witness->word, A->render(r.witness->word));

    std::vector<Transducer> ts;
    for (const auto& v : views)
        ts.push_back(v.transducer);
    Transducer combined = union_t(ts);
    bool idempotent = std::all_of(views.begin(), views.end(), [](const View& v) { return v.transducer.tag().idempotent_claimed; });
    combined.set_tag({std::move(name), ObserverKind::orwellian, idempotent, true});
    return OrwellianObserver(std::move(views), std::move(combined));
}

std::vector<View> last_letter_views(AlphabetPtr A) {
    Symbol a = A->at("a"), b = A->at("b");
    if (A->size() != 2)
        throw PreconditionError("last_letter_views expects the alphabet {a, b}");
    auto view = [&](Symbol last, Symbol other, const char* name) {
        Transducer t(A, A);
        State p0 = t.add_state(), p1 = t.add_state();
        t.set_initial(p0);
        t.set_final(p1);
        t.add_transition(p0, last, kEpsilon, p0);
        t.add_transition(p0, other, other, p0);
        t.add_transition(p0, last, kEpsilon, p1);
        t.set_tag({name, ObserverKind::relational, false, true});
        return View{name, std::move(t)};
    };
    Transducer eps(A, A);
    State r0 = eps.add_state();
    eps.set_initial(r0);
    eps.set_final(r0);
    eps.set_tag({"O_eps", ObserverKind::relational, false, true});
    return {view(a, b, "O_a"), view(b, a, "O_b"), View{"O_eps", std::move(eps)}};
}

namespace {

struct VcdRoles {
    SymbolSet v, c, d;
};

VcdRoles vcd_roles(const Alphabet& A) {
    VcdRoles r{A.with_role(Role::visible), A.with_role(Role::confidential), A.with_role(Role::declassify)};
    if (join(join(r.v, r.c), r.d).size() != A.size())
        throw PreconditionError("every symbol needs one of the roles V, C, D");
    return r;
}

} // namespace

OrwellianObserver ini_projection(AlphabetPtr A) {
    auto roles = vcd_roles(*A);
    Transducer oe(A, A);
    State p0 = oe.add_state();
    oe.set_initial(p0);
    oe.set_final(p0);
    for (Symbol v : roles.v)
        oe.add_transition(p0, v, v, p0);
    for (Symbol c : roles.c)
        oe.add_transition(p0, c, kEpsilon, p0);
    oe.set_tag({"O_eps", ObserverKind::relational, true, true});

    Transducer od(A, A);
    State q0 = od.add_state(), q1 = od.add_state();
    od.set_initial(q0);
    od.set_final(q1);
    for (Symbol a = 0; a < A->size(); ++a)
        od.add_transition(q0, a, a, q0);
    for (Symbol d : roles.d)
        od.add_transition(q0, d, d, q1);
    for (Symbol v : roles.v)
        od.add_transition(q1, v, v, q1);
    for (Symbol c : roles.c)
        od.add_transition(q1, c, kEpsilon, q1);
    od.set_tag({"O_D", ObserverKind::relational, true, true});

    std::vector<View> views{{"O_eps", std::move(oe)}, {"O_D", std::move(od)}};
    return orwellian(std::move(views), "pi_VD");
}

// ---------------------------------------------------------------------------
// Selective declassification

std::vector<Word> sigma_sequences(const SymbolSet& d) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= d.size(); ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol x : d)
                if (std::find(out[i].begin(), out[i].end(), x) == out[i].end()) {
                    Word w = out[i];
                    w.push_back(x);
                    out.push_back(std::move(w));
                }
        begin = end;
    }
    return out;
}

std::size_t sigma_count(std::size_t n) {
    std::size_t total = 0, term = 1; // term = n!/(n-k)!
    for (std::size_t k = 0; k <= n; ++k) {
        total += term;
        term *= n - k;
    }
    return total;
}

std::vector<SymbolSet> v_sigma(const Alphabet& A, const Word& sigma) {
    auto roles = vcd_roles(A);
    const auto& table = A.declass_table();
    const std::size_t n = sigma.size();
    std::vector<SymbolSet> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        SymbolSet s = roles.v;
        for (std::size_t j = i + 1; j <= n; ++j) {
            Symbol dj = sigma[j - 1];
            s.insert(dj);
            auto it = table.find(dj);
            if (it != table.end())
                s.insert(it->second.begin(), it->second.end());
        }
        out[i] = std::move(s);
    }
    return out;
}

namespace {

// Symbols allowed after the i-th downgrade: A_σ minus d_1..d_i.
std::vector<SymbolSet> sigma_segments(const Alphabet& A, const Word& sigma) {
    auto roles = vcd_roles(A);
    SymbolSet a_sigma = join(roles.v, roles.c);
    for (Symbol d : sigma) {
        if (!roles.d.contains(d))
            throw PreconditionError("σ contains non-downgrading symbol '" + A.name(d) + "'");
        a_sigma.insert(d);
    }
    std::vector<SymbolSet> out;
    SymbolSet seen;
    out.push_back(a_sigma);
    for (Symbol d : sigma) {
        seen.insert(d);
        out.push_back(minus(a_sigma, seen));
    }
    return out;
}

std::string sigma_name(const Alphabet& A, const Word& sigma) {
    if (sigma.empty())
        return "O_eps";
    std::string s = "O_";
    for (std::size_t i = 0; i < sigma.size(); ++i)
        s += (i ? "." : "") + A.name(sigma[i]);
    return s;
}

} // namespace

Nfa w_sigma(AlphabetPtr A, const Word& sigma) {
    auto segments = sigma_segments(*A, sigma);
    Nfa out(A);
    out.add_states(sigma.size() + 1);
    out.set_initial(0);
    out.set_final(static_cast<State>(sigma.size()));
    for (State i = 0; i < segments.size(); ++i) {
        for (Symbol x : segments[i])
            out.add_transition(i, x, i);
        if (i < sigma.size())
            out.add_transition(i, sigma[i], i + 1);
    }
    return out;
}

Transducer o_sigma(AlphabetPtr A, const Word& sigma) {
    auto segments = sigma_segments(*A, sigma);
    auto visible = v_sigma(*A, sigma);
    Transducer t(A, A);
    t.add_states(sigma.size() + 1);
    t.set_initial(0);
    t.set_final(static_cast<State>(sigma.size()));
    for (State i = 0; i < segments.size(); ++i) {
        for (Symbol x : segments[i])
            t.add_transition(i, x, visible[i].contains(x) ? x : kEpsilon, i);
        if (i < sigma.size())
            t.add_transition(i, sigma[i], sigma[i], i + 1);
    }
    t.set_tag({sigma_name(*A, sigma), ObserverKind::relational, true, true});
    return t;
}

InisdObserver::InisdObserver(AlphabetPtr alphabet, std::size_t max_declass) : alphabet_(std::move(alphabet)) {
    auto roles = vcd_roles(*alphabet_);
    for (Symbol d : roles.d)
        if (!alphabet_->declass_table().contains(d))
            throw PreconditionError("no declassification set C(" + alphabet_->name(d) + ")");
    for (const auto& [d, cs] : alphabet_->declass_table())
        for (Symbol c : cs)
            if (!roles.c.contains(c))
                throw PreconditionError("C(" + alphabet_->name(d) + ") contains non-confidential '" +
                                        alphabet_->name(c) + "'");
    if (roles.d.size() > max_declass)
        throw PreconditionError("|D| = " + std::to_string(roles.d.size()) + " exceeds the cap of " +
                                std::to_string(max_declass) + " (|Σ(D)| = " +
                                std::to_string(sigma_count(roles.d.size())) + " views)");
    sequences_ = sigma_sequences(roles.d);
    views_.resize(sequences_.size());
    domains_.resize(sequences_.size());
}

std::string InisdObserver::size_report() const {
    std::ostringstream out;
    std::size_t d = alphabet_->with_role(Role::declassify).size();
    out << "|D| = " << d << ", |Σ(D)| = " << sequences_.size() << " views";
    if (sequences_.size() > 100)
        out << " (warning: large view family)";
    return out.str();
}

const Transducer& InisdObserver::view(std::size_t i) const {
    std::lock_guard lock(mutex_);
    if (!views_.at(i))
        views_[i] = o_sigma(alphabet_, sequences_[i]);
    return *views_[i];
}

const Nfa& InisdObserver::domain_of(std::size_t i) const {
    std::lock_guard lock(mutex_);
    if (!domains_.at(i))
        domains_[i] = w_sigma(alphabet_, sequences_[i]);
    return *domains_[i];
}

const Transducer& InisdObserver::transducer() const {
    {
        std::lock_guard lock(mutex_);
        if (combined_)
            return *combined_;
    }
    std::vector<Transducer> ts;
    for (std::size_t i = 0; i < sequences_.size(); ++i)
        ts.push_back(view(i));
    Transducer t = union_t(ts);
    t.set_tag({"O_SD", ObserverKind::orwellian, true, true});
    std::lock_guard lock(mutex_);
    if (!combined_)
        combined_ = std::move(t);
    return *combined_;
}

OrwellianObserver InisdObserver::validated() const {
    std::vector<View> views;
    for (std::size_t i = 0; i < sequences_.size(); ++i)
        views.push_back({view(i).tag().name, view(i)});
    return orwellian(std::move(views), "O_SD");
}

// ---------------------------------------------------------------------------
// Basic security predicates

std::string_view bsp_name(BspKind kind) {
    switch (kind) {
    case BspKind::SR: return "SR";
    case BspKind::R: return "R";
    case BspKind::SD: return "SD";
    case BspKind::D: return "D";
    case BspKind::BSD: return "BSD";
    case BspKind::FCD: return "FCD";
    case BspKind::SI: return "SI";
    case BspKind::I: return "I";
    case BspKind::BSI: return "BSI";
    case BspKind::FCI: return "FCI";
    case BspKind::SIA: return "SIA";
    case BspKind::IA: return "IA";
    case BspKind::BSIA: return "BSIA";
    case BspKind::FCIA: return "FCIA";
    }
    return "?";
}

std::optional<BspKind> bsp_from_name(std::string_view name) {
    for (BspKind k : kAllBspKinds)
        if (bsp_name(k) == name)
            return k;
    return std::nullopt;
}

bool bsp_needs_subsets(BspKind kind) {
    return kind == BspKind::FCD || kind == BspKind::FCI || kind == BspKind::FCIA;
}

bool bsp_needs_admissible(BspKind kind) {
    return kind == BspKind::SIA || kind == BspKind::IA || kind == BspKind::BSIA || kind == BspKind::FCIA;
}

namespace {

struct VcnRoles {
    SymbolSet v, c, n;
};

VcnRoles vcn_roles(const Alphabet& A) {
    VcnRoles r{A.with_role(Role::visible), A.with_role(Role::confidential), A.with_role(Role::internal)};
    if (join(join(r.v, r.c), r.n).size() != A.size())
        throw PreconditionError("every symbol needs one of the roles V, C, N");
    return r;
}

} // namespace

Transducer l_del(AlphabetPtr A) {
    auto roles = vcn_roles(*A);
    Transducer t(A, A);
    State q0 = t.add_state(), q1 = t.add_state();
    t.set_initial(q0);
    t.set_final(q0);
    t.set_final(q1);
    for (Symbol a = 0; a < A->size(); ++a)
        t.add_transition(q0, a, a, q0);
    for (Symbol c : roles.c)
        t.add_transition(q0, c, kEpsilon, q1);
    for (Symbol a : join(roles.v, roles.n))
        t.add_transition(q1, a, a, q1);
    t.set_tag({"l-del", ObserverKind::relational, false, true});
    return t;
}

Transducer l_ins(AlphabetPtr A, std::optional<Symbol> only) {
    auto roles = vcn_roles(*A);
    Transducer t(A, A);
    State q0 = t.add_state(), q1 = t.add_state();
    t.set_initial(q0);
    t.set_final(q0);
    t.set_final(q1);
    for (Symbol a = 0; a < A->size(); ++a)
        t.add_transition(q0, a, a, q0);
    for (Symbol c : roles.c)
        if (!only || *only == c)
            t.add_transition(q0, kEpsilon, c, q1);
    for (Symbol a : join(roles.v, roles.n))
        t.add_transition(q1, a, a, q1);
    t.set_tag({only ? "l-ins_" + A->name(*only) : "l-ins", ObserverKind::relational, false, false});
    return t;
}

Transducer o_del(AlphabetPtr A) {
    auto roles = vcn_roles(*A);
    Transducer t(A, A);
    State q0 = t.add_state(), q1 = t.add_state();
    t.set_initial(q0);
    t.set_final(q0);
    t.set_final(q1);
    for (Symbol a = 0; a < A->size(); ++a)
        t.add_transition(q0, a, a, q0);
    for (Symbol c : roles.c) {
        t.add_transition(q0, c, kEpsilon, q1);
        t.add_transition(q1, c, kEpsilon, q1);
    }
    for (Symbol a : join(roles.v, roles.n))
        t.add_transition(q1, a, a, q1);
    t.set_tag({"O_del", ObserverKind::relational, false, false});
    return t;
}

Transducer bsd_figure(AlphabetPtr A) {
    auto roles = vcn_roles(*A);
    Transducer t(A, A);
    State q0 = t.add_state(), q1 = t.add_state();
    t.set_initial(q0);
    t.set_final(q0);
    t.set_final(q1);
    for (Symbol a = 0; a < A->size(); ++a)
        t.add_transition(q0, a, a, q0);
    for (Symbol c : roles.c)
        t.add_transition(q0, c, kEpsilon, q1);
    for (Symbol v : roles.v)
        t.add_transition(q1, v, v, q1);
    for (Symbol n : roles.n) {
        t.add_transition(q1, n, kEpsilon, q1);
        t.add_transition(q1, kEpsilon, n, q1);
    }
    t.set_tag({"O_BSD", ObserverKind::relational, false, false});
    return t;
}

Transducer fcd_figure(AlphabetPtr A, const SymbolSet& vp, const SymbolSet& cp, const SymbolSet& np) {
    auto roles = vcn_roles(*A);
    Transducer t(A, A);
    State q0 = t.add_state(), q1 = t.add_state(), q2 = t.add_state();
    t.set_initial(q0);
    t.set_final(q0);
    t.set_final(q2);
    for (Symbol a = 0; a < A->size(); ++a)
        t.add_transition(q0, a, a, q0);
    for (Symbol c : cp)
        t.add_transition(q0, c, kEpsilon, q1);
    for (Symbol n : np)
        t.add_transition(q1, kEpsilon, n, q1);
    for (Symbol v : vp)
        t.add_transition(q1, v, v, q2);
    for (Symbol n : roles.n) {
        t.add_transition(q2, kEpsilon, n, q2);
        t.add_transition(q2, n, kEpsilon, q2);
    }
    for (Symbol v : roles.v)
        t.add_transition(q2, v, v, q2);
    t.set_tag({"O_FCD", ObserverKind::relational, false, false});
    return t;
}

Transducer admissible_observer(AlphabetPtr A, Symbol c, const SymbolSet& x) {
    auto roles = vcn_roles(*A);
    // trailing-c quotient {(w c, w)}
    Transducer quotient(A, A);
    {
        State q0 = quotient.add_state(), q1 = quotient.add_state();
        quotient.set_initial(q0);
        quotient.set_final(q1);
        for (Symbol a = 0; a < A->size(); ++a)
            quotient.add_transition(q0, a, a, q0);
        quotient.add_transition(q0, c, kEpsilon, q1);
    }
    // π_X⁻¹ ∘ π_X: same projection on X
    Transducer same_x(A, A);
    {
        State s = same_x.add_state();
        same_x.set_initial(s);
        same_x.set_final(s);
        for (Symbol a = 0; a < A->size(); ++a) {
            if (x.contains(a)) {
                same_x.add_transition(s, a, a, s);
            } else {
                same_x.add_transition(s, a, kEpsilon, s);
                same_x.add_transition(s, kEpsilon, a, s);
            }
        }
    }
    // w ↦ w c (V ⊎ N)*
    Transducer append(A, A);
    {
        State q0 = append.add_state(), q1 = append.add_state();
        append.set_initial(q0);
        append.set_final(q1);
        for (Symbol a = 0; a < A->size(); ++a)
            append.add_transition(q0, a, a, q0);
        append.add_transition(q0, kEpsilon, c, q1);
        for (Symbol a : join(roles.v, roles.n))
            append.add_transition(q1, kEpsilon, a, q1);
    }
    Transducer t = compose(compose(quotient, same_x), append);
    t.set_tag({"O_" + A->name(c) + "^X", ObserverKind::relational, false, false});
    return t;
}

namespace {

AlphabetPtr with_marker(const Alphabet& A) {
    if (A.contains("#"))
        throw PreconditionError("the symbol '#' is reserved as a marker in BSP templates");
    auto symbols = A.symbols();
    symbols.push_back("#");
    return make_alphabet(symbols);
}

// Builds marker observers. Each reads a head copied verbatim, then a bridge,
// then a tail over V ∪ N whose V symbols are copied and N symbols erased.
class MarkerBuilder {
public:
    MarkerBuilder(AlphabetPtr in, AlphabetPtr out, const VcnRoles& roles)
        : in_(std::move(in)), out_(std::move(out)), roles_(roles), mark_(out_->at("#")), t_(in_, out_) {
        head_ = t_.add_state();
        tail_ = t_.add_state();
        t_.set_initial(head_);
        t_.set_final(tail_);
        for (Symbol a = 0; a < in_->size(); ++a)
            t_.add_transition(head_, a, a, head_);
        for (Symbol v : roles_.v)
            t_.add_transition(tail_, v, v, tail_);
        for (Symbol n : roles_.n)
            t_.add_transition(tail_, n, kEpsilon, tail_);
    }

    State head() const { return head_; }
    State tail() const { return tail_; }
    Symbol mark() const { return mark_; }
    Transducer& t() { return t_; }

    Transducer done(std::string name) {
        t_.set_tag({std::move(name), ObserverKind::relational, false, false});
        return std::move(t_);
    }

private:
    AlphabetPtr in_, out_;
    VcnRoles roles_;
    Symbol mark_;
    Transducer t_;
    State head_ = 0, tail_ = 0;
};

SymbolSet param_or_throw(const std::optional<SymbolSet>& p, const char* what, BspKind kind) {
    if (!p)
        throw PreconditionError(std::string(bsp_name(kind)) + " needs the parameter " + what);
    return *p;
}

void require_subset(const SymbolSet& sub, const SymbolSet& of, const char* what) {
    if (!std::includes(of.begin(), of.end(), sub.begin(), sub.end()))
        throw PreconditionError(std::string(what) + " is not a subset of the corresponding role");
}

} // namespace

BspTemplate bsp_template(BspKind kind, AlphabetPtr A, const BspParams& params) {
    auto roles = vcn_roles(*A);
    BspTemplate out;
    out.compared_alphabet = A;
    auto& obs = out.env.observers;
    const auto L = lang("L");
    auto nbar = [&] { return projection(A, join(roles.v, roles.c)); };

    SymbolSet vp, cp, np, x;
    if (bsp_needs_subsets(kind)) {
        vp = param_or_throw(params.v_prime, "V'", kind);
        cp = param_or_throw(params.c_prime, "C'", kind);
        np = param_or_throw(params.n_prime, "N'", kind);
        require_subset(vp, roles.v, "V'");
        require_subset(cp, roles.c, "C'");
        require_subset(np, roles.n, "N'");
    }
    if (bsp_needs_admissible(kind)) {
        auto given = params.admissible ? params.admissible : A->admissible();
        x = param_or_throw(given, "X", kind);
    }

    // ⋃_{c ∈ cs} (ins_c(L) ∩ O_c^X(L)); O_∅(L) when cs is empty
    auto admissible_union = [&](const SymbolSet& cs, auto make_ins) {
        ExprPtr acc;
        for (Symbol c : cs) {
            std::string ins = "ins_" + A->name(c);
            std::string adm = "adm_" + A->name(c);
            obs.emplace(ins, make_ins(c));
            obs.emplace(adm, admissible_observer(A, c, x));
            auto term = inter_expr(apply_expr(ins, L), apply_expr(adm, L));
            acc = acc ? union_expr(acc, term) : term;
        }
        if (!acc) {
            obs.emplace("none", o_k(empty_language(A)));
            acc = apply_expr("none", L);
        }
        return acc;
    };

    switch (kind) {
    case BspKind::SR:
        obs.emplace("pi_Cbar", projection(A, join(roles.v, roles.n)));
        out.assertion = {apply_expr("pi_Cbar", L), L};
        break;
    case BspKind::R:
        obs.emplace("pi_V", projection(A, roles.v));
        obs.emplace("pi_Nbar", nbar());
        out.assertion = {apply_expr("pi_V", L), apply_expr("pi_Nbar", L)};
        break;
    case BspKind::SD:
        obs.emplace("l_del", l_del(A));
        out.assertion = {apply_expr("l_del", L), L};
        break;
    case BspKind::D:
        obs.emplace("l_del_Nbar", compose(l_del(A), nbar()));
        obs.emplace("pi_Nbar", nbar());
        out.assertion = {apply_expr("l_del_Nbar", L), apply_expr("pi_Nbar", L)};
        break;
    case BspKind::SI:
        obs.emplace("l_ins", l_ins(A));
        out.assertion = {apply_expr("l_ins", L), L};
        break;
    case BspKind::I:
        obs.emplace("l_ins_Nbar", compose(l_ins(A), nbar()));
        obs.emplace("pi_Nbar", nbar());
        out.assertion = {apply_expr("l_ins_Nbar", L), apply_expr("pi_Nbar", L)};
        break;
    case BspKind::BSD:
    case BspKind::FCD:
    case BspKind::BSI:
    case BspKind::FCI: {
        // Two-sided marker templates: both sides map a word to its part before
        // the rewritten suffix, a marker, and the visible part of the suffix.
        auto M = with_marker(*A);
        out.compared_alphabet = M;
        MarkerBuilder lhs(A, M, roles), rhs(A, M, roles);
        const bool deletion = kind == BspKind::BSD || kind == BspKind::FCD;
        const bool correctable = kind == BspKind::FCD || kind == BspKind::FCI;
        const SymbolSet& cs = correctable ? cp : roles.c;
        auto& l = lhs.t();
        auto& r = rhs.t();
        if (!correctable) {
            for (Symbol c : cs) {
                if (deletion) {
                    l.add_transition(lhs.head(), c, lhs.mark(), lhs.tail());                   // βcα ↦ β#
                } else {
                    l.add_word_transition(lhs.head(), {}, {c, lhs.mark()}, lhs.tail());        // βα ↦ βc#
                    r.add_word_transition(rhs.head(), {c}, {c, rhs.mark()}, rhs.tail());       // βcα' ↦ βc#
                }
            }
            if (deletion)
                r.add_transition(rhs.head(), kEpsilon, rhs.mark(), rhs.tail());                // βα' ↦ β#
        } else {
            State lmid = l.add_state(), rmid = r.add_state();
            for (Symbol c : cs) {
                if (deletion) {
                    l.add_transition(lhs.head(), c, lhs.mark(), lmid);                         // βc ↦ β#
                } else {
                    l.add_word_transition(lhs.head(), {}, {c, lhs.mark()}, lmid);             // β ↦ βc#
                    r.add_word_transition(rhs.head(), {c}, {c, rhs.mark()}, rmid);            // βc ↦ βc#
                }
            }
            if (deletion)
                r.add_transition(rhs.head(), kEpsilon, rhs.mark(), rmid);                      // β ↦ β#
            for (Symbol n : np)
                r.add_transition(rmid, n, kEpsilon, rmid);                                     // δ' ∈ N'*
            for (Symbol v : vp) {
                l.add_transition(lmid, v, v, lhs.tail());
                r.add_transition(rmid, v, v, rhs.tail());
            }
        }
        std::string name(bsp_name(kind));
        obs.emplace(name + "_lhs", lhs.done(name + "_lhs"));
        obs.emplace(name + "_rhs", rhs.done(name + "_rhs"));
        out.assertion = {apply_expr(name + "_lhs", L), apply_expr(name + "_rhs", L)};
        break;
    }
    case BspKind::SIA:
    case BspKind::IA: {
        auto z = admissible_union(roles.c, [&](Symbol c) { return l_ins(A, c); });
        if (kind == BspKind::SIA) {
            out.assertion = {z, L};
        } else {
            obs.emplace("pi_Nbar", nbar());
            out.assertion = {apply_expr("pi_Nbar", z), apply_expr("pi_Nbar", L)};
        }
        break;
    }
    case BspKind::BSIA: {
        auto z = admissible_union(roles.c, [&](Symbol c) { return l_ins(A, c); });
        auto M = with_marker(*A);
        out.compared_alphabet = M;
        MarkerBuilder mark(A, M, roles);
        for (Symbol c : roles.c)
            mark.t().add_word_transition(mark.head(), {c}, {c, mark.mark()}, mark.tail()); // βcα' ↦ βc#
        obs.emplace("mark", mark.done("mark"));
        out.assertion = {apply_expr("mark", z), apply_expr("mark", L)};
        break;
    }
    case BspKind::FCIA: {
        // fcins_c: βvα ↦ βcvα with v ∈ V', α ∈ (V ∪ N)*
        auto fcins = [&](Symbol c) {
            Transducer t(A, A);
            State q0 = t.add_state(), q1 = t.add_state(), q2 = t.add_state();
            t.set_initial(q0);
            t.set_final(q2);
            for (Symbol a = 0; a < A->size(); ++a)
                t.add_transition(q0, a, a, q0);
            t.add_transition(q0, kEpsilon, c, q1);
            for (Symbol v : vp)
                t.add_transition(q1, v, v, q2);
            for (Symbol a : join(roles.v, roles.n))
                t.add_transition(q2, a, a, q2);
            t.set_tag({"fcins_" + A->name(c), ObserverKind::relational, false, true});
            return t;
        };
        auto z = admissible_union(cp, fcins);
        auto M = with_marker(*A);
        out.compared_alphabet = M;
        MarkerBuilder mark(A, M, roles);
        auto& t = mark.t();
        State mid = t.add_state();
        for (Symbol c : cp)
            t.add_word_transition(mark.head(), {c}, {c, mark.mark()}, mid); // βc ↦ βc#
        for (Symbol n : np)
            t.add_transition(mid, n, kEpsilon, mid);
        for (Symbol v : vp)
            t.add_transition(mid, v, v, mark.tail());
        obs.emplace("fcmark", mark.done("fcmark"));
        out.assertion = {apply_expr("fcmark", z), apply_expr("fcmark", L)};
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Anonymity

std::string_view anonymity_name(AnonymityKind kind) {
    switch (kind) {
    case AnonymityKind::SA: return "SA";
    case AnonymityKind::WA: return "WA";
    case AnonymityKind::CSA: return "CSA";
    case AnonymityKind::CWA: return "CWA";
    }
    return "?";
}

Transducer strong_anonymity(AlphabetPtr A, const SymbolSet& p) {
    auto t = one_state(A, A, [&](Symbol a) {
        if (!p.contains(a))
            return std::vector<Symbol>{a};
        return std::vector<Symbol>(p.begin(), p.end());
    });
    t.set_tag({"O_SA", ObserverKind::relational, false, p.size() <= 1});
    return t;
}

Transducer weak_anonymity(AlphabetPtr A, const SymbolSet& p) {
    // States are partial injections P ⇀ P, as sorted (from, to) lists.
    using Injection = std::vector<std::pair<Symbol, Symbol>>;
    Transducer t(A, A);
    std::map<Injection, State> ids;
    std::vector<Injection> maps;
    auto id_of = [&](const Injection& m) {
        auto [it, inserted] = ids.emplace(m, static_cast<State>(maps.size()));
        if (inserted) {
            maps.push_back(m);
            State s = t.add_state();
            t.set_final(s);
            check_state_limit(maps.size(), "weak anonymity observer");
        }
        return it->second;
    };
    t.set_initial(id_of({}));
    for (State s = 0; s < maps.size(); ++s) {
        const Injection m = maps[s];
        for (Symbol a = 0; a < A->size(); ++a) {
            if (!p.contains(a)) {
                t.add_transition(s, a, a, s);
                continue;
            }
            auto it = std::find_if(m.begin(), m.end(), [&](const auto& e) { return e.first == a; });
            if (it != m.end()) {
                t.add_transition(s, a, it->second, s);
                continue;
            }
            for (Symbol b : p) {
                bool used = std::any_of(m.begin(), m.end(), [&](const auto& e) { return e.second == b; });
                if (used)
                    continue;
                Injection next = m;
                next.emplace_back(a, b);
                std::sort(next.begin(), next.end());
                t.add_transition(s, a, b, id_of(next));
            }
        }
    }
    t.set_tag({"O_WA", ObserverKind::relational, false, p.size() <= 1});
    return t;
}

Nfa revocation_context(AlphabetPtr A, const SymbolSet& sigma) {
    SymbolSet r = A->with_role(Role::revoke);
    std::vector<Symbol> members(sigma.begin(), sigma.end());
    for (Symbol s : members)
        if (!r.contains(s))
            throw PreconditionError("'" + A->name(s) + "' is not a revocation symbol");
    // state = bitmask of the members of σ seen so far
    const std::size_t n = members.size();
    Nfa out(A);
    out.add_states(std::size_t{1} << n);
    out.set_initial(0);
    out.set_final(static_cast<State>((std::size_t{1} << n) - 1));
    for (State mask = 0; mask < (State{1} << n); ++mask)
        for (Symbol a = 0; a < A->size(); ++a) {
            if (!r.contains(a)) {
                out.add_transition(mask, a, mask);
                continue;
            }
            auto pos = std::find(members.begin(), members.end(), a);
            if (pos != members.end())
                out.add_transition(mask, a, mask | (State{1} << (pos - members.begin())));
        }
    return out;
}

SymbolSet legitimate_participants(const Alphabet& A, const SymbolSet& sigma) {
    SymbolSet p = A.with_role(Role::participant);
    for (Symbol r : sigma) {
        auto it = A.revoke_table().find(r);
        if (it != A.revoke_table().end())
            p = minus(p, it->second);
    }
    return p;
}

Transducer anonymity_observer(AnonymityKind kind, AlphabetPtr A) {
    SymbolSet p = A->with_role(Role::participant);
    if (kind == AnonymityKind::SA)
        return strong_anonymity(A, p);
    if (kind == AnonymityKind::WA)
        return weak_anonymity(A, p);

    SymbolSet r = A->with_role(Role::revoke);
    for (Symbol x : r)
        if (!A->revoke_table().contains(x))
            throw PreconditionError("no revocation set P(" + A->name(x) + ")");
    SymbolSet seen;
    for (const auto& [x, ps] : A->revoke_table())
        for (Symbol q : ps)
            if (!seen.insert(q).second)
                throw PreconditionError("revocation sets overlap on '" + A->name(q) + "'");
    std::vector<Symbol> rs(r.begin(), r.end());
    std::vector<Transducer> parts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rs.size()); ++mask) {
        SymbolSet sigma;
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (mask & (std::size_t{1} << i))
                sigma.insert(rs[i]);
        SymbolSet ps = legitimate_participants(*A, sigma);
        Transducer base = kind == AnonymityKind::CSA ? strong_anonymity(A, ps) : weak_anonymity(A, ps);
        parts.push_back(restrict_domain(base, revocation_context(A, sigma)));
    }
    Transducer t = union_t(parts);
    t.set_tag({kind == AnonymityKind::CSA ? "O_CSA" : "O_CWA", ObserverKind::relational, false, false});
    return t;
}

} // namespace rif

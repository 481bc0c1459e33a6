#pragma once

// Brute-force predicates over finite trace sets, written directly from the
// quantified definitions (β, α split points and witness traces), independent
// of the transducer templates.

#include <set>

#include "rif/alphabet.hpp"
#include "rif/observers.hpp"

namespace bsp_oracle {

using rif::BspKind;
using rif::Symbol;
using rif::SymbolSet;
using rif::Word;
using Traces = std::set<Word>;

struct Roles {
    SymbolSet v, c, n, vp, cp, np, x;
};

inline Word proj(const Word& w, const SymbolSet& keep) {
    Word out;
    for (Symbol a : w)
        if (keep.contains(a))
            out.push_back(a);
    return out;
}

inline bool none_of(const Word& w, const SymbolSet& s, std::size_t from = 0, std::size_t to = SIZE_MAX) {
    for (std::size_t i = from; i < std::min(to, w.size()); ++i)
        if (s.contains(w[i]))
            return false;
    return true;
}

inline Word slice(const Word& w, std::size_t from, std::size_t to = SIZE_MAX) {
    to = std::min(to, w.size());
    return from >= to ? Word{} : Word(w.begin() + from, w.begin() + to);
}

inline Word cat(std::initializer_list<Word> parts) {
    Word out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

class Checker {
public:
    Checker(const Traces& tr, Roles r) : tr_(tr), r_(std::move(r)) {
        vc_ = join(r_.v, r_.c);
        vn_ = join(r_.v, r_.n);
    }

    bool holds(BspKind kind) const {
        switch (kind) {
        case BspKind::SR: return sr();
        case BspKind::R: return r();
        case BspKind::SD: return deletion(false);
        case BspKind::D: return deletion(true);
        case BspKind::BSD: return bsd();
        case BspKind::FCD: return fcd();
        case BspKind::SI: return insertion(false, false);
        case BspKind::I: return insertion(true, false);
        case BspKind::BSI: return bsi(false);
        case BspKind::FCI: return fci(false);
        case BspKind::SIA: return insertion(false, true);
        case BspKind::IA: return insertion(true, true);
        case BspKind::BSIA: return bsi(true);
        case BspKind::FCIA: return fci(true);
        }
        return false;
    }

private:
    static SymbolSet join(const SymbolSet& a, const SymbolSet& b) {
        SymbolSet out = a;
        out.insert(b.begin(), b.end());
        return out;
    }

    bool in(const Word& w) const { return tr_.contains(w); }

    bool sr() const {
        for (const auto& t : tr_)
            if (!in(proj(t, vn_)))
                return false;
        return true;
    }

    bool r() const {
        for (const auto& t : tr_) {
            bool found = false;
            for (const auto& t2 : tr_)
                if (proj(t2, r_.c).empty() && proj(t2, r_.v) == proj(t, r_.v))
                    found = true;
            if (!found)
                return false;
        }
        return true;
    }

    // ∃ β'α' ∈ Tr: β'|VC = β|VC, α'|VC = α|VC, α'|C = ⟨⟩, optionally with c between them
    bool exists_perturbed(const Word& beta, std::optional<Symbol> c, const Word& alpha) const {
        for (const auto& t : tr_)
            for (std::size_t i = 0; i <= t.size(); ++i) {
                Word b2 = slice(t, 0, i);
                std::size_t rest = i;
                if (c) {
                    if (i >= t.size() || t[i] != *c)
                        continue;
                    rest = i + 1;
                }
                Word a2 = slice(t, rest);
                if (proj(b2, vc_) == proj(beta, vc_) && proj(a2, vc_) == proj(alpha, vc_) && none_of(a2, r_.c))
                    return true;
            }
        return false;
    }

    bool deletion(bool perturbed) const {
        for (const auto& w : tr_)
            for (std::size_t p = 0; p < w.size(); ++p) {
                if (!r_.c.contains(w[p]) || !none_of(w, r_.c, p + 1))
                    continue;
                Word beta = slice(w, 0, p), alpha = slice(w, p + 1);
                bool ok = perturbed ? exists_perturbed(beta, std::nullopt, alpha) : in(cat({beta, alpha}));
                if (!ok)
                    return false;
            }
        return true;
    }

    bool admissible(const Word& beta, Symbol c) const {
        for (const auto& g : tr_)
            if (!g.empty() && g.back() == c && proj(slice(g, 0, g.size() - 1), r_.x) == proj(beta, r_.x))
                return true;
        return false;
    }

    bool insertion(bool perturbed, bool adm) const {
        for (const auto& w : tr_)
            for (std::size_t i = 0; i <= w.size(); ++i) {
                if (!none_of(w, r_.c, i))
                    continue;
                Word beta = slice(w, 0, i), alpha = slice(w, i);
                for (Symbol c : r_.c) {
                    if (adm && !admissible(beta, c))
                        continue;
                    bool ok = perturbed ? exists_perturbed(beta, c, alpha) : in(cat({beta, {c}, alpha}));
                    if (!ok)
                        return false;
                }
            }
        return true;
    }

    // ∃ prefix·α' ∈ Tr with α'|V = α|V and α'|C = ⟨⟩
    bool exists_tail(const Word& prefix, const Word& alpha) const {
        for (const auto& t : tr_) {
            if (t.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), t.begin()))
                continue;
            Word a2 = slice(t, prefix.size());
            if (none_of(a2, r_.c) && proj(a2, r_.v) == proj(alpha, r_.v))
                return true;
        }
        return false;
    }

    // ∃ prefix·δ'·v·α' ∈ Tr with δ' ∈ N'*, α'|V = α|V, α'|C = ⟨⟩
    bool exists_corrected(const Word& prefix, Symbol v, const Word& alpha) const {
        for (const auto& t : tr_) {
            if (t.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), t.begin()))
                continue;
            for (std::size_t j = prefix.size(); j < t.size(); ++j) {
                if (t[j] == v) {
                    Word a2 = slice(t, j + 1);
                    if (none_of(a2, r_.c) && proj(a2, r_.v) == proj(alpha, r_.v))
                        return true;
                }
                if (!r_.np.contains(t[j]))
                    break;
            }
        }
        return false;
    }

    bool bsd() const {
        for (const auto& w : tr_)
            for (std::size_t p = 0; p < w.size(); ++p) {
                if (!r_.c.contains(w[p]) || !none_of(w, r_.c, p + 1))
                    continue;
                if (!exists_tail(slice(w, 0, p), slice(w, p + 1)))
                    return false;
            }
        return true;
    }

    bool fcd() const {
        for (const auto& w : tr_)
            for (std::size_t p = 0; p + 1 < w.size(); ++p) {
                if (!r_.cp.contains(w[p]) || !r_.vp.contains(w[p + 1]) || !none_of(w, r_.c, p + 2))
                    continue;
                if (!exists_corrected(slice(w, 0, p), w[p + 1], slice(w, p + 2)))
                    return false;
            }
        return true;
    }

    bool bsi(bool adm) const {
        for (const auto& w : tr_)
            for (std::size_t i = 0; i <= w.size(); ++i) {
                if (!none_of(w, r_.c, i))
                    continue;
                Word beta = slice(w, 0, i), alpha = slice(w, i);
                for (Symbol c : r_.c) {
                    if (adm && !admissible(beta, c))
                        continue;
                    if (!exists_tail(cat({beta, {c}}), alpha))
                        return false;
                }
            }
        return true;
    }

    bool fci(bool adm) const {
        for (const auto& w : tr_)
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (!r_.vp.contains(w[i]) || !none_of(w, r_.c, i + 1))
                    continue;
                Word beta = slice(w, 0, i), alpha = slice(w, i + 1);
                for (Symbol c : r_.cp) {
                    if (adm && !admissible(beta, c))
                        continue;
                    if (!exists_corrected(cat({beta, {c}}), w[i], alpha))
                        return false;
                }
            }
        return true;
    }

    const Traces& tr_;
    Roles r_;
    SymbolSet vc_, vn_;
};

} // namespace bsp_oracle

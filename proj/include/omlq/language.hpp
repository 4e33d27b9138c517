#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>

#include "omlq/logic.hpp"

namespace omlq {

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};
class NotFiniteSupport : public Error {
public:
    using Error::Error;
};
class NotFiniteRange : public Error {
public:
    using Error::Error;
};
class ErasingImageUnbounded : public Error {
public:
    using Error::Error;
};

inline constexpr const char* kEpsilonToken = "@eps";

/// Words are sequences of symbol indices into an Alphabet; the empty
/// vector is the empty word.
using Word = std::vector<std::int32_t>;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> syms) : syms_(std::move(syms)) {
        if (syms_.empty()) throw AlphabetMismatch("alphabet must be non-empty");
        for (std::size_t i = 0; i < syms_.size(); ++i) {
            if (syms_[i] == kEpsilonToken)
                throw AlphabetMismatch("'@eps' is reserved and cannot be an alphabet symbol");
            if (!index_.emplace(syms_[i], static_cast<std::int32_t>(i)).second)
                throw AlphabetMismatch("duplicate alphabet symbol '" + syms_[i] + "'");
        }
    }

    std::size_t size() const { return syms_.size(); }
    const std::string& sym(std::int32_t i) const { return syms_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& symbols() const { return syms_; }
    std::optional<std::int32_t> index_of(const std::string& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.syms_ == b.syms_; }

    /// Parses a space-separated word; "" denotes the empty word.
    Word parse_word(const std::string& text) const {
        Word w;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            auto i = index_of(tok);
            if (!i) throw AlphabetMismatch("unknown symbol '" + tok + "'");
            w.push_back(*i);
        }
        return w;
    }

    std::string format_word(const Word& w) const {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out += ' ';
            out += sym(w[i]);
        }
        return out;
    }

private:
    std::vector<std::string> syms_;
    std::unordered_map<std::string, std::int32_t> index_;
};

/// Symbol-to-word mapping between alphabets, extended to words
/// homomorphically.
struct SymbolMap {
    Alphabet from;
    Alphabet to;
    std::vector<Word> images;  // indexed by `from` symbol

    bool non_erasing() const {
        for (const auto& w : images)
            if (w.empty()) return false;
        return true;
    }
    Word apply(const Word& s) const {
        Word out;
        for (auto i : s) {
            const Word& im = images.at(static_cast<std::size_t>(i));
            out.insert(out.end(), im.begin(), im.end());
        }
        return out;
    }
};

struct LangBacking {
    enum class Kind { Table, Automaton, Regex, Derived };
    virtual ~LangBacking() = default;
    virtual Elem eval(const Word&) const = 0;
    virtual Kind kind() const = 0;
};

class FiniteTableBacking final : public LangBacking {
public:
    FiniteTableBacking(const OrthoLattice* l, std::map<Word, std::uint16_t> entries)
        : lattice_(l), entries_(std::move(entries)) {
        for (auto it = entries_.begin(); it != entries_.end();) {
            if (it->second == l->zero().idx)
                it = entries_.erase(it);
            else
                ++it;
        }
    }
    Elem eval(const Word& s) const override {
        auto it = entries_.find(s);
        return it == entries_.end() ? lattice_->zero() : lattice_->elem(it->second);
    }
    Kind kind() const override { return Kind::Table; }
    const std::map<Word, std::uint16_t>& entries() const { return entries_; }

private:
    const OrthoLattice* lattice_;
    std::map<Word, std::uint16_t> entries_;
};

/// An assignment of lattice truth values to words, behind one total
/// evaluation interface. Immutable; evaluation is pure.
class LValuedLanguage {
public:
    LValuedLanguage() = default;

    static LValuedLanguage finite_table(std::shared_ptr<const OrthoLattice> lattice,
                                        Alphabet alphabet,
                                        const std::vector<std::pair<Word, Elem>>& entries) {
        std::map<Word, std::uint16_t> table;
        for (const auto& [w, v] : entries) {
            lattice->check(v);
            for (auto i : w)
                if (i < 0 || static_cast<std::size_t>(i) >= alphabet.size())
                    throw AlphabetMismatch("table word contains an out-of-alphabet symbol");
            table[w] = v.idx;
        }
        LValuedLanguage a;
        a.lattice_ = std::move(lattice);
        a.alphabet_ = std::move(alphabet);
        a.backing_ = std::make_shared<FiniteTableBacking>(a.lattice_.get(), std::move(table));
        return a;
    }

    static LValuedLanguage from_backing(std::shared_ptr<const OrthoLattice> lattice,
                                        Alphabet alphabet,
                                        std::shared_ptr<const LangBacking> backing,
                                        bool exact = true) {
        LValuedLanguage a;
        a.lattice_ = std::move(lattice);
        a.alphabet_ = std::move(alphabet);
        a.backing_ = std::move(backing);
        a.exact_ = exact;
        return a;
    }

    bool valid() const { return backing_ != nullptr; }
    const std::shared_ptr<const OrthoLattice>& lattice() const { return lattice_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const LangBacking& backing() const { return *backing_; }
    std::shared_ptr<const LangBacking> backing_ptr() const { return backing_; }

    /// False when the value is a lower bound (erasing-homomorphism image
    /// truncated at its length bound) rather than the exact supremum.
    bool exact() const { return exact_; }

    Elem eval(const Word& s) const {
        for (auto i : s)
            if (i < 0 || static_cast<std::size_t>(i) >= alphabet_.size())
                throw AlphabetMismatch("word contains an out-of-alphabet symbol");
        return backing_->eval(s);
    }

    const FiniteTableBacking* as_table() const {
        return dynamic_cast<const FiniteTableBacking*>(backing_.get());
    }

private:
    std::shared_ptr<const OrthoLattice> lattice_;
    Alphabet alphabet_;
    std::shared_ptr<const LangBacking> backing_;
    bool exact_ = true;
};

/// A singleton-support value assignment; the height must be non-zero.
struct LValuedPoint {
    Word support;
    Elem height;

    LValuedPoint(Word s, Elem h) : support(std::move(s)), height(h) {
        if (h.owner == nullptr || h == h.owner->zero())
            throw Error("an l-valued point needs a non-zero height");
    }
};

/// Degree of membership of a point in a language: height -> A(support).
inline Elem point_membership(ImplKind kind, const LValuedPoint& p, const LValuedLanguage& a) {
    return implies(kind, p.height, a.eval(p.support));
}

namespace detail {

inline void require_compatible(const LValuedLanguage& a, const LValuedLanguage& b) {
    if (a.lattice().get() != b.lattice().get())
        throw CrossLattice("languages live in different lattices");
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetMismatch("languages use different alphabets");
}

template <typename F>
class FnBacking final : public LangBacking {
public:
    explicit FnBacking(F f) : f_(std::move(f)) {}
    Elem eval(const Word& s) const override { return f_(s); }
    Kind kind() const override { return Kind::Derived; }

private:
    F f_;
};

template <typename F>
LValuedLanguage derived(const LValuedLanguage& proto, F f, bool exact) {
    return LValuedLanguage::from_backing(proto.lattice(), proto.alphabet(),
                                         std::make_shared<FnBacking<F>>(std::move(f)), exact);
}

// Join of all composition values of the suffix s[i..): each composition
// splits the suffix into non-empty factors and meets their values. The
// per-suffix antichain of achievable meets is kept set-valued so no join
// collapses before a later meet.
inline void star_suffix_values(const LValuedLanguage& a, const Word& s, std::size_t i,
                               std::vector<std::optional<std::vector<std::uint16_t>>>& memo) {
    if (memo[i]) return;
    const OrthoLattice& l = *a.lattice();
    std::vector<std::uint16_t> acc;
    auto push = [&](std::uint16_t v) {
        if (v == l.zero().idx) return;
        for (auto w : acc)
            if (l.leq(l.elem(v), l.elem(w))) return;
        std::erase_if(acc, [&](std::uint16_t w) { return l.leq(l.elem(w), l.elem(v)); });
        acc.push_back(v);
    };
    if (i == s.size()) {
        push(l.one().idx);
    } else {
        for (std::size_t k = i + 1; k <= s.size(); ++k) {
            Elem head = a.eval(Word(s.begin() + static_cast<std::ptrdiff_t>(i),
                                    s.begin() + static_cast<std::ptrdiff_t>(k)));
            if (head == l.zero()) continue;
            star_suffix_values(a, s, k, memo);
            for (auto tail : *memo[k]) push(l.meet(head, l.elem(tail)).idx);
        }
    }
    memo[i] = std::move(acc);
}

}  // namespace detail

inline LValuedLanguage scalar(Elem a, const LValuedLanguage& x) {
    x.lattice()->check(a);
    return detail::derived(
        x, [a, x](const Word& s) { return a.owner->meet(a, x.eval(s)); }, x.exact());
}

inline LValuedLanguage complement(const LValuedLanguage& x) {
    return detail::derived(
        x, [x](const Word& s) { return x.lattice()->ortho(x.eval(s)); }, x.exact());
}

inline LValuedLanguage intersect(const LValuedLanguage& x, const LValuedLanguage& y) {
    detail::require_compatible(x, y);
    return detail::derived(
        x, [x, y](const Word& s) { return x.lattice()->meet(x.eval(s), y.eval(s)); },
        x.exact() && y.exact());
}

inline LValuedLanguage unite(const LValuedLanguage& x, const LValuedLanguage& y) {
    detail::require_compatible(x, y);
    return detail::derived(
        x, [x, y](const Word& s) { return x.lattice()->join(x.eval(s), y.eval(s)); },
        x.exact() && y.exact());
}

/// (A.B)(s) = join over the |s|+1 splits s = uv of A(u) and B(v).
inline LValuedLanguage concat(const LValuedLanguage& x, const LValuedLanguage& y) {
    detail::require_compatible(x, y);
    return detail::derived(
        x,
        [x, y](const Word& s) {
            const OrthoLattice& l = *x.lattice();
            Elem acc = l.zero();
            for (std::size_t k = 0; k <= s.size(); ++k) {
                Word u(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
                Word v(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
                acc = l.join(acc, l.meet(x.eval(u), y.eval(v)));
            }
            return acc;
        },
        x.exact() && y.exact());
}

/// A*(eps) = 1; elsewhere the join over compositions into non-empty
/// factors of the meet of factor values. Compositions with empty factors
/// only meet in A(eps) once more and never increase a term, so the
/// non-empty enumeration is exact.
inline LValuedLanguage kleene_star(const LValuedLanguage& x) {
    return detail::derived(
        x,
        [x](const Word& s) {
            const OrthoLattice& l = *x.lattice();
            if (s.empty()) return l.one();
            std::vector<std::optional<std::vector<std::uint16_t>>> memo(s.size() + 1);
            detail::star_suffix_values(x, s, 0, memo);
            Elem acc = l.zero();
            for (auto v : *memo[0]) acc = l.join(acc, l.elem(v));
            return acc;
        },
        x.exact());
}

/// preimage(h, B)(s) = B(h(s)); always exact.
inline LValuedLanguage preimage(const SymbolMap& h, const LValuedLanguage& b) {
    if (!(h.to == b.alphabet()))
        throw AlphabetMismatch("homomorphism target alphabet does not match the language");
    auto lat = b.lattice();
    auto backing = std::make_shared<detail::FnBacking<std::function<Elem(const Word&)>>>(
        [h, b](const Word& s) { return b.eval(h.apply(s)); });
    return LValuedLanguage::from_backing(lat, h.from, backing, b.exact());
}

/// image(h, A)(t) = join of A(s) over h(s) = t. Exact for non-erasing h
/// (only |s| <= |t| can match); for erasing h the preimage search is cut
/// at `erasing_len_bound` and the result is a lower bound, flagged via
/// exact() = false.
inline LValuedLanguage image(const SymbolMap& h, const LValuedLanguage& a,
                             std::size_t erasing_len_bound = 12, bool require_exact = false) {
    if (!(h.from == a.alphabet()))
        throw AlphabetMismatch("homomorphism source alphabet does not match the language");
    const bool nonerasing = h.non_erasing();
    if (!nonerasing && require_exact)
        throw ErasingImageUnbounded("image under an erasing mapping cannot be computed exactly");
    auto lat = a.lattice();
    auto backing = std::make_shared<detail::FnBacking<std::function<Elem(const Word&)>>>(
        [h, a, nonerasing, erasing_len_bound](const Word& t) {
            const OrthoLattice& l = *a.lattice();
            const std::size_t max_len = nonerasing ? t.size() : std::max(erasing_len_bound, t.size());
            Elem acc = l.zero();
            Word s;
            // DFS over source words whose image is still a prefix of t.
            auto rec = [&](auto&& self, std::size_t consumed) -> void {
                if (consumed == t.size()) acc = l.join(acc, a.eval(s));
                if (s.size() == max_len) return;
                for (std::int32_t sym = 0; sym < static_cast<std::int32_t>(h.from.size()); ++sym) {
                    const Word& im = h.images[static_cast<std::size_t>(sym)];
                    if (im.size() > t.size() - consumed) continue;
                    if (!std::equal(im.begin(), im.end(),
                                    t.begin() + static_cast<std::ptrdiff_t>(consumed)))
                        continue;
                    s.push_back(sym);
                    self(self, consumed + im.size());
                    s.pop_back();
                }
            };
            rec(rec, 0);
            return acc;
        });
    return LValuedLanguage::from_backing(lat, h.to, backing, a.exact() && nonerasing);
}

/// Cuts of a finite-support language at a level lambda.
struct ThresholdCut {
    std::vector<Word> down;  // A(s) not <= lambda; always within the support
    std::vector<Word> up;    // support words with A(s) not >= lambda
    bool up_includes_rest;   // true iff every word outside the support (value 0)
                             // also fails A(s) >= lambda, i.e. lambda != 0
    LValuedLanguage clamp;   // values <= lambda zeroed, others kept
};

inline ThresholdCut thresholds(const LValuedLanguage& a, Elem lambda) {
    a.lattice()->check(lambda);
    const FiniteTableBacking* table = a.as_table();
    if (table == nullptr)
        throw NotFiniteSupport("thresholds need a finite-support (table-backed) language");
    const OrthoLattice& l = *a.lattice();
    ThresholdCut cut;
    std::vector<std::pair<Word, Elem>> kept;
    for (const auto& [w, v] : table->entries()) {
        Elem e = l.elem(v);
        if (!l.leq(e, lambda)) {
            cut.down.push_back(w);
            kept.push_back({w, e});
        }
        if (!l.leq(lambda, e)) cut.up.push_back(w);
    }
    cut.up_includes_rest = lambda != l.zero();
    cut.clamp = LValuedLanguage::finite_table(a.lattice(), a.alphabet(), kept);
    return cut;
}

namespace detail {

template <typename F>
void for_each_word(const Alphabet& alpha, int max_len, F f) {
    Word w;
    auto rec = [&](auto&& self) -> void {
        f(w);
        if (static_cast<int>(w.size()) == max_len) return;
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(alpha.size()); ++s) {
            w.push_back(s);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
}

}  // namespace detail

/// Meet over all words of length <= max_len of A(s) <-> B(s). An upper
/// bound on the (infinite-meet) equivalence degree.
inline Elem equiv_degree_bounded(const LValuedLanguage& a, const LValuedLanguage& b,
                                 ImplKind kind, int max_len) {
    detail::require_compatible(a, b);
    const OrthoLattice& l = *a.lattice();
    Elem acc = l.one();
    detail::for_each_word(a.alphabet(), max_len, [&](const Word& w) {
        if (acc == l.zero()) return;
        acc = l.meet(acc, biimplies(kind, a.eval(w), b.eval(w)));
    });
    return acc;
}

}  // namespace omlq

#pragma once

#include "omlq/automaton.hpp"

namespace omlq {

class RegexParseError : public Error {
public:
    using Error::Error;
};

/// Node of an l-valued regular expression. Nodes are immutable and
/// shared as a DAG; evaluation is defined on the unfolded tree, so
/// sharing is unobservable.
struct RegexNode {
    enum class Op { Empty, Eps, Sym, Scalar, Union, Concat, Star };

    Op op;
    std::int32_t sym = -1;          // Op::Sym
    std::uint16_t scalar = 0;       // Op::Scalar
    std::shared_ptr<const RegexNode> left, right;  // children
};

struct Regex {
    std::shared_ptr<const OrthoLattice> lattice;
    Alphabet alphabet;
    std::shared_ptr<const RegexNode> root;
};

/// Interning factory: structurally identical nodes become one object,
/// which keeps the state-elimination recursion polynomial in size.
class RegexFactory {
public:
    RegexFactory(std::shared_ptr<const OrthoLattice> lattice, Alphabet alphabet)
        : lattice_(std::move(lattice)), alphabet_(std::move(alphabet)) {}

    using P = std::shared_ptr<const RegexNode>;

    P empty() { return intern({RegexNode::Op::Empty}); }
    P eps() { return intern({RegexNode::Op::Eps}); }
    P sym(std::int32_t s) {
        if (s < 0 || static_cast<std::size_t>(s) >= alphabet_.size())
            throw AlphabetMismatch("regex symbol outside the alphabet");
        RegexNode n{RegexNode::Op::Sym};
        n.sym = s;
        return intern(std::move(n));
    }
    P scalar(Elem a, P child) {
        lattice_->check(a);
        RegexNode n{RegexNode::Op::Scalar};
        n.scalar = a.idx;
        n.left = std::move(child);
        return intern(std::move(n));
    }
    P unite(P a, P b) {
        RegexNode n{RegexNode::Op::Union};
        n.left = std::move(a);
        n.right = std::move(b);
        return intern(std::move(n));
    }
    P concat(P a, P b) {
        RegexNode n{RegexNode::Op::Concat};
        n.left = std::move(a);
        n.right = std::move(b);
        return intern(std::move(n));
    }
    P star(P c) {
        RegexNode n{RegexNode::Op::Star};
        n.left = std::move(c);
        return intern(std::move(n));
    }

    Regex wrap(P root) const { return Regex{lattice_, alphabet_, std::move(root)}; }
    const std::shared_ptr<const OrthoLattice>& lattice() const { return lattice_; }
    const Alphabet& alphabet() const { return alphabet_; }

private:
    struct Key {
        RegexNode::Op op;
        std::int32_t sym;
        std::uint16_t scalar;
        const RegexNode* l;
        const RegexNode* r;
        bool operator<(const Key& o) const {
            return std::tie(op, sym, scalar, l, r) < std::tie(o.op, o.sym, o.scalar, o.l, o.r);
        }
    };
    P intern(RegexNode n) {
        Key k{n.op, n.sym, n.scalar, n.left.get(), n.right.get()};
        auto it = pool_.find(k);
        if (it != pool_.end()) return it->second;
        auto p = std::make_shared<const RegexNode>(std::move(n));
        pool_.emplace(k, p);
        return p;
    }

    std::shared_ptr<const OrthoLattice> lattice_;
    Alphabet alphabet_;
    std::map<Key, P> pool_;
};

namespace detail {

// Memoized evaluation over one word. Star spans keep the antichain of
// composition meet-values so no join collapses before an outer meet.
class RegexEval {
public:
    RegexEval(const Regex& r, const Word& s) : r_(r), s_(s), l_(*r.lattice) {}

    Elem value() { return val(r_.root.get(), 0, s_.size()); }

private:
    Elem val(const RegexNode* n, std::size_t i, std::size_t j) {
        auto key = std::make_tuple(n, i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return l_.elem(it->second);
        Elem out = l_.zero();
        switch (n->op) {
            case RegexNode::Op::Empty:
                break;
            case RegexNode::Op::Eps:
                out = i == j ? l_.one() : l_.zero();
                break;
            case RegexNode::Op::Sym:
                out = (j == i + 1 && s_[i] == n->sym) ? l_.one() : l_.zero();
                break;
            case RegexNode::Op::Scalar:
                out = l_.meet(l_.elem(n->scalar), val(n->left.get(), i, j));
                break;
            case RegexNode::Op::Union:
                out = l_.join(val(n->left.get(), i, j), val(n->right.get(), i, j));
                break;
            case RegexNode::Op::Concat:
                for (std::size_t k = i; k <= j; ++k)
                    out = l_.join(out, l_.meet(val(n->left.get(), i, k), val(n->right.get(), k, j)));
                break;
            case RegexNode::Op::Star: {
                if (i == j) {
                    out = l_.one();
                } else {
                    for (auto v : star_tails(n, i, j)) out = l_.join(out, l_.elem(v));
                }
                break;
            }
        }
        memo_.emplace(key, out.idx);
        return out;
    }

    // Antichain of meet-values over compositions of the span into
    // non-empty factors of the star's child.
    const std::vector<std::uint16_t>& star_tails(const RegexNode* n, std::size_t i, std::size_t j) {
        auto key = std::make_tuple(n, i, j);
        auto it = star_memo_.find(key);
        if (it != star_memo_.end()) return it->second;
        ValSet acc;
        if (i == j) {
            acc.insert(l_, l_.one().idx);
        } else {
            for (std::size_t k = i + 1; k <= j; ++k) {
                Elem head = val(n->left.get(), i, k);
                if (head == l_.zero()) continue;
                for (auto tail : star_tails(n, k, j)) acc.insert(l_, l_.meet(head, l_.elem(tail)).idx);
            }
        }
        return star_memo_.emplace(key, std::move(acc.vals)).first->second;
    }

    const Regex& r_;
    const Word& s_;
    const OrthoLattice& l_;
    std::map<std::tuple<const RegexNode*, std::size_t, std::size_t>, std::uint16_t> memo_;
    std::map<std::tuple<const RegexNode*, std::size_t, std::size_t>, std::vector<std::uint16_t>>
        star_memo_;
};

}  // namespace detail

inline Elem regex_eval(const Regex& r, const Word& s) {
    for (auto i : s)
        if (i < 0 || static_cast<std::size_t>(i) >= r.alphabet.size())
            throw AlphabetMismatch("word contains an out-of-alphabet symbol");
    return detail::RegexEval(r, s).value();
}

class RegexBacking final : public LangBacking {
public:
    explicit RegexBacking(Regex r) : r_(std::move(r)) {}
    Elem eval(const Word& s) const override { return regex_eval(r_, s); }
    Kind kind() const override { return Kind::Regex; }
    const Regex& regex() const { return r_; }

private:
    Regex r_;
};

inline LValuedLanguage language_of(Regex r) {
    auto lat = r.lattice;
    Alphabet alpha = r.alphabet;
    return LValuedLanguage::from_backing(lat, alpha, std::make_shared<RegexBacking>(std::move(r)));
}

/// Scalars occurring in the expression.
inline ElemSet lambda_set(const Regex& r) {
    std::vector<std::uint16_t> vals;
    std::set<const RegexNode*> seen;
    auto rec = [&](auto&& self, const RegexNode* n) -> void {
        if (n == nullptr || !seen.insert(n).second) return;
        if (n->op == RegexNode::Op::Scalar) vals.push_back(n->scalar);
        self(self, n->left.get());
        self(self, n->right.get());
    };
    rec(rec, r.root.get());
    return ElemSet(r.lattice.get(), std::move(vals));
}

inline Elem delta_gamma(const Regex& r, std::size_t cap = 20) {
    return r.lattice->commutator(lambda_set(r), cap);
}

/// Structural substitution of every symbol by its image word.
inline Regex regex_hom(const SymbolMap& h, const Regex& r) {
    if (!(h.from == r.alphabet))
        throw AlphabetMismatch("mapping source alphabet does not match the expression");
    RegexFactory f(r.lattice, h.to);
    std::map<const RegexNode*, RegexFactory::P> done;
    auto rec = [&](auto&& self, const std::shared_ptr<const RegexNode>& n) -> RegexFactory::P {
        auto it = done.find(n.get());
        if (it != done.end()) return it->second;
        RegexFactory::P out;
        switch (n->op) {
            case RegexNode::Op::Empty:
                out = f.empty();
                break;
            case RegexNode::Op::Eps:
                out = f.eps();
                break;
            case RegexNode::Op::Sym: {
                const Word& im = h.images[static_cast<std::size_t>(n->sym)];
                if (im.empty()) {
                    out = f.eps();
                } else {
                    out = f.sym(im[0]);
                    for (std::size_t i = 1; i < im.size(); ++i) out = f.concat(out, f.sym(im[i]));
                }
                break;
            }
            case RegexNode::Op::Scalar:
                out = f.scalar(r.lattice->elem(n->scalar), self(self, n->left));
                break;
            case RegexNode::Op::Union:
                out = f.unite(self(self, n->left), self(self, n->right));
                break;
            case RegexNode::Op::Concat:
                out = f.concat(self(self, n->left), self(self, n->right));
                break;
            case RegexNode::Op::Star:
                out = f.star(self(self, n->left));
                break;
        }
        done.emplace(n.get(), out);
        return out;
    };
    return f.wrap(rec(rec, r.root));
}

struct KleeneRep {
    Regex regex;
    std::vector<std::int32_t> pivot_order;
};

/// The no-intermediate-states expression between two states: the sum of
/// value-scaled symbols, plus the empty word when u == v.
inline RegexFactory::P kleene_base_node(RegexFactory& f, const LAutomaton& m, std::int32_t u,
                                        std::int32_t v) {
    const OrthoLattice& l = *m.lattice();
    RegexFactory::P acc = u == v ? f.eps() : nullptr;
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s) {
        Elem d = m.delta(u, s, v);
        if (d == l.zero()) continue;
        auto term = f.scalar(d, f.sym(s));
        acc = acc == nullptr ? term : f.unite(acc, term);
    }
    return acc == nullptr ? f.empty() : acc;
}

inline Regex kleene_base_entry(const LAutomaton& m, std::int32_t u, std::int32_t v) {
    RegexFactory f(m.lattice(), m.alphabet());
    return f.wrap(kleene_base_node(f, m, u, v));
}

/// State-elimination representation of an automaton as an expression:
/// alpha[k][u][v] describes the paths from u to v whose intermediate
/// states lie among the first k pivots; the top-level sum scales each
/// (u,v) entry by initial(u) and terminal(v). Entries are shared DAG
/// nodes, collapsing the exponential unfolding.
inline KleeneRep kleene_representation(const LAutomaton& m,
                                       std::vector<std::int32_t> pivot_order = {}) {
    if (!m.eps_free()) throw Error("expression extraction needs an automaton without empty moves");
    const OrthoLattice& l = *m.lattice();
    const std::size_t n = m.state_count();
    if (pivot_order.empty()) {
        pivot_order.resize(n);
        for (std::size_t i = 0; i < n; ++i) pivot_order[i] = static_cast<std::int32_t>(i);
    }
    {
        std::vector<std::int32_t> sorted = pivot_order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            if (i >= sorted.size() || sorted[i] != static_cast<std::int32_t>(i))
                throw Error("pivot order must be a permutation of the states");
    }

    RegexFactory f(m.lattice(), m.alphabet());
    std::vector<RegexFactory::P> cur(n * n), next(n * n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            cur[u * n + v] =
                kleene_base_node(f, m, static_cast<std::int32_t>(u), static_cast<std::int32_t>(v));

    for (auto qi : pivot_order) {
        const std::size_t q = static_cast<std::size_t>(qi);
        RegexFactory::P loop = f.star(cur[q * n + q]);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                next[u * n + v] = f.unite(
                    cur[u * n + v],
                    f.concat(f.concat(cur[u * n + q], loop), cur[q * n + v]));
        std::swap(cur, next);
    }

    RegexFactory::P total;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            Elem w = l.meet(m.initial(static_cast<std::int32_t>(u)),
                            m.terminal(static_cast<std::int32_t>(v)));
            RegexFactory::P term = f.scalar(w, cur[u * n + v]);
            total = total == nullptr ? term : f.unite(total, term);
        }
    if (total == nullptr) total = f.empty();
    return KleeneRep{f.wrap(total), std::move(pivot_order)};
}

// ---------------------------------------------------------------------------
// Text syntax: %0 empty, @ epsilon, bare names symbols, <elem> scalar
// prefix, + union, . or juxtaposition concatenation, postfix *,
// parentheses. Precedence: * over . over +.

namespace detail {

class RegexParser {
public:
    RegexParser(std::string_view text, RegexFactory& f) : text_(text), f_(f) {}

    RegexFactory::P parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw RegexParseError("trailing input in expression");
        return e;
    }

private:
    RegexFactory::P expr() {
        auto e = term();
        while (true) {
            skip_ws();
            if (!eat('+')) return e;
            e = f_.unite(e, term());
        }
    }
    RegexFactory::P term() {
        auto e = factor();
        while (true) {
            skip_ws();
            if (eat('.')) {
                e = f_.concat(e, factor());
                continue;
            }
            if (pos_ < text_.size() &&
                (text_[pos_] == '(' || text_[pos_] == '<' || text_[pos_] == '@' ||
                 text_[pos_] == '%' || is_name_char(text_[pos_]))) {
                e = f_.concat(e, factor());
                continue;
            }
            return e;
        }
    }
    RegexFactory::P factor() {
        skip_ws();
        if (eat('<')) {
            std::string name = until('>');
            auto child = factor();
            return f_.scalar(resolve_elem(*f_.lattice(), name), child);
        }
        auto e = primary();
        while (true) {
            skip_ws();
            if (eat('*'))
                e = f_.star(e);
            else
                return e;
        }
    }
    RegexFactory::P primary() {
        skip_ws();
        if (eat('(')) {
            auto e = expr();
            skip_ws();
            if (!eat(')')) throw RegexParseError("expected ')'");
            return e;
        }
        if (eat('@')) return f_.eps();
        if (eat('%')) {
            if (!eat('0')) throw RegexParseError("expected '%0'");
            return f_.empty();
        }
        std::string name = name_token();
        if (name.empty()) throw RegexParseError("expected a symbol, '@', '%0' or '('");
        auto idx = f_.alphabet().index_of(name);
        if (!idx) throw RegexParseError("unknown symbol '" + name + "'");
        return f_.sym(*idx);
    }

    static bool is_name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '\'' || static_cast<unsigned char>(c) >= 0x80;
    }
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string until(char stop) {
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != stop) out += text_[pos_++];
        if (!eat(stop)) throw RegexParseError(std::string("expected '") + stop + "'");
        return out;
    }
    std::string name_token() {
        std::string out;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) out += text_[pos_++];
        return out;
    }

    std::string_view text_;
    RegexFactory& f_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Regex parse_regex(const std::string& text, std::shared_ptr<const OrthoLattice> lattice,
                         Alphabet alphabet) {
    RegexFactory f(std::move(lattice), std::move(alphabet));
    detail::RegexParser p(text, f);
    return f.wrap(p.parse());
}

inline std::string format_regex_node(const Regex& r, const RegexNode* n) {
    auto paren = [&](const RegexNode* c, bool need) {
        std::string s = format_regex_node(r, c);
        return need ? "(" + s + ")" : s;
    };
    switch (n->op) {
        case RegexNode::Op::Empty:
            return "%0";
        case RegexNode::Op::Eps:
            return "@";
        case RegexNode::Op::Sym:
            return r.alphabet.sym(n->sym);
        case RegexNode::Op::Scalar:
            return "<" + r.lattice->name_of(r.lattice->elem(n->scalar)) + ">" +
                   paren(n->left.get(),
                         n->left->op == RegexNode::Op::Union || n->left->op == RegexNode::Op::Concat);
        case RegexNode::Op::Union:
            return format_regex_node(r, n->left.get()) + " + " + format_regex_node(r, n->right.get());
        case RegexNode::Op::Concat: {
            bool lp = n->left->op == RegexNode::Op::Union;
            bool rp = n->right->op == RegexNode::Op::Union || n->right->op == RegexNode::Op::Concat;
            return paren(n->left.get(), lp) + " " + paren(n->right.get(), rp);
        }
        case RegexNode::Op::Star: {
            bool p = n->left->op == RegexNode::Op::Union || n->left->op == RegexNode::Op::Concat ||
                     n->left->op == RegexNode::Op::Scalar;
            return paren(n->left.get(), p) + "*";
        }
    }
    throw Error("bad regex node");
}

inline std::string format_regex(const Regex& r) { return format_regex_node(r, r.root.get()); }

}  // namespace omlq

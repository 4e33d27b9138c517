#pragma once

#include <deque>
#include <functional>
#include <set>

#include "omlq/language.hpp"

namespace omlq {

class StateBlowup : public Error {
public:
    using Error::Error;
};
class NotDeterministic : public Error {
public:
    using Error::Error;
};
class MalformedPath : public Error {
public:
    using Error::Error;
};

namespace detail {

/// Antichain of pairwise-incomparable lattice values. Dominated values
/// may be dropped freely: x <= y implies x^d <= y^d for any later meet
/// d, so joins taken after further meets are unaffected.
struct ValSet {
    std::vector<std::uint16_t> vals;  // sorted, pairwise incomparable

    bool insert(const OrthoLattice& l, std::uint16_t v) {
        if (v == l.zero().idx) return false;
        for (auto w : vals)
            if (l.leq(l.elem(v), l.elem(w))) return false;
        std::erase_if(vals, [&](std::uint16_t w) { return l.leq(l.elem(w), l.elem(v)); });
        vals.insert(std::lower_bound(vals.begin(), vals.end(), v), v);
        return true;
    }
    bool empty() const { return vals.empty(); }
};

}  // namespace detail

/// Alternating state/symbol sequence; labels may contain -1 for the
/// empty-move token on automata that allow it.
struct Path {
    std::vector<std::int32_t> states;
    std::vector<std::int32_t> labels;
};

/// Finite automaton whose initial, terminal and transition predicates
/// take values in a finite ortholattice. Transitions on the reserved
/// empty-move token may be present; eps_free() tells. Immutable after
/// build; all evaluations are pure.
class LAutomaton {
public:
    static constexpr std::int32_t kEps = -1;

    class Builder {
    public:
        Builder(std::shared_ptr<const OrthoLattice> lattice, Alphabet alphabet)
            : lattice_(std::move(lattice)), alphabet_(std::move(alphabet)) {}

        Builder& state(const std::string& name) {
            if (!index_.emplace(name, static_cast<std::int32_t>(states_.size())).second)
                throw Error("duplicate state name '" + name + "'");
            states_.push_back(name);
            initial_.push_back(lattice_->zero().idx);
            terminal_.push_back(lattice_->zero().idx);
            return *this;
        }
        Builder& states(std::initializer_list<std::string> names) {
            for (const auto& n : names) state(n);
            return *this;
        }
        Builder& initial(const std::string& q, Elem v) {
            lattice_->check(v);
            initial_[at(q)] = v.idx;
            return *this;
        }
        Builder& terminal(const std::string& q, Elem v) {
            lattice_->check(v);
            terminal_[at(q)] = v.idx;
            return *this;
        }
        Builder& edge(const std::string& p, const std::string& sym, const std::string& q, Elem v) {
            lattice_->check(v);
            auto s = alphabet_.index_of(sym);
            if (sym == kEpsilonToken) return eps_edge(p, q, v);
            if (!s) throw AlphabetMismatch("unknown symbol '" + sym + "'");
            edges_.push_back({at(p), *s, at(q), v.idx});
            return *this;
        }
        Builder& eps_edge(const std::string& p, const std::string& q, Elem v) {
            lattice_->check(v);
            edges_.push_back({at(p), kEps, at(q), v.idx});
            return *this;
        }
        LAutomaton build() {
            LAutomaton m;
            m.lattice_ = lattice_;
            m.alphabet_ = alphabet_;
            m.states_ = states_;
            m.index_ = index_;
            m.initial_ = initial_;
            m.terminal_ = terminal_;
            const std::size_t slots = alphabet_.size() + 1;
            m.delta_.assign(states_.size() * slots, {});
            for (const auto& e : edges_) {
                if (e.val == lattice_->zero().idx) continue;
                auto& row = m.delta_[static_cast<std::size_t>(e.p) * slots +
                                     (e.s == kEps ? alphabet_.size() : static_cast<std::size_t>(e.s))];
                bool merged = false;
                for (auto& [q, v] : row)
                    if (q == e.q) {  // repeated entry: keep the join
                        v = lattice_->join(lattice_->elem(v), lattice_->elem(e.val)).idx;
                        merged = true;
                    }
                if (!merged) row.push_back({e.q, e.val});
                if (e.s == kEps) m.eps_free_ = false;
            }
            return m;
        }

    private:
        std::int32_t at(const std::string& q) const {
            auto it = index_.find(q);
            if (it == index_.end()) throw Error("unknown state '" + q + "'");
            return it->second;
        }
        struct RawEdge {
            std::int32_t p, s, q;
            std::uint16_t val;
        };
        std::shared_ptr<const OrthoLattice> lattice_;
        Alphabet alphabet_;
        std::vector<std::string> states_;
        std::unordered_map<std::string, std::int32_t> index_;
        std::vector<std::uint16_t> initial_, terminal_;
        std::vector<RawEdge> edges_;
    };

    const std::shared_ptr<const OrthoLattice>& lattice() const { return lattice_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return states_.size(); }
    const std::vector<std::string>& state_names() const { return states_; }
    std::int32_t state_index(const std::string& q) const {
        auto it = index_.find(q);
        if (it == index_.end()) throw Error("unknown state '" + q + "'");
        return it->second;
    }
    bool eps_free() const { return eps_free_; }

    Elem initial(std::int32_t q) const { return lattice_->elem(initial_.at(static_cast<std::size_t>(q))); }
    Elem terminal(std::int32_t q) const { return lattice_->elem(terminal_.at(static_cast<std::size_t>(q))); }

    /// Nonzero transitions out of p on symbol s (s == kEps for empty moves).
    const std::vector<std::pair<std::int32_t, std::uint16_t>>& out(std::int32_t p,
                                                                   std::int32_t s) const {
        const std::size_t slots = alphabet_.size() + 1;
        std::size_t slot = s == kEps ? alphabet_.size() : static_cast<std::size_t>(s);
        return delta_.at(static_cast<std::size_t>(p) * slots + slot);
    }

    Elem delta(std::int32_t p, std::int32_t s, std::int32_t q) const {
        for (auto [t, v] : out(p, s))
            if (t == q) return lattice_->elem(v);
        return lattice_->zero();
    }

private:
    std::shared_ptr<const OrthoLattice> lattice_;
    Alphabet alphabet_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, std::int32_t> index_;
    std::vector<std::uint16_t> initial_, terminal_;
    std::vector<std::vector<std::pair<std::int32_t, std::uint16_t>>> delta_;
    bool eps_free_ = true;
};

/// Same shape as LAutomaton with empty-move transitions permitted.
using EpsAutomaton = LAutomaton;

/// Meet of the transition values along a path; 1 for a single-state path.
inline Elem path_value(const LAutomaton& m, const Path& c) {
    if (c.states.empty() || c.states.size() != c.labels.size() + 1)
        throw MalformedPath("path must alternate k+1 states with k labels");
    const OrthoLattice& l = *m.lattice();
    Elem acc = l.one();
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        if (c.states[i] < 0 || static_cast<std::size_t>(c.states[i]) >= m.state_count() ||
            c.states[i + 1] < 0 || static_cast<std::size_t>(c.states[i + 1]) >= m.state_count())
            throw MalformedPath("path references an undeclared state");
        std::int32_t s = c.labels[i];
        if (s != LAutomaton::kEps &&
            (s < 0 || static_cast<std::size_t>(s) >= m.alphabet().size()))
            throw MalformedPath("path references an undeclared symbol");
        acc = l.meet(acc, m.delta(c.states[i], s, c.states[i + 1]));
    }
    return acc;
}

namespace detail {

using StateSets = std::vector<ValSet>;

inline void eps_saturate(const LAutomaton& m, StateSets& sets) {
    if (m.eps_free()) return;
    const OrthoLattice& l = *m.lattice();
    std::deque<std::pair<std::int32_t, std::uint16_t>> work;
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        for (auto v : sets[static_cast<std::size_t>(q)].vals) work.push_back({q, v});
    while (!work.empty()) {
        auto [p, v] = work.front();
        work.pop_front();
        for (auto [q, d] : m.out(p, LAutomaton::kEps)) {
            std::uint16_t nv = l.meet(l.elem(v), l.elem(d)).idx;
            if (sets[static_cast<std::size_t>(q)].insert(l, nv)) work.push_back({q, nv});
        }
    }
}

inline StateSets initial_sets(const LAutomaton& m) {
    const OrthoLattice& l = *m.lattice();
    StateSets sets(m.state_count());
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        sets[static_cast<std::size_t>(q)].insert(l, m.initial(q).idx);
    eps_saturate(m, sets);
    return sets;
}

inline StateSets step_sets(const LAutomaton& m, const StateSets& sets, std::int32_t sym) {
    const OrthoLattice& l = *m.lattice();
    StateSets next(m.state_count());
    for (std::int32_t p = 0; p < static_cast<std::int32_t>(m.state_count()); ++p)
        for (auto v : sets[static_cast<std::size_t>(p)].vals)
            for (auto [q, d] : m.out(p, sym))
                next[static_cast<std::size_t>(q)].insert(l, l.meet(l.elem(v), l.elem(d)).idx);
    eps_saturate(m, next);
    return next;
}

inline Elem accept_value(const LAutomaton& m, const StateSets& sets) {
    const OrthoLattice& l = *m.lattice();
    Elem acc = l.zero();
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        for (auto v : sets[static_cast<std::size_t>(q)].vals)
            acc = l.join(acc, l.meet(l.elem(v), m.terminal(q)));
    return acc;
}

inline std::vector<std::uint32_t> sets_key(const StateSets& sets) {
    std::vector<std::uint32_t> key;
    for (const auto& s : sets) {
        key.push_back(static_cast<std::uint32_t>(s.vals.size()));
        for (auto v : s.vals) key.push_back(v);
    }
    return key;
}

}  // namespace detail

/// Degree to which word s is recognized: the join over all paths
/// labelled s of initial(start) and the path value and terminal(end).
/// Computed by propagating, per state, the antichain of accumulated
/// path values; values are never joined before a later meet, so this
/// is the path-family join itself, grouped by end state.
inline Elem rec(const LAutomaton& m, const Word& s) {
    for (auto i : s)
        if (i < 0 || static_cast<std::size_t>(i) >= m.alphabet().size())
            throw AlphabetMismatch("word contains an out-of-alphabet symbol");
    auto sets = detail::initial_sets(m);
    for (auto sym : s) sets = detail::step_sets(m, sets, sym);
    return detail::accept_value(m, sets);
}

/// rec over paths that may take empty moves; identical to rec() (the
/// propagation always saturates empty moves), provided for call sites
/// that want to state the intent.
inline Elem rec_eps(const EpsAutomaton& m, const Word& s) { return rec(m, s); }

/// Naive one-value-per-state forward vector: v_eps = I and
/// v_{s sym}(q) = join_p v_s(p) and delta(p,sym,q). This collapses the
/// per-path values with joins between meets, which is exactly the
/// power-set construction's transition map, not the path join.
using ValueVector = std::vector<std::uint16_t>;

inline ValueVector forward_vector(const LAutomaton& m, const Word& s) {
    if (!m.eps_free()) throw Error("forward vectors are defined for automata without empty moves");
    const OrthoLattice& l = *m.lattice();
    ValueVector v(m.state_count());
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        v[static_cast<std::size_t>(q)] = m.initial(q).idx;
    for (auto sym : s) {
        ValueVector next(m.state_count(), l.zero().idx);
        for (std::int32_t p = 0; p < static_cast<std::int32_t>(m.state_count()); ++p) {
            if (v[static_cast<std::size_t>(p)] == l.zero().idx) continue;
            Elem pv = l.elem(v[static_cast<std::size_t>(p)]);
            for (auto [q, d] : m.out(p, sym))
                next[static_cast<std::size_t>(q)] =
                    l.join(l.elem(next[static_cast<std::size_t>(q)]), l.meet(pv, l.elem(d))).idx;
        }
        v = std::move(next);
    }
    return v;
}

inline Elem vector_rec(const LAutomaton& m, const Word& s) {
    const OrthoLattice& l = *m.lattice();
    ValueVector v = forward_vector(m, s);
    Elem acc = l.zero();
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        acc = l.join(acc, l.meet(l.elem(v[static_cast<std::size_t>(q)]), m.terminal(q)));
    return acc;
}

/// Truth values occurring in the automaton's initial, terminal and
/// transition predicates.
inline ElemSet atoms(const LAutomaton& m) {
    std::vector<std::uint16_t> vals;
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        vals.push_back(m.initial(q).idx);
        vals.push_back(m.terminal(q).idx);
        for (std::int32_t s = -1; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [q2, v] : m.out(q, s == -1 ? LAutomaton::kEps : s)) {
                (void)q2;
                vals.push_back(v);
            }
    }
    return ElemSet(m.lattice().get(), std::move(vals));
}

inline Elem gamma_atoms(const LAutomaton& m, std::size_t cap = 20) {
    return m.lattice()->commutator(atoms(m), cap);
}

/// Unique state with nonzero initial value, and for every (q, sym)
/// exactly one nonzero successor.
inline bool is_deterministic(const LAutomaton& m) {
    if (!m.eps_free()) return false;
    const OrthoLattice& l = *m.lattice();
    int starts = 0;
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        if (m.initial(q) != l.zero()) ++starts;
    if (starts != 1) return false;
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            if (m.out(q, s).size() != 1) return false;
    return true;
}

/// Power-set construction, restricted to the forward vectors reachable
/// from I (value preserving; the full vector space is astronomically
/// large). Transitions and the initial predicate are two-valued; only
/// the terminal predicate keeps lattice values.
inline LAutomaton determinize(const LAutomaton& m, std::size_t state_cap = 4096) {
    if (!m.eps_free()) throw Error("determinize needs an automaton without empty moves");
    const OrthoLattice& l = *m.lattice();
    const std::size_t n = m.state_count();

    auto vec_name = [&](const ValueVector& v) {
        std::string s = "{";
        bool first = true;
        for (std::size_t q = 0; q < n; ++q) {
            if (v[q] == l.zero().idx) continue;
            if (!first) s += ",";
            first = false;
            s += m.state_names()[q] + ":" + l.name_of(l.elem(v[q]));
        }
        return s + "}";
    };

    ValueVector start(n);
    for (std::size_t q = 0; q < n; ++q) start[q] = m.initial(static_cast<std::int32_t>(q)).idx;

    std::map<ValueVector, std::int32_t> ids;
    std::vector<ValueVector> vecs;
    std::deque<std::int32_t> work;
    auto intern = [&](const ValueVector& v) {
        auto it = ids.find(v);
        if (it != ids.end()) return it->second;
        if (vecs.size() >= state_cap)
            throw StateBlowup("power-set construction exceeded " + std::to_string(state_cap) +
                              " reachable states");
        std::int32_t id = static_cast<std::int32_t>(vecs.size());
        ids.emplace(v, id);
        vecs.push_back(v);
        work.push_back(id);
        return id;
    };
    intern(start);

    struct Edge {
        std::int32_t p, s, q;
    };
    std::vector<Edge> edges;
    while (!work.empty()) {
        std::int32_t id = work.front();
        work.pop_front();
        ValueVector cur = vecs[static_cast<std::size_t>(id)];
        for (std::int32_t sym = 0; sym < static_cast<std::int32_t>(m.alphabet().size()); ++sym) {
            ValueVector next(n, l.zero().idx);
            for (std::size_t p = 0; p < n; ++p) {
                if (cur[p] == l.zero().idx) continue;
                for (auto [q, d] : m.out(static_cast<std::int32_t>(p), sym))
                    next[static_cast<std::size_t>(q)] =
                        l.join(l.elem(next[static_cast<std::size_t>(q)]),
                               l.meet(l.elem(cur[p]), l.elem(d)))
                            .idx;
            }
            edges.push_back({id, sym, intern(next)});
        }
    }

    LAutomaton::Builder b(m.lattice(), m.alphabet());
    for (std::size_t i = 0; i < vecs.size(); ++i) b.state(vec_name(vecs[i]));
    b.initial(vec_name(vecs[0]), l.one());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        Elem t = l.zero();
        for (std::size_t q = 0; q < n; ++q)
            t = l.join(t, l.meet(l.elem(vecs[i][q]), m.terminal(static_cast<std::int32_t>(q))));
        b.terminal(vec_name(vecs[i]), t);
    }
    for (const auto& e : edges)
        b.edge(vec_name(vecs[static_cast<std::size_t>(e.p)]), m.alphabet().sym(e.s),
               vec_name(vecs[static_cast<std::size_t>(e.q)]), l.one());
    return b.build();
}

/// Orthocomplements the terminal predicate of a deterministic automaton;
/// its recognized values are complemented pointwise.
inline LAutomaton complement_det(const LAutomaton& m) {
    if (!is_deterministic(m))
        throw NotDeterministic("terminal complementation needs a deterministic automaton");
    const OrthoLattice& l = *m.lattice();
    LAutomaton::Builder b(m.lattice(), m.alphabet());
    for (const auto& q : m.state_names()) b.state(q);
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        b.initial(m.state_names()[static_cast<std::size_t>(q)], m.initial(q));
        b.terminal(m.state_names()[static_cast<std::size_t>(q)], l.ortho(m.terminal(q)));
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [t, v] : m.out(q, s))
                b.edge(m.state_names()[static_cast<std::size_t>(q)], m.alphabet().sym(s),
                       m.state_names()[static_cast<std::size_t>(t)], l.elem(v));
    }
    return b.build();
}

namespace detail {

// Per-source empty-move reachability: eps_sets(m, p)[q] is the antichain
// of meet-values of empty-move paths from p to q (1 at p itself).
inline StateSets eps_sets(const LAutomaton& m, std::int32_t p) {
    const OrthoLattice& l = *m.lattice();
    StateSets sets(m.state_count());
    sets[static_cast<std::size_t>(p)].insert(l, l.one().idx);
    eps_saturate(m, sets);
    return sets;
}

}  // namespace detail

/// Removes empty moves: the new transition value joins, over all
/// empty-padded forms e^m sym e^n, the meet-values of the padded paths;
/// the new terminal value of q joins terminal values over empty-move
/// continuations from q. The initial predicate is unchanged.
inline LAutomaton eps_reduce(const EpsAutomaton& m) {
    const OrthoLattice& l = *m.lattice();
    const std::size_t n = m.state_count();
    std::vector<detail::StateSets> eps_from;
    eps_from.reserve(n);
    for (std::size_t p = 0; p < n; ++p)
        eps_from.push_back(detail::eps_sets(m, static_cast<std::int32_t>(p)));

    LAutomaton::Builder b(m.lattice(), m.alphabet());
    for (const auto& q : m.state_names()) b.state(q);
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(n); ++q) {
        b.initial(m.state_names()[static_cast<std::size_t>(q)], m.initial(q));
        Elem t = l.zero();
        for (std::int32_t r = 0; r < static_cast<std::int32_t>(n); ++r)
            for (auto v : eps_from[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)].vals)
                t = l.join(t, l.meet(l.elem(v), m.terminal(r)));
        b.terminal(m.state_names()[static_cast<std::size_t>(q)], t);
    }
    for (std::int32_t p = 0; p < static_cast<std::int32_t>(n); ++p)
        for (std::int32_t q = 0; q < static_cast<std::int32_t>(n); ++q)
            for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s) {
                Elem v = l.zero();
                for (std::int32_t r = 0; r < static_cast<std::int32_t>(n); ++r)
                    for (auto x : eps_from[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)].vals)
                        for (auto [r2, d] : m.out(r, s))
                            for (auto y : eps_from[static_cast<std::size_t>(r2)][static_cast<std::size_t>(q)].vals)
                                v = l.join(v, l.meet(l.meet(l.elem(x), l.elem(d)), l.elem(y)));
                if (v != l.zero())
                    b.edge(m.state_names()[static_cast<std::size_t>(p)], m.alphabet().sym(s),
                           m.state_names()[static_cast<std::size_t>(q)], v);
            }
    return b.build();
}

namespace detail {

inline void require_same_shape(const LAutomaton& a, const LAutomaton& b) {
    if (a.lattice().get() != b.lattice().get())
        throw CrossLattice("automata live in different lattices");
    if (!(a.alphabet() == b.alphabet()))
        throw AlphabetMismatch("automata use different alphabets");
}

inline void copy_into(LAutomaton::Builder& b, const LAutomaton& m, const std::string& prefix) {
    for (const auto& q : m.state_names()) b.state(prefix + q);
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        b.initial(prefix + m.state_names()[static_cast<std::size_t>(q)], m.initial(q));
        b.terminal(prefix + m.state_names()[static_cast<std::size_t>(q)], m.terminal(q));
        for (std::int32_t s = -1; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [t, v] : m.out(q, s == -1 ? LAutomaton::kEps : s)) {
                const std::string& pn = m.state_names()[static_cast<std::size_t>(q)];
                const std::string& qn = m.state_names()[static_cast<std::size_t>(t)];
                if (s == -1)
                    b.eps_edge(prefix + pn, prefix + qn, m.lattice()->elem(v));
                else
                    b.edge(prefix + pn, m.alphabet().sym(s), prefix + qn, m.lattice()->elem(v));
            }
    }
}

}  // namespace detail

/// Disjoint union; states are renamed with per-operand prefixes.
inline LAutomaton union_aut(const LAutomaton& m1, const LAutomaton& m2) {
    detail::require_same_shape(m1, m2);
    LAutomaton::Builder b(m1.lattice(), m1.alphabet());
    detail::copy_into(b, m1, "1:");
    detail::copy_into(b, m2, "2:");
    return b.build();
}

/// Componentwise product; initial/terminal values are pointwise meets.
inline LAutomaton product_aut(const LAutomaton& m1, const LAutomaton& m2) {
    detail::require_same_shape(m1, m2);
    if (!m1.eps_free() || !m2.eps_free())
        throw Error("product needs automata without empty moves");
    const OrthoLattice& l = *m1.lattice();
    auto name = [&](std::int32_t p, std::int32_t q) {
        return "(" + m1.state_names()[static_cast<std::size_t>(p)] + "," +
               m2.state_names()[static_cast<std::size_t>(q)] + ")";
    };
    LAutomaton::Builder b(m1.lattice(), m1.alphabet());
    for (std::int32_t p = 0; p < static_cast<std::int32_t>(m1.state_count()); ++p)
        for (std::int32_t q = 0; q < static_cast<std::int32_t>(m2.state_count()); ++q) {
            b.state(name(p, q));
            b.initial(name(p, q), l.meet(m1.initial(p), m2.initial(q)));
            b.terminal(name(p, q), l.meet(m1.terminal(p), m2.terminal(q)));
        }
    for (std::int32_t p1 = 0; p1 < static_cast<std::int32_t>(m1.state_count()); ++p1)
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m1.alphabet().size()); ++s)
            for (auto [q1, v1] : m1.out(p1, s))
                for (std::int32_t p2 = 0; p2 < static_cast<std::int32_t>(m2.state_count()); ++p2)
                    for (auto [q2, v2] : m2.out(p2, s)) {
                        Elem v = l.meet(l.elem(v1), l.elem(v2));
                        if (v != l.zero()) b.edge(name(p1, p2), m1.alphabet().sym(s), name(q1, q2), v);
                    }
    return b.build();
}

/// Concatenation: empty-move edges valued terminal1(p) and initial2(q)
/// link the operands; initial comes from m1, terminal from m2.
inline EpsAutomaton concat_aut(const LAutomaton& m1, const LAutomaton& m2) {
    detail::require_same_shape(m1, m2);
    const OrthoLattice& l = *m1.lattice();
    LAutomaton::Builder b(m1.lattice(), m1.alphabet());
    detail::copy_into(b, m1, "1:");
    detail::copy_into(b, m2, "2:");
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m1.state_count()); ++q)
        b.terminal("1:" + m1.state_names()[static_cast<std::size_t>(q)], l.zero());
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m2.state_count()); ++q)
        b.initial("2:" + m2.state_names()[static_cast<std::size_t>(q)], l.zero());
    for (std::int32_t p = 0; p < static_cast<std::int32_t>(m1.state_count()); ++p)
        for (std::int32_t q = 0; q < static_cast<std::int32_t>(m2.state_count()); ++q) {
            Elem v = l.meet(m1.terminal(p), m2.initial(q));
            if (v != l.zero())
                b.eps_edge("1:" + m1.state_names()[static_cast<std::size_t>(p)],
                           "2:" + m2.state_names()[static_cast<std::size_t>(q)], v);
        }
    return b.build();
}

/// Iteration: a fresh start state (initial and terminal) reaches the old
/// initial states by empty moves valued initial(q); empty-move back
/// edges valued terminal(p) and initial(q) close the loop.
inline EpsAutomaton fold_aut(const LAutomaton& m) {
    const OrthoLattice& l = *m.lattice();
    std::string start = "q*";
    while (std::find(m.state_names().begin(), m.state_names().end(), start) !=
           m.state_names().end())
        start += "*";
    LAutomaton::Builder b(m.lattice(), m.alphabet());
    b.state(start);
    detail::copy_into(b, m, "");
    b.initial(start, l.one());
    b.terminal(start, l.one());
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        b.initial(m.state_names()[static_cast<std::size_t>(q)], l.zero());
        if (m.initial(q) != l.zero())
            b.eps_edge(start, m.state_names()[static_cast<std::size_t>(q)], m.initial(q));
    }
    for (std::int32_t p = 0; p < static_cast<std::int32_t>(m.state_count()); ++p)
        for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
            Elem v = l.meet(m.terminal(p), m.initial(q));
            if (v != l.zero())
                b.eps_edge(m.state_names()[static_cast<std::size_t>(p)],
                           m.state_names()[static_cast<std::size_t>(q)], v);
        }
    return b.build();
}

/// Swaps initial/terminal and transposes transitions; recognizes the
/// reversal of every word at the same value.
inline LAutomaton inverse_aut(const LAutomaton& m) {
    if (!m.eps_free()) throw Error("inverse needs an automaton without empty moves");
    LAutomaton::Builder b(m.lattice(), m.alphabet());
    for (const auto& q : m.state_names()) b.state(q);
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        b.initial(m.state_names()[static_cast<std::size_t>(q)], m.terminal(q));
        b.terminal(m.state_names()[static_cast<std::size_t>(q)], m.initial(q));
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [t, v] : m.out(q, s))
                b.edge(m.state_names()[static_cast<std::size_t>(t)], m.alphabet().sym(s),
                       m.state_names()[static_cast<std::size_t>(q)], m.lattice()->elem(v));
    }
    return b.build();
}

/// Pre-image under a symbol-to-word mapping h, built so that the result
/// recognizes every word s at exactly the value of h(s) in m. States are
/// (state, accumulated value) pairs and transitions are two-valued; the
/// accumulated value collects the inner path meets that a plain
/// state-preserving construction would have to join prematurely.
inline LAutomaton hom_preimage_aut(const SymbolMap& h, const LAutomaton& m,
                                   std::size_t state_cap = 8192) {
    if (!m.eps_free()) throw Error("pre-image needs an automaton without empty moves");
    if (!(h.to == m.alphabet()))
        throw AlphabetMismatch("mapping target alphabet does not match the automaton");
    const OrthoLattice& l = *m.lattice();
    const std::size_t n = m.state_count();

    // reach[p][sym] = per-target antichains of inner path meet-values of
    // the word h(sym) read from p.
    std::vector<std::vector<detail::StateSets>> reach(n);
    for (std::size_t p = 0; p < n; ++p) {
        reach[p].reserve(h.from.size());
        for (std::size_t sym = 0; sym < h.from.size(); ++sym) {
            detail::StateSets sets(n);
            sets[p].insert(l, l.one().idx);
            for (auto g : h.images[sym]) sets = detail::step_sets(m, sets, g);
            reach[p].push_back(std::move(sets));
        }
    }

    using Key = std::pair<std::int32_t, std::uint16_t>;  // (state, accumulated value)
    auto name = [&](Key k) {
        return m.state_names()[static_cast<std::size_t>(k.first)] + "@" +
               l.name_of(l.elem(k.second));
    };
    std::map<Key, bool> seen;
    std::deque<Key> work;
    std::vector<Key> order;
    auto visit = [&](Key k) {
        if (seen.emplace(k, true).second) {
            if (order.size() >= state_cap) throw StateBlowup("pre-image construction exceeded cap");
            order.push_back(k);
            work.push_back(k);
        }
    };
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(n); ++q)
        if (m.initial(q) != l.zero()) visit({q, m.initial(q).idx});

    struct Edge {
        Key from;
        std::int32_t sym;
        Key to;
    };
    std::vector<Edge> edges;
    while (!work.empty()) {
        Key k = work.front();
        work.pop_front();
        for (std::int32_t sym = 0; sym < static_cast<std::int32_t>(h.from.size()); ++sym)
            for (std::int32_t q = 0; q < static_cast<std::int32_t>(n); ++q)
                for (auto v :
                     reach[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(sym)]
                          [static_cast<std::size_t>(q)]
                              .vals) {
                    std::uint16_t acc = l.meet(l.elem(k.second), l.elem(v)).idx;
                    if (acc == l.zero().idx) continue;
                    Key to{q, acc};
                    visit(to);
                    edges.push_back({k, sym, to});
                }
    }

    LAutomaton::Builder b(m.lattice(), h.from);
    for (auto k : order) b.state(name(k));
    for (auto k : order) {
        if (m.initial(k.first).idx == k.second && k.second != l.zero().idx)
            b.initial(name(k), l.one());
        b.terminal(name(k), l.meet(l.elem(k.second), m.terminal(k.first)));
    }
    for (const auto& e : edges) b.edge(name(e.from), h.from.sym(e.sym), name(e.to), l.one());
    return b.build();
}

/// All recognition values the automaton attains over all words
/// (finite: the per-state antichain vectors form a finite system).
inline ElemSet achieved_rec_values(const LAutomaton& m, std::size_t cap = 200000) {
    const OrthoLattice& l = *m.lattice();
    std::set<std::vector<std::uint32_t>> seen;
    std::deque<detail::StateSets> work;
    std::vector<std::uint16_t> vals;
    auto visit = [&](detail::StateSets sets) {
        auto key = detail::sets_key(sets);
        if (seen.count(key)) return;
        if (seen.size() >= cap) throw StateBlowup("value exploration exceeded cap");
        seen.insert(key);
        vals.push_back(detail::accept_value(m, sets).idx);
        work.push_back(std::move(sets));
    };
    visit(detail::initial_sets(m));
    while (!work.empty()) {
        auto sets = work.front();
        work.pop_front();
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            visit(detail::step_sets(m, sets, s));
    }
    return ElemSet(l.elem(0).owner, std::move(vals));
}

/// The finite set of value pairs (rec1(s), rec2(s)) attained over all
/// words; every word's pair is reached by a breadth-first walk of the
/// joint propagation states, of which there are finitely many.
inline std::set<std::pair<std::uint16_t, std::uint16_t>> achieved_value_pairs(
    const LAutomaton& m1, const LAutomaton& m2, std::size_t cap = 200000) {
    detail::require_same_shape(m1, m2);
    std::set<std::vector<std::uint32_t>> seen;
    std::set<std::pair<std::uint16_t, std::uint16_t>> pairs;
    std::deque<std::pair<detail::StateSets, detail::StateSets>> work;
    auto visit = [&](detail::StateSets a, detail::StateSets b) {
        auto key = detail::sets_key(a);
        key.push_back(0xffffffffu);
        auto kb = detail::sets_key(b);
        key.insert(key.end(), kb.begin(), kb.end());
        if (seen.count(key)) return;
        if (seen.size() >= cap) throw StateBlowup("equivalence exploration exceeded cap");
        seen.insert(key);
        pairs.insert({detail::accept_value(m1, a).idx, detail::accept_value(m2, b).idx});
        work.push_back({std::move(a), std::move(b)});
    };
    visit(detail::initial_sets(m1), detail::initial_sets(m2));
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m1.alphabet().size()); ++s)
            visit(detail::step_sets(m1, a, s), detail::step_sets(m2, b, s));
    }
    return pairs;
}

/// Exact equivalence degree between the recognized languages: the meet
/// of bi-implications over the achieved value pairs. Exact because the
/// infinite meet over words depends only on that finite pair set.
inline Elem equiv_degree_exact(const LAutomaton& m1, const LAutomaton& m2, ImplKind kind,
                               std::size_t cap = 200000) {
    const OrthoLattice& l = *m1.lattice();
    Elem acc = l.one();
    for (auto [va, vb] : achieved_value_pairs(m1, m2, cap))
        acc = l.meet(acc, biimplies(kind, l.elem(va), l.elem(vb)));
    return acc;
}

/// Meet of bi-implications over all words up to max_len, walking the
/// joint propagation states incrementally (depth-first over the word
/// tree, one symbol step per word).
inline Elem equiv_degree_bounded_aut(const LAutomaton& m1, const LAutomaton& m2, ImplKind kind,
                                     int max_len) {
    detail::require_same_shape(m1, m2);
    const OrthoLattice& l = *m1.lattice();
    Elem acc = l.one();
    auto walk = [&](auto&& self, const detail::StateSets& a, const detail::StateSets& b,
                    int depth) -> void {
        acc = l.meet(acc, biimplies(kind, detail::accept_value(m1, a), detail::accept_value(m2, b)));
        if (depth == max_len || acc == l.zero()) return;
        for (std::int32_t s = 0; s < static_cast<std::int32_t>(m1.alphabet().size()); ++s)
            self(self, detail::step_sets(m1, a, s), detail::step_sets(m2, b, s), depth + 1);
    };
    walk(walk, detail::initial_sets(m1), detail::initial_sets(m2), 0);
    return acc;
}

/// Finite-support language as a disjoint union of word chains; the
/// chain for a word carries the word's value on every edge (on the
/// terminal value for the empty word), so the automaton recognizes
/// exactly the table.
inline LAutomaton table_automaton(const LValuedLanguage& a) {
    const FiniteTableBacking* table = a.as_table();
    if (table == nullptr) throw NotFiniteSupport("needs a finite-support language");
    const OrthoLattice& l = *a.lattice();
    LAutomaton::Builder b(a.lattice(), a.alphabet());
    int chain = 0;
    for (const auto& [w, vidx] : table->entries()) {
        Elem v = l.elem(vidx);
        std::string prefix = "w" + std::to_string(chain++) + "_";
        for (std::size_t j = 0; j <= w.size(); ++j) b.state(prefix + std::to_string(j));
        b.initial(prefix + "0", l.one());
        if (w.empty()) {
            b.terminal(prefix + "0", v);
        } else {
            b.terminal(prefix + std::to_string(w.size()), l.one());
            for (std::size_t j = 0; j < w.size(); ++j)
                b.edge(prefix + std::to_string(j), a.alphabet().sym(w[j]),
                       prefix + std::to_string(j + 1), v);
        }
    }
    if (chain == 0) {
        b.state("w0_0");  // empty support: recognizes 0 everywhere
    }
    return b.build();
}

/// Language backed by an automaton's recognition degrees.
class AutomatonBacking final : public LangBacking {
public:
    explicit AutomatonBacking(std::shared_ptr<const LAutomaton> m) : m_(std::move(m)) {}
    Elem eval(const Word& s) const override { return rec(*m_, s); }
    Kind kind() const override { return Kind::Automaton; }
    const std::shared_ptr<const LAutomaton>& automaton() const { return m_; }

private:
    std::shared_ptr<const LAutomaton> m_;
};

inline LValuedLanguage language_of(std::shared_ptr<const LAutomaton> m) {
    auto lat = m->lattice();
    Alphabet alpha = m->alphabet();
    return LValuedLanguage::from_backing(lat, alpha, std::make_shared<AutomatonBacking>(std::move(m)));
}

/// Finite range of a language's values, when derivable.
inline ElemSet range_of(const LValuedLanguage& a) {
    const OrthoLattice& l = *a.lattice();
    if (const auto* table = a.as_table()) {
        std::vector<std::uint16_t> vals{l.zero().idx};
        for (const auto& [w, v] : table->entries()) vals.push_back(v);
        return ElemSet(&l, std::move(vals));
    }
    if (const auto* ab = dynamic_cast<const AutomatonBacking*>(&a.backing()))
        return achieved_rec_values(*ab->automaton());
    throw NotFiniteRange("cannot derive a finite range for this language backing");
}

/// The clause value one automaton contributes to the regularity
/// predicates: the exact equivalence degree between the language and
/// the automaton's recognition, optionally met with the commutator of
/// the automaton atoms and the language range (commutative variants),
/// and zero for the deterministic variants when the witness is not
/// deterministic.
inline Elem reg_witness(const LValuedLanguage& a, const LAutomaton& m, ImplKind kind,
                        bool commutative, bool deterministic, std::size_t commutator_cap = 20) {
    const OrthoLattice& l = *m.lattice();
    if (a.lattice().get() != &l) throw CrossLattice("language and witness lattices differ");
    if (deterministic && !is_deterministic(m)) return l.zero();

    std::shared_ptr<const LAutomaton> a_aut;
    if (const auto* ab = dynamic_cast<const AutomatonBacking*>(&a.backing()))
        a_aut = ab->automaton();
    else if (a.as_table() != nullptr)
        a_aut = std::make_shared<LAutomaton>(table_automaton(a));
    else
        throw NotFiniteRange("witness values need a table- or automaton-backed language");

    Elem degree = equiv_degree_exact(*a_aut, m, kind);
    if (!commutative) return degree;

    ElemSet r = range_of(a);
    ElemSet at = atoms(m);
    std::vector<std::uint16_t> all = at.indices();
    all.insert(all.end(), r.indices().begin(), r.indices().end());
    Elem gate = l.commutator(ElemSet(&l, std::move(all)), commutator_cap);
    return l.meet(gate, degree);
}

/// Level decomposition of a finite-range table: the union over range
/// values v of the chain automata for {s : A(s) >= v} scaled to v.
inline LAutomaton decompose_by_range(const LValuedLanguage& a) {
    const FiniteTableBacking* table = a.as_table();
    if (table == nullptr) throw NotFiniteRange("level decomposition needs a finite-support table");
    const OrthoLattice& l = *a.lattice();
    std::set<std::uint16_t> levels;
    for (const auto& [w, v] : table->entries()) levels.insert(v);

    LAutomaton::Builder b(a.lattice(), a.alphabet());
    int part = 0;
    bool any = false;
    for (auto lv : levels) {
        std::vector<std::pair<Word, Elem>> scaled;
        for (const auto& [w, v] : table->entries())
            if (l.leq(l.elem(lv), l.elem(v))) scaled.push_back({w, l.elem(lv)});
        LAutomaton chain = table_automaton(
            LValuedLanguage::finite_table(a.lattice(), a.alphabet(), scaled));
        detail::copy_into(b, chain, "L" + std::to_string(part++) + ":");
        any = true;
    }
    if (!any) b.state("empty");
    return b.build();
}

}  // namespace omlq

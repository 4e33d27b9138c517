#pragma once

#include <iostream>
#include <random>

#include "omlq/regex.hpp"

namespace omlq {

class UnknownSuite : public Error {
public:
    using Error::Error;
};
class WordTooLongForPump : public Error {
public:
    using Error::Error;
};

/// One executed check: both side values, the asserted relation between
/// them, and the verdict. `witness` carries a failure hint when the
/// relation does not hold.
struct CheckReport {
    std::string check_id;
    int instance_index = 0;
    std::string instance;
    std::string lhs;
    std::string rhs;
    std::string relation;  // "<=", "=", "gap-strict"
    bool passed = false;
    std::string witness;
};

inline void sort_reports(std::vector<CheckReport>& rs) {
    std::stable_sort(rs.begin(), rs.end(), [](const CheckReport& a, const CheckReport& b) {
        if (a.check_id != b.check_id) return a.check_id < b.check_id;
        return a.instance_index < b.instance_index;
    });
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string report_json_line(const CheckReport& r) {
    std::string s = "{";
    s += "\"check_id\":\"" + detail::json_escape(r.check_id) + "\",";
    s += "\"instance\":\"" + detail::json_escape(r.instance) + "\",";
    s += "\"lhs\":\"" + detail::json_escape(r.lhs) + "\",";
    s += "\"rhs\":\"" + detail::json_escape(r.rhs) + "\",";
    s += "\"relation\":\"" + detail::json_escape(r.relation) + "\",";
    s += std::string("\"passed\":") + (r.passed ? "true" : "false");
    if (!r.witness.empty()) s += ",\"witness\":\"" + detail::json_escape(r.witness) + "\"";
    s += "}";
    return s;
}

/// Deterministic generator used by every randomized suite.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }
    bool coin() { return (g_() & 1) != 0; }

private:
    std::mt19937_64 g_;
};

namespace gen {

inline Elem random_value(Rng& rng, const OrthoLattice& l, int zero_bias_pct = 50) {
    if (static_cast<int>(rng.next(100)) < zero_bias_pct) return l.zero();
    return l.elem(static_cast<std::uint16_t>(rng.next(l.size())));
}

inline Alphabet small_alphabet(Rng& rng) {
    return rng.coin() ? Alphabet({"a"}) : Alphabet({"a", "b"});
}

inline LAutomaton random_automaton(Rng& rng, const std::shared_ptr<const OrthoLattice>& l,
                                   const Alphabet& alpha, bool with_eps = false,
                                   int zero_bias_pct = 50) {
    const int n = 2 + static_cast<int>(rng.next(3));
    LAutomaton::Builder b(l, alpha);
    for (int q = 0; q < n; ++q) b.state("q" + std::to_string(q));
    for (int q = 0; q < n; ++q) {
        b.initial("q" + std::to_string(q), random_value(rng, *l, zero_bias_pct));
        b.terminal("q" + std::to_string(q), random_value(rng, *l, zero_bias_pct));
        for (std::size_t s = 0; s < alpha.size(); ++s)
            for (int t = 0; t < n; ++t) {
                Elem v = random_value(rng, *l, zero_bias_pct);
                if (v != l->zero())
                    b.edge("q" + std::to_string(q), alpha.sym(static_cast<std::int32_t>(s)),
                           "q" + std::to_string(t), v);
            }
        if (with_eps)
            for (int t = 0; t < n; ++t) {
                if (t == q) continue;
                Elem v = random_value(rng, *l, 70);
                if (v != l->zero()) b.eps_edge("q" + std::to_string(q), "q" + std::to_string(t), v);
            }
    }
    return b.build();
}

inline LValuedLanguage random_table(Rng& rng, const std::shared_ptr<const OrthoLattice>& l,
                                    const Alphabet& alpha, int max_words = 3, int max_len = 3) {
    std::vector<std::pair<Word, Elem>> entries;
    const int k = 1 + static_cast<int>(rng.next(static_cast<std::uint64_t>(max_words)));
    for (int i = 0; i < k; ++i) {
        Word w;
        const int len = static_cast<int>(rng.next(static_cast<std::uint64_t>(max_len + 1)));
        for (int j = 0; j < len; ++j)
            w.push_back(static_cast<std::int32_t>(rng.next(alpha.size())));
        Elem v = l->elem(static_cast<std::uint16_t>(rng.next(l->size())));
        entries.push_back({w, v});
    }
    return LValuedLanguage::finite_table(l, alpha, entries);
}

inline SymbolMap random_symbol_map(Rng& rng, const Alphabet& from, const Alphabet& to,
                                   bool allow_erasing) {
    SymbolMap h;
    h.from = from;
    h.to = to;
    for (std::size_t s = 0; s < from.size(); ++s) {
        int len = static_cast<int>(rng.next(2)) + (allow_erasing ? 0 : 1);
        if (allow_erasing) len = static_cast<int>(rng.next(3));
        Word im;
        for (int i = 0; i < len; ++i) im.push_back(static_cast<std::int32_t>(rng.next(to.size())));
        h.images.push_back(im);
    }
    return h;
}

inline RegexFactory::P random_regex_node(Rng& rng, RegexFactory& f, int depth) {
    const OrthoLattice& l = *f.lattice();
    if (depth <= 0) {
        switch (rng.next(4)) {
            case 0: return f.eps();
            case 1: return f.empty();
            default: return f.sym(static_cast<std::int32_t>(rng.next(f.alphabet().size())));
        }
    }
    switch (rng.next(5)) {
        case 0:
            return f.scalar(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                            random_regex_node(rng, f, depth - 1));
        case 1:
            return f.unite(random_regex_node(rng, f, depth - 1), random_regex_node(rng, f, depth - 1));
        case 2:
            return f.concat(random_regex_node(rng, f, depth - 1),
                            random_regex_node(rng, f, depth - 1));
        case 3:
            return f.star(random_regex_node(rng, f, depth - 1));
        default:
            return random_regex_node(rng, f, 0);
    }
}

inline Regex random_regex(Rng& rng, const std::shared_ptr<const OrthoLattice>& l,
                          const Alphabet& alpha, int depth = 3) {
    RegexFactory f(l, alpha);
    return f.wrap(random_regex_node(rng, f, depth));
}

}  // namespace gen

/// Definitional recognition value: join over all state chains of
/// initial(q0) and the chain's transition meets and terminal(qk).
/// Exponential; used to cross-check the propagation-based rec().
inline Elem brute_path_rec(const LAutomaton& m, const Word& s) {
    if (!m.eps_free()) throw Error("path enumeration oracle needs an automaton without empty moves");
    const OrthoLattice& l = *m.lattice();
    Elem acc = l.zero();
    std::vector<std::int32_t> chain;
    auto rec_chain = [&](auto&& self, std::size_t pos, Elem val) -> void {
        if (val == l.zero()) return;
        if (pos == s.size()) {
            acc = l.join(acc, l.meet(val, m.terminal(chain.back())));
            return;
        }
        for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
            Elem d = m.delta(chain.back(), s[pos], q);
            if (d == l.zero()) continue;
            chain.push_back(q);
            self(self, pos + 1, l.meet(val, d));
            chain.pop_back();
        }
    };
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        if (m.initial(q) == l.zero()) continue;
        chain.assign(1, q);
        rec_chain(rec_chain, 0, m.initial(q));
    }
    return acc;
}

namespace detail {

class Suite {
public:
    Suite(std::vector<CheckReport>& out, const OrthoLattice& l) : out_(out), l_(l) {}

    void equal(const std::string& id, const std::string& instance, Elem lhs, Elem rhs,
               const std::string& witness_hint = "") {
        CheckReport r;
        r.check_id = id;
        r.instance_index = index_++;
        r.instance = instance;
        r.lhs = l_.name_of(lhs);
        r.rhs = l_.name_of(rhs);
        r.relation = "=";
        r.passed = lhs == rhs;
        if (!r.passed) r.witness = witness_hint;
        out_.push_back(std::move(r));
    }
    void lesseq(const std::string& id, const std::string& instance, Elem lhs, Elem rhs,
                const std::string& witness_hint = "") {
        CheckReport r;
        r.check_id = id;
        r.instance_index = index_++;
        r.instance = instance;
        r.lhs = l_.name_of(lhs);
        r.rhs = l_.name_of(rhs);
        r.relation = "<=";
        r.passed = l_.leq(lhs, rhs);
        if (!r.passed) r.witness = witness_hint;
        out_.push_back(std::move(r));
    }
    void strict_gap(const std::string& id, const std::string& instance, Elem small, Elem big) {
        CheckReport r;
        r.check_id = id;
        r.instance_index = index_++;
        r.instance = instance;
        r.lhs = l_.name_of(small);
        r.rhs = l_.name_of(big);
        r.relation = "gap-strict";
        r.passed = l_.leq(small, big) && small != big;
        out_.push_back(std::move(r));
    }
    void boolean(const std::string& id, const std::string& instance, bool ok,
                 const std::string& witness_hint = "") {
        CheckReport r;
        r.check_id = id;
        r.instance_index = index_++;
        r.instance = instance;
        r.lhs = ok ? "true" : "false";
        r.rhs = "true";
        r.relation = "=";
        r.passed = ok;
        if (!ok) r.witness = witness_hint;
        out_.push_back(std::move(r));
    }

private:
    std::vector<CheckReport>& out_;
    const OrthoLattice& l_;
    int index_ = 0;
};

// ---------------------------------------------------------------------
// Fixed counterexample instances, parameterized by three values.

inline LAutomaton fig3_automaton(const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b,
                                 Elem c) {
    Alphabet s({"s"});
    LAutomaton::Builder bd(l, s);
    bd.states({"u", "v", "w"});
    bd.initial("u", l->one()).initial("v", l->one()).terminal("w", l->one());
    bd.edge("u", "s", "u", a).edge("u", "s", "w", c).edge("v", "s", "u", b);
    return bd.build();
}

inline EpsAutomaton fig4_automaton(const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b,
                                   Elem c) {
    Alphabet s({"s"});
    LAutomaton::Builder bd(l, s);
    bd.states({"q0", "q1", "q2", "q3", "q4", "q5"});
    bd.initial("q0", l->one()).terminal("q5", l->one());
    bd.edge("q0", "s", "q1", a);
    bd.eps_edge("q1", "q2", l->one()).eps_edge("q1", "q3", l->one());
    bd.eps_edge("q2", "q4", b).eps_edge("q3", "q4", c);
    bd.edge("q4", "s", "q5", l->one());
    return bd.build();
}

inline std::pair<LAutomaton, LAutomaton> fig6_automata(
    const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b, Elem c) {
    Alphabet s({"s0"});
    LAutomaton::Builder b1(l, s);
    b1.state("p").initial("p", l->one()).terminal("p", l->one());
    b1.edge("p", "s0", "p", a);
    LAutomaton::Builder b2(l, s);
    b2.states({"q", "r", "t"});
    b2.initial("q", l->one()).terminal("r", l->one()).terminal("t", l->one());
    b2.edge("q", "s0", "r", b).edge("q", "s0", "t", c);
    return {b1.build(), b2.build()};
}

inline std::pair<LAutomaton, LAutomaton> fig7_automata(
    const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b, Elem c) {
    Alphabet s({"s"});
    LAutomaton::Builder b1(l, s);
    b1.states({"p0", "p1"});
    b1.initial("p0", l->one()).terminal("p1", l->one());
    b1.edge("p0", "s", "p1", a);
    LAutomaton::Builder b2(l, s);
    b2.states({"q0", "q1", "q2"});
    b2.initial("q0", l->one()).terminal("q1", l->one()).terminal("q2", l->one());
    b2.edge("q0", "s", "q1", b).edge("q0", "s", "q2", c);
    return {b1.build(), b2.build()};
}

inline LAutomaton fig8_automaton(const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b,
                                 Elem c) {
    Alphabet s({"s"});
    LAutomaton::Builder bd(l, s);
    bd.states({"q1", "q2", "q3", "q4", "q5", "q6"});
    bd.initial("q1", l->one()).initial("q2", l->one()).initial("q3", l->one());
    bd.terminal("q6", l->one());
    bd.edge("q1", "s", "q4", l->one()).edge("q3", "s", "q5", l->one());
    bd.edge("q2", "s", "q6", a).edge("q4", "s", "q6", b).edge("q5", "s", "q6", c);
    return bd.build();
}

// Two-symbol variant of the iteration instance whose single-factor
// decompositions cannot absorb the gap: tau is recognized at a, and
// "s s" at b or c through two parallel paths.
inline LAutomaton fig8_variant_automaton(const std::shared_ptr<const OrthoLattice>& l, Elem a,
                                         Elem b, Elem c) {
    Alphabet s({"s", "t"});
    LAutomaton::Builder bd(l, s);
    bd.states({"p0", "p1", "q0", "q1", "q2", "q3"});
    bd.initial("p0", l->one()).initial("q0", l->one());
    bd.terminal("p1", l->one()).terminal("q2", l->one());
    bd.edge("p0", "t", "p1", a);
    bd.edge("q0", "s", "q1", l->one()).edge("q1", "s", "q2", b);
    bd.edge("q0", "s", "q3", l->one()).edge("q3", "s", "q2", c);
    return bd.build();
}

inline LAutomaton fig9_automaton(const std::shared_ptr<const OrthoLattice>& l, Elem a, Elem b,
                                 Elem c) {
    Alphabet s({"s"});
    LAutomaton::Builder bd(l, s);
    bd.states({"u", "v"});
    bd.initial("u", a);
    bd.terminal("u", l->one()).terminal("v", l->one());
    bd.edge("u", "s", "u", b).edge("u", "s", "v", c);
    return bd.build();
}

// join over all two-part and longer decompositions of s of the meets of
// per-factor recognition values, i.e. the star of the recognized
// language evaluated at s.
inline Elem star_of_rec(const LAutomaton& m, const Word& s) {
    return kleene_star(language_of(std::make_shared<LAutomaton>(m))).eval(s);
}

inline Elem split_join(const LAutomaton& m1, const LAutomaton& m2, const Word& s) {
    const OrthoLattice& l = *m1.lattice();
    Elem acc = l.zero();
    for (std::size_t k = 0; k <= s.size(); ++k) {
        Word u(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
        Word v(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
        acc = l.join(acc, l.meet(rec(m1, u), rec(m2, v)));
    }
    return acc;
}

inline ElemSet union_sets(const OrthoLattice& l, const ElemSet& a, const ElemSet& b) {
    std::vector<std::uint16_t> v = a.indices();
    v.insert(v.end(), b.indices().begin(), b.indices().end());
    return ElemSet(&l, std::move(v));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suites

namespace detail {

inline bool subset_is_o6(const OrthoLattice& l, const ElemSet& s) {
    if (s.size() != 6) return false;
    auto es = s.elems();
    for (Elem a : es)
        for (Elem b : es) {
            if (!s.contains(l.meet(a, b)) || !s.contains(l.join(a, b)) || !s.contains(l.ortho(a)))
                return false;
        }
    // Pattern: a < b strictly inside the bounds, with ortho(b) < ortho(a)
    // and the orthomodular law failing at (a, b).
    for (Elem a : es) {
        if (a == l.zero() || a == l.one()) continue;
        for (Elem b : es) {
            if (b == l.zero() || b == l.one() || a == b) continue;
            if (!l.leq(a, b)) continue;
            if (l.join(a, l.meet(l.ortho(a), b)) != b) return true;
        }
    }
    return false;
}

inline void lattice_lemmas(std::vector<CheckReport>& out,
                           const std::shared_ptr<const OrthoLattice>& lp, Rng& rng,
                           int samples) {
    const OrthoLattice& l = *lp;
    Suite s(out, l);
    const bool small = l.size() <= 12;

    s.boolean("oml-law", "lattice " + l.name(), l.is_orthomodular(),
              "orthomodular law fails on this lattice");

    // Equivalent characterizations of orthomodularity, per pair.
    bool c2 = true, c3 = true, c4 = true, c5 = true;
    std::string w2, w3, w4, w5;
    auto pair_check = [&](Elem a, Elem b) {
        if (l.leq(a, b) && l.meet(l.ortho(a), b) == l.zero() && a != b) {
            c2 = false;
            w2 = l.name_of(a) + "," + l.name_of(b);
        }
        if (l.commutes(a, b)) {
            if (!l.commutes(b, a)) {
                c3 = false;
                w3 = l.name_of(a) + "," + l.name_of(b);
            }
            if (!l.commutes(l.ortho(a), b)) {
                c4 = false;
                w4 = l.name_of(a) + "," + l.name_of(b);
            }
            if (l.join(a, l.meet(l.ortho(a), b)) != l.join(a, b)) {
                c5 = false;
                w5 = l.name_of(a) + "," + l.name_of(b);
            }
        }
    };
    if (small) {
        for (std::uint16_t i = 0; i < l.size(); ++i)
            for (std::uint16_t j = 0; j < l.size(); ++j) pair_check(l.elem(i), l.elem(j));
    } else {
        for (int k = 0; k < samples; ++k)
            pair_check(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                       l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
    }
    // Each of the conditions characterizes orthomodularity, so on a
    // non-orthomodular lattice every one must fail somewhere (witnessed
    // only when the pair scan is exhaustive).
    const bool oml = l.is_orthomodular();
    auto cond = [&](bool holds) { return small ? holds == oml : (!oml || holds); };
    s.boolean("lem2.1.2", "all pairs", cond(c2), c2 ? "condition holds on a non-oml lattice" : w2);
    s.boolean("lem2.1.3", "all pairs", cond(c3), w3);
    s.boolean("lem2.1.4", "all pairs", cond(c4), w4);
    s.boolean("lem2.1.5", "all pairs", cond(c5), w5);
    if (!oml)
        s.boolean("lem2.1.o6-fails-one", "at least one of (2)-(5) fails",
                  !(c2 && c3 && c4 && c5), "");

    // Hexagon detection: a two-generated subalgebra order-isomorphic to
    // the benzene ring exists exactly when the lattice is not
    // orthomodular.
    {
        bool found = false;
        std::string wit;
        auto scan_pair = [&](Elem a, Elem b) {
            if (found) return;
            ElemSet sub = l.subalgebra(l.make_set({a, b}));
            if (subset_is_o6(l, sub)) {
                found = true;
                wit = l.name_of(a) + "," + l.name_of(b);
            }
        };
        if (small) {
            for (std::uint16_t i = 0; i < l.size() && !found; ++i)
                for (std::uint16_t j = 0; j < l.size() && !found; ++j)
                    scan_pair(l.elem(i), l.elem(j));
        } else {
            for (int k = 0; k < samples && !found; ++k)
                scan_pair(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                          l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
        }
        bool ok = small ? (found == !oml) : (!found || !oml);
        s.boolean("lem2.1.6", "hexagon subalgebra scan", ok, wit);
    }

    // Commutation is preserved by meets and joins, and localizes
    // distributivity, for commuting families.
    if (oml) {
        bool l22 = true, l23 = true;
        std::string w22, w23;
        auto fam_check = [&](Elem a, Elem b1, Elem b2) {
            if (!l.commutes(a, b1) || !l.commutes(a, b2)) return;
            if (!l.commutes(a, l.meet(b1, b2)) || !l.commutes(a, l.join(b1, b2))) {
                l22 = false;
                w22 = l.name_of(a) + "," + l.name_of(b1) + "," + l.name_of(b2);
            }
            if (l.meet(a, l.join(b1, b2)) != l.join(l.meet(a, b1), l.meet(a, b2)) ||
                l.join(a, l.meet(b1, b2)) != l.meet(l.join(a, b1), l.join(a, b2))) {
                l23 = false;
                w23 = l.name_of(a) + "," + l.name_of(b1) + "," + l.name_of(b2);
            }
        };
        if (small) {
            for (std::uint16_t i = 0; i < l.size(); ++i)
                for (std::uint16_t j = 0; j < l.size(); ++j)
                    for (std::uint16_t k = 0; k < l.size(); ++k)
                        fam_check(l.elem(i), l.elem(j), l.elem(k));
        } else {
            for (int k = 0; k < samples; ++k)
                fam_check(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                          l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                          l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
        }
        s.boolean("lem2.2", "commuting families", l22, w22);
        s.boolean("lem2.3", "commuting families", l23, w23);

        // Commutator facts on sampled subsets.
        bool l241 = true, l242 = true, l243 = true, l25 = true, l26 = true;
        std::string w24, w25, w26;
        auto subset_check = [&](const std::vector<Elem>& xs) {
            ElemSet a = l.make_set(xs);
            Elem g = l.commutator(a);
            Elem sg = l.strong_commutator(a);
            if (!l.leq(sg, g)) {
                l241 = false;
                w24 = "subset size " + std::to_string(a.size());
            }
            if (sg != g) l242 = false;
            bool allc = true;
            for (Elem p : xs)
                for (Elem q : xs)
                    if (!l.commutes(p, q)) allc = false;
            if ((g == l.one()) != allc) l243 = false;
            // Gated distributivity within the subset.
            for (Elem x : xs) {
                for (std::size_t i = 0; i < xs.size(); ++i)
                    for (std::size_t j = 0; j < xs.size(); ++j) {
                        Elem bj = l.join(xs[i], xs[j]);
                        Elem lhs = l.meet(sg, l.meet(x, bj));
                        Elem rhs = l.join(l.meet(x, xs[i]), l.meet(x, xs[j]));
                        if (!l.leq(lhs, rhs)) {
                            l25 = false;
                            w25 = l.name_of(x) + " over subset";
                        }
                        Elem lhs2 = l.meet(sg, l.meet(l.join(x, xs[i]), l.join(x, xs[j])));
                        Elem rhs2 = l.join(x, l.meet(xs[i], xs[j]));
                        if (!l.leq(lhs2, rhs2)) {
                            l25 = false;
                            w25 = l.name_of(x) + " over subset (dual)";
                        }
                    }
            }
            // Monotonicity into generated subalgebras.
            ElemSet sub = l.subalgebra(a);
            auto idxs = sub.indices();
            for (int t = 0; t < 3; ++t) {
                std::vector<Elem> bs;
                for (auto ix : idxs)
                    if (rng.coin()) bs.push_back(l.elem(ix));
                Elem gb = l.strong_commutator(l.make_set(bs));
                if (!l.leq(sg, gb)) {
                    l26 = false;
                    w26 = "B of size " + std::to_string(bs.size());
                }
            }
        };
        if (small) {
            for (std::uint16_t i = 0; i < l.size(); ++i)
                for (std::uint16_t j = 0; j < l.size(); ++j) subset_check({l.elem(i), l.elem(j)});
            for (int k = 0; k < samples; ++k)
                subset_check({l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                              l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                              l.elem(static_cast<std::uint16_t>(rng.next(l.size())))});
        } else {
            for (int k = 0; k < samples; ++k)
                subset_check({l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                              l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                              l.elem(static_cast<std::uint16_t>(rng.next(l.size())))});
        }
        s.boolean("lem2.4.1", "subsets", l241, w24);
        s.boolean("lem2.4.2", "finite subsets", l242, "strong and plain commutators differ");
        s.boolean("lem2.4.3", "subsets", l243, "commutator-1 vs pairwise commutation");
        s.boolean("lem2.5", "subsets", l25, w25);
        s.boolean("lem2.6", "subsets", l26, w26);
    }
}

inline void logic_lemmas(std::vector<CheckReport>& out,
                         const std::shared_ptr<const OrthoLattice>& lp, Rng& rng, int samples) {
    const OrthoLattice& l = *lp;
    Suite s(out, l);
    const bool small = l.size() <= 12;
    const std::vector<ImplKind> kinds = {ImplKind::Impl1, ImplKind::Impl2, ImplKind::Sasaki3,
                                         ImplKind::Impl4, ImplKind::Impl5};

    if (l.is_orthomodular()) {
        for (ImplKind k : kinds)
            s.boolean("bvn.kind" + std::to_string(static_cast<int>(k)), "all pairs",
                      check_bvn(k, l), "");
        s.boolean("bvn.material", "material conditional", check_bvn(ImplKind::Material0, l) ==
                                                              l.is_boolean(),
                  "");
    }

    auto sample_pair = [&](auto f) {
        if (small) {
            for (std::uint16_t i = 0; i < l.size(); ++i)
                for (std::uint16_t j = 0; j < l.size(); ++j) f(l.elem(i), l.elem(j));
        } else {
            for (int k = 0; k < samples; ++k)
                f(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                  l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
        }
    };
    auto sample_triple = [&](auto f) {
        if (small) {
            for (std::uint16_t i = 0; i < l.size(); ++i)
                for (std::uint16_t j = 0; j < l.size(); ++j)
                    for (std::uint16_t k = 0; k < l.size(); ++k)
                        f(l.elem(i), l.elem(j), l.elem(k));
        } else {
            for (int k = 0; k < samples; ++k)
                f(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                  l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                  l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
        }
    };

    if (l.is_orthomodular()) {
        // Polynomial implications collapse to the material conditional
        // exactly on commuting pairs.
        bool ok28 = true;
        std::string w28;
        sample_pair([&](Elem a, Elem b) {
            for (ImplKind k : kinds) {
                bool same = implies(k, a, b) == implies(ImplKind::Material0, a, b);
                if (same != l.commutes(a, b)) {
                    ok28 = false;
                    w28 = "kind " + std::to_string(static_cast<int>(k)) + " at " + l.name_of(a) +
                          "," + l.name_of(b);
                }
            }
        });
        s.boolean("lem2.8", "pairs x kinds", ok28, w28);

        bool okres = true;
        std::string wres;
        sample_pair([&](Elem a, Elem b) {
            if (sasaki_residual(a, b) != implies(ImplKind::Sasaki3, a, b)) {
                okres = false;
                wres = l.name_of(a) + "," + l.name_of(b);
            }
        });
        s.boolean("lem2.10.residual", "pairs", okres, wres);

        // Compatible import-export: holds for the Sasaki hook; every
        // other kind has a commuting violation unless the lattice is
        // boolean.
        bool sasaki_ok = true;
        std::vector<bool> others_violate(6, false);
        std::string wcie;
        sample_triple([&](Elem a, Elem b, Elem c) {
            if (!l.commutes(a, b)) return;
            bool lhs = l.leq(l.meet(a, b), c);
            for (int k : {0, 1, 2, 3, 4, 5}) {
                bool rhs = l.leq(a, implies(static_cast<ImplKind>(k), b, c));
                if (k == 3) {
                    if (lhs != rhs) {
                        sasaki_ok = false;
                        wcie = l.name_of(a) + "," + l.name_of(b) + "," + l.name_of(c);
                    }
                } else if (lhs != rhs) {
                    others_violate[static_cast<std::size_t>(k)] = true;
                }
            }
        });
        s.boolean("lem2.10.cie-sasaki", "commuting triples", sasaki_ok, wcie);
        if (small && !l.is_boolean()) {
            bool all_fail = others_violate[0] && others_violate[1] && others_violate[2] &&
                            others_violate[4] && others_violate[5];
            s.boolean("lem2.10.cie-unique", "kinds 0,1,2,4,5 each violate somewhere", all_fail, "");
        }

        // Unrestricted import-export characterizes boolean algebras.
        if (small) {
            std::vector<bool> violate(6, false);
            sample_triple([&](Elem a, Elem b, Elem c) {
                bool lhs = l.leq(l.meet(a, b), c);
                for (ImplKind k : kinds)
                    if (lhs != l.leq(a, implies(k, b, c)))
                        violate[static_cast<std::size_t>(k)] = true;
            });
            bool ok = true;
            for (ImplKind k : kinds)
                if (violate[static_cast<std::size_t>(k)] == l.is_boolean()) ok = false;
            s.boolean("lem2.9", "import-export iff boolean, per kind", ok, "");
        }

        // Gated conjunction/disjunction, contraposition and transitivity
        // for the Sasaki hook.
        bool ok1 = true, ok2 = true, ok3 = true;
        std::string w1, w2, w3;
        auto sample_quad = [&](auto f) {
            if (small && l.size() <= 6) {
                for (std::uint16_t i = 0; i < l.size(); ++i)
                    for (std::uint16_t j = 0; j < l.size(); ++j)
                        for (std::uint16_t k = 0; k < l.size(); ++k)
                            for (std::uint16_t m = 0; m < l.size(); ++m)
                                f(l.elem(i), l.elem(j), l.elem(k), l.elem(m));
            } else {
                for (int k = 0; k < samples; ++k)
                    f(l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                      l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                      l.elem(static_cast<std::uint16_t>(rng.next(l.size()))),
                      l.elem(static_cast<std::uint16_t>(rng.next(l.size()))));
            }
        };
        sample_quad([&](Elem a1, Elem b1, Elem a2, Elem b2) {
            ElemSet x = l.make_set({a1, b1, a2, b2});
            Elem g = l.strong_commutator(x);
            Elem imps = l.meet(implies(ImplKind::Sasaki3, a1, b1), implies(ImplKind::Sasaki3, a2, b2));
            if (!l.leq(l.meet(g, imps),
                       implies(ImplKind::Sasaki3, l.meet(a1, a2), l.meet(b1, b2)))) {
                ok1 = false;
                w1 = "meet form";
            }
            if (!l.leq(l.meet(g, imps),
                       implies(ImplKind::Sasaki3, l.join(a1, a2), l.join(b1, b2)))) {
                ok1 = false;
                w1 = "join form";
            }
        });
        sample_pair([&](Elem a, Elem b) {
            Elem g = l.strong_commutator(l.make_set({a, b}));
            if (!l.leq(l.meet(g, implies(ImplKind::Sasaki3, a, b)),
                       implies(ImplKind::Sasaki3, l.ortho(b), l.ortho(a)))) {
                ok2 = false;
                w2 = l.name_of(a) + "," + l.name_of(b);
            }
        });
        sample_triple([&](Elem a, Elem b, Elem c) {
            Elem g = l.strong_commutator(l.make_set({a, b, c}));
            Elem chain = l.meet(implies(ImplKind::Sasaki3, a, b), implies(ImplKind::Sasaki3, b, c));
            if (!l.leq(l.meet(g, chain), implies(ImplKind::Sasaki3, a, c))) {
                ok3 = false;
                w3 = l.name_of(a) + "," + l.name_of(b) + "," + l.name_of(c);
            }
        });
        s.boolean("lem2.11.1", "quadruples", ok1, w1);
        s.boolean("lem2.11.2", "pairs", ok2, w2);
        s.boolean("lem2.11.3", "triples", ok3, w3);
    }
}

inline std::vector<CheckReport> example_3_4_reports() {
    auto lp = builtin("chinese_lantern");
    const OrthoLattice& l = *lp;
    std::vector<CheckReport> out;
    Suite s(out, l);
    Elem pm = l.by_name("p−");
    Elem pp = l.by_name("p+");
    Elem qm = l.by_name("p̄−");
    Elem qp = l.by_name("p̄+");
    auto bi = [&](Elem a, Elem b) { return biimplies(ImplKind::Sasaki3, a, b); };

    s.equal("ex3.4.a", "p- <-> p+", bi(pm, pp), l.zero());
    s.equal("ex3.4.a", "p- <-> pb-", bi(pm, qm), l.zero());
    s.equal("ex3.4.a", "p- <-> pb+", bi(pm, qp), l.zero());
    s.equal("ex3.4.a", "p- <-> 1", bi(pm, l.one()), pm);

    // Lower bound via the all-words witness with every action valued
    // p-. The pair set (language value, witness value) stabilizes by
    // length 2: (1,1) at the empty word, (1,p-) on the diagonal words,
    // (p-,p-) elsewhere; the bounded meet below is therefore exact.
    {
        Alphabet alpha({"s", "t"});
        LAutomaton::Builder wb(lp, alpha);
        wb.state("q").initial("q", l.one()).terminal("q", l.one());
        wb.edge("q", "s", "q", pm).edge("q", "t", "q", pm);
        LAutomaton witness = wb.build();
        auto a_pm = [&](const Word& w) {
            std::size_t n = 0;
            while (n < w.size() && w[n] == 0) ++n;
            bool diag = (2 * n == w.size());
            for (std::size_t i = n; i < w.size(); ++i) diag = diag && w[i] == 1;
            return diag ? l.one() : pm;
        };
        Elem degree = l.one();
        omlq::detail::for_each_word(alpha, 6, [&](const Word& w) {
            degree = l.meet(degree, biimplies(ImplKind::Sasaki3, a_pm(w), rec(witness, w)));
        });
        s.equal("ex3.4.b", "degree of the all-words witness", degree, pm);
        s.lesseq("ex3.4.b", "lower bound", pm, degree);
    }

    // Pumping step on a concrete two-state automaton: repeating the
    // looped prefix cannot lose recognition value.
    {
        Alphabet alpha({"s", "t"});
        LAutomaton::Builder rb(lp, alpha);
        rb.states({"r0", "r1"});
        rb.initial("r0", l.one()).terminal("r1", l.one());
        rb.edge("r0", "s", "r0", pm).edge("r0", "t", "r1", pm).edge("r1", "t", "r1", l.one());
        LAutomaton m = rb.build();
        Word base = alpha.parse_word("s s t t");
        Elem orig = rec(m, base);
        Elem pumped = l.zero();
        for (int d = 1; d <= 2; ++d) {
            Word w;
            for (int i = 0; i < 2 + d; ++i) w.push_back(0);
            w.push_back(1);
            w.push_back(1);
            pumped = l.join(pumped, rec(m, w));
        }
        s.lesseq("ex3.4.c", "pumped join dominates", orig, pumped);
    }
    return out;
}

}  // namespace detail

}  // namespace omlq

#include "omlq/verify_suites.hpp"

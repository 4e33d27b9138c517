// Acceptance harness: one line per criterion, nonzero exit if any
// criterion fails. Runtime target well under a minute.

#include <iostream>

#include "omlq/verify.hpp"

using namespace omlq;

namespace {

int g_failed = 0;

void criterion(int id, bool passed, const std::string& detail) {
    std::cout << "CRITERION " << id << ": " << (passed ? "PASS" : "FAIL") << " - " << detail
              << "\n";
    if (!passed) ++g_failed;
}

int count_failures(const std::vector<CheckReport>& rs,
                   const std::vector<std::string>& with_prefixes = {}) {
    int n = 0;
    for (const auto& r : rs) {
        if (!with_prefixes.empty()) {
            bool hit = false;
            for (const auto& p : with_prefixes) hit = hit || r.check_id.rfind(p, 0) == 0;
            if (!hit) continue;
        }
        if (!r.passed) ++n;
    }
    return n;
}

bool report_passed(const std::vector<CheckReport>& rs, const std::string& id) {
    for (const auto& r : rs)
        if (r.check_id == id && !r.passed) return false;
    return true;
}

// -------------------------------------------------------------------
// Classical oracles for the crisp-degeneration criterion: bitmask NFA
// simulation, subset construction, closure of empty moves and a
// boolean state-elimination regex with a backtracking matcher. All of
// it is independent of the library's propagation machinery.

struct Cnfa {
    int n = 0;
    int nsym = 0;
    std::vector<std::vector<std::uint32_t>> step;  // [sym][state] -> target mask
    std::vector<std::uint32_t> eps;                // [state] -> target mask
    std::uint32_t init = 0, fin = 0;
};

std::uint32_t eps_close(const Cnfa& a, std::uint32_t set) {
    std::uint32_t cur = set;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q < a.n; ++q)
            if ((cur >> q) & 1) {
                std::uint32_t add = a.eps[static_cast<std::size_t>(q)] & ~cur;
                if (add) {
                    cur |= add;
                    changed = true;
                }
            }
    }
    return cur;
}

bool cnfa_accepts(const Cnfa& a, const Word& w) {
    std::uint32_t cur = eps_close(a, a.init);
    for (auto sym : w) {
        std::uint32_t next = 0;
        for (int q = 0; q < a.n; ++q)
            if ((cur >> q) & 1) next |= a.step[static_cast<std::size_t>(sym)][static_cast<std::size_t>(q)];
        cur = eps_close(a, next);
    }
    return (cur & a.fin) != 0;
}

// Subset construction over bitmasks (no empty moves).
std::size_t subset_state_count(const Cnfa& a) {
    std::map<std::uint32_t, int> ids;
    std::deque<std::uint32_t> work;
    ids.emplace(a.init, 0);
    work.push_back(a.init);
    while (!work.empty()) {
        std::uint32_t cur = work.front();
        work.pop_front();
        for (int s = 0; s < a.nsym; ++s) {
            std::uint32_t next = 0;
            for (int q = 0; q < a.n; ++q)
                if ((cur >> q) & 1) next |= a.step[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)];
            if (ids.emplace(next, static_cast<int>(ids.size())).second) work.push_back(next);
        }
    }
    return ids.size();
}

struct Crx {
    char op;  // '0' empty, 'e' eps, 'a' symbol, '+', '.', '*'
    int sym = -1;
    std::shared_ptr<Crx> l, r;
};
using CrxP = std::shared_ptr<Crx>;

CrxP crx(char op, CrxP l = nullptr, CrxP r = nullptr, int sym = -1) {
    auto p = std::make_shared<Crx>();
    p->op = op;
    p->l = std::move(l);
    p->r = std::move(r);
    p->sym = sym;
    return p;
}

bool crx_match(const CrxP& e, const Word& w, std::size_t i, std::size_t j) {
    switch (e->op) {
        case '0': return false;
        case 'e': return i == j;
        case 'a': return j == i + 1 && w[i] == e->sym;
        case '+': return crx_match(e->l, w, i, j) || crx_match(e->r, w, i, j);
        case '.':
            for (std::size_t k = i; k <= j; ++k)
                if (crx_match(e->l, w, i, k) && crx_match(e->r, w, k, j)) return true;
            return false;
        case '*':
            if (i == j) return true;
            for (std::size_t k = i + 1; k <= j; ++k)
                if (crx_match(e->l, w, i, k) && crx_match(e, w, k, j)) return true;
            return false;
    }
    return false;
}

// Classical state elimination in declaration order.
CrxP crx_eliminate(const Cnfa& a) {
    const int n = a.n;
    std::vector<CrxP> cur(static_cast<std::size_t>(n * n));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            CrxP acc = u == v ? crx('e') : crx('0');
            for (int s = 0; s < a.nsym; ++s)
                if ((a.step[static_cast<std::size_t>(s)][static_cast<std::size_t>(u)] >> v) & 1)
                    acc = crx('+', acc, crx('a', nullptr, nullptr, s));
            cur[static_cast<std::size_t>(u * n + v)] = acc;
        }
    for (int q = 0; q < n; ++q) {
        std::vector<CrxP> next(static_cast<std::size_t>(n * n));
        CrxP loop = crx('*', cur[static_cast<std::size_t>(q * n + q)]);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                next[static_cast<std::size_t>(u * n + v)] =
                    crx('+', cur[static_cast<std::size_t>(u * n + v)],
                        crx('.', crx('.', cur[static_cast<std::size_t>(u * n + q)], loop),
                            cur[static_cast<std::size_t>(q * n + v)]));
        cur = std::move(next);
    }
    CrxP total = crx('0');
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (((a.init >> u) & 1) && ((a.fin >> v) & 1))
                total = crx('+', total, cur[static_cast<std::size_t>(u * n + v)]);
    return total;
}

Cnfa random_cnfa(Rng& rng, int nsym, bool with_eps) {
    Cnfa a;
    a.n = 2 + static_cast<int>(rng.next(3));
    a.nsym = nsym;
    a.step.assign(static_cast<std::size_t>(nsym), std::vector<std::uint32_t>(static_cast<std::size_t>(a.n), 0));
    a.eps.assign(static_cast<std::size_t>(a.n), 0);
    for (int s = 0; s < nsym; ++s)
        for (int q = 0; q < a.n; ++q)
            for (int t = 0; t < a.n; ++t)
                if (rng.next(100) < 35) a.step[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)] |= 1u << t;
    if (with_eps)
        for (int q = 0; q < a.n; ++q)
            for (int t = 0; t < a.n; ++t)
                if (q != t && rng.next(100) < 20) a.eps[static_cast<std::size_t>(q)] |= 1u << t;
    a.init = 1u | (rng.coin() ? 2u : 0u);
    a.fin = static_cast<std::uint32_t>(1 + rng.next((1u << a.n) - 1));
    return a;
}

LAutomaton lift_cnfa(const Cnfa& a, const std::shared_ptr<const OrthoLattice>& l,
                     const Alphabet& alpha) {
    LAutomaton::Builder b(l, alpha);
    for (int q = 0; q < a.n; ++q) b.state("q" + std::to_string(q));
    for (int q = 0; q < a.n; ++q) {
        if ((a.init >> q) & 1) b.initial("q" + std::to_string(q), l->one());
        if ((a.fin >> q) & 1) b.terminal("q" + std::to_string(q), l->one());
        for (int s = 0; s < a.nsym; ++s)
            for (int t = 0; t < a.n; ++t)
                if ((a.step[static_cast<std::size_t>(s)][static_cast<std::size_t>(q)] >> t) & 1)
                    b.edge("q" + std::to_string(q), alpha.sym(s), "q" + std::to_string(t),
                           l->one());
        for (int t = 0; t < a.n; ++t)
            if ((a.eps[static_cast<std::size_t>(q)] >> t) & 1)
                b.eps_edge("q" + std::to_string(q), "q" + std::to_string(t), l->one());
    }
    return b.build();
}

}  // namespace

int main() {
    // 1: bi-implication identities on the spin-pair lattice.
    {
        auto cl = builtin("chinese_lantern");
        Elem pm = cl->by_name("p−"), pp = cl->by_name("p+");
        Elem qm = cl->by_name("p̄−"), qp = cl->by_name("p̄+");
        bool ok = biimplies(ImplKind::Sasaki3, pm, pp) == cl->zero() &&
                  biimplies(ImplKind::Sasaki3, pm, qm) == cl->zero() &&
                  biimplies(ImplKind::Sasaki3, pm, qp) == cl->zero() &&
                  biimplies(ImplKind::Sasaki3, pm, cl->one()) == pm;
        criterion(1, ok, "spin-pair bi-implication identities, exact equality");
    }

    auto counter = run_suite("counterexamples", builtin("mo2"), 1, 4, 1);

    // 2: the branching instance and its power-set values.
    {
        bool ok = report_passed(counter, "fig3.rec") && report_passed(counter, "fig3.det") &&
                  report_passed(counter, "fig3.pinned.rec") &&
                  report_passed(counter, "fig3.pinned.det") && report_passed(counter, "fig3.gap");
        criterion(2, ok, "branching instance: (a^c)v(b^c) vs (avb)^c, strict gap 0 < y");
    }

    // 3: the remaining fixed instances. The one-symbol iteration
    // instance cannot reproduce its displayed values: the (s,s,s)
    // decomposition and the single-factor recycle path evaluate both
    // sides to the bare a, absorbing the displayed two-factor values.
    // Those two pinned checks are kept as stated and fail; everything
    // else, including the two-symbol iteration variant with the same
    // shape, reproduces its displayed values with a strict gap.
    {
        int fails = count_failures(
            counter, {"fig45.", "fig6.", "fig7.", "fig8.", "fig9.", "prop7.5.3."});
        bool fig8_expected_red = !report_passed(counter, "fig8.displayed.rec") &&
                                 !report_passed(counter, "fig8.displayed.gap");
        bool others_ok = fails == 2 && fig8_expected_red;
        criterion(3, fails == 0,
                  others_ok
                      ? "figure-8 displayed values not attainable by direct evaluation "
                        "(both sides evaluate to a; two pinned checks red, all other "
                        "instances reproduce their displayed values with strict gaps)"
                      : "unexpected failures beyond the documented figure-8 instance");
    }

    // 4: lemma battery.
    {
        bool ok = true;
        for (const char* name : {"mo2", "chinese_lantern"}) {
            auto l = builtin(name);
            ok = ok && count_failures(run_suite("lattice-lemmas", l, 11, 5, 200)) == 0;
            ok = ok && count_failures(run_suite("logic-lemmas", l, 11, 5, 200)) == 0;
        }
        auto free2 = builtin("free2");
        ok = ok && count_failures(run_suite("lattice-lemmas", free2, 11, 5, 1000)) == 0;
        ok = ok && count_failures(run_suite("logic-lemmas", free2, 11, 5, 1000)) == 0;
        auto o6 = run_suite("lattice-lemmas", builtin("o6"), 11, 5, 200);
        ok = ok && !report_passed(o6, "oml-law") && report_passed(o6, "lem2.1.o6-fails-one") &&
             report_passed(o6, "lem2.1.6");
        criterion(4, ok,
                  "lemma battery exhaustive on mo2 and chinese_lantern, 1000 samples on free2; "
                  "hexagon fails orthomodularity and is detected");
    }

    // 5: gated-inequality property suite, 200 automata per lattice.
    std::vector<CheckReport> suite5;
    {
        bool ok = true;
        for (const char* name : {"mo2", "chinese_lantern"}) {
            auto l = builtin(name);
            auto rs = run_suite("automata-theorems", l, 20250809, 5, 200);
            ok = ok && count_failures(rs) == 0;
            for (auto& r : rs) suite5.push_back(std::move(r));
            auto rx = run_suite("regex-theorems", l, 20250809, 5, 200);
            ok = ok && count_failures(rx) == 0;
        }
        criterion(5, ok,
                  "theorems 4.1/5.1, props 6.1-6.9, 7.1, 7.5, lem 2.12: 200 seeded automata per "
                  "lattice, words to length 5, zero violations");
    }

    // 6: equality collapse over a distributive lattice.
    {
        auto rs = run_suite("boolean-equalities", builtin("boolN:3"), 20250809, 5, 200);
        criterion(6, count_failures(rs) == 0,
                  "all gated inequalities collapse to equalities over boolN:3, zero violations");
    }

    // 7: exactness cross-checks.
    {
        auto l = builtin("mo2");
        Rng rng(424242);
        bool agree = true;
        for (int i = 0; i < 100 && agree; ++i) {
            Alphabet alpha = gen::small_alphabet(rng);
            LAutomaton::Builder b1(l, alpha), b2(l, alpha);
            for (int q = 0; q < 3; ++q) {
                b1.state("q" + std::to_string(q));
                b2.state("q" + std::to_string(q));
            }
            for (auto* b : {&b1, &b2})
                for (int q = 0; q < 3; ++q) {
                    b->initial("q" + std::to_string(q), gen::random_value(rng, *l));
                    b->terminal("q" + std::to_string(q), gen::random_value(rng, *l));
                    for (std::size_t s = 0; s < alpha.size(); ++s)
                        for (int t = 0; t < 3; ++t) {
                            Elem v = gen::random_value(rng, *l);
                            if (v != l->zero())
                                b->edge("q" + std::to_string(q),
                                        alpha.sym(static_cast<std::int32_t>(s)),
                                        "q" + std::to_string(t), v);
                        }
                }
            LAutomaton m1 = b1.build(), m2 = b2.build();
            agree = equiv_degree_exact(m1, m2, ImplKind::Sasaki3) ==
                    equiv_degree_bounded_aut(m1, m2, ImplKind::Sasaki3, 12);
        }
        int path_disagreements = 0;
        for (const auto& r : suite5)
            if (r.check_id == "agree.path" && !r.passed) ++path_disagreements;
        criterion(7, agree && path_disagreements == 0,
                  "exact equivalence matches the length-12 bounded meet on 100 pairs; "
                  "propagation rec matches path enumeration on every suite-5 instance");
    }

    // 8: pumping relaxation.
    {
        bool ok = true;
        for (const char* name : {"mo2", "boolN:3"}) {
            auto rs = run_suite("pumping", builtin(name), 31337, 8, 50);
            ok = ok && count_failures(rs) == 0;
        }
        criterion(8, ok, "50 seeded witness pairs per lattice at max_len 8, max_pump 3");
    }

    // 9: crisp degeneration against classical oracles.
    {
        auto two = builtin("bool2");
        Rng rng(999);
        bool ok = true;
        std::string why = "100 random crisp automata match the classical oracles to length 5";
        for (int i = 0; i < 100 && ok; ++i) {
            int nsym = 1 + static_cast<int>(rng.next(2));
            Alphabet alpha = nsym == 1 ? Alphabet({"a"}) : Alphabet({"a", "b"});
            Cnfa plain = random_cnfa(rng, nsym, false);
            LAutomaton m = lift_cnfa(plain, two, alpha);
            LAutomaton det = determinize(m);
            KleeneRep k = kleene_representation(m);
            CrxP elim = crx_eliminate(plain);
            if (subset_state_count(plain) != det.state_count()) {
                ok = false;
                why = "subset construction state count differs";
                break;
            }
            detail::for_each_word(alpha, 5, [&](const Word& w) {
                if (!ok) return;
                bool acc = cnfa_accepts(plain, w);
                Elem expect = acc ? two->one() : two->zero();
                if (rec(m, w) != expect) { ok = false; why = "rec vs NFA simulation"; }
                else if (rec(det, w) != expect) { ok = false; why = "determinize vs subset construction"; }
                else if (regex_eval(k.regex, w) != expect) { ok = false; why = "expression vs acceptance"; }
                else if (crx_match(elim, w, 0, w.size()) != acc) { ok = false; why = "classical elimination oracle mismatch"; }
                else if ((regex_eval(k.regex, w) == two->one()) !=
                         crx_match(elim, w, 0, w.size())) { ok = false; why = "expression vs classical elimination"; }
            });

            Cnfa withe = random_cnfa(rng, nsym, true);
            EpsAutomaton me = lift_cnfa(withe, two, alpha);
            LAutomaton red = eps_reduce(me);
            detail::for_each_word(alpha, 5, [&](const Word& w) {
                if (!ok) return;
                bool acc = cnfa_accepts(withe, w);
                Elem expect = acc ? two->one() : two->zero();
                if (rec_eps(me, w) != expect) { ok = false; why = "rec_eps vs closure simulation"; }
                else if (rec(red, w) != expect) { ok = false; why = "eps_reduce vs closure simulation"; }
            });
        }
        criterion(9, ok, why);
    }

    std::cout << (g_failed == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: " + std::to_string(g_failed) +
                                      " criterion(s) failed\n");
    return g_failed == 0 ? 0 : 1;
}

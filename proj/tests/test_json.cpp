#include <catch2/catch_amalgamated.hpp>

#include "omlq/json_io.hpp"

using namespace omlq;

TEST_CASE("lattice documents") {
    io::json j = {
        {"name", "diamond"},
        {"elements", {"0", "p", "q", "1"}},
        {"leq", {{"0", "p"}, {"0", "q"}, {"p", "1"}, {"q", "1"}}},
        {"ortho", {{"0", "1"}, {"p", "q"}}},
    };
    auto l = validate_lattice(io::raw_lattice_from_json(j));
    CHECK(l->size() == 4);
    CHECK(l->is_boolean());

    auto l2 = validate_lattice(io::raw_lattice_from_json(io::lattice_to_json(*l)));
    CHECK(l2->size() == l->size());
    for (std::uint16_t i = 0; i < l->size(); ++i)
        for (std::uint16_t k = 0; k < l->size(); ++k) {
            CHECK(l->name_of(l->meet(l->elem(i), l->elem(k))) ==
                  l2->name_of(l2->meet(l2->elem(i), l2->elem(k))));
        }

    CHECK(io::load_lattice_ref("builtin:mo2")->size() == 6);
    CHECK_THROWS_AS(io::load_lattice_ref("builtin:nope"), UnknownBuiltin);
    CHECK_THROWS_AS(io::load_lattice_ref("/no/such/file.json"), io::IoError);
}

TEST_CASE("automaton documents") {
    io::json j = {
        {"lattice", "builtin:mo2"},
        {"alphabet", {"s"}},
        {"states", {"u", "v", "w"}},
        {"initial", {{"u", "1"}, {"v", "1"}}},
        {"terminal", {{"w", "1"}}},
        {"delta",
         {{"u", "s", "u", "x"}, {"u", "s", "w", "y"}, {"v", "s", "u", "x'"}}},
    };
    LAutomaton m = io::automaton_from_json(j);
    auto l = m.lattice();
    Word ss = m.alphabet().parse_word("s s");
    CHECK(rec(m, ss) == l->zero());

    // Omitted entries mean the zero element.
    CHECK(m.terminal(m.state_index("u")) == l->zero());
    CHECK(m.delta(m.state_index("w"), 0, m.state_index("u")) == l->zero());

    SECTION("round trip preserves every recognition value") {
        LAutomaton m2 = io::automaton_from_json(io::automaton_to_json(m, "builtin:mo2"));
        detail::for_each_word(m.alphabet(), 5, [&](const Word& w) {
            CHECK(rec(m2, w) == rec(m, w));
        });
    }

    SECTION("empty-move entries use the reserved token") {
        io::json je = j;
        je["delta"].push_back({"w", "@eps", "v", "y"});
        EpsAutomaton me = io::automaton_from_json(je);
        CHECK_FALSE(me.eps_free());
        io::json out = io::automaton_to_json(me, "builtin:mo2");
        bool has_eps = false;
        for (const auto& e : out["delta"]) has_eps = has_eps || e[1] == "@eps";
        CHECK(has_eps);
        LAutomaton me2 = io::automaton_from_json(out);
        detail::for_each_word(me.alphabet(), 4, [&](const Word& w) {
            CHECK(rec_eps(me2, w) == rec_eps(me, w));
        });
    }
}

TEST_CASE("language documents") {
    io::json j = {
        {"lattice", "builtin:mo2"},
        {"alphabet", {"a", "b"}},
        {"entries", {{{"word", {"a", "a"}}, {"value", "x"}}, {{"word", io::json::array()}, {"value", "y"}}}},
    };
    LValuedLanguage a = io::language_from_json(j);
    auto l = a.lattice();
    CHECK(a.eval(a.alphabet().parse_word("a a")) == l->by_name("x"));
    CHECK(a.eval({}) == l->by_name("y"));

    LValuedLanguage a2 = io::language_from_json(io::language_to_json(a, "builtin:mo2"));
    detail::for_each_word(a.alphabet(), 3, [&](const Word& w) {
        CHECK(a2.eval(w) == a.eval(w));
    });
}

TEST_CASE("expression documents") {
    auto l = builtin("mo2");
    Alphabet ab({"a", "b"});
    Regex r = parse_regex("<x>a (b + @)*", l, ab);
    Regex r2 = io::regex_from_json(io::regex_to_json(r), l, ab);
    detail::for_each_word(ab, 4, [&](const Word& w) {
        CHECK(regex_eval(r2, w) == regex_eval(r, w));
    });

    io::json bad = {{"op", "what"}};
    CHECK_THROWS_AS(io::regex_from_json(bad, l, ab), io::IoError);
}

TEST_CASE("dot emission mentions every state") {
    io::json j = {
        {"lattice", "builtin:mo2"},
        {"alphabet", {"s"}},
        {"states", {"u", "w"}},
        {"initial", {{"u", "1"}}},
        {"terminal", {{"w", "y"}}},
        {"delta", {{"u", "s", "w", "x"}}},
    };
    std::string dot = io::to_dot(io::automaton_from_json(j));
    CHECK(dot.find("\"u\" -> \"w\"") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
}

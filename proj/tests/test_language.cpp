#include <catch2/catch_amalgamated.hpp>

#include "omlq/language.hpp"

using namespace omlq;

namespace {

LValuedLanguage table(const std::shared_ptr<const OrthoLattice>& l, const Alphabet& alpha,
                      std::initializer_list<std::pair<const char*, const char*>> entries) {
    std::vector<std::pair<Word, Elem>> es;
    for (auto [w, v] : entries) es.push_back({alpha.parse_word(w), l->by_name(v)});
    return LValuedLanguage::finite_table(l, alpha, es);
}

}  // namespace

TEST_CASE("alphabets and words") {
    Alphabet ab({"a", "b"});
    CHECK(ab.parse_word("").empty());
    CHECK(ab.parse_word("a b a") == Word{0, 1, 0});
    CHECK(ab.format_word({1, 0}) == "b a");
    CHECK_THROWS_AS(ab.parse_word("a c"), AlphabetMismatch);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), AlphabetMismatch);
    CHECK_THROWS_AS(Alphabet({"@eps"}), AlphabetMismatch);
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), AlphabetMismatch);
}

TEST_CASE("finite table evaluation") {
    auto l = builtin("mo2");
    Alphabet ab({"a", "b"});
    auto A = table(l, ab, {{"a a", "x"}});
    CHECK(A.eval(ab.parse_word("a a")) == l->by_name("x"));
    CHECK(A.eval(ab.parse_word("a b")) == l->zero());
    CHECK(A.eval({}) == l->zero());
    CHECK_THROWS_AS(A.eval(Word{7}), AlphabetMismatch);
}

TEST_CASE("pointwise connectives") {
    auto l = builtin("mo2");
    Alphabet ab({"a", "b"});
    auto A = table(l, ab, {{"a", "x"}, {"b b", "y"}});
    auto B = table(l, ab, {{"a", "y"}});
    Word wa = ab.parse_word("a");

    CHECK(intersect(A, B).eval(wa) == l->zero());
    CHECK(unite(A, B).eval(wa) == l->one());
    CHECK(scalar(l->by_name("y'"), A).eval(wa) == l->zero());
    CHECK(complement(A).eval(wa) == l->by_name("x'"));

    SECTION("involution and De Morgan at sampled words") {
        detail::for_each_word(ab, 3, [&](const Word& w) {
            CHECK(complement(complement(A)).eval(w) == A.eval(w));
            CHECK(complement(unite(A, B)).eval(w) ==
                  intersect(complement(A), complement(B)).eval(w));
        });
    }

    SECTION("unit elements") {
        auto empty = table(l, ab, {});
        auto full = complement(empty);
        detail::for_each_word(ab, 3, [&](const Word& w) {
            CHECK(unite(A, empty).eval(w) == A.eval(w));
            CHECK(intersect(A, full).eval(w) == A.eval(w));
        });
    }

    SECTION("distributivity over union fails on mo2 values") {
        auto C = table(l, ab, {{"a", "y'"}});
        Elem lhs = intersect(A, unite(B, C)).eval(wa);        // x ^ (y v y') = x
        Elem rhs = unite(intersect(A, B), intersect(A, C)).eval(wa);  // 0 v 0
        CHECK(lhs == l->by_name("x"));
        CHECK(rhs == l->zero());
    }

    SECTION("lattice and alphabet mismatches") {
        auto other = table(builtin("boolN:2"), ab, {});
        CHECK_THROWS_AS(intersect(A, other), CrossLattice);
        auto ac = table(l, Alphabet({"a", "c"}), {});
        CHECK_THROWS_AS(unite(A, ac), AlphabetMismatch);
    }
}

TEST_CASE("concatenation and iteration") {
    auto l = builtin("mo2");
    Alphabet a1({"a"});
    auto A = table(l, a1, {{"a", "x"}});
    auto B = table(l, a1, {{"a", "y"}});
    CHECK(concat(A, B).eval(a1.parse_word("a a")) == l->zero());  // x ^ y

    auto C = table(l, a1, {{"a", "x"}, {"a a", "y"}});
    CHECK(kleene_star(C).eval({}) == l->one());
    CHECK(kleene_star(C).eval(a1.parse_word("a a")) == l->one());  // y v (x^x)
    CHECK(kleene_star(C).eval(a1.parse_word("a")) == l->by_name("x"));

    SECTION("iterated powers agree in the distributive case") {
        auto b3 = builtin("boolN:3");
        Alphabet ab({"a", "b"});
        auto D = table(b3, ab, {{"a", "010"}, {"a b", "110"}, {"b", "001"}});
        LValuedLanguage star = kleene_star(D);
        // union of D^0..D^4 dominates every composition of words up to length 4
        LValuedLanguage eps_only = LValuedLanguage::finite_table(
            b3, ab, {{Word{}, b3->one()}});
        LValuedLanguage power = eps_only, acc = eps_only;
        for (int n = 1; n <= 4; ++n) {
            power = concat(power, D);
            acc = unite(acc, power);
        }
        detail::for_each_word(ab, 4, [&](const Word& w) { CHECK(star.eval(w) == acc.eval(w)); });
    }
}

TEST_CASE("images and pre-images") {
    auto l = builtin("mo2");
    Alphabet sig({"a"});
    Alphabet gam({"c"});
    SymbolMap h{sig, gam, {gam.parse_word("c c")}};

    auto A = table(l, sig, {{"a", "x"}});
    CHECK(image(h, A).eval(gam.parse_word("c c")) == l->by_name("x"));
    CHECK(image(h, A).eval(gam.parse_word("c")) == l->zero());
    CHECK(image(h, A).exact());

    auto B = table(l, gam, {{"c c", "y"}});
    detail::for_each_word(sig, 3, [&](const Word& w) {
        CHECK(preimage(h, B).eval(w) == B.eval(h.apply(w)));
    });

    SECTION("identity mapping") {
        SymbolMap id{sig, sig, {sig.parse_word("a")}};
        detail::for_each_word(sig, 3, [&](const Word& w) {
            CHECK(image(id, A).eval(w) == A.eval(w));
        });
    }

    SECTION("erasing mappings are flagged and bounded") {
        SymbolMap er{sig, gam, {Word{}}};
        LValuedLanguage img = image(er, A, 6);
        CHECK_FALSE(img.exact());
        CHECK(img.eval({}) == l->by_name("x"));  // a maps to the empty word
        CHECK_THROWS_AS(image(er, A, 6, /*require_exact=*/true), ErasingImageUnbounded);
    }
}

TEST_CASE("threshold cuts") {
    auto l = builtin("mo2");
    Alphabet a1({"a"});
    auto A = table(l, a1, {{"a a", "x"}});

    auto cut = thresholds(A, l->by_name("y"));
    REQUIRE(cut.down.size() == 1);
    CHECK(cut.down[0] == a1.parse_word("a a"));
    CHECK(cut.up.size() == 1);
    CHECK(cut.up_includes_rest);

    CHECK(thresholds(A, l->one()).down.empty());
    auto clamp0 = thresholds(A, l->zero());
    CHECK_FALSE(clamp0.up_includes_rest);
    detail::for_each_word(a1, 3, [&](const Word& w) {
        CHECK(clamp0.clamp.eval(w) == A.eval(w));
    });

    CHECK_THROWS_AS(thresholds(complement(A), l->zero()), NotFiniteSupport);
}

TEST_CASE("bounded equivalence degree") {
    auto l = builtin("mo2");
    Alphabet a1({"a"});
    auto A = table(l, a1, {{"a", "x"}});
    auto B = table(l, a1, {{"a", "y"}});

    CHECK(equiv_degree_bounded(A, A, ImplKind::Sasaki3, 4) == l->one());
    CHECK(equiv_degree_bounded(A, B, ImplKind::Sasaki3, 1) == l->zero());
    CHECK(equiv_degree_bounded(A, B, ImplKind::Sasaki3, 0) == l->one());  // only the empty word
}

TEST_CASE("point membership degrees") {
    auto l = builtin("mo2");
    Alphabet a1({"a"});
    auto A = table(l, a1, {{"a", "y"}});
    LValuedPoint p(a1.parse_word("a"), l->by_name("x"));
    CHECK(point_membership(ImplKind::Sasaki3, p, A) ==
          implies(ImplKind::Sasaki3, l->by_name("x"), l->by_name("y")));
    CHECK_THROWS_AS(LValuedPoint(a1.parse_word("a"), l->zero()), Error);
}

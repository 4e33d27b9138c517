#include <catch2/catch_amalgamated.hpp>

#include "omlq/logic.hpp"

using namespace omlq;

namespace {
const std::vector<ImplKind> kPolyKinds = {ImplKind::Impl1, ImplKind::Impl2, ImplKind::Sasaki3,
                                          ImplKind::Impl4, ImplKind::Impl5};
}

TEST_CASE("implication polynomials") {
    auto l = builtin("mo2");
    Elem x = l->by_name("x"), y = l->by_name("y");

    CHECK(implies(ImplKind::Sasaki3, x, y) == l->by_name("x'"));  // x' v (x^y) = x' v 0
    for (ImplKind k : kPolyKinds)
        for (std::uint16_t i = 0; i < l->size(); ++i)
            CHECK(implies(k, l->elem(i), l->elem(i)) == l->one());

    auto cl = builtin("chinese_lantern");
    Elem pm = cl->by_name("p−");
    CHECK(implies(ImplKind::Sasaki3, cl->one(), pm) == pm);
}

TEST_CASE("bi-implication") {
    auto cl = builtin("chinese_lantern");
    Elem pm = cl->by_name("p−");
    Elem pp = cl->by_name("p+");
    Elem qm = cl->by_name("p̄−");
    Elem qp = cl->by_name("p̄+");

    CHECK(biimplies(ImplKind::Sasaki3, pm, pp) == cl->zero());
    CHECK(biimplies(ImplKind::Sasaki3, pm, qm) == cl->zero());
    CHECK(biimplies(ImplKind::Sasaki3, pm, qp) == cl->zero());
    CHECK(biimplies(ImplKind::Sasaki3, pm, cl->one()) == pm);

    for (ImplKind k : kPolyKinds)
        for (std::uint16_t i = 0; i < cl->size(); ++i)
            CHECK(biimplies(k, cl->elem(i), cl->elem(i)) == cl->one());
}

TEST_CASE("the top-iff-below requirement") {
    auto mo2 = builtin("mo2");
    for (ImplKind k : kPolyKinds) CHECK(check_bvn(k, *mo2));
    CHECK_FALSE(check_bvn(ImplKind::Material0, *mo2));  // x'vy = 1 but x is not below y

    auto b3 = builtin("boolN:3");
    CHECK(check_bvn(ImplKind::Material0, *b3));
}

TEST_CASE("residual form of the Sasaki hook") {
    auto l = builtin("mo2");
    Elem x = l->by_name("x"), y = l->by_name("y");
    CHECK(sasaki_residual(x, y) == l->by_name("x'"));

    for (std::uint16_t i = 0; i < l->size(); ++i) {
        CHECK(sasaki_residual(l->elem(i), l->one()) == l->one());
        for (std::uint16_t j = 0; j < l->size(); ++j)
            CHECK(sasaki_residual(l->elem(i), l->elem(j)) ==
                  implies(ImplKind::Sasaki3, l->elem(i), l->elem(j)));
    }

    auto b3 = builtin("boolN:3");
    for (std::uint16_t i = 0; i < b3->size(); ++i)
        for (std::uint16_t j = 0; j < b3->size(); ++j) {
            Elem a = b3->elem(i), b = b3->elem(j);
            CHECK(sasaki_residual(a, b) == b3->join(b3->ortho(a), b));
        }
}

TEST_CASE("collapse to the material conditional on commuting pairs") {
    for (const char* name : {"mo2", "chinese_lantern"}) {
        auto l = builtin(name);
        for (ImplKind k : kPolyKinds)
            for (std::uint16_t i = 0; i < l->size(); ++i)
                for (std::uint16_t j = 0; j < l->size(); ++j) {
                    Elem a = l->elem(i), b = l->elem(j);
                    bool same = implies(k, a, b) == implies(ImplKind::Material0, a, b);
                    CHECK(same == l->commutes(a, b));
                }
    }
}

TEST_CASE("compatible import-export law") {
    auto l = builtin("mo2");
    auto law_holds_everywhere = [&](ImplKind k) {
        for (std::uint16_t i = 0; i < l->size(); ++i)
            for (std::uint16_t j = 0; j < l->size(); ++j) {
                Elem a = l->elem(i), b = l->elem(j);
                if (!l->commutes(a, b)) continue;
                for (std::uint16_t m = 0; m < l->size(); ++m) {
                    Elem c = l->elem(m);
                    if (l->leq(l->meet(a, b), c) != l->leq(a, implies(k, b, c))) return false;
                }
            }
        return true;
    };
    CHECK(law_holds_everywhere(ImplKind::Sasaki3));
    CHECK_FALSE(law_holds_everywhere(ImplKind::Material0));
    CHECK_FALSE(law_holds_everywhere(ImplKind::Impl1));
    CHECK_FALSE(law_holds_everywhere(ImplKind::Impl2));
    CHECK_FALSE(law_holds_everywhere(ImplKind::Impl4));
    CHECK_FALSE(law_holds_everywhere(ImplKind::Impl5));
}

TEST_CASE("unrestricted import-export only in the distributive case") {
    auto check_law = [](const OrthoLattice& l, ImplKind k) {
        for (std::uint16_t i = 0; i < l.size(); ++i)
            for (std::uint16_t j = 0; j < l.size(); ++j)
                for (std::uint16_t m = 0; m < l.size(); ++m) {
                    Elem a = l.elem(i), b = l.elem(j), c = l.elem(m);
                    if (l.leq(l.meet(a, b), c) != l.leq(a, implies(k, b, c))) return false;
                }
        return true;
    };
    auto mo2 = builtin("mo2");
    auto b3 = builtin("boolN:3");
    for (ImplKind k : kPolyKinds) {
        CHECK_FALSE(check_law(*mo2, k));
        CHECK(check_law(*b3, k));
    }
}

TEST_CASE("gated monotonicity, contraposition and transitivity of the Sasaki hook") {
    auto l = builtin("mo2");
    const auto S3 = ImplKind::Sasaki3;

    for (std::uint16_t i = 0; i < l->size(); ++i)
        for (std::uint16_t j = 0; j < l->size(); ++j) {
            Elem a = l->elem(i), b = l->elem(j);
            Elem g = l->strong_commutator(l->make_set({a, b}));
            CHECK(l->leq(l->meet(g, implies(S3, a, b)),
                         implies(S3, l->ortho(b), l->ortho(a))));
        }

    for (std::uint16_t i = 0; i < l->size(); ++i)
        for (std::uint16_t j = 0; j < l->size(); ++j)
            for (std::uint16_t k = 0; k < l->size(); ++k) {
                Elem a = l->elem(i), b = l->elem(j), c = l->elem(k);
                Elem g = l->strong_commutator(l->make_set({a, b, c}));
                CHECK(l->leq(l->meet(g, l->meet(implies(S3, a, b), implies(S3, b, c))),
                             implies(S3, a, c)));
            }

    for (std::uint16_t i = 0; i < l->size(); ++i)
        for (std::uint16_t j = 0; j < l->size(); ++j)
            for (std::uint16_t k = 0; k < l->size(); ++k)
                for (std::uint16_t m = 0; m < l->size(); ++m) {
                    Elem a1 = l->elem(i), b1 = l->elem(j), a2 = l->elem(k), b2 = l->elem(m);
                    Elem g = l->strong_commutator(l->make_set({a1, b1, a2, b2}));
                    Elem imps = l->meet(implies(S3, a1, b1), implies(S3, a2, b2));
                    CHECK(l->leq(l->meet(g, imps),
                                 implies(S3, l->meet(a1, a2), l->meet(b1, b2))));
                    CHECK(l->leq(l->meet(g, imps),
                                 implies(S3, l->join(a1, a2), l->join(b1, b2))));
                }
}

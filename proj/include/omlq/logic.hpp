#pragma once

#include "omlq/lattice.hpp"

namespace omlq {

/// The six implication connectives: the material conditional and the
/// five orthomodular polynomials satisfying a -> b = 1 iff a <= b.
/// Sasaki3 is the default wherever a caller does not care.
enum class ImplKind : int {
    Material0 = 0,
    Impl1 = 1,
    Impl2 = 2,
    Sasaki3 = 3,
    Impl4 = 4,
    Impl5 = 5,
};

inline ImplKind impl_kind_from_int(int k) {
    if (k < 0 || k > 5) throw Error("implication kind must be in 0..5");
    return static_cast<ImplKind>(k);
}

inline Elem implies(ImplKind kind, Elem a, Elem b) {
    const OrthoLattice* l = a.owner;
    if (l == nullptr) throw CrossLattice("implication on a null element");
    l->check(a);
    l->check(b);
    Elem na = l->ortho(a), nb = l->ortho(b);
    switch (kind) {
        case ImplKind::Material0:
            return l->join(na, b);
        case ImplKind::Impl1:
            return l->join(l->join(l->meet(na, b), l->meet(na, nb)),
                           l->meet(a, l->join(na, b)));
        case ImplKind::Impl2:
            return l->join(l->join(l->meet(na, b), l->meet(a, b)),
                           l->meet(l->join(na, b), nb));
        case ImplKind::Sasaki3:
            return l->join(na, l->meet(a, b));
        case ImplKind::Impl4:
            return l->join(b, l->meet(na, nb));
        case ImplKind::Impl5:
            return l->join(l->join(l->meet(na, b), l->meet(a, b)), l->meet(na, nb));
    }
    throw Error("bad implication kind");
}

inline Elem biimplies(ImplKind kind, Elem a, Elem b) {
    const OrthoLattice* l = a.owner;
    if (l == nullptr) throw CrossLattice("bi-implication on a null element");
    return l->meet(implies(kind, a, b), implies(kind, b, a));
}

/// True iff `kind` satisfies "a -> b = 1 exactly when a <= b" on the
/// whole (finite) lattice.
inline bool check_bvn(ImplKind kind, const OrthoLattice& l) {
    for (std::uint16_t i = 0; i < l.size(); ++i)
        for (std::uint16_t j = 0; j < l.size(); ++j) {
            Elem a = l.elem(i), b = l.elem(j);
            bool top = implies(kind, a, b) == l.one();
            if (top != l.leq(a, b)) return false;
        }
    return true;
}

/// join{ x : x C a and x and a <= b }, computed by scanning the carrier.
/// Coincides with the Sasaki hook.
inline Elem sasaki_residual(Elem a, Elem b) {
    const OrthoLattice* l = a.owner;
    if (l == nullptr) throw CrossLattice("residual on a null element");
    l->check(a);
    l->check(b);
    Elem acc = l->zero();
    for (std::uint16_t i = 0; i < l->size(); ++i) {
        Elem x = l->elem(i);
        if (l->commutes(x, a) && l->leq(l->meet(x, a), b)) acc = l->join(acc, x);
    }
    return acc;
}

}  // namespace omlq

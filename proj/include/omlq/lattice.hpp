#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace omlq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotALattice : public Error {
public:
    using Error::Error;
};
class BadOrthocomplement : public Error {
public:
    using Error::Error;
};
class CrossLattice : public Error {
public:
    using Error::Error;
};
class CommutatorSetTooLarge : public Error {
public:
    using Error::Error;
};
class UnknownBuiltin : public Error {
public:
    using Error::Error;
};

class OrthoLattice;
struct RawLattice;

std::shared_ptr<const OrthoLattice> validate_lattice(const RawLattice&);
std::shared_ptr<const OrthoLattice> product_lattice(const std::shared_ptr<const OrthoLattice>&,
                                                    const std::shared_ptr<const OrthoLattice>&);

namespace detail {
class LatticeChecker;
}

/// Handle to one element of a specific lattice. Borrowed: the owning
/// lattice must outlive the handle.
struct Elem {
    const OrthoLattice* owner = nullptr;
    std::uint16_t idx = 0;

    friend bool operator==(const Elem& a, const Elem& b) = default;
};

/// Ordered duplicate-free set of elements of one lattice.
class ElemSet {
public:
    ElemSet() = default;
    ElemSet(const OrthoLattice* owner, std::vector<std::uint16_t> members)
        : owner_(owner), members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    const OrthoLattice* owner() const { return owner_; }
    const std::vector<std::uint16_t>& indices() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(Elem e) const {
        return e.owner == owner_ &&
               std::binary_search(members_.begin(), members_.end(), e.idx);
    }
    std::vector<Elem> elems() const;

private:
    const OrthoLattice* owner_ = nullptr;
    std::vector<std::uint16_t> members_;
};

/// Raw textual description of a bounded lattice with orthocomplement.
/// `leq` may be any relation whose reflexive-transitive closure is the
/// intended partial order; `ortho` pairs are completed symmetrically.
struct RawLattice {
    std::string name;
    std::vector<std::string> elem_names;
    std::vector<std::pair<std::string, std::string>> leq;
    std::vector<std::pair<std::string, std::string>> ortho;
};

/// Finite ortholattice with tabulated order, meet, join and
/// orthocomplement. Immutable after construction and safe to share
/// across threads. Instances are created by validate_lattice(),
/// product_lattice() and builtin().
class OrthoLattice {
public:
    const std::string& name() const { return name_; }
    std::size_t size() const { return names_.size(); }
    bool is_orthomodular() const { return orthomodular_; }
    bool is_boolean() const { return boolean_; }

    Elem elem(std::uint16_t i) const {
        if (i >= size()) throw Error("element index out of range in lattice " + name_);
        return Elem{this, i};
    }
    Elem zero() const { return Elem{this, zero_}; }
    Elem one() const { return Elem{this, one_}; }

    const std::string& name_of(Elem e) const {
        check(e);
        return names_[e.idx];
    }
    Elem by_name(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end())
            throw Error("lattice " + name_ + " has no element named '" + n + "'");
        return Elem{this, it->second};
    }
    bool has_name(const std::string& n) const { return index_.count(n) != 0; }

    bool leq(Elem a, Elem b) const {
        check(a);
        check(b);
        return leq_raw(a.idx, b.idx);
    }
    Elem meet(Elem a, Elem b) const {
        check(a);
        check(b);
        return Elem{this, meet_[a.idx * size() + b.idx]};
    }
    Elem join(Elem a, Elem b) const {
        check(a);
        check(b);
        return Elem{this, join_[a.idx * size() + b.idx]};
    }
    Elem ortho(Elem a) const {
        check(a);
        return Elem{this, ortho_[a.idx]};
    }

    /// big_meet({}) = 1 and big_join({}) = 0.
    Elem big_meet(std::span<const Elem> xs) const {
        Elem acc = one();
        for (Elem x : xs) acc = meet(acc, x);
        return acc;
    }
    Elem big_join(std::span<const Elem> xs) const {
        Elem acc = zero();
        for (Elem x : xs) acc = join(acc, x);
        return acc;
    }
    Elem big_meet(const ElemSet& s) const {
        check_set(s);
        std::uint16_t acc = one_;
        for (auto i : s.indices()) acc = meet_[acc * size() + i];
        return Elem{this, acc};
    }
    Elem big_join(const ElemSet& s) const {
        check_set(s);
        std::uint16_t acc = zero_;
        for (auto i : s.indices()) acc = join_[acc * size() + i];
        return Elem{this, acc};
    }

    /// a C b  iff  a = (a and b) or (a and not b).
    bool commutes(Elem a, Elem b) const {
        check(a);
        check(b);
        std::uint16_t l = meet_[a.idx * size() + b.idx];
        std::uint16_t r = meet_[a.idx * size() + ortho_[b.idx]];
        return join_[l * size() + r] == a.idx;
    }

    /// Join over all sign assignments of the meet of signed members.
    /// Duplicates and the constants 0,1 are removed first (value
    /// preserving: 0-branches vanish, 1-branches are neutral).
    Elem commutator(const ElemSet& s, std::size_t cap = 20) const {
        check_set(s);
        std::vector<std::uint16_t> core;
        for (auto i : s.indices())
            if (i != zero_ && i != one_) core.push_back(i);
        if (core.size() > cap)
            throw CommutatorSetTooLarge("commutator set of size " + std::to_string(core.size()) +
                                        " exceeds cap " + std::to_string(cap));
        const std::size_t k = core.size();
        std::uint16_t acc = zero_;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            std::uint16_t m = one_;
            for (std::size_t j = 0; j < k; ++j) {
                std::uint16_t x = (mask >> j) & 1 ? ortho_[core[j]] : core[j];
                m = meet_[m * size() + x];
                if (m == zero_) break;
            }
            acc = join_[acc * size() + m];
            if (acc == one_) break;
        }
        return Elem{this, acc};
    }

    /// Join of all b that commute with every member of s and whose
    /// meets with any two members commute with each other. Found by
    /// scanning the whole (finite) carrier.
    Elem strong_commutator(const ElemSet& s) const {
        check_set(s);
        const auto& mem = s.indices();
        std::uint16_t acc = zero_;
        for (std::uint16_t b = 0; b < size(); ++b) {
            bool ok = true;
            for (auto a : mem) {
                if (!commutes_raw(a, b)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (std::size_t i = 0; i < mem.size() && ok; ++i) {
                std::uint16_t ab = meet_[mem[i] * size() + b];
                for (std::size_t j = 0; j < mem.size(); ++j) {
                    std::uint16_t cb = meet_[mem[j] * size() + b];
                    if (!commutes_raw(ab, cb)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) acc = join_[acc * size() + b];
        }
        return Elem{this, acc};
    }

    /// Least superset of s containing 0,1 and closed under meet, join
    /// and orthocomplement.
    ElemSet subalgebra(const ElemSet& s) const {
        check_set(s);
        std::vector<bool> in(size(), false);
        in[zero_] = in[one_] = true;
        for (auto i : s.indices()) in[i] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::uint16_t> cur;
            for (std::uint16_t i = 0; i < size(); ++i)
                if (in[i]) cur.push_back(i);
            for (auto a : cur) {
                if (!in[ortho_[a]]) {
                    in[ortho_[a]] = true;
                    changed = true;
                }
                for (auto b : cur) {
                    std::uint16_t m = meet_[a * size() + b];
                    std::uint16_t j = join_[a * size() + b];
                    if (!in[m]) {
                        in[m] = true;
                        changed = true;
                    }
                    if (!in[j]) {
                        in[j] = true;
                        changed = true;
                    }
                }
            }
        }
        std::vector<std::uint16_t> out;
        for (std::uint16_t i = 0; i < size(); ++i)
            if (in[i]) out.push_back(i);
        return ElemSet(this, std::move(out));
    }

    ElemSet make_set(std::initializer_list<Elem> xs) const {
        std::vector<std::uint16_t> v;
        for (Elem e : xs) {
            check(e);
            v.push_back(e.idx);
        }
        return ElemSet(this, std::move(v));
    }
    ElemSet make_set(const std::vector<Elem>& xs) const {
        std::vector<std::uint16_t> v;
        for (Elem e : xs) {
            check(e);
            v.push_back(e.idx);
        }
        return ElemSet(this, std::move(v));
    }

    void check(Elem e) const {
        if (e.owner != this)
            throw CrossLattice("element does not belong to lattice " + name_);
        if (e.idx >= size()) throw Error("corrupt element index");
    }

private:
    OrthoLattice() = default;

    bool leq_raw(std::uint16_t a, std::uint16_t b) const { return leq_[a * size() + b] != 0; }
    bool commutes_raw(std::uint16_t a, std::uint16_t b) const {
        std::uint16_t l = meet_[a * size() + b];
        std::uint16_t r = meet_[a * size() + ortho_[b]];
        return join_[l * size() + r] == a;
    }
    void check_set(const ElemSet& s) const {
        if (s.size() != 0 || s.owner() != nullptr) {
            if (s.owner() != this) throw CrossLattice("element set does not belong to lattice " + name_);
        }
    }

    std::string name_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint16_t> index_;
    std::vector<std::uint8_t> leq_;
    std::vector<std::uint16_t> meet_;
    std::vector<std::uint16_t> join_;
    std::vector<std::uint16_t> ortho_;
    std::uint16_t zero_ = 0;
    std::uint16_t one_ = 0;
    bool orthomodular_ = false;
    bool boolean_ = false;

    friend std::shared_ptr<const OrthoLattice> validate_lattice(const RawLattice&);
    friend std::shared_ptr<const OrthoLattice> product_lattice(
        const std::shared_ptr<const OrthoLattice>&, const std::shared_ptr<const OrthoLattice>&);
    friend class detail::LatticeChecker;
};

inline std::vector<Elem> ElemSet::elems() const {
    std::vector<Elem> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back(Elem{owner_, i});
    return out;
}

namespace detail {

// Completes the order/ortho tables of a lattice under construction and
// verifies every axiom, throwing with the offending pair or triple.
class LatticeChecker {
public:
    static void finish(OrthoLattice& l, bool derive_tables) {
        const std::size_t n = l.names_.size();
        // Reflexive-transitive closure, then antisymmetry.
        for (std::size_t i = 0; i < n; ++i) l.leq_[i * n + i] = 1;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (!l.leq_[i * n + k]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (l.leq_[k * n + j]) l.leq_[i * n + j] = 1;
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && l.leq_[i * n + j] && l.leq_[j * n + i])
                    throw NotALattice("order cycle between '" + l.names_[i] + "' and '" +
                                      l.names_[j] + "'");

        // Bounds.
        auto find_bound = [&](bool least) -> std::uint16_t {
            for (std::size_t i = 0; i < n; ++i) {
                bool ok = true;
                for (std::size_t j = 0; j < n; ++j)
                    if (least ? !l.leq_[i * n + j] : !l.leq_[j * n + i]) {
                        ok = false;
                        break;
                    }
                if (ok) return static_cast<std::uint16_t>(i);
            }
            throw NotALattice(std::string("no ") + (least ? "least" : "greatest") + " element");
        };
        l.zero_ = find_bound(true);
        l.one_ = find_bound(false);

        if (derive_tables) {
            l.meet_.assign(n * n, 0);
            l.join_.assign(n * n, 0);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a; b < n; ++b) {
                    l.meet_[a * n + b] = l.meet_[b * n + a] = bound_of(l, a, b, true);
                    l.join_[a * n + b] = l.join_[b * n + a] = bound_of(l, a, b, false);
                }
        } else {
            verify_tables(l);
        }

        verify_ortho(l);
        l.orthomodular_ = check_orthomodular(l);
        l.boolean_ = l.orthomodular_ && check_boolean(l);
    }

private:
    // Unique glb (least=true) or lub of a pair, by exhaustive search.
    static std::uint16_t bound_of(const OrthoLattice& l, std::size_t a, std::size_t b,
                                  bool least) {
        const std::size_t n = l.names_.size();
        auto below = [&](std::size_t x, std::size_t y) {
            return least ? l.leq_[x * n + y] : l.leq_[y * n + x];
        };
        std::vector<std::size_t> cand;
        for (std::size_t c = 0; c < n; ++c)
            if (below(c, a) && below(c, b)) cand.push_back(c);
        std::size_t best = n;
        for (auto c : cand) {
            bool top = true;
            for (auto d : cand)
                if (!below(d, c)) {
                    top = false;
                    break;
                }
            if (top) {
                if (best != n)
                    throw NotALattice("pair ('" + l.names_[a] + "','" + l.names_[b] +
                                      "') lacks a unique " + (least ? "glb" : "lub"));
                best = c;
            }
        }
        if (best == n)
            throw NotALattice("pair ('" + l.names_[a] + "','" + l.names_[b] + "') lacks a " +
                              (least ? "glb" : "lub"));
        return static_cast<std::uint16_t>(best);
    }

    static void verify_tables(const OrthoLattice& l) {
        const std::size_t n = l.names_.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::uint16_t m = l.meet_[a * n + b];
                std::uint16_t j = l.join_[a * n + b];
                if (!l.leq_[m * n + a] || !l.leq_[m * n + b] || !l.leq_[a * n + j] ||
                    !l.leq_[b * n + j])
                    throw NotALattice("meet/join tables disagree with the order at ('" +
                                      l.names_[a] + "','" + l.names_[b] + "')");
                for (std::size_t c = 0; c < n; ++c) {
                    if (l.leq_[c * n + a] && l.leq_[c * n + b] && !l.leq_[c * n + m])
                        throw NotALattice("pair ('" + l.names_[a] + "','" + l.names_[b] +
                                          "') lacks a unique glb");
                    if (l.leq_[a * n + c] && l.leq_[b * n + c] && !l.leq_[j * n + c])
                        throw NotALattice("pair ('" + l.names_[a] + "','" + l.names_[b] +
                                          "') lacks a unique lub");
                }
            }
    }

    static void verify_ortho(const OrthoLattice& l) {
        const std::size_t n = l.names_.size();
        for (std::size_t a = 0; a < n; ++a) {
            std::uint16_t oa = l.ortho_[a];
            if (l.ortho_[oa] != a)
                throw BadOrthocomplement("orthocomplement is not an involution at '" +
                                         l.names_[a] + "'");
            if (l.meet_[a * n + oa] != l.zero_ || l.join_[a * n + oa] != l.one_)
                throw BadOrthocomplement("'" + l.names_[a] + "' and '" + l.names_[oa] +
                                         "' are not complements");
            for (std::size_t b = 0; b < n; ++b)
                if (l.leq_[a * n + b] && !l.leq_[l.ortho_[b] * n + oa])
                    throw BadOrthocomplement("orthocomplement is not antitone at ('" +
                                             l.names_[a] + "','" + l.names_[b] + "')");
        }
    }

    static bool check_orthomodular(const OrthoLattice& l) {
        const std::size_t n = l.names_.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (!l.leq_[a * n + b]) continue;
                std::uint16_t m = l.meet_[l.ortho_[a] * n + b];
                if (l.join_[a * n + m] != b) return false;
            }
        return true;
    }

    static bool check_boolean(const OrthoLattice& l) {
        const std::size_t n = l.names_.size();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    std::uint16_t bc = l.join_[b * n + c];
                    std::uint16_t lhs = l.meet_[a * n + bc];
                    std::uint16_t rhs =
                        l.join_[l.meet_[a * n + b] * n + l.meet_[a * n + c]];
                    if (lhs != rhs) return false;
                }
        return true;
    }
};

}  // namespace detail

/// Builds a fully tabulated lattice from a raw description. Meets and
/// joins are derived by exhaustive glb/lub search and every axiom is
/// checked; the orthomodular/boolean flags are computed.
inline std::shared_ptr<const OrthoLattice> validate_lattice(const RawLattice& raw) {
    const std::size_t n = raw.elem_names.size();
    if (n == 0) throw NotALattice("lattice has no elements");
    if (n > 20000) throw NotALattice("lattice too large");

    auto l = std::shared_ptr<OrthoLattice>(new OrthoLattice());
    l->name_ = raw.name;
    l->names_ = raw.elem_names;
    for (std::size_t i = 0; i < n; ++i) {
        if (!l->index_.emplace(raw.elem_names[i], static_cast<std::uint16_t>(i)).second)
            throw NotALattice("duplicate element name '" + raw.elem_names[i] + "'");
    }
    auto at = [&](const std::string& s) -> std::uint16_t {
        auto it = l->index_.find(s);
        if (it == l->index_.end()) throw NotALattice("leq/ortho references unknown element '" + s + "'");
        return it->second;
    };

    l->leq_.assign(n * n, 0);
    for (const auto& [a, b] : raw.leq) l->leq_[at(a) * n + at(b)] = 1;

    l->ortho_.assign(n, 0);
    std::vector<bool> has(n, false);
    for (const auto& [a, b] : raw.ortho) {
        std::uint16_t ia = at(a), ib = at(b);
        for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}}) {
            if (has[x] && l->ortho_[x] != y)
                throw BadOrthocomplement("conflicting orthocomplement for '" + l->names_[x] + "'");
            l->ortho_[x] = y;
            has[x] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!has[i]) throw BadOrthocomplement("no orthocomplement given for '" + l->names_[i] + "'");

    detail::LatticeChecker::finish(*l, /*derive_tables=*/true);
    return l;
}

/// Componentwise product of two validated lattices. Element names are
/// joined as "a|b". The result is re-verified in full.
inline std::shared_ptr<const OrthoLattice> product_lattice(
    const std::shared_ptr<const OrthoLattice>& l1,
    const std::shared_ptr<const OrthoLattice>& l2) {
    const std::size_t n1 = l1->size(), n2 = l2->size(), n = n1 * n2;
    auto l = std::shared_ptr<OrthoLattice>(new OrthoLattice());
    l->name_ = l1->name() + "x" + l2->name();
    l->names_.reserve(n);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            l->names_.push_back(l1->name_of(l1->elem(static_cast<std::uint16_t>(i))) + "|" +
                                l2->name_of(l2->elem(static_cast<std::uint16_t>(j))));
    for (std::size_t i = 0; i < n; ++i) l->index_.emplace(l->names_[i], static_cast<std::uint16_t>(i));

    auto id = [&](std::size_t i, std::size_t j) { return static_cast<std::uint16_t>(i * n2 + j); };
    l->leq_.assign(n * n, 0);
    l->meet_.assign(n * n, 0);
    l->join_.assign(n * n, 0);
    l->ortho_.assign(n, 0);
    for (std::size_t i1 = 0; i1 < n1; ++i1)
        for (std::size_t j1 = 0; j1 < n2; ++j1) {
            Elem a1 = l1->elem(static_cast<std::uint16_t>(i1));
            Elem a2 = l2->elem(static_cast<std::uint16_t>(j1));
            l->ortho_[id(i1, j1)] = id(l1->ortho(a1).idx, l2->ortho(a2).idx);
            for (std::size_t i2 = 0; i2 < n1; ++i2)
                for (std::size_t j2 = 0; j2 < n2; ++j2) {
                    Elem b1 = l1->elem(static_cast<std::uint16_t>(i2));
                    Elem b2 = l2->elem(static_cast<std::uint16_t>(j2));
                    std::size_t p = id(i1, j1) * n + id(i2, j2);
                    l->leq_[p] = l1->leq(a1, b1) && l2->leq(a2, b2);
                    l->meet_[p] = id(l1->meet(a1, b1).idx, l2->meet(a2, b2).idx);
                    l->join_[p] = id(l1->join(a1, b1).idx, l2->join(a2, b2).idx);
                }
        }

    detail::LatticeChecker::finish(*l, /*derive_tables=*/false);
    return l;
}

namespace detail {

inline std::shared_ptr<const OrthoLattice> make_bool2() {
    RawLattice raw;
    raw.name = "bool2";
    raw.elem_names = {"0", "1"};
    raw.leq = {{"0", "1"}};
    raw.ortho = {{"0", "1"}};
    return validate_lattice(raw);
}

// Power set of k atoms; elements named by their k-bit mask string.
inline std::shared_ptr<const OrthoLattice> make_booln(unsigned k) {
    if (k == 0 || k > 10) throw UnknownBuiltin("boolN:<k> needs 1 <= k <= 10");
    const std::size_t n = std::size_t{1} << k;
    RawLattice raw;
    raw.name = "boolN:" + std::to_string(k);
    auto label = [&](std::size_t m) {
        std::string s(k, '0');
        for (unsigned b = 0; b < k; ++b)
            if ((m >> b) & 1) s[k - 1 - b] = '1';
        return s;
    };
    for (std::size_t m = 0; m < n; ++m) raw.elem_names.push_back(label(m));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if ((a & b) == a && a != b) raw.leq.push_back({label(a), label(b)});
    for (std::size_t a = 0; a < n; ++a) raw.ortho.push_back({label(a), label(~a & (n - 1))});
    return validate_lattice(raw);
}

// Two incomparable orthocomplemented atom pairs.
inline RawLattice mo2_shape(std::string name, std::string a_minus, std::string a_plus,
                            std::string b_minus, std::string b_plus) {
    RawLattice raw;
    raw.name = std::move(name);
    raw.elem_names = {"0", a_minus, a_plus, b_minus, b_plus, "1"};
    for (const auto& atom : {a_minus, a_plus, b_minus, b_plus}) {
        raw.leq.push_back({"0", atom});
        raw.leq.push_back({atom, "1"});
    }
    raw.ortho = {{"0", "1"}, {a_minus, a_plus}, {b_minus, b_plus}};
    return raw;
}

inline std::shared_ptr<const OrthoLattice> make_o6() {
    RawLattice raw;
    raw.name = "o6";
    raw.elem_names = {"0", "a", "b", "b'", "a'", "1"};
    raw.leq = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "b'"}, {"b'", "a'"}, {"a'", "1"}};
    raw.ortho = {{"0", "1"}, {"a", "a'"}, {"b", "b'"}};
    return validate_lattice(raw);
}

}  // namespace detail

/// Named builtin lattices. Instances are cached: repeated calls with
/// the same name return the same object, so their elements interoperate.
inline std::shared_ptr<const OrthoLattice> builtin(const std::string& name) {
    static std::unordered_map<std::string, std::shared_ptr<const OrthoLattice>> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    std::shared_ptr<const OrthoLattice> l;
    if (name == "bool2") {
        l = detail::make_bool2();
    } else if (name.rfind("boolN:", 0) == 0) {
        l = detail::make_booln(static_cast<unsigned>(std::stoul(name.substr(6))));
    } else if (name == "mo2") {
        l = validate_lattice(detail::mo2_shape("mo2", "x", "x'", "y", "y'"));
    } else if (name == "chinese_lantern") {
        l = validate_lattice(
            detail::mo2_shape("chinese_lantern", "p−", "p+", "p̄−", "p̄+"));
    } else if (name == "o6") {
        l = detail::make_o6();
    } else if (name == "free2") {
        l = product_lattice(builtin("boolN:4"), builtin("mo2"));
    } else {
        throw UnknownBuiltin("unknown builtin lattice '" + name + "'");
    }
    cache.emplace(name, l);
    return l;
}

/// Resolves an element name, also accepting ASCII aliases for the
/// chinese_lantern glyph names (p-, p+, pb-, pb+).
inline Elem resolve_elem(const OrthoLattice& l, const std::string& name) {
    if (l.has_name(name)) return l.by_name(name);
    static const std::unordered_map<std::string, std::string> alias = {
        {"p-", "p−"},
        {"pb-", "p̄−"},
        {"pb+", "p̄+"},
    };
    auto it = alias.find(name);
    if (it != alias.end() && l.has_name(it->second)) return l.by_name(it->second);
    return l.by_name(name);  // throws with the original name
}

}  // namespace omlq

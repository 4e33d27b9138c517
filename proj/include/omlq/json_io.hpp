#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "omlq/regex.hpp"

namespace omlq::io {

using nlohmann::json;

class IoError : public Error {
public:
    using Error::Error;
};

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("bad JSON in '" + path.string() + "': " + e.what());
    }
    return j;
}

inline RawLattice raw_lattice_from_json(const json& j) {
    RawLattice raw;
    raw.name = j.value("name", "lattice");
    for (const auto& e : j.at("elements")) raw.elem_names.push_back(e.get<std::string>());
    for (const auto& p : j.at("leq"))
        raw.leq.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    for (const auto& [k, v] : j.at("ortho").items()) raw.ortho.push_back({k, v.get<std::string>()});
    return raw;
}

inline json lattice_to_json(const OrthoLattice& l) {
    json j;
    j["name"] = l.name();
    json elems = json::array();
    for (std::uint16_t i = 0; i < l.size(); ++i) elems.push_back(l.name_of(l.elem(i)));
    j["elements"] = elems;
    json leq = json::array();
    for (std::uint16_t i = 0; i < l.size(); ++i)
        for (std::uint16_t k = 0; k < l.size(); ++k)
            if (i != k && l.leq(l.elem(i), l.elem(k)))
                leq.push_back(json::array({l.name_of(l.elem(i)), l.name_of(l.elem(k))}));
    j["leq"] = leq;
    json ortho = json::object();
    for (std::uint16_t i = 0; i < l.size(); ++i)
        ortho[l.name_of(l.elem(i))] = l.name_of(l.ortho(l.elem(i)));
    j["ortho"] = ortho;
    return j;
}

/// Resolves "builtin:<name>" or a JSON file path. File lattices are
/// cached per canonical path, so every reference to the same file in
/// one process shares one lattice object.
inline std::shared_ptr<const OrthoLattice> load_lattice_ref(
    const std::string& ref, const std::filesystem::path& base_dir = {}) {
    if (ref.rfind("builtin:", 0) == 0) return builtin(ref.substr(8));
    static std::unordered_map<std::string, std::shared_ptr<const OrthoLattice>> cache;
    std::filesystem::path p = ref;
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    std::error_code ec;
    std::filesystem::path canon = std::filesystem::weakly_canonical(p, ec);
    std::string key = ec ? p.string() : canon.string();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto l = validate_lattice(raw_lattice_from_json(read_json_file(p)));
    cache.emplace(key, l);
    return l;
}

inline Alphabet alphabet_from_json(const json& j) {
    std::vector<std::string> syms;
    for (const auto& s : j) syms.push_back(s.get<std::string>());
    return Alphabet(syms);
}

inline LValuedLanguage language_from_json(const json& j,
                                          const std::filesystem::path& base_dir = {}) {
    auto l = load_lattice_ref(j.at("lattice").get<std::string>(), base_dir);
    Alphabet alpha = alphabet_from_json(j.at("alphabet"));
    std::vector<std::pair<Word, Elem>> entries;
    if (j.contains("entries"))
        for (const auto& e : j.at("entries")) {
            Word w;
            for (const auto& sym : e.at("word")) {
                auto idx = alpha.index_of(sym.get<std::string>());
                if (!idx) throw IoError("entry word uses unknown symbol '" +
                                        sym.get<std::string>() + "'");
                w.push_back(*idx);
            }
            entries.push_back({w, resolve_elem(*l, e.at("value").get<std::string>())});
        }
    return LValuedLanguage::finite_table(l, alpha, entries);
}

inline json language_to_json(const LValuedLanguage& a, const std::string& lattice_ref) {
    const auto* table = a.as_table();
    if (table == nullptr) throw IoError("only finite-support languages have a document form");
    json j;
    j["lattice"] = lattice_ref;
    j["alphabet"] = a.alphabet().symbols();
    json entries = json::array();
    for (const auto& [w, v] : table->entries()) {
        json e;
        json word = json::array();
        for (auto i : w) word.push_back(a.alphabet().sym(i));
        e["word"] = word;
        e["value"] = a.lattice()->name_of(a.lattice()->elem(v));
        entries.push_back(e);
    }
    j["entries"] = entries;
    return j;
}

inline LAutomaton automaton_from_json(const json& j,
                                      const std::filesystem::path& base_dir = {}) {
    auto l = load_lattice_ref(j.at("lattice").get<std::string>(), base_dir);
    Alphabet alpha = alphabet_from_json(j.at("alphabet"));
    LAutomaton::Builder b(l, alpha);
    for (const auto& q : j.at("states")) b.state(q.get<std::string>());
    if (j.contains("initial"))
        for (const auto& [q, v] : j.at("initial").items())
            b.initial(q, resolve_elem(*l, v.get<std::string>()));
    if (j.contains("terminal"))
        for (const auto& [q, v] : j.at("terminal").items())
            b.terminal(q, resolve_elem(*l, v.get<std::string>()));
    if (j.contains("delta"))
        for (const auto& e : j.at("delta")) {
            std::string p = e.at(0).get<std::string>();
            std::string sym = e.at(1).get<std::string>();
            std::string q = e.at(2).get<std::string>();
            Elem v = resolve_elem(*l, e.at(3).get<std::string>());
            if (sym == kEpsilonToken)
                b.eps_edge(p, q, v);
            else
                b.edge(p, sym, q, v);
        }
    return b.build();
}

inline json automaton_to_json(const LAutomaton& m, const std::string& lattice_ref) {
    const OrthoLattice& l = *m.lattice();
    json j;
    j["lattice"] = lattice_ref;
    j["alphabet"] = m.alphabet().symbols();
    j["states"] = m.state_names();
    json init = json::object(), term = json::object();
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        if (m.initial(q) != l.zero())
            init[m.state_names()[static_cast<std::size_t>(q)]] = l.name_of(m.initial(q));
        if (m.terminal(q) != l.zero())
            term[m.state_names()[static_cast<std::size_t>(q)]] = l.name_of(m.terminal(q));
    }
    j["initial"] = init;
    j["terminal"] = term;
    json delta = json::array();
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        for (std::int32_t s = -1; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [t, v] : m.out(q, s == -1 ? LAutomaton::kEps : s))
                delta.push_back(json::array(
                    {m.state_names()[static_cast<std::size_t>(q)],
                     s == -1 ? std::string(kEpsilonToken) : m.alphabet().sym(s),
                     m.state_names()[static_cast<std::size_t>(t)], l.name_of(l.elem(v))}));
    j["delta"] = delta;
    return j;
}

inline RegexFactory::P regex_node_from_json(const json& j, RegexFactory& f) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "empty") return f.empty();
    if (op == "eps") return f.eps();
    if (op == "sym") {
        auto idx = f.alphabet().index_of(j.at("symbol").get<std::string>());
        if (!idx) throw IoError("regex symbol outside the alphabet");
        return f.sym(*idx);
    }
    if (op == "scalar")
        return f.scalar(resolve_elem(*f.lattice(), j.at("value").get<std::string>()),
                        regex_node_from_json(j.at("arg"), f));
    if (op == "star") return f.star(regex_node_from_json(j.at("arg"), f));
    if (op == "union" || op == "concat") {
        const auto& args = j.at("args");
        if (args.empty()) throw IoError("empty argument list in regex document");
        RegexFactory::P acc = regex_node_from_json(args.at(0), f);
        for (std::size_t i = 1; i < args.size(); ++i) {
            auto rhs = regex_node_from_json(args.at(i), f);
            acc = op == "union" ? f.unite(acc, rhs) : f.concat(acc, rhs);
        }
        return acc;
    }
    throw IoError("unknown regex op '" + op + "'");
}

inline Regex regex_from_json(const json& j, std::shared_ptr<const OrthoLattice> lattice,
                             Alphabet alphabet) {
    RegexFactory f(std::move(lattice), std::move(alphabet));
    return f.wrap(regex_node_from_json(j, f));
}

inline json regex_to_json(const Regex& r, const RegexNode* n = nullptr) {
    if (n == nullptr) n = r.root.get();
    json j;
    switch (n->op) {
        case RegexNode::Op::Empty:
            j["op"] = "empty";
            break;
        case RegexNode::Op::Eps:
            j["op"] = "eps";
            break;
        case RegexNode::Op::Sym:
            j["op"] = "sym";
            j["symbol"] = r.alphabet.sym(n->sym);
            break;
        case RegexNode::Op::Scalar:
            j["op"] = "scalar";
            j["value"] = r.lattice->name_of(r.lattice->elem(n->scalar));
            j["arg"] = regex_to_json(r, n->left.get());
            break;
        case RegexNode::Op::Star:
            j["op"] = "star";
            j["arg"] = regex_to_json(r, n->left.get());
            break;
        case RegexNode::Op::Union:
        case RegexNode::Op::Concat: {
            j["op"] = n->op == RegexNode::Op::Union ? "union" : "concat";
            j["args"] = json::array({regex_to_json(r, n->left.get()), regex_to_json(r, n->right.get())});
            break;
        }
    }
    return j;
}

inline std::string to_dot(const LAutomaton& m) {
    const OrthoLattice& l = *m.lattice();
    std::string out = "digraph automaton {\n  rankdir=LR;\n";
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q) {
        const std::string& name = m.state_names()[static_cast<std::size_t>(q)];
        std::string label = name;
        if (m.initial(q) != l.zero()) label += "\\nI=" + l.name_of(m.initial(q));
        if (m.terminal(q) != l.zero()) label += "\\nT=" + l.name_of(m.terminal(q));
        out += "  \"" + name + "\" [label=\"" + label + "\"" +
               (m.terminal(q) != l.zero() ? ",shape=doublecircle" : ",shape=circle") + "];\n";
    }
    for (std::int32_t q = 0; q < static_cast<std::int32_t>(m.state_count()); ++q)
        for (std::int32_t s = -1; s < static_cast<std::int32_t>(m.alphabet().size()); ++s)
            for (auto [t, v] : m.out(q, s == -1 ? LAutomaton::kEps : s))
                out += "  \"" + m.state_names()[static_cast<std::size_t>(q)] + "\" -> \"" +
                       m.state_names()[static_cast<std::size_t>(t)] + "\" [label=\"" +
                       (s == -1 ? std::string("eps") : m.alphabet().sym(s)) + " / " +
                       l.name_of(l.elem(v)) + "\"];\n";
    return out + "}\n";
}

}  // namespace omlq::io

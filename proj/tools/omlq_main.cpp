// Command-line front end: loads lattices, automata, languages and
// expressions from JSON documents (or builtin: refs), runs the library
// operations on them, and emits result documents.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "omlq/json_io.hpp"
#include "omlq/verify.hpp"

namespace {

using namespace omlq;

struct GlobalOpts {
    int impl = 3;
    std::size_t commutator_cap = 20;
    std::string out_path;
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(g.out_path);
    if (!out) throw io::IoError("cannot write '" + g.out_path + "'");
    out << text;
}

LAutomaton load_automaton(const std::string& path) {
    return io::automaton_from_json(io::read_json_file(path),
                                   std::filesystem::path(path).parent_path());
}

std::string lattice_ref_of(const io::json& doc) { return doc.at("lattice").get<std::string>(); }

// The offending pair of the orthomodular law, if any.
std::optional<std::pair<std::string, std::string>> oml_violation(const OrthoLattice& l) {
    for (std::uint16_t i = 0; i < l.size(); ++i)
        for (std::uint16_t j = 0; j < l.size(); ++j) {
            Elem a = l.elem(i), b = l.elem(j);
            if (l.leq(a, b) && l.join(a, l.meet(l.ortho(a), b)) != b)
                return std::pair{l.name_of(a), l.name_of(b)};
        }
    return std::nullopt;
}

SymbolMap load_symbol_map(const std::string& path, const Alphabet& target) {
    io::json j = io::read_json_file(path);
    SymbolMap h;
    h.from = io::alphabet_from_json(j.at("alphabet"));
    h.to = target;
    h.images.resize(h.from.size());
    for (const auto& [sym, image] : j.at("map").items()) {
        auto idx = h.from.index_of(sym);
        if (!idx) throw io::IoError("map lists unknown symbol '" + sym + "'");
        Word w;
        for (const auto& g : image) {
            auto gi = target.index_of(g.get<std::string>());
            if (!gi) throw io::IoError("image symbol '" + g.get<std::string>() +
                                       "' is not in the automaton alphabet");
            w.push_back(*gi);
        }
        h.images[static_cast<std::size_t>(*idx)] = w;
    }
    return h;
}

void print_reports_table(const std::vector<CheckReport>& rs) {
    int failed = 0;
    for (const auto& r : rs) {
        if (!r.passed) ++failed;
        std::cout << (r.passed ? "pass  " : "FAIL  ") << r.check_id << "  [" << r.lhs << " "
                  << r.relation << " " << r.rhs << "]  " << r.instance;
        if (!r.witness.empty()) std::cout << "  witness: " << r.witness;
        std::cout << "\n";
    }
    std::cout << rs.size() << " checks, " << failed << " failed\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite orthomodular-lattice algebra, lattice-valued automata and expressions"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* cap = std::getenv("OMLQ_COMMUTATOR_CAP")) g.commutator_cap = std::stoul(cap);
    app.add_option("--impl", g.impl, "implication connective 0..5")->check(CLI::Range(0, 5));
    app.add_option("--commutator-cap", g.commutator_cap, "commutator set size cap");
    app.add_option("-o,--out", g.out_path, "write the result document to this file");

    // lattice check|show
    auto* lat_cmd = app.add_subcommand("lattice", "validate or print a lattice");
    std::string lat_action, lat_ref;
    lat_cmd->add_option("action", lat_action, "check or show")->required();
    lat_cmd->add_option("ref", lat_ref, "builtin:<name> or a JSON file")->required();

    // rec
    auto* rec_cmd = app.add_subcommand("rec", "recognition degree of a word");
    std::string rec_aut, rec_word, rec_dot;
    rec_cmd->add_option("--automaton", rec_aut)->required();
    rec_cmd->add_option("--word", rec_word, "space-separated symbols; \"\" is the empty word")
        ->required();
    rec_cmd->add_option("--emit-dot", rec_dot, "also write the automaton in DOT form");

    // determinize
    auto* det_cmd = app.add_subcommand("determinize", "power-set construction");
    std::string det_aut, det_dot;
    std::size_t det_cap = 4096;
    det_cmd->add_option("--automaton", det_aut)->required();
    det_cmd->add_option("--cap", det_cap, "reachable state cap");
    det_cmd->add_option("--emit-dot", det_dot);

    // eps-reduce
    auto* eps_cmd = app.add_subcommand("eps-reduce", "remove empty moves");
    std::string eps_aut, eps_dot;
    eps_cmd->add_option("--automaton", eps_aut)->required();
    eps_cmd->add_option("--emit-dot", eps_dot);

    // compose
    auto* comp_cmd = app.add_subcommand("compose", "binary and unary constructions");
    std::string comp_op, comp_a, comp_b, comp_hom, comp_dot;
    comp_cmd->add_option("--op", comp_op, "union|product|concat|star|inverse|hom-preimage")
        ->required();
    comp_cmd->add_option("--automaton", comp_a)->required();
    comp_cmd->add_option("--automaton2", comp_b);
    comp_cmd->add_option("--hom", comp_hom, "symbol-to-word mapping JSON");
    comp_cmd->add_option("--emit-dot", comp_dot);

    // equiv
    auto* eq_cmd = app.add_subcommand("equiv", "equivalence degree of two automata");
    std::string eq_a, eq_b;
    bool eq_exact = false;
    int eq_maxlen = 8;
    eq_cmd->add_option("--automaton", eq_a)->required();
    eq_cmd->add_option("--automaton2", eq_b)->required();
    eq_cmd->add_flag("--exact", eq_exact, "walk the joint value-vector space");
    eq_cmd->add_option("--max-len", eq_maxlen, "word length bound for the bounded meet");

    // witness
    auto* wit_cmd = app.add_subcommand("witness", "regularity clause value of one witness");
    std::string wit_lang, wit_aut;
    bool wit_comm = false, wit_det = false;
    wit_cmd->add_option("--language", wit_lang)->required();
    wit_cmd->add_option("--automaton", wit_aut)->required();
    wit_cmd->add_flag("--commutative", wit_comm);
    wit_cmd->add_flag("--deterministic", wit_det);

    // to-regex
    auto* rx_cmd = app.add_subcommand("to-regex", "expression for an automaton");
    std::string rx_aut, rx_pivot = "decl";
    rx_cmd->add_option("--automaton", rx_aut)->required();
    rx_cmd->add_option("--pivot-order", rx_pivot, "lex|decl|comma-separated state names");

    // regex-eval
    auto* re_cmd = app.add_subcommand("regex-eval", "evaluate an expression at a word");
    std::string re_text, re_json, re_lattice, re_alpha, re_word;
    re_cmd->add_option("--regex", re_text, "expression text");
    re_cmd->add_option("--regex-json", re_json, "expression document");
    re_cmd->add_option("--lattice", re_lattice)->required();
    re_cmd->add_option("--alphabet", re_alpha, "space-separated symbols")->required();
    re_cmd->add_option("--word", re_word)->required();

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run a check suite");
    std::string ver_suite = "all", ver_lattice = "builtin:mo2", ver_format = "table";
    std::uint64_t ver_seed = 1;
    int ver_maxlen = 5, ver_samples = 50;
    ver_cmd->add_option("--suite", ver_suite,
                        "lattice-lemmas|logic-lemmas|automata-theorems|regex-theorems|"
                        "counterexamples|boolean-equalities|pumping|all");
    ver_cmd->add_option("--lattice", ver_lattice);
    ver_cmd->add_option("--seed", ver_seed);
    ver_cmd->add_option("--max-len", ver_maxlen);
    ver_cmd->add_option("--samples", ver_samples);
    ver_cmd->add_option("--format", ver_format, "json|table");

    CLI11_PARSE(app, argc, argv);

    try {
        ImplKind impl = impl_kind_from_int(g.impl);

        if (lat_cmd->parsed()) {
            auto l = io::load_lattice_ref(lat_ref);
            if (lat_action == "check") {
                std::cout << "lattice " << l->name() << ": " << l->size() << " elements"
                          << ", orthomodular=" << (l->is_orthomodular() ? "yes" : "no")
                          << ", boolean=" << (l->is_boolean() ? "yes" : "no") << "\n";
                if (!l->is_orthomodular()) {
                    auto v = oml_violation(*l);
                    std::cerr << "orthomodular law violated at (a,b)=(" << v->first << ","
                              << v->second << ")\n";
                    return 2;
                }
                return 0;
            }
            if (lat_action == "show") {
                emit(g, io::lattice_to_json(*l).dump(2));
                return 0;
            }
            std::cerr << "unknown lattice action '" << lat_action << "'\n";
            return 2;
        }

        if (rec_cmd->parsed()) {
            LAutomaton m = load_automaton(rec_aut);
            Word w = m.alphabet().parse_word(rec_word);
            if (!rec_dot.empty()) {
                std::ofstream out(rec_dot);
                out << io::to_dot(m);
            }
            std::cout << m.lattice()->name_of(rec(m, w)) << "\n";
            return 0;
        }

        if (det_cmd->parsed()) {
            io::json doc = io::read_json_file(det_aut);
            LAutomaton m = io::automaton_from_json(doc, std::filesystem::path(det_aut).parent_path());
            LAutomaton d = determinize(m, det_cap);
            if (!det_dot.empty()) {
                std::ofstream out(det_dot);
                out << io::to_dot(d);
            }
            emit(g, io::automaton_to_json(d, lattice_ref_of(doc)).dump(2));
            return 0;
        }

        if (eps_cmd->parsed()) {
            io::json doc = io::read_json_file(eps_aut);
            LAutomaton m = io::automaton_from_json(doc, std::filesystem::path(eps_aut).parent_path());
            LAutomaton r = eps_reduce(m);
            if (!eps_dot.empty()) {
                std::ofstream out(eps_dot);
                out << io::to_dot(r);
            }
            emit(g, io::automaton_to_json(r, lattice_ref_of(doc)).dump(2));
            return 0;
        }

        if (comp_cmd->parsed()) {
            io::json doc = io::read_json_file(comp_a);
            LAutomaton m = io::automaton_from_json(doc, std::filesystem::path(comp_a).parent_path());
            std::optional<LAutomaton> out;
            if (comp_op == "union" || comp_op == "product" || comp_op == "concat") {
                if (comp_b.empty()) throw Error("--automaton2 is required for " + comp_op);
                LAutomaton m2 = load_automaton(comp_b);
                if (comp_op == "union") out = union_aut(m, m2);
                if (comp_op == "product") out = product_aut(m, m2);
                if (comp_op == "concat") out = concat_aut(m, m2);
            } else if (comp_op == "star") {
                out = fold_aut(m);
            } else if (comp_op == "inverse") {
                out = inverse_aut(m);
            } else if (comp_op == "hom-preimage") {
                if (comp_hom.empty()) throw Error("--hom is required for hom-preimage");
                SymbolMap h = load_symbol_map(comp_hom, m.alphabet());
                out = hom_preimage_aut(h, m);
            } else {
                throw Error("unknown composition op '" + comp_op + "'");
            }
            if (!comp_dot.empty()) {
                std::ofstream dot(comp_dot);
                dot << io::to_dot(*out);
            }
            emit(g, io::automaton_to_json(*out, lattice_ref_of(doc)).dump(2));
            return 0;
        }

        if (eq_cmd->parsed()) {
            LAutomaton m1 = load_automaton(eq_a);
            LAutomaton m2 = load_automaton(eq_b);
            Elem d = eq_exact ? equiv_degree_exact(m1, m2, impl)
                              : equiv_degree_bounded_aut(m1, m2, impl, eq_maxlen);
            std::cout << m1.lattice()->name_of(d) << "\n";
            return 0;
        }

        if (wit_cmd->parsed()) {
            LValuedLanguage a = io::language_from_json(
                io::read_json_file(wit_lang), std::filesystem::path(wit_lang).parent_path());
            LAutomaton m = load_automaton(wit_aut);
            Elem v = reg_witness(a, m, impl, wit_comm, wit_det, g.commutator_cap);
            std::cout << m.lattice()->name_of(v) << "\n";
            return 0;
        }

        if (rx_cmd->parsed()) {
            io::json doc = io::read_json_file(rx_aut);
            LAutomaton m = io::automaton_from_json(doc, std::filesystem::path(rx_aut).parent_path());
            std::vector<std::int32_t> order;
            if (rx_pivot == "decl") {
                // declaration order is the default
            } else if (rx_pivot == "lex") {
                std::vector<std::string> names = m.state_names();
                std::sort(names.begin(), names.end());
                for (const auto& n : names) order.push_back(m.state_index(n));
            } else {
                std::stringstream ss(rx_pivot);
                std::string tok;
                while (std::getline(ss, tok, ',')) order.push_back(m.state_index(tok));
            }
            KleeneRep k = kleene_representation(m, order);
            io::json out;
            out["text"] = format_regex(k.regex);
            out["ast"] = io::regex_to_json(k.regex);
            io::json po = io::json::array();
            for (auto q : k.pivot_order) po.push_back(m.state_names()[static_cast<std::size_t>(q)]);
            out["pivot_order"] = po;
            emit(g, out.dump(2));
            return 0;
        }

        if (re_cmd->parsed()) {
            auto l = io::load_lattice_ref(re_lattice);
            Alphabet alpha(([&] {
                std::vector<std::string> syms;
                std::stringstream ss(re_alpha);
                std::string tok;
                while (ss >> tok) syms.push_back(tok);
                return syms;
            })());
            Regex r = re_json.empty()
                          ? parse_regex(re_text, l, alpha)
                          : io::regex_from_json(io::read_json_file(re_json), l, alpha);
            Word w = alpha.parse_word(re_word);
            std::cout << l->name_of(regex_eval(r, w)) << "\n";
            return 0;
        }

        if (ver_cmd->parsed()) {
            auto l = io::load_lattice_ref(ver_lattice);
            auto reports =
                run_suite(ver_suite, l, ver_seed, ver_maxlen, ver_samples, impl, g.commutator_cap);
            bool any_fail = false;
            if (ver_format == "json") {
                std::string out;
                for (const auto& r : reports) {
                    out += report_json_line(r) + "\n";
                    any_fail = any_fail || !r.passed;
                }
                emit(g, out);
            } else {
                print_reports_table(reports);
                for (const auto& r : reports) any_fail = any_fail || !r.passed;
            }
            return any_fail ? 1 : 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

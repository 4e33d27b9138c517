// Exercises the command-line binary end to end against the sample
// documents: output values, document round-trips and exit codes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace {

int g_failures = 0;

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    if (p == nullptr) {
        std::cerr << "cannot spawn: " << cmd << "\n";
        std::exit(1);
    }
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return {code, out};
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAILED: " << what << "\n";
    } else {
        std::cout << "ok: " << what << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_driver <omlq-binary> <samples-dir>\n";
        return 1;
    }
    std::string bin = argv[1];
    std::string samples = argv[2];
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "omlq_cli_test";
    std::filesystem::create_directories(tmp);

    auto r = run(bin + " rec --automaton " + samples + "/fig3.json --word \"s s\"");
    expect(r.code == 0 && r.out == "0", "rec on the branching sample");

    r = run(bin + " rec --automaton " + samples + "/fig3.json --word \"s\"");
    expect(r.code == 0 && r.out == "y", "rec of a single symbol");

    r = run(bin + " lattice check builtin:mo2");
    expect(r.code == 0, "lattice check accepts mo2");

    r = run(bin + " lattice check builtin:o6");
    expect(r.code == 2, "lattice check rejects the hexagon");

    r = run(bin + " lattice check " + samples + "/diamond.json");
    expect(r.code == 0, "lattice check accepts a file lattice");

    std::string det = (tmp / "det.json").string();
    r = run(bin + " -o " + det + " determinize --automaton " + samples + "/fig3.json");
    expect(r.code == 0, "determinize emits a document");
    r = run(bin + " rec --automaton " + det + " --word \"s s\"");
    expect(r.code == 0 && r.out == "y", "the emitted power-set automaton reloads");

    std::string red = (tmp / "red.json").string();
    r = run(bin + " -o " + red + " eps-reduce --automaton " + samples + "/fig4.json");
    expect(r.code == 0, "eps-reduce emits a document");
    r = run(bin + " rec --automaton " + red + " --word \"s s\"");
    expect(r.code == 0 && r.out == "x", "the reduced automaton recognizes x at s s");
    r = run(bin + " rec --automaton " + samples + "/fig4.json --word \"s s\"");
    expect(r.code == 0 && r.out == "0", "the empty-move automaton recognizes 0 at s s");

    std::string pre = (tmp / "pre.json").string();
    r = run(bin + " -o " + pre + " compose --op hom-preimage --automaton " + samples +
            "/fig3.json --hom " + samples + "/hom_double.json");
    expect(r.code == 0, "hom-preimage emits a document");
    r = run(bin + " rec --automaton " + pre + " --word \"a\"");
    expect(r.code == 0 && r.out == "0", "pre-image recognition matches the mapped word");

    r = run(bin + " equiv --automaton " + samples + "/fig3.json --automaton2 " + samples +
            "/fig3.json --exact");
    expect(r.code == 0 && r.out == "1", "an automaton is exactly equivalent to itself");

    r = run(bin + " witness --language " + samples + "/lang_x.json --automaton " + samples +
            "/fig3.json");
    expect(r.code == 0 && r.out == "0", "witness clause value");

    std::string kfile = (tmp / "k.json").string();
    r = run(bin + " -o " + kfile + " to-regex --automaton " + samples + "/fig3.json");
    expect(r.code == 0, "to-regex emits text and AST");
    auto r2 = run(bin + " -o " + kfile + " to-regex --automaton " + samples + "/fig3.json");
    expect(r2.code == 0, "to-regex is repeatable");

    r = run(bin + " regex-eval --regex \"<x>s + <y>s\" --lattice builtin:mo2 --alphabet s "
                  "--word \"s\"");
    expect(r.code == 0 && r.out == "1", "regex-eval on text input");

    r = run(bin + " regex-eval --regex \"(s s)*\" --lattice builtin:mo2 --alphabet s --word \"\"");
    expect(r.code == 0 && r.out == "1", "regex-eval on the empty word");

    r = run(bin + " verify --suite lattice-lemmas --lattice builtin:mo2 --seed 7 --samples 30");
    expect(r.code == 0, "verify lattice-lemmas exits clean");

    r = run(bin + " verify --suite lattice-lemmas --lattice builtin:o6 --samples 10");
    expect(r.code == 1, "verify flags the hexagon");

    r = run(bin + " verify --suite automata-theorems --lattice builtin:mo2 --seed 3 "
                  "--max-len 4 --samples 10 --format json");
    expect(r.code == 0 && r.out.find("\"passed\":false") == std::string::npos,
           "verify emits JSON lines");

    r = run(bin + " rec --automaton /no/such/file.json --word \"s\"");
    expect(r.code == 2, "missing files exit 2");

    r = run(bin + " regex-eval --regex \"(s\" --lattice builtin:mo2 --alphabet s --word \"\"");
    expect(r.code == 2, "parse errors exit 2");

    std::cout << (g_failures == 0 ? "all CLI checks passed\n" : "CLI checks FAILED\n");
    return g_failures == 0 ? 0 : 1;
}

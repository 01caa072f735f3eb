// End-to-end checks of the CLI contract: exit codes split input errors (2)
// from negative verdicts (1) from positive ones (0), and --json documents
// carry the command/verdict/witness/trace/assumptions envelope. Argument 1
// is the binary path.

#include <array>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmdline) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen((cmdline + " 2>&1").c_str(), "r");
    if (!pipe) return {-1, "<popen failed>"};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

int failures = 0;

void expect(bool ok, const std::string& what, const std::string& got = "") {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << (got.empty() ? "" : "\n  got: " + got) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <normsurf binary>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const std::string fx = std::string(FIXTURE_DIR) + "/";

    // worked example: exact value on stdout, exit 0
    auto pair = run(bin + " pair --model " + fx + "a1.json --div A D=1 --div B D=1");
    expect(pair.exit_code == 0 && pair.output == "1/2\n", "pair: 1/2 on the double point",
           pair.output);

    // negative verdict: exit 1
    auto unknown = run(bin + " contract --model " + fx + "ruled_e1.json --curve R");
    expect(unknown.exit_code == 1, "contract Unknown exits 1", unknown.output);

    // input errors: exit 2
    expect(run(bin + " validate --model " + fx + "negative/bad_gram_offdiag.json").exit_code == 2,
           "invalid model exits 2");
    expect(run(bin + " pair --model " + fx + "a1.json --div A nope=1 --div B D=1").exit_code == 2,
           "unknown divisor name exits 2");
    expect(run(bin + " pair --model " + fx + "a1.json --div A E1=1 --div B D=1").exit_code == 2,
           "exceptional support in a downstairs divisor exits 2");
    expect(run(bin + " negdef --model " + fx + "a1.json").exit_code == 2,
           "missing required option exits 2");
    expect(run(bin + " pair --model " + fx + "negative/bad_missing_gram.json --div A D=1 "
                     "--div B D=1").exit_code == 2,
           "schema violation exits 2");
    expect(run(bin + " frobnicate --model " + fx + "a1.json").exit_code == 2,
           "unknown subcommand exits 2");

    // machine envelope
    auto doc = run(bin + " contract --model " + fx + "blowup_p2.json --curve E --json");
    expect(doc.exit_code == 0, "contract certificate exits 0", doc.output);
    try {
        auto j = nlohmann::json::parse(doc.output);
        expect(j.contains("command") && j.contains("verdict") && j.contains("witness") &&
                   j.contains("trace") && j.contains("assumptions"),
               "json envelope keys");
        expect(j["command"] == "contract" && j["verdict"] == "CertifiedContractible",
               "json verdict", doc.output);
        expect(j["witness"]["certificate"].contains("H"), "certificate witness present");
    } catch (...) {
        expect(false, "contract --json is parseable", doc.output);
    }

    // the negative-verdict document still carries checkable evidence
    auto inf = run(bin + " contract --model " + fx + "ruled_e1.json --curve R --json");
    try {
        auto j = nlohmann::json::parse(inf.output);
        expect(j["witness"]["complementary_system"]["status"] == "infeasible",
               "infeasible system reported", inf.output);
        expect(!j["witness"]["complementary_system"]["farkas_dual"].empty(),
               "farkas dual shipped");
    } catch (...) {
        expect(false, "contract --json (negative) is parseable", inf.output);
    }

    // divisor files work wherever inline specs do
    {
        std::string tmp = "/tmp/normsurf_div_test.json";
        FILE* f = fopen(tmp.c_str(), "w");
        fputs("{\"D\": \"1\"}\n", f);
        fclose(f);
        auto viafile = run(bin + " pullback --model " + fx + "a1.json --div-file " + tmp);
        expect(viafile.exit_code == 0 &&
                   viafile.output.find("1/2*E1") != std::string::npos,
               "pullback via --div-file", viafile.output);
        auto rolefile = run(bin + " pair --model " + fx + "a1.json --div-file A " + tmp +
                            " --div B D=1");
        expect(rolefile.exit_code == 0 && rolefile.output == "1/2\n",
               "pair via role-tagged --div-file", rolefile.output);
        remove(tmp.c_str());
    }

    // validate --json reports warnings without failing
    auto warn = run(bin + " validate --model " + fx + "warn_hodge.json --json");
    expect(warn.exit_code == 0, "warnings do not reject a model", warn.output);
    try {
        auto j = nlohmann::json::parse(warn.output);
        expect(j["witness"]["warnings"].size() == 1, "hodge warning listed", warn.output);
    } catch (...) {
        expect(false, "validate --json is parseable", warn.output);
    }

    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}

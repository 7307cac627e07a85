#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

// Byte-exact golden tests for every CLI path. Fixtures and expected outputs
// live in tests/golden; commands run with that directory as cwd.

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("cd ") + MONISECT_GOLDEN_DIR + " && " + MONISECT_CLI_PATH +
                      " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(MONISECT_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void golden(const std::string& args, const std::string& expected_file, int expected_exit = 0) {
    CAPTURE(args);
    RunResult r = run_cli(args);
    CHECK(r.exit_code == expected_exit);
    CHECK(r.output == slurp(expected_file));
}

} // namespace

TEST_CASE("classify golden") {
    golden("classify fx_b21.json", "out_classify_b21.json");
    golden("classify fx_b21.json --char4", "out_classify_b21_char4.json");
    golden("classify fx_b21.json --human", "out_classify_b21_human.txt");
}

TEST_CASE("solve golden") {
    golden("solve fx_u1_instance.json", "out_solve_u1.json");
    golden("solve fx_do_instance.json", "out_solve_do.json");
}

TEST_CASE("compress and verify golden") {
    golden("compress fx_do_instance.json aabba", "out_compress.json");
    golden("verify fx_do_instance.json fx_slp.json", "out_verify.json");
    golden("verify fx_do_instance.json fx_slp_member.json", "out_verify_member.json");
}

TEST_CASE("reduce golden") {
    golden("reduce to-dfa fx_u1_instance.json", "out_reduce_dfa.json");
    golden("reduce to-transmon fx_singleton_instance.json", "out_reduce_tm.json");
    golden("reduce from-square-tiling fx_tiling.json", "out_reduce_sq.json");
    golden("reduce from-corridor-tiling fx_tiling.json", "out_reduce_cr.json");
}

TEST_CASE("gen golden and determinism") {
    golden("gen monoid --seed 7", "out_gen_monoid.json");
    golden("gen tiling --seed 1", "out_gen_tiling.json");
    RunResult a = run_cli("gen instance --seed 5 --filter DO --k 2");
    RunResult b = run_cli("gen instance --seed 5 --filter DO --k 2");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    RunResult c = run_cli("gen group-tuple --seed 9");
    RunResult d = run_cli("gen group-tuple --seed 9");
    CHECK(c.exit_code == 0);
    CHECK(c.output == d.output);
}

TEST_CASE("tiling golden") {
    golden("check-tiling fx_tiling.json fx_grid.json", "out_check_ok.json");
    golden("check-tiling fx_tiling.json fx_bad_grid.json", "out_check_bad.json");
    golden("solve-tiling fx_tiling.json --mode corridor", "out_solve_tiling_cr.json");
    golden("solve-tiling fx_tiling.json --mode square", "out_solve_tiling_sq.json");
}

TEST_CASE("malformed input exits with 2") {
    golden("classify fx_bad_monoid.json", "out_err_not_assoc.json", 2);
    RunResult r = run_cli("solve no_such_file.json");
    CHECK(r.exit_code == 2);
    RunResult bad_cmd = run_cli("frobnicate");
    CHECK(bad_cmd.exit_code == 2);
}

TEST_CASE("pipeline: solve feeds compress which verifies") {
    RunResult solved = run_cli("solve fx_do_instance.json");
    CHECK(solved.exit_code == 0);
    // The witness "aa" is compressible and verifies as a member.
    RunResult comp = run_cli("compress fx_do_instance.json aa --out /tmp/golden_cw.json");
    CHECK(comp.exit_code == 0);
    RunResult extract = run_cli(
        "verify fx_do_instance.json fx_slp_member.json");
    CHECK(extract.exit_code == 0);
}

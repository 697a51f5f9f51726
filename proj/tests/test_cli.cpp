#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "lya/cli.hpp"
#include "support.hpp"

using namespace lya;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    int code = -1;
    try {
        code = run(args);
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream f(p);
    f << text;
    return p.string();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli check") {
    RunResult good = run_cli({"check", data_path("abelian2.lya")});
    CHECK(good.code == 0);
    CHECK(contains(good.out, "6/6 axioms PASS"));

    RunResult bad = run_cli({"check", data_path("jacobi_violation3.lya")});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "5/6 axioms PASS"));
    CHECK(contains(bad.out, "FAIL at (e0,e1,e2); defect -1/1*e2"));

    RunResult j = run_cli({"check", data_path("so3.lya"), "--json"});
    CHECK(j.code == 0);
    CheckReport parsed = parse_check_report(parse_json(j.out, "stdout"));
    CHECK(parsed == CheckReport{3, check_axioms(example_so3())});
}

TEST_CASE("cli rep-check") {
    RunResult good = run_cli({"rep-check", data_path("solvable_b.lya")});
    CHECK(good.code == 0);
    CHECK(contains(good.out, "7/7 relations PASS"));

    LYAStructure s = example_solvable_b();
    Representation r = regular_representation(s);
    r.rho[1] = RationalMatrix(2, 2);
    std::string rep_path = write_temp("lya_bad_rep.json", representation_json(r).dump(2));

    RunResult bad = run_cli({"rep-check", data_path("solvable_b.lya"), "--rep", rep_path});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "6/7 relations PASS"));
    CHECK(contains(bad.out, "FAIL at (e0,e1)"));

    RunResult j = run_cli({"rep-check", data_path("solvable_b.lya"), "--rep", rep_path, "--json"});
    CHECK(j.code == 1);
    RepCheckReport parsed = parse_rep_check_report(parse_json(j.out, "stdout"));
    CHECK(parsed == RepCheckReport{2, 2, check_representation(s, r)});
}

TEST_CASE("cli cohomology") {
    std::vector<std::string> args = {"cohomology", data_path("abelian2.lya"), "--levels",
                                     "1,2-3,4-5"};
    RunResult text = run_cli(args);
    CHECK(text.code == 0);
    CHECK(contains(text.out, "6 (2,4)"));
    CHECK(run_cli(args).out == text.out);

    args.push_back("--json");
    RunResult j = run_cli(args);
    CHECK(j.code == 0);
    CHECK(run_cli(args).out == j.out);
    CohomologyDoc parsed = parse_cohomology_doc(parse_json(j.out, "stdout"));
    LYAStructure s = example_abelian(2);
    Representation r = regular_representation(s);
    CHECK(parsed == CohomologyDoc{2, {h1(s, r), h23(s, r), h2p(s, r, 2)}});

    RunResult over = run_cli({"cohomology", data_path("abelian2.lya"), "--levels", "2p:3"});
    CHECK(over.code == 2);
    CHECK(contains(over.err, "p-limit"));
    RunResult lifted =
        run_cli({"cohomology", data_path("abelian2.lya"), "--levels", "2p:3", "--p-limit", "3"});
    CHECK(lifted.code == 0);
}

TEST_CASE("cli deform-check") {
    RunResult good = run_cli({"deform-check", data_path("g1_deformation.def")});
    CHECK(good.code == 0);
    CHECK(contains(good.out, "deformation equations hold through order 1"));

    Cochain g1 = load_cochain(data_path("g1_identity.coch"));
    std::vector<CochainPair> terms;
    terms.emplace_back(Cochain(2, 2, 2), g1);
    terms.push_back(zero_pair(1, 2, 2));
    TruncatedDeformation d = new_deformation(example_abelian(2), 2, std::move(terms));
    std::string path = write_temp("lya_g1_order2.def", deformation_json(d).dump(2));

    RunResult bad = run_cli({"deform-check", path});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "FAIL at (e0,e1,e0,e1,e0)"));
    CHECK(contains(bad.out, "defect at order 2, ternary Leibniz: -2/1*e0"));
    CHECK(contains(bad.out, "deformation equations FAIL"));

    RunResult j = run_cli({"deform-check", path, "--json"});
    CHECK(j.code == 1);
    DeformationReport parsed = parse_deform_check_report(parse_json(j.out, "stdout"));
    CHECK(parsed == check_deformation(d));
}

TEST_CASE("cli deform-integrate") {
    RunResult blocked = run_cli({"deform-integrate", data_path("abelian2.lya"), "--from",
                                 data_path("g1_identity.coch"), "--order", "2"});
    CHECK(blocked.code == 1);
    CHECK(contains(blocked.out,
                   "order 2: OBSTRUCTED in the ternary Leibniz family at (e0,e1,e0,e1,e0)"));
    CHECK(contains(blocked.out, "defect: -2/1*e0"));
    CHECK(contains(blocked.out, "obstruction pair in the degree-(4,5) cocycle space: yes"));

    RunResult j = run_cli({"deform-integrate", data_path("abelian2.lya"), "--from",
                           data_path("g1_identity.coch"), "--order", "2", "--json"});
    CHECK(j.code == 1);
    IntegrateReport parsed = parse_integrate_report(parse_json(j.out, "stdout"));
    CHECK(parsed.target_order == 2);
    CHECK(parsed.reached_order == 1);
    REQUIRE(parsed.obstruction.has_value());
    CHECK(parsed.obstruction->order == 2);
    CHECK(parsed.obstruction->family == 3);
    CHECK(parsed.obstruction->witness == std::vector<std::size_t>{0, 1, 0, 1, 0});
    CHECK(parsed.obstruction->defect == Vector{Scalar(-2), Scalar(0)});
    REQUIRE(parsed.obstruction->pair.has_value());
    CHECK(parsed.obstruction->pair->in_Z45);

    std::string zero_path = write_temp("lya_zero.coch", cochain_json(Cochain(2, 2, 2)).dump(2));
    RunResult ok = run_cli({"deform-integrate", data_path("abelian2.lya"), "--from", zero_path,
                            "--order", "3"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "integrated to order 3"));
    RunResult okj = run_cli({"deform-integrate", data_path("abelian2.lya"), "--from", zero_path,
                             "--order", "3", "--json"});
    IntegrateReport okp = parse_integrate_report(parse_json(okj.out, "stdout"));
    REQUIRE(okp.deformation.has_value());
    CHECK(okp.deformation->order == 3);
    CHECK(check_deformation(*okp.deformation).pass);
}

TEST_CASE("cli deform-trivialize") {
    RunResult stuck = run_cli({"deform-trivialize", data_path("g1_deformation.def")});
    CHECK(stuck.code == 1);
    CHECK(contains(stuck.out, "trivialized: no"));
    CHECK(contains(stuck.out, "obstructed at order 1"));
    CHECK(contains(stuck.out, "class coordinates in the representative basis: ["));

    SeededRng rng(7);
    GaugeTransform g = rng.gauge(2, 3);
    TruncatedDeformation gauged = apply_gauge(null_deformation(example_solvable_b(), 3), g);
    std::string path = write_temp("lya_gauged_null.def", deformation_json(gauged).dump(2));

    RunResult ok = run_cli({"deform-trivialize", path});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "trivialized: yes"));
    CHECK(contains(ok.out, "residual: null through order 3"));

    RunResult j = run_cli({"deform-trivialize", path, "--json"});
    CHECK(j.code == 0);
    TrivializeResult parsed = parse_trivialize_report(parse_json(j.out, "stdout"));
    CHECK(parsed == trivialize(gauged));
}

TEST_CASE("cli obstruction") {
    RunResult r = run_cli({"obstruction", data_path("g1_deformation.def")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "obstruction at order 2"));
    CHECK(contains(r.out, "degree-4 part: zero"));
    CHECK(contains(r.out, "degree-5 part: nonzero"));
    CHECK(contains(r.out, "in the degree-(4,5) cocycle space: yes"));

    RunResult j = run_cli({"obstruction", data_path("g1_deformation.def"), "--json"});
    CHECK(j.code == 0);
    ObstructionPair parsed = parse_obstruction_report(parse_json(j.out, "stdout"));
    CHECK(parsed == obstruction(load_deformation(data_path("g1_deformation.def")), 2));

    RunResult far = run_cli({"obstruction", data_path("g1_deformation.def"), "--order", "3"});
    CHECK(far.code == 1);
    CHECK(contains(far.err, "check failed"));
}

TEST_CASE("cli selftest") {
    RunResult ok = run_cli({"selftest", "2", "--seed", "42"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "selftest PASS (dim 2, seed 42)"));

    RunResult j = run_cli({"selftest", "2", "--seed", "42", "--json"});
    CHECK(j.code == 0);
    SelftestReport parsed = parse_selftest_report(parse_json(j.out, "stdout"));
    CHECK(parsed == SelftestReport{2, 42, run_selftest(2, 42)});

    RunResult corrupt = run_cli({"selftest", "2", "--corrupt-delta"});
    CHECK(corrupt.code == 1);
    CHECK(contains(corrupt.out, "delta∘delta"));
    CHECK_FALSE(debug::flip_delta_sign());
}

TEST_CASE("cli usage errors") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"check"}).code == 2);

    RunResult missing = run_cli({"check", "no_such_file.lya"});
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "error:"));

    RunResult bad_level = run_cli({"cohomology", data_path("abelian2.lya"), "--levels", "junk"});
    CHECK(bad_level.code == 2);
}

TEST_CASE("cli subprocess exit codes") {
    std::string base = std::string(LYA_CLI_PATH);
    int ok = std::system((base + " check " + data_path("abelian2.lya") + " > /dev/null").c_str());
    REQUIRE(ok != -1);
    CHECK(WEXITSTATUS(ok) == 0);
    int bad = std::system(
        (base + " check " + data_path("jacobi_violation3.lya") + " > /dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 1);
    int usage = std::system((base + " > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(usage) == 2);
}

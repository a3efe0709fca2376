#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cyclolines/constructions.hpp"
#include "cyclolines/json_io.hpp"
#include "cyclolines/pauli.hpp"
#include "cyclolines/spin.hpp"

using namespace cyclolines;

namespace {

const char* cli = CLI_BINARY;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/cyclolines_cli_out.txt";
    std::string cmd = std::string(cli) + " " + args + " > " + out_path + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, buf.str()};
}

std::string tmp_file(const std::string& name) {
    return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("construct then verify round trip") {
    std::string f = tmp_file("singer2.json");
    RunResult c = run("construct singer-eal --q 2 --out " + f);
    REQUIRE(c.exit_code == 0);

    RunResult v = run("verify " + f + " --expect equiangular");
    CHECK(v.exit_code == 0);
    Json rep = Json::parse(v.stdout_text);
    CHECK(rep.at("ok").get<bool>());
    // alpha = 2/9 in the report
    CHECK(rep.at("alpha_fraction").at(0).get<int>() == 2);
    CHECK(rep.at("alpha_fraction").at(1).get<int>() == 9);
}

TEST_CASE("byte-identical output across runs") {
    std::string f1 = tmp_file("wf3_a.json");
    std::string f2 = tmp_file("wf3_b.json");
    REQUIRE(run("construct wf --q 3 --out " + f1).exit_code == 0);
    REQUIRE(run("construct wf --q 3 --out " + f2).exit_code == 0);
    std::ifstream a(f1), b(f2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
}

TEST_CASE("tamper test: verify recomputes from vectors alone") {
    std::string f = tmp_file("mub3.json");
    REQUIRE(run("construct semifield-mub --kind field --q 3 --out " + f).exit_code == 0);
    REQUIRE(run("verify " + f + " --expect mub").exit_code == 0);

    // corrupt one entry, keep the metadata claiming success
    std::ifstream in(f);
    Json payload;
    in >> payload;
    in.close();
    payload["vectors"][0][0] = cyclotomic_to_json(Cyclotomic(5));
    std::ofstream out(f);
    out << payload.dump(2);
    out.close();

    RunResult v = run("verify " + f + " --expect mub");
    CHECK(v.exit_code == 1);
    Json rep = Json::parse(v.stdout_text);
    CHECK(!rep.at("ok").get<bool>());
    CHECK(rep.contains("witness"));
}

TEST_CASE("hoggar diagnose-fiducial gives an all-odd profile") {
    std::string f = tmp_file("hoggar.json");
    REQUIRE(run("construct hoggar --out " + f).exit_code == 0);
    RunResult d = run("diagnose-fiducial " + f);
    CHECK(d.exit_code == 0);
    Json rep = Json::parse(d.stdout_text);
    CHECK(rep.at("all_odd").get<bool>());
    std::vector<double> l = rep.at("l").get<std::vector<double>>();
    std::vector<double> expected{-3, -3, 1, 1, 1, 1, -3, 5};
    REQUIRE(l.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(l[static_cast<std::size_t>(i)] == doctest::Approx(expected[static_cast<std::size_t>(i)]));
}

TEST_CASE("spin circulant and potts matrices") {
    std::string f = tmp_file("circ5.json");
    REQUIRE(run("construct spin-circulant --n 5 --out " + f).exit_code == 0);
    CHECK(run("verify " + f + " --expect type2").exit_code == 0);
    CHECK(run("verify " + f + " --expect spin").exit_code == 0);

    // negative control: theta = zeta_4 at n = 4 is not type-II
    std::string g = tmp_file("circ4bad.json");
    REQUIRE(run("construct spin-circulant --n 4 --theta-order 4 --out " + g).exit_code == 0);
    CHECK(run("verify " + g + " --expect type2").exit_code == 1);

    std::string p = tmp_file("potts4.json");
    REQUIRE(run("construct potts --v 4 --out " + p).exit_code == 0);
    CHECK(run("verify " + p + " --expect spin").exit_code == 0);

    std::string p5 = tmp_file("potts5.json");
    REQUIRE(run("construct potts --v 5 --out " + p5).exit_code == 0);
    CHECK(run("verify " + p5 + " --expect spin").exit_code == 0);
}

TEST_CASE("compare under a supplied unitary") {
    std::string a = tmp_file("cmp_a.json");
    REQUIRE(run("construct wf --q 3 --out " + a).exit_code == 0);

    // identity unitary compares the family with itself
    TypeIIMatrix eye = TypeIIMatrix::wrap(
        [] {
            CycMatrix I(3, 3);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) I(r, c) = Cyclotomic(r == c ? 1 : 0);
            return I;
        }(),
        "identity");
    std::string u = tmp_file("cmp_u.json");
    std::ofstream out(u);
    out << matrix_to_json(eye).dump(2);
    out.close();

    RunResult c = run("compare " + a + " " + a + " --unitary " + u);
    CHECK(c.exit_code == 0);
    Json rep = Json::parse(c.stdout_text);
    CHECK(rep.at("ok").get<bool>());
}

TEST_CASE("export-gram CSV") {
    std::string f = tmp_file("singer2b.json");
    std::string csv = tmp_file("singer2b.csv");
    REQUIRE(run("construct singer-eal --q 2 --out " + f).exit_code == 0);
    REQUIRE(run("export-gram " + f + " --csv " + csv).exit_code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "row,col,num,den");
    std::string first;
    std::getline(in, first);
    CHECK(first == "0,1,2,9");
}

TEST_CASE("bad flags exit 2, missing file exits 3") {
    CHECK(run("construct singer-eal").exit_code == 2);        // missing --q
    CHECK(run("frobnicate").exit_code == 2);                  // unknown subcommand
    CHECK(run("construct alltop --q 3").exit_code == 2);      // p = 3 rejected
    CHECK(run("verify /nonexistent.json").exit_code == 3);    // I/O failure
}

TEST_CASE("float backend conversion") {
    std::string f = tmp_file("singer2f.json");
    REQUIRE(run("construct singer-eal --q 2 --backend float --out " + f).exit_code == 0);
    Json payload;
    std::ifstream in(f);
    in >> payload;
    CHECK(payload.at("backend").get<std::string>() == "float");
    CHECK(run("verify " + f + " --expect equiangular").exit_code == 0);
}

TEST_CASE("JSON round trips and certificate payloads") {
    // cyclotomic canonical encoding
    Cyclotomic x = Cyclotomic(Rational(-3, 7)) + Cyclotomic(Rational(2, 5)) * Cyclotomic::root_of_unity(12, 5);
    Json jx = cyclotomic_to_json(x);
    CHECK(jx.at("order").get<int>() == 12);
    CHECK(jx.at("coeffs").size() == 4);
    CHECK(cyclotomic_from_json(jx) == x);

    // line set round trip preserves vectors, partition and meta
    MubFamily fam = mubs_from_semifield(Semifield::from_field(FiniteField::make(3, 1)));
    Json jls = lineset_to_json(fam.lines);
    LineSet back = lineset_from_json(jls, 1e-9);
    CHECK(back.dim() == fam.lines.dim());
    CHECK(back.count() == fam.lines.count());
    CHECK(*back.partition() == *fam.lines.partition());
    CHECK(projectively_equal(back, fam.lines));

    // difference-set certificates
    ProductGroup z7 = ProductGroup::cyclic(7);
    DifferenceSetCheck ds = is_difference_set(z7, {1, 2, 4}, 7, 3, 1);
    Json jds = ds_certificate_to_json(z7, {1, 2, 4}, ds);
    CHECK(jds.at("kind") == "ds");
    CHECK(jds.at("verified").get<bool>());
    CHECK(jds.at("params") == Json::array({7, 3, 1}));

    HughesGroup H(Semifield::from_field(FiniteField::make(3, 1)));
    RelativeDifferenceSetCheck rds = is_relative_difference_set(H, H.forbidden_subgroup(), H.h0());
    Json jrds = rds_certificate_to_json(H, H.forbidden_subgroup(), H.h0(), rds);
    CHECK(jrds.at("kind") == "rds");
    CHECK(jrds.at("verified").get<bool>());
    CHECK(jrds.at("semiregular").get<bool>());
    CHECK(jrds.at("params") == Json::array({3, 3, 3, 1}));

    // spin duality report
    SpinDualityReport rep = spin_duality_check(quadratic_circulant(3));
    Json jrep = spin_duality_report_to_json(rep);
    CHECK(jrep.at("ok").get<bool>());
    CHECK(jrep.at("check") == "spin-duality");
}

TEST_CASE("single-line families are rejected as equiangular") {
    CycMatrix M(2, 1);
    M << Cyclotomic(1), Cyclotomic(0);
    EquiangularReport rep = is_equiangular(LineSet::exact(M, std::nullopt, "one"));
    CHECK(!rep.ok);
    CHECK(rep.kind == EquiangularReport::Fail::TooFewLines);
}

TEST_CASE("compare the Alltop and Wootters-Fields families under A_0*/sqrt(q)") {
    const std::int64_t q = 5;
    AlltopWfCertificate cert = alltop_wf_equivalence(q);
    REQUIRE(cert.ok);

    // serialize both full families and the discovered unitary, then let the
    // CLI rediscover the matching from the files alone
    FiniteField F = FiniteField::make(5, 1);
    const int qi = 5;
    CycMatrix acols(qi, qi * qi + qi), wcols(qi, qi * qi + qi);
    for (int alpha = 0; alpha < qi; ++alpha) {
        CycMatrix A = alltop_matrix(F, alpha);
        CycMatrix W = wf_odd_matrix(F, alpha);
        for (int y = 0; y < qi; ++y) {
            acols.col(alpha * qi + y) = A.col(y);
            wcols.col(alpha * qi + y) = W.col(y);
        }
    }
    for (int y = 0; y < qi; ++y) {
        for (int x = 0; x < qi; ++x) {
            acols(x, qi * qi + y) = Cyclotomic(x == y ? 1 : 0);
            wcols(x, qi * qi + y) = Cyclotomic(x == y ? 1 : 0);
        }
    }
    std::string fa = tmp_file("alltop5.json");
    std::string fw = tmp_file("wf5.json");
    std::string fu = tmp_file("u5.json");
    {
        std::ofstream oa(fa), ow(fw), ou(fu);
        oa << lineset_to_json(LineSet::exact(acols, std::nullopt, "alltop family")).dump(2);
        ow << lineset_to_json(LineSet::exact(wcols, std::nullopt, "wf family")).dump(2);
        ou << matrix_to_json(TypeIIMatrix::wrap(cert.unitary, "A_0*/sqrt(5)")).dump(2);
    }
    RunResult c = run("compare " + fa + " " + fw + " --unitary " + fu);
    CHECK(c.exit_code == 0);
    Json rep = Json::parse(c.stdout_text);
    CHECK(rep.at("ok").get<bool>());

    // a wrong unitary is rejected with exit 1
    TypeIIMatrix eye = TypeIIMatrix::wrap(
        [&] {
            CycMatrix I(qi, qi);
            for (int r = 0; r < qi; ++r)
                for (int cc = 0; cc < qi; ++cc) I(r, cc) = Cyclotomic(r == cc ? 1 : 0);
            return I;
        }(),
        "identity");
    std::string fi = tmp_file("u5_eye.json");
    std::ofstream oi(fi);
    oi << matrix_to_json(eye).dump(2);
    oi.close();
    CHECK(run("compare " + fa + " " + fw + " --unitary " + fi).exit_code == 1);
}

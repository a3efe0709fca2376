// Command-line front end: construct the line systems and matrices of this
// library, verify them from their serialized form alone, compare families
// under a supplied unitary, run fiducial diagnostics, and export Gram data.
//
// Exit codes: 0 all requested verifications pass, 1 a verification failed,
// 2 bad flags or parameters, 3 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cyclolines/json_io.hpp"
#include "cyclolines/parallel.hpp"
#include "cyclolines/pauli.hpp"
#include "cyclolines/spin.hpp"

namespace {

using namespace cyclolines;

struct GlobalOptions {
    std::string out;
    int threads = 0;
    double tolerance = 1e-9;
    std::string backend;  // "", "exact", "float"
    int max_order = 0;
};

int write_output(const Json& payload, const GlobalOptions& opt) {
    std::string text = payload.dump(2);
    text += "\n";
    if (opt.out.empty() || opt.out == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(opt.out);
    if (!out) {
        std::cerr << "cannot open output file " << opt.out << "\n";
        return 3;
    }
    out << text;
    return out.good() ? 0 : 3;
}

Json read_json_file(const std::string& path) {
    if (path.empty() || path == "-") {
        Json j;
        std::cin >> j;
        return j;
    }
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

bool default_backend_float(const GlobalOptions& opt) {
    if (!opt.backend.empty()) return opt.backend == "float";
    const char* env = std::getenv("CYCLOLINES_BACKEND");
    return env != nullptr && std::string(env) == "float";
}

int emit_lineset(LineSet ls, const GlobalOptions& opt) {
    if (default_backend_float(opt)) ls = ls.to_float(opt.tolerance);
    return write_output(lineset_to_json(ls), opt);
}

int construct_command(const std::string& what, std::int64_t q, const std::string& kind, int n,
                      int v, int sign, int theta_order, const GlobalOptions& opt) {
    if (what == "singer-eal") {
        std::cerr << "constructing Singer equiangular lines, q=" << q << "\n";
        return emit_lineset(singer_equiangular_lines(q), opt);
    }
    if (what == "semifield-mub") {
        Semifield E = (kind == "dickson") ? Semifield::dickson(q)
                                          : [&] {
                                                int p = 0, deg = 0;
                                                if (!is_prime_power(q, &p, &deg))
                                                    throw CLI::ValidationError("--q must be a prime power");
                                                return Semifield::from_field(FiniteField::make(p, deg));
                                            }();
        std::cerr << "constructing semifield MUB family over " << E.name() << " (order "
                  << E.order() << ")\n";
        MubFamily fam = mubs_from_semifield(E);
        return emit_lineset(std::move(fam.lines), opt);
    }
    if (what == "wf") {
        int p = 0, deg = 0;
        if (!is_prime_power(q, &p, &deg)) throw CLI::ValidationError("--q must be a prime power");
        std::cerr << "constructing Wootters-Fields family, q=" << q << "\n";
        MubFamily fam = (p == 2) ? wf_even(deg) : wf_odd(q);
        return emit_lineset(std::move(fam.lines), opt);
    }
    if (what == "alltop") {
        std::cerr << "constructing Alltop family, q=" << q << "\n";
        MubFamily fam = alltop(q);
        return emit_lineset(std::move(fam.lines), opt);
    }
    if (what == "hoggar") {
        std::cerr << "constructing the Hoggar lines\n";
        return emit_lineset(hoggar(), opt);
    }
    if (what == "spin-circulant") {
        std::cerr << "constructing quadratic circulant, n=" << n << "\n";
        CycMatrix W = (theta_order > 0)
                          ? quadratic_circulant(n, Cyclotomic::root_of_unity(theta_order, 1))
                          : quadratic_circulant(n);
        TypeIIMatrix t = TypeIIMatrix::wrap(std::move(W), "spin-circulant n=" + std::to_string(n));
        if (t.type_ii) {
            SpinCheck spin = is_spin_model(t.exact());
            t.spin_model = spin.ok ? TypeIIMatrix::Tri::Yes : TypeIIMatrix::Tri::No;
        } else {
            t.spin_model = TypeIIMatrix::Tri::No;
        }
        return write_output(matrix_to_json(t), opt);
    }
    if (what == "potts") {
        std::cerr << "constructing Potts model, v=" << v << "\n";
        PottsMatrix P = potts(v, sign);
        TypeIIMatrix t = P.exact
                             ? TypeIIMatrix::wrap(std::move(P.exact_matrix),
                                                  "potts v=" + std::to_string(v) + " a=" + P.a_text)
                             : TypeIIMatrix::wrap(std::move(P.float_matrix),
                                                  "potts v=" + std::to_string(v) + " a=" + P.a_text,
                                                  opt.tolerance);
        if (t.type_ii) {
            SpinCheck spin = t.backend.is_exact() ? is_spin_model(t.exact())
                                                  : is_spin_model(t.floating(), opt.tolerance);
            t.spin_model = spin.ok ? TypeIIMatrix::Tri::Yes : TypeIIMatrix::Tri::No;
        }
        return write_output(matrix_to_json(t), opt);
    }
    throw CLI::ValidationError("unknown construction " + what);
}

int verify_command(const std::string& path, std::string expect, const GlobalOptions& opt) {
    Json payload = read_json_file(path);
    const bool is_matrix = payload.contains("entries");
    if (expect.empty()) {
        if (is_matrix)
            expect = "type2";
        else
            expect = payload.contains("partition") && !payload.at("partition").is_null() ? "mub"
                                                                                         : "equiangular";
    }
    Json report;
    bool ok = false;
    if (expect == "equiangular" || expect == "mub") {
        if (is_matrix) throw CLI::ValidationError("file holds a matrix, not a line set");
        LineSet ls = lineset_from_json(payload, opt.tolerance);
        if (expect == "equiangular") {
            EquiangularReport rep = is_equiangular(ls);
            report = equiangular_report_to_json(rep);
            ok = rep.ok;
        } else {
            MubReport rep = is_mub_family(ls);
            report = mub_report_to_json(rep);
            ok = rep.ok;
        }
    } else if (expect == "type2" || expect == "spin") {
        if (!is_matrix) throw CLI::ValidationError("file holds a line set, not a matrix");
        TypeIIMatrix m = matrix_from_json(payload, opt.tolerance);
        TypeIICheck t2 = m.backend.is_exact() ? is_type_ii(m.exact())
                                              : is_type_ii(m.floating(), opt.tolerance);
        if (expect == "type2") {
            report = Json{{"check", "type2"}, {"ok", t2.ok}};
            if (!t2.ok) report["message"] = t2.message;
            ok = t2.ok;
        } else {
            SpinCheck spin = m.backend.is_exact() ? is_spin_model(m.exact())
                                                  : is_spin_model(m.floating(), opt.tolerance);
            report = spin_report_to_json(t2, spin);
            ok = t2.ok && spin.ok;
        }
    } else {
        throw CLI::ValidationError("unknown --expect value " + expect);
    }
    int rc = write_output(report, opt);
    if (rc != 0) return rc;
    return ok ? 0 : 1;
}

int compare_command(const std::string& a_path, const std::string& b_path,
                    const std::string& u_path, const GlobalOptions& opt) {
    LineSet A = lineset_from_json(read_json_file(a_path), opt.tolerance);
    LineSet B = lineset_from_json(read_json_file(b_path), opt.tolerance);
    CycMatrix U = cyc_matrix_from_json(read_json_file(u_path));
    if (!A.is_exact() || !B.is_exact())
        throw CLI::ValidationError("compare requires exact line sets");
    CycMatrix image = U * A.exact_family().vectors;
    auto match = match_columns_up_to_phase(image, B.exact_family().vectors);
    Json report;
    report["check"] = "equivalence-certificate";
    if (!match) {
        report["ok"] = false;
        report["message"] = "no column matching up to scalars exists";
        int rc = write_output(report, opt);
        return rc != 0 ? rc : 1;
    }
    CertificateReport cert = equivalence_certificate_check(A, B, U, match->perm, match->scalars);
    report["ok"] = cert.ok;
    if (!cert.ok) report["message"] = cert.message;
    report["perm"] = match->perm;
    int rc = write_output(report, opt);
    return rc != 0 ? rc : (cert.ok ? 0 : 1);
}

int diagnose_command(const std::string& path, const GlobalOptions& opt) {
    Json payload = read_json_file(path);
    LineSet ls = lineset_from_json(payload, opt.tolerance);
    // the alpha profile of the first vector; Pauli orbits share it across
    // the whole family up to permutation
    FiducialDiagnostics diag;
    if (ls.is_exact()) {
        CycVector v = ls.exact_family().vectors.col(0);
        diag = fiducial_diagnostics(v, opt.tolerance);
    } else {
        CplxVector v = ls.float_family().vectors.col(0);
        diag = fiducial_diagnostics(v, opt.tolerance);
    }
    int rc = write_output(fiducial_report_to_json(diag), opt);
    return rc != 0 ? rc : (diag.all_odd ? 0 : 1);
}

int export_gram_command(const std::string& path, const std::string& csv_path,
                        const GlobalOptions& opt) {
    LineSet ls = lineset_from_json(read_json_file(path), opt.tolerance);
    std::ofstream out(csv_path);
    if (!out) {
        std::cerr << "cannot open " << csv_path << "\n";
        return 3;
    }
    export_gram_csv(ls, out);
    return out.good() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructions and certificates for equiangular lines, mutually unbiased "
                 "bases, and spin models"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--threads", opt.threads, "worker cap for pair-level verification (0 = cores)");
    app.add_option("--tolerance", opt.tolerance, "float-mode comparison tolerance")
        ->default_val(1e-9);
    app.add_option("--backend", opt.backend, "output backend for construct (exact|float)")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--max-order", opt.max_order, "cap for cyclotomic order promotion");
    app.add_option("--out", opt.out, "output file (default stdout)");

    auto* construct = app.add_subcommand("construct", "build a line system or matrix");
    construct->require_subcommand(1);
    std::int64_t q = 0;
    std::string kind = "field";
    int n = 0, v = 0, sign = 1, theta_order = 0;

    auto* singer = construct->add_subcommand("singer-eal", "Singer (q^2+q+1, q+1, 1) equiangular lines");
    singer->add_option("--q", q, "prime power")->required();
    auto* semi = construct->add_subcommand("semifield-mub", "q+1 MUBs from a commutative semifield");
    semi->add_option("--kind", kind, "field | dickson")->check(CLI::IsMember({"field", "dickson"}));
    semi->add_option("--q", q, "field order, or Dickson base-field order (semifield order q^2)")
        ->required();
    auto* wf = construct->add_subcommand("wf", "Wootters-Fields bases");
    wf->add_option("--q", q, "prime power")->required();
    auto* all = construct->add_subcommand("alltop", "Alltop bases (characteristic > 3)");
    all->add_option("--q", q, "prime power")->required();
    construct->add_subcommand("hoggar", "Hoggar's 64 lines in C^8");
    auto* circ = construct->add_subcommand("spin-circulant", "quadratic circulant spin model");
    circ->add_option("--n", n, "order")->required();
    circ->add_option("--theta-order", theta_order,
                     "use theta = zeta_M instead of the default zeta_{2n}");
    auto* pot = construct->add_subcommand("potts", "Potts model (a-1)I + J");
    pot->add_option("--v", v, "order")->required();
    pot->add_option("--sign", sign, "root choice +1 or -1")->check(CLI::IsMember({1, -1}));

    std::string file, expect, file_b, unitary, csv;
    auto* verify = app.add_subcommand("verify", "re-check a serialized object from scratch");
    verify->add_option("file", file, "JSON file ('-' for stdin)")->required();
    verify->add_option("--expect", expect, "equiangular | mub | type2 | spin");
    auto* compare = app.add_subcommand("compare", "equivalence certificate for two line sets");
    compare->add_option("a", file, "first line set")->required();
    compare->add_option("b", file_b, "second line set")->required();
    compare->add_option("--unitary", unitary, "unitary matrix JSON")->required();
    auto* diag = app.add_subcommand("diagnose-fiducial", "alpha/l profile of the first vector");
    diag->add_option("file", file, "line-set JSON ('-' or omitted for stdin)");
    auto* gram = app.add_subcommand("export-gram", "stream the normalized Gram data as CSV");
    gram->add_option("file", file, "line-set JSON")->required();
    gram->add_option("--csv", csv, "output CSV path")->required();

    // global options may appear after subcommand names
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* inner : sub->get_subcommands(nullptr)) inner->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (opt.threads > 0) set_thread_count(opt.threads);
    if (opt.max_order > 0) Cyclotomic::set_max_order(opt.max_order);

    try {
        if (construct->parsed()) {
            std::string what;
            for (auto* sub : {singer, semi, wf, all, circ, pot})
                if (sub->parsed()) what = sub->get_name();
            if (construct->get_subcommand("hoggar")->parsed()) what = "hoggar";
            return construct_command(what, q, kind, n, v, sign, theta_order, opt);
        }
        if (verify->parsed()) return verify_command(file, expect, opt);
        if (compare->parsed()) return compare_command(file, file_b, unitary, opt);
        if (diag->parsed()) return diagnose_command(file, opt);
        if (gram->parsed()) return export_gram_command(file, csv, opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

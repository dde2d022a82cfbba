// End-to-end checks of the command-line tool: file round trips, exit codes,
// and byte-stable output. The binary path arrives as argv[1].

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <json.hpp>

#include "apport/cmatrix.hpp"
#include "apport/io.hpp"
#include "apport/linalg.hpp"

namespace fs = std::filesystem;
using namespace apport;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

std::string cli;
fs::path dir;

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const fs::path outfile = dir / "last_output.txt";
    const std::string cmd = cli + " " + args + " > " + outfile.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    const int code = (raw >= 256) ? raw / 256 : raw;  // WEXITSTATUS without <sys/wait.h>
    return {code, read_text_file(outfile.string())};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

CMatrix matrix_from_report(const std::string& report, const char* field) {
    const nlohmann::json j = nlohmann::json::parse(report);
    return matrix_from_string(j.at(field).dump());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cli>\n";
        return 1;
    }
    cli = argv[1];
    dir = fs::temp_directory_path() / "apportion_cli_test";
    fs::create_directories(dir);

    const std::string j3 = (dir / "j3.mat").string();
    write_matrix(j3, ones(3));
    const std::string eye2 = (dir / "eye2.mat").string();
    write_matrix(eye2, identity(2));

    // uniform-check: exit 0 with the constant, or 1
    {
        const RunResult r = run("uniform-check " + j3);
        expect(r.code == 0, "uniform-check J3 exit code");
        expect(contains(r.out, "c: 1"), "uniform-check J3 constant");
        expect(run("uniform-check " + eye2).code == 1, "uniform-check eye2 is checked-false");
        // a huge tolerance flips the verdict
        expect(run("uniform-check --tol 10 " + eye2).code == 0, "uniform-check tol override");
    }

    // apportion-rank1: structured report with V, B, kappa
    {
        const std::string e00 = (dir / "e00.mat").string();
        write_matrix(e00, unit_matrix(3, 0, 0));
        const RunResult r = run("apportion-rank1 --format structured " + e00);
        expect(r.code == 0, "apportion-rank1 exit code");
        const nlohmann::json rep = nlohmann::json::parse(r.out);
        expect(std::abs(rep.at("kappa").get<double>() - 1.0 / 3.0) < 1e-12,
               "apportion-rank1 kappa");
        const CMatrix b = matrix_from_report(r.out, "result");
        const CMatrix v = matrix_from_report(r.out, "transform");
        expect(max_abs_diff(b, cd(1.0 / 3.0, 0) * ones(3)) < 1e-9, "apportion-rank1 result");
        expect(max_abs_diff(adjoint(v) * v, identity(3)) < 1e-10, "apportion-rank1 unitary");
        expect(run("apportion-rank1 " + eye2).code == 3, "apportion-rank1 rank error");
    }

    // certify: witness for the shifted ball, none-found for uniform
    {
        CMatrix t3 = identity(3);
        t3 *= 0.75;
        const std::string t3p = (dir / "t3.mat").string();
        write_matrix(t3p, t3);
        const RunResult r = run("certify " + t3p);
        expect(r.code == 0, "certify T3 exit code");
        expect(contains(r.out, "translation-violation"), "certify T3 kind");

        const std::string j2 = (dir / "j2.mat").string();
        write_matrix(j2, ones(2));
        const RunResult r2 = run("certify " + j2);
        expect(r2.code == 1, "certify J2 none-found exit code");
        expect(contains(r2.out, "inconclusive"), "certify none-found labelled inconclusive");
    }

    // psd-check
    {
        const std::string d012 = (dir / "d012.mat").string();
        write_matrix(d012, diag({cd(0, 0), cd(1, 0), cd(2, 0)}));
        expect(run("psd-check " + d012).code == 1, "psd-check rank 2 checked-false");
        const std::string e00 = (dir / "e00.mat").string();
        expect(run("psd-check " + e00).code == 0, "psd-check rank 1 ok");
        const std::string neg = (dir / "neg.mat").string();
        write_matrix(neg, diag({cd(1, 0), cd(-1, 0)}));
        expect(run("psd-check " + neg).code == 3, "psd-check non-PSD is a domain error");
    }

    // graph and function files: graceful-check, nif round trip, rho-check
    {
        const std::string starp = (dir / "star.graph").string();
        write_text_file(starp, "3\n0 0\n0 1\n0 2\n");
        expect(run("graceful-check " + starp).code == 0, "graceful-check star");

        const std::string badp = (dir / "bad.graph").string();
        write_text_file(badp, "4\n0 0\n0 1\n1 2\n2 3\n");
        expect(run("graceful-check " + badp).code == 1, "graceful-check path");

        const std::string f0 = (dir / "f0.fn").string();
        write_text_file(f0, "3\n0 0 0\n");
        const std::string gout = (dir / "nif.graph").string();
        expect(run("nif --out " + gout + " " + f0).code == 0, "nif forward");
        const RunResult inv = run("nif --invert " + gout);
        expect(inv.code == 0 && contains(inv.out, "0 0 0"), "nif inverse round trip");

        const std::string ident = (dir / "ident.fn").string();
        write_text_file(ident, "3\n0 1 2\n");
        expect(run("rho-check " + starp + " " + ident).code == 0, "rho-check identity labels");
    }

    // compose: one step and full iteration
    {
        const std::string fp = (dir / "path.fn").string();
        write_text_file(fp, "4\n0 0 1 2\n");
        const RunResult one = run("compose " + fp);
        expect(one.code == 0 && contains(one.out, "0 0 1 1"), "compose single step");
        const RunResult all = run("compose --iterate " + fp);
        expect(all.code == 0 && contains(all.out, "0 0 0 0"), "compose iterate");
    }

    // blowup-apportion with identity labels; frak-min on T_f
    {
        const std::string starp = (dir / "star.graph").string();
        const std::string ident = (dir / "ident.fn").string();
        const RunResult r = run("blowup-apportion " + starp + " " + ident);
        expect(r.code == 0, "blowup-apportion exit code");
        expect(contains(r.out, "status: uniform"), "blowup-apportion status");
        expect(contains(r.out, "kappa: 0.2"), "blowup-apportion constant");

        const std::string f2 = (dir / "f2.fn").string();
        write_text_file(f2, "2\n0 0\n");
        const std::string tfp = (dir / "tf.mat").string();
        expect(run("tf --out " + tfp + " " + f2).code == 0, "tf writes a matrix");
        const RunResult fr = run("frak-min --n 2 " + tfp);
        expect(fr.code == 0, "frak-min exit code");
        const std::size_t at = fr.out.find("value: ");
        const double value = (at == std::string::npos)
                                 ? -1.0
                                 : std::strtod(fr.out.c_str() + at + 7, nullptr);
        expect(std::abs(value - 1.0 / 3.0) < 1e-10, "frak-min value 1/3");
    }

    // interlace on the all-ones matrix with a graceful graph
    {
        const std::string m4 = (dir / "m4.mat").string();
        write_matrix(m4, ones(4));
        const std::string g4 = (dir / "g4.graph").string();
        write_text_file(g4, "4\n0 2\n0 3\n1 2\n2 2\n");
        const RunResult r = run("interlace " + m4 + " " + g4);
        expect(r.code == 0, "interlace exit code");
        expect(!contains(r.out, "FAIL"), "interlace all rows pass");

        const RunResult rs = run("interlace --format structured " + m4 + " " + g4);
        const nlohmann::json rep = nlohmann::json::parse(rs.out);
        expect(rep.at("rows").size() == 4, "interlace structured rows");
        expect(rep.at("rows")[0].at("pass").get<bool>(), "interlace structured pass flag");
    }

    // recover: function -> graph -> function
    {
        const std::string fp = (dir / "path.fn").string();
        const RunResult r = run("recover --fixed-point 0 " + fp);
        expect(r.code == 0, "recover exit code");
        expect(contains(r.out, "fixed point: yes"), "recover fixed point");
        expect(contains(r.out, "0 0 1 2"), "recover function");
    }

    // search-u: reproducible bytes for a fixed seed
    {
        const std::string rnd = (dir / "rnd.mat").string();
        CMatrix a(2, {cd(0.3, 0.1), cd(-1.2, 0.4), cd(0.9, -0.7), cd(0.05, 1.1)});
        write_matrix(rnd, a);
        const RunResult r1 = run("search-u --seed 42 --restarts 2 --iters 40 " + rnd);
        const RunResult r2 = run("search-u --seed 42 --restarts 2 --iters 40 " + rnd);
        expect(r1.out == r2.out, "search-u byte-identical reruns");
        expect(contains(r1.out, "seed: 42"), "search-u echoes the seed");
    }

    // spectra constructions
    {
        const std::string f2m = (dir / "f2.mat").string();
        write_matrix(f2m, dft(2));
        const RunResult r = run("spectra --format structured --pad 2 " + f2m);
        expect(r.code == 0, "spectra pad exit code");
        const CMatrix padded = matrix_from_string(r.out);
        expect(padded.n() == 4, "spectra pad size");
        expect(is_uniform(padded, 1e-9).first, "spectra pad uniform");
    }

    // usage errors
    {
        expect(run("uniform-check --no-such-flag " + j3).code == 2, "unknown flag exit 2");
        expect(run("no-such-command").code == 2, "unknown subcommand exit 2");
        expect(run("uniform-check " + (dir / "missing.mat").string()).code == 3,
               "missing file is a runtime error");
    }

    if (failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << failures << " failures\n";
    return 1;
}

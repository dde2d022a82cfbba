// Command-line frontend: every library operation on files, with seeded
// reproducibility and machine-readable output.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

#include "apport/blowup.hpp"
#include "apport/certify.hpp"
#include "apport/graphs.hpp"
#include "apport/interlace.hpp"
#include "apport/io.hpp"
#include "apport/linalg.hpp"
#include "apport/rank_one.hpp"
#include "apport/recovery.hpp"
#include "apport/search.hpp"

using namespace apport;

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 success/true, 1 checked-false, 2 usage error, 3 numeric/domain error
constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kError = 3;

struct CommonOpts {
    double tol = -1.0;  // negative: module default
    std::uint64_t seed = 1;
    int restarts = 8;
    int iters = 600;
    int jobs = 1;
    std::string format = "human";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "tolerance override");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--restarts", o.restarts, "search restarts");
    cmd->add_option("--iters", o.iters, "search iterations per restart");
    cmd->add_option("--jobs", o.jobs, "parallel restarts/enumeration");
    cmd->add_option("--format", o.format, "human|structured")
        ->check(CLI::IsMember({"human", "structured"}));
    cmd->add_option("--out", o.out, "write the result document to this path");
}

double tol_or(const CommonOpts& o, double fallback) { return o.tol < 0.0 ? fallback : o.tol; }

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
}

std::string json_complex(cd z) {
    return "[" + fmt17(z.real()) + ", " + fmt17(z.imag()) + "]";
}

std::string json_matrix(const CMatrix& a) {
    std::ostringstream os;
    os << "{\"n\": " << a.n() << ", \"entries\": [";
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        if (i) os << ", ";
        os << json_complex(a.entries()[i]);
    }
    os << "]}";
    return os.str();
}

std::string json_meta(const CommonOpts& o, double tol_used) {
    std::ostringstream os;
    os << "{\"version\": \"" << kVersion << "\", \"seed\": " << o.seed
       << ", \"tol\": " << fmt17(tol_used) << "}";
    return os.str();
}

std::string report_json(const ApportionReport& rep, const CommonOpts& o, double tol_used) {
    std::ostringstream os;
    os << "{\"meta\": " << json_meta(o, tol_used) << ",\n"
       << " \"status\": \"" << to_string(rep.status) << "\",\n"
       << " \"kappa\": " << fmt17(rep.kappa) << ",\n"
       << " \"residual\": " << fmt17(rep.residual) << ",\n"
       << " \"iterations\": " << rep.iterations << ",\n"
       << " \"note\": \"" << rep.note << "\",\n"
       << " \"transform\": " << json_matrix(rep.transform) << ",\n"
       << " \"result\": " << json_matrix(rep.result) << "}\n";
    return os.str();
}

std::string report_human(const ApportionReport& rep) {
    std::ostringstream os;
    os << "status: " << to_string(rep.status) << "\n"
       << "kappa: " << fmt17(rep.kappa) << "\n"
       << "residual: " << fmt17(rep.residual) << "\n"
       << "iterations: " << rep.iterations << "\n";
    if (!rep.note.empty()) os << "note: " << rep.note << "\n";
    return os.str();
}

int emit_report(const ApportionReport& rep, const CommonOpts& o, double tol_used) {
    emit(o, o.format == "structured" ? report_json(rep, o, tol_used) : report_human(rep));
    return rep.status == ApportionStatus::uniform ? kOk : kFalse;
}

std::string cert_json(const Certificate& c, const CommonOpts& o, double tol_used) {
    std::ostringstream os;
    os << "{\"meta\": " << json_meta(o, tol_used) << ", \"kind\": \"" << to_string(c.kind)
       << "\", \"witness_c\": " << json_complex(c.witness_c) << ", \"lhs\": " << fmt17(c.lhs)
       << ", \"rhs\": " << fmt17(c.rhs) << "}\n";
    return os.str();
}

std::string cert_human(const Certificate& c) {
    std::ostringstream os;
    if (c.kind == CertificateKind::none_found) {
        os << "none-found (inconclusive: not a proof of apportionability)\n";
    } else {
        os << "certificate: " << to_string(c.kind) << "\n"
           << "witness_c: " << fmt17(c.witness_c.real()) << " + " << fmt17(c.witness_c.imag())
           << "i\n"
           << "lhs: " << fmt17(c.lhs) << "\n"
           << "rhs: " << fmt17(c.rhs) << "\n";
    }
    return os.str();
}

std::vector<std::size_t> labels_from_function(const ZnFunction& f) {
    std::vector<std::size_t> labels(f.n());
    for (std::size_t i = 0; i < f.n(); ++i) labels[i] = f(i);
    return labels;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix apportionment toolkit"};
    app.require_subcommand(1);

    // one option block per subcommand; CLI11 owns the lifetime
    struct Ctx {
        CommonOpts common;
        std::string in1, in2;
        std::size_t n = 0;
        std::string mode = "exhaustive";
        std::size_t samples = 200;
        bool invert = false;
        bool iterate = false;
        int fixed_point = -1;
        std::size_t pad = 0;
        double theta = 0.0;
    };
    std::vector<std::unique_ptr<Ctx>> ctxs;
    auto make = [&](CLI::App* cmd, int files) -> Ctx& {
        ctxs.push_back(std::make_unique<Ctx>());
        Ctx& c = *ctxs.back();
        if (files >= 1) cmd->add_option("input", c.in1, "input file")->required();
        if (files >= 2) cmd->add_option("input2", c.in2, "second input file")->required();
        add_common(cmd, c.common);
        return c;
    };

    CLI::App* c_norms = app.add_subcommand("norms", "matrix norms");
    Ctx& x_norms = make(c_norms, 1);

    CLI::App* c_uniform = app.add_subcommand("uniform-check", "is the matrix uniform");
    Ctx& x_uniform = make(c_uniform, 1);

    CLI::App* c_rank1 = app.add_subcommand("apportion-rank1", "unitary apportionment, rank one");
    Ctx& x_rank1 = make(c_rank1, 1);

    CLI::App* c_certify = app.add_subcommand("certify", "non-apportionability certificate");
    Ctx& x_certify = make(c_certify, 1);

    CLI::App* c_psd = app.add_subcommand("psd-check", "PSD apportionability test");
    Ctx& x_psd = make(c_psd, 1);

    CLI::App* c_rho = app.add_subcommand("rho-check", "is a labeling a rho-labeling");
    Ctx& x_rho = make(c_rho, 2);

    CLI::App* c_graceful = app.add_subcommand("graceful-check", "identity-graceful test");
    Ctx& x_graceful = make(c_graceful, 1);

    CLI::App* c_nif = app.add_subcommand("nif", "non-increasing function <-> graceful graph");
    Ctx& x_nif = make(c_nif, 1);
    c_nif->add_flag("--invert", x_nif.invert, "graph -> function instead");

    CLI::App* c_compose = app.add_subcommand("compose", "composition step on a contracting function");
    Ctx& x_compose = make(c_compose, 1);
    c_compose->add_flag("--iterate", x_compose.iterate, "iterate to the zero function");

    CLI::App* c_blowup = app.add_subcommand("blowup", "cyclic blowup matrix of a loop-graph");
    Ctx& x_blowup = make(c_blowup, 1);

    CLI::App* c_bapp = app.add_subcommand("blowup-apportion", "apportion a blowup via a labeling");
    Ctx& x_bapp = make(c_bapp, 2);

    CLI::App* c_tf = app.add_subcommand("tf", "functional-digraph blowup matrix");
    Ctx& x_tf = make(c_tf, 1);

    CLI::App* c_frak = app.add_subcommand("frak-min", "minimize over the block permutation group");
    Ctx& x_frak = make(c_frak, 1);
    c_frak->add_option("--n", x_frak.n, "block parameter n (matrix size (2n-1)^2)")->required();
    c_frak->add_option("--mode", x_frak.mode, "exhaustive|sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    c_frak->add_option("--samples", x_frak.samples, "sampled-mode draw count");

    CLI::App* c_inter = app.add_subcommand("interlace", "masked-family interlacing report");
    Ctx& x_inter = make(c_inter, 2);

    CLI::App* c_recover = app.add_subcommand("recover", "graph/function recovery from factors");
    Ctx& x_recover = make(c_recover, 1);
    c_recover->add_option("--n", x_recover.n, "variable count (required with --factors)");
    bool recover_factors = false;
    c_recover->add_flag("--factors", recover_factors, "input is a factor list, not a function");
    c_recover->add_option("--fixed-point", x_recover.fixed_point,
                          "recover the function rooted here");

    CLI::App* c_searchu = app.add_subcommand("search-u", "numerical unitary apportionment");
    Ctx& x_searchu = make(c_searchu, 1);

    CLI::App* c_searchgl = app.add_subcommand("search-gl", "numerical general apportionment");
    Ctx& x_searchgl = make(c_searchgl, 1);

    CLI::App* c_spectra = app.add_subcommand("spectra", "uniform spectra constructions");
    Ctx& x_spectra = make(c_spectra, 1);
    c_spectra->add_option("--pad", x_spectra.pad, "zero-pad factor r");
    std::string kron_path;
    c_spectra->add_option("--kron", kron_path, "Kronecker with this uniform matrix");

    CLI::App* c_uar = app.add_subcommand("uar", "unitary apportionability ratio estimate");
    Ctx& x_uar = make(c_uar, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_norms->parsed()) {
            const CMatrix a = read_matrix(x_norms.in1);
            const NormReport r = norms(a);
            std::ostringstream os;
            if (x_norms.common.format == "structured")
                os << "{\"meta\": " << json_meta(x_norms.common, 0.0)
                   << ", \"max\": " << fmt17(r.max) << ", \"frobenius\": " << fmt17(r.frobenius)
                   << ", \"spectral\": " << fmt17(r.spectral)
                   << ", \"nuclear\": " << fmt17(r.nuclear) << "}\n";
            else
                os << "max: " << fmt17(r.max) << "\nfrobenius: " << fmt17(r.frobenius)
                   << "\nspectral: " << fmt17(r.spectral) << "\nnuclear: " << fmt17(r.nuclear)
                   << "\n";
            emit(x_norms.common, os.str());
            return kOk;
        }

        if (c_uniform->parsed()) {
            const CMatrix a = read_matrix(x_uniform.in1);
            const double tol = tol_or(x_uniform.common, 1e-9);
            const auto [flag, c] = is_uniform(a, tol);
            std::ostringstream os;
            if (x_uniform.common.format == "structured")
                os << "{\"meta\": " << json_meta(x_uniform.common, tol) << ", \"uniform\": "
                   << (flag ? "true" : "false") << ", \"c\": " << fmt17(c) << "}\n";
            else
                os << (flag ? "uniform" : "not uniform") << "\nc: " << fmt17(c) << "\n";
            emit(x_uniform.common, os.str());
            return flag ? kOk : kFalse;
        }

        if (c_rank1->parsed()) {
            const CMatrix a = read_matrix(x_rank1.in1);
            const ApportionReport rep = apportion_rank_one(a);
            return emit_report(rep, x_rank1.common, tol_or(x_rank1.common, 1e-9));
        }

        if (c_certify->parsed()) {
            const CMatrix a = read_matrix(x_certify.in1);
            const Certificate cert = certify_not_u_apportionable(a);
            const double tol = tol_or(x_certify.common, 1e-9);
            emit(x_certify.common, x_certify.common.format == "structured"
                                       ? cert_json(cert, x_certify.common, tol)
                                       : cert_human(cert));
            return cert.kind == CertificateKind::none_found ? kFalse : kOk;
        }

        if (c_psd->parsed()) {
            const CMatrix h = read_matrix(x_psd.in1);
            const Certificate cert = psd_apportionability(h);
            const double tol = tol_or(x_psd.common, 1e-10);
            const bool apportionable = cert.kind == CertificateKind::none_found;
            std::ostringstream os;
            if (x_psd.common.format == "structured")
                os << "{\"meta\": " << json_meta(x_psd.common, tol) << ", \"u_apportionable\": "
                   << (apportionable ? "true" : "false") << ", \"rank\": "
                   << static_cast<long long>(cert.kind == CertificateKind::none_found ? -1
                                                                                      : cert.lhs)
                   << "}\n";
            else
                os << (apportionable ? "U-apportionable (rank <= 1)"
                                     : "not U-apportionable (rank >= 2)")
                   << "\n";
            emit(x_psd.common, os.str());
            return apportionable ? kOk : kFalse;
        }

        if (c_rho->parsed()) {
            const LoopGraph g = read_graph(x_rho.in1);
            const ZnFunction f = read_function(x_rho.in2);
            const bool ok = is_rho_labeling(g, labels_from_function(f));
            emit(x_rho.common, ok ? "rho-labeling\n" : "not a rho-labeling\n");
            return ok ? kOk : kFalse;
        }

        if (c_graceful->parsed()) {
            const bool ok = is_graceful(read_graph(x_graceful.in1));
            emit(x_graceful.common, ok ? "graceful\n" : "not graceful\n");
            return ok ? kOk : kFalse;
        }

        if (c_nif->parsed()) {
            if (x_nif.invert) {
                const ZnFunction f = loopgraph_to_nif(read_graph(x_nif.in1));
                emit(x_nif.common, function_to_string(f));
            } else {
                const LoopGraph g = nif_to_loopgraph(read_function(x_nif.in1));
                emit(x_nif.common, graph_to_string(g));
            }
            return kOk;
        }

        if (c_compose->parsed()) {
            ZnFunction f = read_function(x_compose.in1);
            if (x_compose.iterate)
                compose_iterate(f);
            else
                f = compose_step(f);
            emit(x_compose.common, function_to_string(f));
            return kOk;
        }

        if (c_blowup->parsed()) {
            const CMatrix h = cyclic_blowup(read_graph(x_blowup.in1));
            emit(x_blowup.common, matrix_to_string(h));
            return kOk;
        }

        if (c_bapp->parsed()) {
            const LoopGraph g = read_graph(x_bapp.in1);
            const ZnFunction f = read_function(x_bapp.in2);
            const ApportionReport rep = apportion_blowup(g, labels_from_function(f));
            return emit_report(rep, x_bapp.common, tol_or(x_bapp.common, 1e-9));
        }

        if (c_tf->parsed()) {
            emit(x_tf.common, matrix_to_string(tf_matrix(read_function(x_tf.in1))));
            return kOk;
        }

        if (c_frak->parsed()) {
            const CMatrix a = read_matrix(x_frak.in1);
            const FrakMode mode =
                x_frak.mode == "exhaustive" ? FrakMode::exhaustive : FrakMode::sampled;
            const FrakMinResult r =
                frak_u_min(a, x_frak.n, mode, x_frak.samples, x_frak.common.seed);
            std::ostringstream os;
            os << "value: " << fmt17(r.value) << "\nperm:";
            for (std::size_t v : r.best_perm) os << ' ' << v;
            os << "\nseed: " << x_frak.common.seed << "\n";
            emit(x_frak.common, os.str());
            return kOk;
        }

        if (c_inter->parsed()) {
            const CMatrix m = read_matrix(x_inter.in1);
            const LoopGraph g = read_graph(x_inter.in2);
            const MaskFamily fam = mask_family(m, g);
            const double sum_residual = check_sum_identity(fam);
            const std::vector<InterlaceRow> rows = interlacing_bounds(fam);
            bool all = true;
            for (const InterlaceRow& r : rows) all = all && r.pass;
            std::ostringstream os;
            if (x_inter.common.format == "structured") {
                os << "{\"meta\": " << json_meta(x_inter.common, tol_or(x_inter.common, 1e-9))
                   << ", \"sum_residual\": " << fmt17(sum_residual) << ", \"rows\": [";
                for (std::size_t l = 0; l < rows.size(); ++l) {
                    const InterlaceRow& r = rows[l];
                    if (l) os << ", ";
                    os << "{\"lower\": " << fmt17(r.lower) << ", \"lambda\": " << fmt17(r.lambda)
                       << ", \"upper\": " << fmt17(r.upper) << ", \"pass\": "
                       << (r.pass ? "true" : "false") << "}";
                }
                os << "]}\n";
            } else {
                os << "sum-identity residual: " << fmt17(sum_residual) << "\n";
                for (std::size_t l = 0; l < rows.size(); ++l) {
                    const InterlaceRow& r = rows[l];
                    os << "l=" << l << ": " << fmt17(r.lower) << " <= " << fmt17(r.lambda)
                       << " <= " << fmt17(r.upper) << (r.pass ? "  pass" : "  FAIL") << "\n";
                }
            }
            emit(x_inter.common, os.str());
            return all && sum_residual <= 1e-12 ? kOk : kFalse;
        }

        if (c_recover->parsed()) {
            FactorMultiset fac;
            if (recover_factors) {
                if (x_recover.n == 0)
                    throw std::invalid_argument("recover: --factors requires --n");
                fac = factors_from_rows(x_recover.n, read_factors(x_recover.in1));
            } else {
                fac = edge_labeling_factors(read_function(x_recover.in1));
            }
            const RecoveredGraph rec = recover_graph(fac);
            std::ostringstream os;
            os << (rec.has_fixed_point ? "fixed point: yes" : "fixed point: no") << "\n";
            os << graph_to_string(rec.graph);
            if (rec.has_fixed_point && x_recover.fixed_point >= 0) {
                const ZnFunction f =
                    recover_function(rec.graph, static_cast<std::size_t>(x_recover.fixed_point));
                os << function_to_string(f);
            }
            emit(x_recover.common, os.str());
            return kOk;
        }

        if (c_searchu->parsed() || c_searchgl->parsed()) {
            const bool unitary = c_searchu->parsed();
            Ctx& x = unitary ? x_searchu : x_searchgl;
            const CMatrix a = read_matrix(x.in1);
            SearchOptions opt;
            opt.restarts = x.common.restarts;
            opt.iters = x.common.iters;
            opt.seed = x.common.seed;
            opt.jobs = x.common.jobs;
            opt.tol = tol_or(x.common, 1e-6);
            const ApportionReport rep = unitary ? search_unitary(a, opt) : search_gl(a, opt);
            std::ostringstream os;
            os << "seed: " << opt.seed << "\n" << report_human(rep);
            if (x.common.format == "structured")
                emit(x.common, report_json(rep, x.common, opt.tol));
            else
                emit(x.common, os.str());
            return rep.status == ApportionStatus::uniform ? kOk : kFalse;
        }

        if (c_spectra->parsed()) {
            const CMatrix b = read_matrix(x_spectra.in1);
            CMatrix result;
            if (!kron_path.empty())
                result = kron_uniform(b, read_matrix(kron_path));
            else if (x_spectra.pad >= 1)
                result = spectra_zero_pad(b, x_spectra.pad);
            else
                throw std::invalid_argument("spectra: pass --pad <r> or --kron <matrix>");
            std::ostringstream os;
            os << matrix_to_string(result);
            // keep structured output parseable as a plain matrix document
            if (x_spectra.common.format == "human" && result.n() <= 8) {
                os << "spectrum:";
                for (const cd& z : small_eig(result))
                    os << ' ' << fmt17(z.real()) << (z.imag() < 0 ? "-" : "+")
                       << fmt17(std::abs(z.imag())) << "i";
                os << "\n";
            }
            emit(x_spectra.common, os.str());
            return kOk;
        }

        if (c_uar->parsed()) {
            const CMatrix a = read_matrix(x_uar.in1);
            SearchOptions opt;
            opt.restarts = x_uar.common.restarts;
            opt.iters = x_uar.common.iters;
            opt.seed = x_uar.common.seed;
            opt.jobs = x_uar.common.jobs;
            const double r = uar_estimate(a, opt);
            std::ostringstream os;
            os << "uar: " << fmt17(r) << "\nseed: " << opt.seed << "\n";
            emit(x_uar.common, os.str());
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }

    return 2;
}

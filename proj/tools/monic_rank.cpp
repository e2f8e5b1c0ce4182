// monic-rank: verification of power-sum membership over prime fields plus
// constructive monic-rank decompositions with machine-checkable certificates.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "monic/binary_form.hpp"
#include "monic/matrix_decompose.hpp"
#include "monic/secant.hpp"
#include "monic/shapiro.hpp"
#include "monic/sln.hpp"
#include "monic/tensor222.hpp"
#include "monic/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;  // valid run with a negative outcome
constexpr int kExitError = 2;

struct Output {
    std::string path;  // empty = stdout

    void write(const json& doc) const {
        if (path.empty()) {
            std::cout << doc.dump(2) << "\n";
        } else {
            std::ofstream out(path);
            if (!out) throw monic::Error("cannot open output file: " + path);
            out << doc.dump(2) << "\n";
        }
    }
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw monic::Error("cannot open input file: " + path);
    json j;
    in >> j;
    return j;
}

monic::Complex parse_entry(const json& v) {
    if (v.is_array()) return monic::complex_from_json(v);
    return monic::Complex(v.get<double>(), 0);
}

monic::CMat parse_matrix(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw monic::Error("matrix: expected a nonempty array of rows");
    std::size_t n = rows[0].size();
    monic::CMat m(rows.size(), n, monic::Complex(0, 0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) throw monic::Error("matrix: ragged rows");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = parse_entry(rows[i][j]);
    }
    return m;
}

monic::BinaryForm parse_binary_form(const json& j) {
    std::vector<monic::Complex> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_entry(c));
    return monic::BinaryForm(static_cast<int>(coeffs.size()) - 1, coeffs);
}

// MONIC_RANK_TIME_BUDGET (seconds) overrides the --time-budget flag
double effective_time_budget(double flag_value) {
    if (const char* env = std::getenv("MONIC_RANK_TIME_BUDGET")) return std::stod(env);
    return flag_value;
}

struct DecomposeCommon {
    std::string input, output_path;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int retry_budget = 32;

    void attach(CLI::App* cmd, bool with_input = true) {
        if (with_input) cmd->add_option("--input", input, "JSON input file")->required();
        cmd->add_option("--output", output_path, "output file (default stdout)");
        cmd->add_option("--tol", tol, "numerical tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--retry-budget", retry_budget, "genericity retries")->check(CLI::PositiveNumber);
    }
};

int emit_certificate(monic::Certificate cert, std::uint64_t seed, const Output& out) {
    cert.seed = seed;
    out.write(cert.to_json());
    return cert.all_checks() && cert.residual <= cert.tolerance ? kExitSuccess : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monic rank toolkit: power-sum verification over F_p, "
                 "monic-rank decomposition certificates, secant dimension estimates"};
    app.require_subcommand(1);

    // shapiro
    auto* shapiro = app.add_subcommand("shapiro", "power-sum membership verification over F_p");
    shapiro->require_subcommand(1);
    int sk = 3, sd = 3, se = 2, se_max = 2, parallel = 1;
    std::uint64_t prime = 101;
    double time_budget = 3600;
    std::string shapiro_output;
    auto* sverify = shapiro->add_subcommand("verify", "verify one (k, d, e) step");
    sverify->add_option("--k", sk, "number of powers")->required();
    sverify->add_option("--d", sd, "exponent d")->required();
    sverify->add_option("--e", se, "form degree e")->required();
    sverify->add_option("--prime", prime, "prime modulus");
    sverify->add_option("--time-budget", time_budget, "seconds before TIMEOUT");
    sverify->add_option("--output", shapiro_output, "output file (default stdout)");
    auto* schain = shapiro->add_subcommand("chain", "verify a chain e = 2..e_max (with the d = k base case)");
    schain->add_option("--k", sk, "number of powers")->required();
    schain->add_option("--d", sd, "exponent d")->required();
    schain->add_option("--e-max", se_max, "largest form degree")->required();
    schain->add_option("--prime", prime, "prime modulus");
    schain->add_option("--time-budget", time_budget, "seconds per step before TIMEOUT");
    schain->add_option("--parallel", parallel, "worker hint for independent chains");
    schain->add_option("--output", shapiro_output, "output file (default stdout)");

    // decompose
    auto* decompose = app.add_subcommand("decompose", "monic-rank decomposition with certificate");
    decompose->require_subcommand(1);
    DecomposeCommon dbin, dmat, dsym, dten, dsln;
    int mat_k = 2, sym_k = 2, ten_k = 3;
    auto* cbin = decompose->add_subcommand("binary", "sum of d-th powers of monic linear forms");
    dbin.attach(cbin);
    auto* cmat = decompose->add_subcommand("matrix", "sum of monic rank-one matrices");
    dmat.attach(cmat);
    cmat->add_option("--k", mat_k, "number of summands")->required();
    auto* csym = decompose->add_subcommand("symmetric", "sum of monic symmetric rank-one matrices");
    dsym.attach(csym);
    csym->add_option("--k", sym_k, "number of summands")->required();
    auto* cten = decompose->add_subcommand("tensor", "sum of monic rank-one 2x2x2 tensors");
    dten.attach(cten);
    cten->add_option("--k", ten_k, "number of summands (2 or 3)")->required();
    auto* csln = decompose->add_subcommand("sln", "sum of monic trace-zero rank-one matrices");
    dsln.attach(csln);

    // secant
    auto* secant = app.add_subcommand("secant", "numerical secant dimension estimation");
    secant->require_subcommand(1);
    std::string variety, secant_output, csv_path;
    int dim_k = 1, k_max = 8, trials = 11;
    std::uint64_t secant_seed = 0;
    auto* cdim = secant->add_subcommand("dim", "estimate dim of the k-th monic secant");
    cdim->add_option("--variety", variety,
                     "powers(d,e) | matrix(m,n) | symmetric(n) | tensor222 | sln(n)")
        ->required();
    cdim->add_option("--k", dim_k, "secant index")->required();
    cdim->add_option("--trials", trials, "independent trials");
    cdim->add_option("--seed", secant_seed, "random seed");
    cdim->add_option("--output", secant_output, "output file (default stdout)");
    auto* crank = secant->add_subcommand("rank", "smallest k whose monic secant fills kH");
    crank->add_option("--variety", variety, "variety name, as for dim")->required();
    crank->add_option("--k-max", k_max, "search budget");
    crank->add_option("--trials", trials, "independent trials per k");
    crank->add_option("--seed", secant_seed, "random seed");
    crank->add_option("--csv", csv_path, "also write the staircase as CSV");
    crank->add_option("--output", secant_output, "output file (default stdout)");

    // certify
    auto* certify = app.add_subcommand("certify", "re-verify a certificate against its target");
    std::string cert_path, target_path, certify_output;
    double certify_tol = 1e-9;
    certify->add_option("--cert", cert_path, "certificate JSON")->required();
    certify->add_option("--target", target_path, "target JSON (same format as decompose input)")->required();
    certify->add_option("--tol", certify_tol, "tolerance")->check(CLI::PositiveNumber);
    certify->add_option("--output", certify_output, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sverify->parsed() || schain->parsed()) {
            monic::StepBudget budget;
            budget.time_limit = std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::duration<double>(effective_time_budget(time_budget)));
            Output out{shapiro_output};
            if (sverify->parsed()) {
                auto rep = monic::verify_step(sk, sd, se, prime, budget);
                out.write(rep.to_json());
                return rep.verdict == monic::Verdict::PROVED ? kExitSuccess : kExitNegative;
            }
            auto rep = monic::verify_chain(sk, sd, se_max, prime, budget);
            out.write(rep.to_json());
            return rep.overall == monic::Verdict::PROVED ? kExitSuccess : kExitNegative;
        }

        if (cbin->parsed()) {
            auto q = parse_binary_form(load_json(dbin.input));
            auto cert = monic::waring_monic_binary(q, dbin.tol);
            return emit_certificate(std::move(cert), dbin.seed, Output{dbin.output_path});
        }
        if (cmat->parsed()) {
            auto A = parse_matrix(load_json(dmat.input).at("matrix"));
            monic::Rng rng(dmat.seed);
            auto cert = monic::matrix_monic_decompose(A, mat_k, dmat.tol, rng, dmat.retry_budget);
            return emit_certificate(std::move(cert), dmat.seed, Output{dmat.output_path});
        }
        if (csym->parsed()) {
            auto A = parse_matrix(load_json(dsym.input).at("matrix"));
            monic::Rng rng(dsym.seed);
            auto cert = monic::symmetric_monic_decompose(A, sym_k, dsym.tol, rng, dsym.retry_budget);
            return emit_certificate(std::move(cert), dsym.seed, Output{dsym.output_path});
        }
        if (cten->parsed()) {
            auto t = monic::Tensor222::from_json(load_json(dten.input));
            monic::Rng rng(dten.seed);
            auto cert = monic::tensor222_monic_decompose(t, ten_k, dten.tol, rng, dten.retry_budget);
            return emit_certificate(std::move(cert), dten.seed, Output{dten.output_path});
        }
        if (csln->parsed()) {
            auto A = parse_matrix(load_json(dsln.input).at("matrix"));
            monic::Rng rng(dsln.seed);
            auto cert = monic::sln_monic_decompose(A, dsln.tol, rng, dsln.retry_budget);
            return emit_certificate(std::move(cert), dsln.seed, Output{dsln.output_path});
        }

        if (cdim->parsed()) {
            auto spec = monic::VarietySpec::from_string(variety);
            auto rep = monic::monic_secant_dim(spec, dim_k, trials, secant_seed);
            Output{secant_output}.write(rep.to_json());
            return kExitSuccess;
        }
        if (crank->parsed()) {
            auto spec = monic::VarietySpec::from_string(variety);
            int k0 = monic::generic_monic_rank(spec, k_max, trials, secant_seed);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw monic::Error("cannot open CSV file: " + csv_path);
                csv << monic::staircase_csv(spec, k0, trials, secant_seed);
            }
            Output{secant_output}.write(json{{"variety", spec.name()}, {"k0", k0}});
            return kExitSuccess;
        }

        if (certify->parsed()) {
            auto cert = monic::Certificate::from_json(load_json(cert_path));
            json target = load_json(target_path);
            monic::VerifyReport rep;
            switch (cert.family) {
                case monic::Family::binary:
                    rep = monic::verify_certificate(cert, parse_binary_form(target), certify_tol);
                    break;
                case monic::Family::tensor:
                    rep = monic::verify_certificate(cert, monic::Tensor222::from_json(target), certify_tol);
                    break;
                default:
                    rep = monic::verify_certificate(cert, parse_matrix(target.at("matrix")), certify_tol);
            }
            Output{certify_output}.write(rep.to_json());
            return rep.ok() ? kExitSuccess : kExitNegative;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no subcommand executed\n";
    return kExitError;
}

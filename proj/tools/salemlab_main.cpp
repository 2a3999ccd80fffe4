// Command-line front end. One binary with three command groups; the
// build also installs `salem`, `arith` and `spec` as symlinks, and the
// group is inferred from argv[0] so both spellings work:
//
//   salem check 1,1,0,-1,-1,-1,-1,-1,0,1,1
//   salem enumerate --half-degree 2 --height 3 [--jobs k]
//   salem geodesic 1,-1,-1,-1,1 --bits 60
//   arith plan 1,-1,-1,-1,1 [--prime-bound N]
//   arith inert 1,-1,-1,-1,1 --bound N
//   spec report graph.txt
//   spec cover graph.txt [--verify]
//   spec experiment two-cover --vertices 8 --instances 100 --seed 7 --out results.csv
//
// Exit codes: 0 success / all-pass, 1 usage or domain error, 2 logged
// violations (including a not-found prime below the bound).

#include "salemlab/salemlab.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using salemlab::CertifyResult;
using salemlab::IntPolynomial;
using salemlab::SalemCertificate;

IntPolynomial parse_poly_arg(const std::string& s) { return salemlab::parse_polynomial(s); }

int emit_not_salem(const CertifyResult& r) {
    nlohmann::ordered_json j;
    j["salem"] = false;
    j["reason"] = salemlab::to_string(salemlab::reason(r));
    std::cout << j.dump(2) << "\n";
    return 1;
}

salemlab::GraphFile load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("graph", "cannot open file: " + path);
    return salemlab::parse_graph(in);
}

void write_table(const std::string& out_path, const std::string& table) {
    if (out_path.empty()) {
        std::cout << table;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--out", "cannot open for writing: " + out_path);
    out << table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Salem number certification and discrete two-cover spectral experiments"};
    app.require_subcommand(1);

    // ---- salem ----
    auto* salem = app.add_subcommand("salem", "certify and enumerate Salem numbers");
    salem->require_subcommand(1);

    std::string check_coeffs;
    unsigned check_bits = salemlab::kDefaultTauBits;
    auto* check = salem->add_subcommand("check", "certify one polynomial (JSON certificate)");
    check->add_option("coeffs", check_coeffs, "coefficients, constant first, comma separated")
        ->required();
    check->add_option("--bits", check_bits, "geodesic enclosure width 2^-bits");

    int enum_n = 2, enum_h = 1, enum_jobs = 1;
    std::string enum_out;
    auto* enumerate = salem->add_subcommand("enumerate", "scan trace polynomials by height");
    enumerate->add_option("--half-degree", enum_n, "trace polynomial degree n (P has degree 2n)")
        ->required();
    enumerate->add_option("--height", enum_h, "coefficient height bound on Q")->required();
    enumerate->add_option("--jobs", enum_jobs, "worker threads");
    enumerate->add_option("--out", enum_out, "write the JSON list here instead of stdout");

    std::string geo_coeffs;
    unsigned geo_bits = salemlab::kDefaultTauBits;
    auto* geodesic = salem->add_subcommand("geodesic", "enclosure of the geodesic length 2 log tau");
    geodesic->add_option("coeffs", geo_coeffs, "coefficients, constant first")->required();
    geodesic->add_option("--bits", geo_bits, "enclosure width 2^-bits");

    // ---- arith ----
    auto* arith = app.add_subcommand("arith", "trace field and ramification data");
    arith->require_subcommand(1);

    std::string plan_coeffs;
    std::int64_t plan_bound = 10000;
    auto* plan = arith->add_subcommand("plan", "ramification plan for a Salem polynomial");
    plan->add_option("coeffs", plan_coeffs, "coefficients, constant first")->required();
    plan->add_option("--prime-bound", plan_bound, "search bound for the finite prime");

    std::string inert_coeffs;
    std::int64_t inert_bound = 10000;
    auto* inert = arith->add_subcommand("inert", "smallest inert degree-one prime");
    inert->add_option("coeffs", inert_coeffs, "coefficients, constant first")->required();
    inert->add_option("--bound", inert_bound, "search bound")->required();

    // ---- spec ----
    auto* spec = app.add_subcommand("spec", "spectral reports and experiments");
    spec->require_subcommand(1);

    std::string report_path;
    auto* report = spec->add_subcommand("report", "lambda1 / Cheeger / Sobolev report");
    report->add_option("graph", report_path, "graph file (n m header, then 'u v w [s]')")
        ->required();

    std::string cover_path;
    bool cover_verify = false;
    auto* cover = spec->add_subcommand("cover", "double cover from the signing in the file");
    cover->add_option("graph", cover_path, "signed graph file")->required();
    cover->add_flag("--verify", cover_verify, "run the two-cover proof chain");

    std::string exp_kind, exp_out, exp_format;
    std::uint64_t exp_seed = 0;
    int exp_vertices = 8, exp_instances = 100, exp_jobs = 1, exp_half_degree = 2, exp_height = 1;
    std::int64_t exp_prime_bound = 10000;
    auto* experiment = spec->add_subcommand("experiment", "seeded experiment drivers");
    experiment
        ->add_option("kind", exp_kind,
                     "two-cover | cyclic-scaling | salem-enumeration | ramification-survey")
        ->required();
    experiment->add_option("--vertices", exp_vertices, "base graph size (two-cover)");
    experiment->add_option("--instances", exp_instances, "instance count (two-cover)");
    experiment->add_option("--seed", exp_seed, "experiment seed");
    experiment->add_option("--jobs", exp_jobs, "worker threads");
    experiment->add_option("--half-degree", exp_half_degree, "trace degree (salem kinds)");
    experiment->add_option("--height", exp_height, "coefficient height (salem kinds)");
    experiment->add_option("--prime-bound", exp_prime_bound, "prime bound (ramification-survey)");
    experiment->add_option("--out", exp_out, "table output path (default: stdout)");
    experiment->add_option("--format", exp_format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // argv[0] may already name the group when invoked via symlink
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::string prog = std::filesystem::path(argv[0]).filename().string();
    if (prog == "salem" || prog == "arith" || prog == "spec") args.insert(args.begin(), prog);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints message/help
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (*check) {
            const CertifyResult r = salemlab::certify_salem(parse_poly_arg(check_coeffs));
            if (!salemlab::is_salem(r)) return emit_not_salem(r);
            const auto report_json =
                to_json(salemlab::make_certificate_report(salemlab::certificate(r), check_bits));
            std::cout << report_json.dump(2) << "\n";
            return 0;
        }
        if (*enumerate) {
            salemlab::ExperimentConfig cfg;
            cfg.kind = salemlab::ExperimentKind::SalemEnumeration;
            cfg.half_degree = enum_n;
            cfg.height = enum_h;
            cfg.jobs = enum_jobs;
            const auto res = salemlab::run_experiment(cfg);
            write_table(enum_out, res.table);
            if (!enum_out.empty()) std::cout << res.summary.dump(2) << "\n";
            return res.exit_code;
        }
        if (*geodesic) {
            const CertifyResult r = salemlab::certify_salem(parse_poly_arg(geo_coeffs));
            if (!salemlab::is_salem(r)) return emit_not_salem(r);
            const auto iv = salemlab::geodesic_length(salemlab::certificate(r), geo_bits);
            nlohmann::ordered_json j;
            j["geodesic_lo"] = salemlab::decimal_string(iv.lo);
            j["geodesic_hi"] = salemlab::decimal_string(iv.hi);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*plan) {
            const CertifyResult r = salemlab::certify_salem(parse_poly_arg(plan_coeffs));
            if (!salemlab::is_salem(r)) return emit_not_salem(r);
            try {
                const auto p = salemlab::ramification_plan(salemlab::certificate(r), plan_bound);
                std::cout << to_json(p).dump(2) << "\n";
                return 0;
            } catch (const salemlab::NotFoundError& e) {
                nlohmann::ordered_json j;
                j["error"] = e.what();
                std::cout << j.dump(2) << "\n";
                return 2;
            }
        }
        if (*inert) {
            const CertifyResult r = salemlab::certify_salem(parse_poly_arg(inert_coeffs));
            if (!salemlab::is_salem(r)) return emit_not_salem(r);
            const auto tf = salemlab::trace_field(salemlab::certificate(r));
            nlohmann::ordered_json j;
            if (tf.degree % 2 != 0) {
                j["error"] = "field degree is odd; no finite prime is required";
                std::cout << j.dump(2) << "\n";
                return 1;
            }
            const auto w = salemlab::find_inert_prime(tf, inert_bound);
            if (!w) {
                j["found"] = false;
                std::cout << j.dump(2) << "\n";
                return 2;
            }
            j["found"] = true;
            j["p"] = std::to_string(w->p);
            j["a"] = std::to_string(w->a);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*report) {
            const auto gf = load_graph(report_path);
            const auto rep = salemlab::spectral_report(gf.graph);
            std::cout << to_json(rep).dump(2) << "\n";
            return 0;
        }
        if (*cover) {
            const auto gf = load_graph(cover_path);
            if (!gf.signing) throw CLI::ValidationError("graph", "file carries no edge signs");
            if (!cover_verify) {
                const auto cov = salemlab::double_cover(gf.graph, *gf.signing);
                salemlab::write_graph(std::cout, cov);
                return 0;
            }
            const auto trace = salemlab::verify_two_cover_bound(gf.graph, *gf.signing);
            nlohmann::ordered_json j;
            j["trace"] = to_json(trace);
            if (trace.vacuous) {
                j["vacuous"] = true;
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            const auto steps = salemlab::proof_chain_check(trace);
            nlohmann::ordered_json sj = nlohmann::ordered_json::array();
            for (const auto& s : steps)
                sj.push_back({{"name", s.name},
                              {"lhs", s.lhs},
                              {"rhs", s.rhs},
                              {"holds", s.holds},
                              {"hard", s.hard}});
            j["steps"] = sj;
            const bool pass = salemlab::proof_chain_passes(steps);
            j["pass"] = pass;
            std::cout << j.dump(2) << "\n";
            return pass ? 0 : 2;
        }
        if (*experiment) {
            salemlab::ExperimentConfig cfg;
            if (exp_kind == "two-cover") cfg.kind = salemlab::ExperimentKind::TwoCover;
            else if (exp_kind == "cyclic-scaling") cfg.kind = salemlab::ExperimentKind::CyclicScaling;
            else if (exp_kind == "salem-enumeration")
                cfg.kind = salemlab::ExperimentKind::SalemEnumeration;
            else if (exp_kind == "ramification-survey")
                cfg.kind = salemlab::ExperimentKind::RamificationSurvey;
            else throw CLI::ValidationError("kind", "unknown experiment kind: " + exp_kind);
            cfg.seed = exp_seed;
            cfg.vertices = exp_vertices;
            cfg.instances = exp_instances;
            cfg.jobs = exp_jobs;
            cfg.half_degree = exp_half_degree;
            cfg.height = exp_height;
            cfg.prime_bound = exp_prime_bound;
            cfg.format = exp_format;
            const auto res = salemlab::run_experiment(cfg);
            write_table(exp_out, res.table);
            std::cout << res.summary.dump(2) << "\n";
            return res.exit_code;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// Command-line front end: certify, solve, census, generate, compare and
// run the built-in regression examples over JSON / MatrixMarket instances.
//
// Exit codes (stable contract):
//   0 success (check: at least one sound certificate CERTIFIED)
//   1 I/O or usage error
//   2 check: no sound certificate holds
//   3 check: every condition INAPPLICABLE
//   4 solve: non-convergence
//   5 solve: a hypothesis matrix is singular

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avme/avme.hpp"

namespace {

using namespace avme;
using nlohmann::json;

struct CommonOptions {
    std::string input;
    std::string format = "json";
    std::string output;
    bool json_output = false;
    std::uint64_t cap_enum = kDefaultEnumCap;
    Eigen::Index cap_kron = kDefaultKronCap;
    double tol_residual = 1e-10;
    double tol_decision = 0.0;
    std::uint64_t seed = 0;
};

io::Format parse_format(const std::string& fmt) {
    if (fmt == "json") return io::Format::JSON;
    if (fmt == "mm" || fmt == "matrixmarket") return io::Format::MatrixMarket;
    throw ParseError("unknown format \"" + fmt + "\" (expected json or mm)");
}

void emit(const CommonOptions& opts, const json& j, const std::string& text) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opts.output.empty()) {
        file.open(opts.output);
        if (!file) throw ParseError(opts.output + ": cannot open for writing");
        out = &file;
    }
    if (opts.json_output) {
        *out << j.dump(2) << "\n";
    } else {
        *out << text;
    }
}

std::string certificate_line(const Certificate& c) {
    std::ostringstream os;
    os << c.condition_id;
    for (size_t pad = c.condition_id.size(); pad < 24; ++pad) os << ' ';
    os << verdict_name(c.verdict);
    os.precision(6);
    for (const auto& [name, value] : c.witnesses) os << "  " << name << "=" << value;
    if (c.verdict != Verdict::INAPPLICABLE) os << "  margin=" << c.margin;
    if (!c.notes.empty()) os << "  [" << c.notes << "]";
    os << "\n";
    return os.str();
}

/// Every certifier applicable to the instance class, caps permitting.
std::vector<Certificate> all_certificates(const Instance& inst, const CommonOptions& opts) {
    std::vector<Certificate> certs;
    auto append = [&certs](std::vector<Certificate> more) {
        certs.insert(certs.end(), std::make_move_iterator(more.begin()),
                     std::make_move_iterator(more.end()));
    };
    auto guarded = [&certs](const std::string& id, auto&& fn) {
        try {
            fn();
        } catch (const DimensionOverflow& e) {
            Certificate c;
            c.condition_id = id;
            c.verdict = Verdict::INAPPLICABLE;
            c.notes = std::string("skipped: ") + e.what();
            certs.push_back(std::move(c));
        }
    };

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaveInstance> || std::is_same_v<T, GavmeInstance>) {
                Eigen::Index m = 1;
                if constexpr (std::is_same_v<T, GavmeInstance>) {
                    if (p.F) m = p.F->cols();
                }
                certs.push_back(check_gavme_spectral(p.A, p.B, opts.tol_decision));
                append(check_gavme_classic(p.A, p.B, opts.tol_decision));
                guarded("INTERVAL_SPECTRAL", [&] {
                    certs.push_back(check_interval_spectral(p.A, p.B, m, opts.tol_decision,
                                                            opts.cap_enum));
                });
                guarded("W_*", [&] {
                    append(check_gavme_w_conditions(p.A, p.B, m, opts.cap_enum, 200, opts.seed));
                });
                guarded("DD_*", [&] { append(check_gavme_dd_conditions(p.A, p.B, m, opts.cap_enum)); });
            } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                const Eigen::Index m = p.F ? p.F->cols() : 1;
                append(check_ngavme(p.A, p.B, p.C, opts.tol_decision));
                guarded("W_*/DD_*", [&] {
                    try {
                        append(check_ngavme_combinatorial(p.A, p.B, p.C, m, opts.cap_enum, 200,
                                                          opts.seed));
                    } catch (const SingularMatrix&) {
                        for (const char* id : {"W_I", "W_II", "W_III", "W_IV", "DD_I", "DD_II"}) {
                            Certificate c;
                            c.condition_id = id;
                            c.verdict = Verdict::INAPPLICABLE;
                            c.notes = "hypothesis failed: C not invertible";
                            certs.push_back(std::move(c));
                        }
                    }
                });
            } else {
                certs.push_back(check_sylvester_max(p.A, p.B, p.K, p.L, opts.tol_decision));
                certs.push_back(
                    check_sylvester_min_corrected(p.A, p.B, p.K, p.L, opts.tol_decision));
                certs.push_back(check_sylvester_min_flawed(p.A, p.B, p.K, p.L, opts.tol_decision));
            }
        },
        inst);
    return certs;
}

int cmd_check(const CommonOptions& opts) {
    const Instance inst = io::load_instance(opts.input, parse_format(opts.format));
    const auto certs = all_certificates(inst, opts);

    json jcerts = json::array();
    std::string text = "instance: " + tag_name(tag_of(inst)) + "\n";
    bool any_sound_certified = false;
    bool all_inapplicable = true;
    for (const auto& c : certs) {
        jcerts.push_back(io::certificate_to_json(c));
        text += certificate_line(c);
        if (c.sound() && c.certified()) any_sound_certified = true;
        if (c.verdict != Verdict::INAPPLICABLE) all_inapplicable = false;
        if (c.verdict == Verdict::UNSOUND_CONDITION_HOLDS) {
            text += "  warning: this condition is known to be unsound; it never certifies\n";
        }
    }
    json j;
    j["instance"] = tag_name(tag_of(inst));
    j["certificates"] = jcerts;
    emit(opts, j, text);
    if (any_sound_certified) return 0;
    return all_inapplicable ? 3 : 2;
}

int cmd_solve(const CommonOptions& opts) {
    const io::Format fmt = parse_format(opts.format);
    const Instance inst = io::load_instance(opts.input, fmt);
    SolveOptions sopts;
    sopts.residual_tolerance = opts.tol_residual;

    SolveResult result;
    try {
        result = std::visit(
            [&](const auto& p) -> SolveResult {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GaveInstance>) {
                    if (!p.f) throw ParseError("instance has no right-hand side f");
                    return solve_gave_picard(p.A, p.B, *p.f, sopts);
                } else if constexpr (std::is_same_v<T, GavmeInstance>) {
                    if (!p.F) throw ParseError("instance has no right-hand side F");
                    return solve_gavme(p.A, p.B, *p.F, sopts);
                } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                    if (!p.F) throw ParseError("instance has no right-hand side F");
                    return solve_ngavme(p.A, p.B, p.C, *p.F, sopts);
                } else {
                    throw ParseError(
                        "no general Sylvester-like solver; only solvability checks apply "
                        "(use `check`, or `oracle` for the scalar case)");
                }
            },
            inst);
    } catch (const SingularMatrix& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }

    if (fmt == io::Format::MatrixMarket && !opts.output.empty()) {
        std::filesystem::create_directories(opts.output);
        std::ofstream out(std::filesystem::path(opts.output) / "X.mtx");
        io::write_matrix_market(out, result.solution);
        std::cout << "iterations=" << result.iterations
                  << " residual=" << result.final_residual
                  << " converged=" << (result.converged ? "true" : "false") << "\n";
    } else {
        std::ostringstream text;
        text.precision(12);
        text << "solution:\n" << result.solution << "\niterations=" << result.iterations
             << " residual=" << result.final_residual
             << " converged=" << (result.converged ? "true" : "false") << "\n";
        emit(opts, io::solve_result_to_json(result), text.str());
    }
    return result.converged ? 0 : 4;
}

int cmd_oracle(const CommonOptions& opts) {
    const Instance inst = io::load_instance(opts.input, parse_format(opts.format));

    auto census_text = [](const OracleReport& r) {
        std::ostringstream os;
        os.precision(10);
        if (r.infinite) {
            os << "INFINITE solutions (consistent singular sign system)";
        } else {
            os << r.solution_count() << " solution" << (r.solution_count() == 1 ? "" : "s");
            for (const auto& s : r.solutions) os << ": " << s.transpose();
        }
        if (!r.degenerate_patterns.empty()) {
            os << "  [" << r.degenerate_patterns.size() << " degenerate sign pattern(s)]";
        }
        os << "\n";
        return os.str();
    };

    json j;
    std::string text;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaveInstance>) {
                if (!p.f) throw ParseError("instance has no right-hand side f");
                const auto r = oracle_gave(p.A, p.B, *p.f, opts.cap_enum);
                j = io::oracle_report_to_json(r);
                text = census_text(r);
            } else if constexpr (std::is_same_v<T, GavmeInstance>) {
                if (!p.F) throw ParseError("instance has no right-hand side F");
                const auto reports = oracle_gavme(p.A, p.B, *p.F, opts.cap_enum);
                j = json::array();
                for (size_t col = 0; col < reports.size(); ++col) {
                    j.push_back(io::oracle_report_to_json(reports[col]));
                    text += "column " + std::to_string(col) + ": " + census_text(reports[col]);
                }
            } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                if (!p.F) throw ParseError("instance has no right-hand side F");
                // census in Y = CX, mapped back through C^{-1}
                const auto red = reduce_ngavme(p);
                auto reports = oracle_gavme(red.gavme.A, red.gavme.B, *red.gavme.F, opts.cap_enum);
                j = json::array();
                for (size_t col = 0; col < reports.size(); ++col) {
                    for (auto& y : reports[col].solutions) y = red.c_inverse * y;
                    j.push_back(io::oracle_report_to_json(reports[col]));
                    text += "column " + std::to_string(col) + ": " + census_text(reports[col]);
                }
            } else {
                // scalar Sylvester-like AVE collapses to a GAVE
                if (p.A.rows() != 1) {
                    throw ParseError("oracle supports Sylvester-like instances only for n=1");
                }
                if (!p.F) throw ParseError("instance has no right-hand side F");
                const Matrix a = p.A * p.K(0, 0);
                const Matrix b = p.B * p.L(0, 0);
                const auto r = oracle_gave(a, b, Vector(p.F->col(0)), opts.cap_enum);
                j = io::oracle_report_to_json(r);
                text = census_text(r);
            }
        },
        inst);
    emit(opts, j, text);
    return 0;
}

int cmd_gen(const CommonOptions& opts, const GenSpec& spec) {
    const auto gen = gen_instance(spec);
    if (parse_format(opts.format) == io::Format::MatrixMarket) {
        if (opts.output.empty()) throw ParseError("gen with --format mm requires --output DIR");
        io::write_instance_matrix_market_dir(opts.output, gen.instance);
    } else {
        json j = io::instance_to_json(gen.instance);
        j["ground_truth_X"] = io::matrix_to_json(gen.ground_truth);
        emit(opts, j, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_compare(const CommonOptions& opts, const GenSpec& spec, int trials) {
    const auto table = compare_conditions(spec, trials);
    json j;
    j["trials"] = table.trials;
    j["seed"] = table.seed;
    j["implication_violations"] = table.implication_violations;
    for (const auto& [id, c] : table.per_condition) {
        j["conditions"][id] = {{"certified", c.certified},
                               {"not_certified", c.not_certified},
                               {"inapplicable", c.inapplicable}};
    }
    emit(opts, j, table.to_text());
    return table.implication_violations == 0 ? 0 : 2;
}

int cmd_examples(const CommonOptions& opts) {
    const Report report = run_worked_examples();
    json j = json::array();
    for (const auto& c : report.checks) {
        j.push_back({{"name", c.name},
                     {"computed", c.computed},
                     {"expected", c.expected},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass}});
    }
    emit(opts, j, report.to_text());
    return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unique-solvability certification and solving for absolute value matrix equations"};
    app.require_subcommand(1);

    CommonOptions opts;
    GenSpec spec;
    int trials = 100;
    std::string klass = "gave";
    std::string dist = "uniform";
    double rho = -1.0;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", opts.input, "instance file or directory")->required();
        cmd->add_option("--format", opts.format, "instance format: json or mm");
        cmd->add_option("--output,-o", opts.output, "output path (default stdout)");
        cmd->add_flag("--json", opts.json_output, "emit JSON instead of text");
        cmd->add_option("--cap-enum", opts.cap_enum, "enumeration cap (sign patterns, representatives)");
        cmd->add_option("--cap-kron", opts.cap_kron, "Kronecker lift dimension cap");
        cmd->add_option("--tol-residual", opts.tol_residual, "residual tolerance for solvers");
        cmd->add_option("--tol-decision", opts.tol_decision, "extra margin demanded of strict inequalities");
        cmd->add_option("--seed", opts.seed, "seed for all randomized pieces");
    };

    auto* check = app.add_subcommand("check", "run every applicable solvability certificate");
    add_common(check, true);
    auto* solve = app.add_subcommand("solve", "solve a certified (or any) instance");
    add_common(solve, true);
    auto* oracle = app.add_subcommand("oracle", "exhaustive small-instance solution census");
    add_common(oracle, true);

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    add_common(gen, false);
    gen->add_option("--n", spec.n, "order");
    gen->add_option("--m", spec.m, "columns of F");
    gen->add_option("--class", klass, "gave | gavme | ngavme | sylvester");
    gen->add_option("--rho", rho, "target rho(|A^-1 B|)");
    gen->add_option("--dist", dist, "uniform | integer");

    auto* compare = app.add_subcommand("compare", "condition-strength comparison over random instances");
    add_common(compare, false);
    compare->add_option("--n", spec.n, "order");
    compare->add_option("--trials", trials, "number of instances");
    compare->add_option("--rho", rho, "target rho(|A^-1 B|)");

    auto* examples = app.add_subcommand("examples", "run the built-in regression examples");
    add_common(examples, false);

    CLI11_PARSE(app, argc, argv);

    try {
        spec.seed = opts.seed;
        if (rho >= 0.0) spec.target_rho = rho;
        if (dist == "integer") spec.dist = EntryDistribution::SmallInteger;
        if (klass == "gavme") spec.klass = InstanceTag::GAVME;
        else if (klass == "ngavme") spec.klass = InstanceTag::NGAVME;
        else if (klass == "sylvester") spec.klass = InstanceTag::SYLVESTER;
        else if (klass != "gave") throw ParseError("unknown class \"" + klass + "\"");

        if (check->parsed()) return cmd_check(opts);
        if (solve->parsed()) return cmd_solve(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
        if (gen->parsed()) return cmd_gen(opts, spec);
        if (compare->parsed()) return cmd_compare(opts, spec, trials);
        if (examples->parsed()) return cmd_examples(opts);
    } catch (const DimensionOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

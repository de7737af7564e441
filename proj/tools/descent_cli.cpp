#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "descent/beta_table.hpp"
#include "descent/cd_index.hpp"
#include "descent/cyclotomic.hpp"
#include "descent/delta_complex.hpp"
#include "descent/verify.hpp"
#include "descent/witness.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace descent;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
    std::string cache_dir;
    std::string format = "text";
    unsigned workers = 0;
    unsigned m_max = 10000;
    bool even_only = true;
};

std::filesystem::path resolve_cache_dir(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("DESCENT_CACHE_DIR"); env && *env) return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "descent-tables";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "descent-tables";
    return std::filesystem::temp_directory_path() / "descent-tables";
}

BetaTable get_table(int n, const RunConfig& cfg) {
    auto dir = resolve_cache_dir(cfg);
    auto path = dir / ("beta_n" + std::to_string(n) + ".dsbt");
    if (std::filesystem::exists(path)) {
        try {
            return load_table(path);
        } catch (const cache_error& e) {
            std::cerr << "warning: ignoring unreadable cache (" << e.what() << ")\n";
        }
    }
    BetaTable table = build_beta_table(n, cfg.workers);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!ec) {
        try {
            save_table(table, path);
        } catch (const cache_error& e) {
            std::cerr << "warning: could not write cache (" << e.what() << ")\n";
        }
    }
    return table;
}

std::optional<u64> parse_set_spec(const std::string& spec, int n) {
    u64 mask = 0;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(item, &used);
        } catch (...) {
            return std::nullopt;
        }
        if (used != item.size() || value < 1 || value > n - 1) return std::nullopt;
        mask |= u64{1} << (value - 1);
    }
    return mask;
}

std::string multiplicity_label(int mult) { return mult >= 2 ? "2+" : "1"; }

void print_factor_report(const FactorReport& report, const std::string& format) {
    if (format == "json") {
        json out;
        out["n"] = report.n;
        out["m_max"] = report.m_max;
        out["even_only"] = report.even_only;
        out["factors"] = json::array();
        for (const auto& e : report.entries)
            out["factors"].push_back({{"m", e.m}, {"multiplicity", multiplicity_label(e.multiplicity)}});
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "n,m,multiplicity\n";
        for (const auto& e : report.entries)
            std::cout << report.n << "," << e.m << "," << multiplicity_label(e.multiplicity) << "\n";
    } else {
        if (report.entries.empty()) {
            std::cout << "Q_" << report.n << ": no cyclotomic factors up to m = " << report.m_max
                      << "\n";
            return;
        }
        std::cout << "Q_" << report.n << ":";
        for (const auto& e : report.entries) {
            std::cout << " Phi_" << e.m;
            if (e.multiplicity >= 2) std::cout << "^2";
            if (report.n == 14 && (e.m == 4 || e.m == 28)) std::cout << "[unexplained]";
        }
        std::cout << "\n";
    }
}

int run_verify_result(const std::string& name, const CheckResult& result) {
    std::cout << (result.pass ? "pass" : "FAIL") << " " << name << ": " << result.detail << "\n";
    return result.pass ? kExitPass : kExitFail;
}

int run_theorem_report(const TheoremReport& report, const std::string& format) {
    if (format == "json") {
        json out;
        out["name"] = report.name;
        out["pass"] = report.pass;
        out["skipped"] = report.skipped;
        out["claims"] = report.lines;
        std::cout << out.dump() << "\n";
        return report.skipped || report.pass ? kExitPass : kExitFail;
    }
    for (const auto& line : report.lines) std::cout << "  " << line << "\n";
    if (report.skipped) {
        std::cout << "skip " << report.name << "\n";
        return kExitPass;
    }
    std::cout << (report.pass ? "pass " : "FAIL ") << report.name << "\n";
    return report.pass ? kExitPass : kExitFail;
}

void print_witness_table(const std::vector<FactorWitness>& rows, const std::string& format) {
    if (format == "json") {
        json out = json::array();
        for (const auto& w : rows)
            out.push_back({{"n", w.n},
                           {"s", w.s},
                           {"k", w.k},
                           {"factor", w.factor_index},
                           {"explained_by", w.explanation}});
        std::cout << out.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "n,s,k,factor,explained_by\n";
        for (const auto& w : rows)
            std::cout << w.n << "," << w.s << "," << w.k << "," << w.factor_index << ","
                      << w.explanation << "\n";
    } else {
        for (const auto& w : rows)
            std::cout << "n=" << w.n << "  s=" << w.s << "  k=" << w.k << "  -> Phi_"
                      << w.factor_index << "  (" << w.explanation << ")\n";
    }
}

/// Witness rows for the published table reconstructions, including the
/// rule-certified large-n rows that the divisor search does not cover.
std::vector<FactorWitness> reconstruct_witness_rows(int which) {
    std::vector<FactorWitness> rows;
    auto add_rule_rows = [&](const std::vector<reference::WitnessRow>& refs) {
        for (const auto& row : refs) {
            if (row.kind == reference::RowKind::rule) {
                if (auto w = theorem_rule_witness(row.n, row.rule, row.s)) rows.push_back(*w);
            } else if (row.kind == reference::RowKind::digit) {
                if (validate_prime_witness(row.n, row.s, row.k))
                    rows.push_back({row.n, row.s, row.k, static_cast<unsigned>(2 * row.s),
                                    "digit carries", {row.k}});
            }
        }
    };
    if (which == 2) {
        for (int a : {2, 3, 4, 5})
            for (auto& w : find_one_digit_witnesses(a)) rows.push_back(std::move(w));
    } else if (which == 4) {
        for (u64 n : {6, 9, 10, 12, 17, 18, 20})
            for (auto& w : find_two_digit_witnesses(n)) rows.push_back(std::move(w));
        add_rule_rows(reference::two_digit_rows());
    } else if (which == 5) {
        for (u64 n : {11, 13, 14, 19, 21, 22})
            for (auto& w : find_three_digit_witnesses(n)) rows.push_back(std::move(w));
        add_rule_rows(reference::three_digit_rows());
        rows.push_back({11, 3, 4, 6, "outlier", {4}});
    }
    return rows;
}

int cmd_table(int which, int n_max, bool long_run, const RunConfig& cfg) {
    switch (which) {
        case 1: {
            std::cout << "n rho(n)\n";
            for (auto [n, num, den] : reference::rho_values()) {
                if (n > (long_run ? 31 : 15)) continue;
                Rational r = rho(n, cfg.workers);
                std::cout << n << " " << r << "\n";
            }
            return run_verify_result("table1", verify_table1(long_run ? 31 : 15, cfg.workers));
        }
        case 2:
            print_witness_table(reconstruct_witness_rows(2), cfg.format);
            return run_verify_result("table2", verify_table2(cfg.workers));
        case 3: {
            if (cfg.format == "json") {
                json out = json::array();
                for (u64 p : {3, 5, 11, 17}) {
                    json classes = json::array();
                    for (auto [a, b] : exponent_classes_two_digit(p)) classes.push_back({a, b});
                    out.push_back({{"p", p},
                                   {"g", multiplicative_order(2, p)},
                                   {"classes", classes}});
                }
                std::cout << out.dump() << "\n";
            } else if (cfg.format == "csv") {
                std::cout << "p,g,a,b\n";
                for (u64 p : {3, 5, 11, 17})
                    for (auto [a, b] : exponent_classes_two_digit(p))
                        std::cout << p << "," << multiplicative_order(2, p) << "," << a << "," << b
                                  << "\n";
            } else {
                for (u64 p : {3, 5, 11, 17}) {
                    std::cout << "p=" << p << " g=" << multiplicative_order(2, p) << ":";
                    for (auto [a, b] : exponent_classes_two_digit(p))
                        std::cout << " {" << a << "," << b << "}";
                    std::cout << "\n";
                }
            }
            return run_verify_result("table3", verify_table3());
        }
        case 4:
            print_witness_table(reconstruct_witness_rows(4), cfg.format);
            return run_verify_result("table4", verify_table4(cfg.workers));
        case 5:
            print_witness_table(reconstruct_witness_rows(5), cfg.format);
            return run_verify_result("table5", verify_table5(cfg.workers));
        case 6: {
            int hi = n_max > 0 ? n_max : 16;
            for (int n = 3; n <= hi; ++n) {
                BetaTable table = get_table(n, cfg);
                print_factor_report(scan_factors(table, cfg.m_max, cfg.even_only, true, cfg.workers),
                                    cfg.format);
            }
            return run_verify_result("table6", verify_table6(3, hi, cfg.m_max, cfg.workers));
        }
        default:
            std::cerr << "error: table must be 1..6\n";
            return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"descent set statistics, cyclotomic factors, and verifiers"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--cache-dir", cfg.cache_dir, "table cache directory");

    // beta
    int beta_n = 4;
    std::string set_spec;
    u64 beta_mod = 0;
    auto* beta_cmd = app.add_subcommand("beta", "print one descent set statistic");
    beta_cmd->add_option("--n", beta_n, "ambient n")->required()->check(CLI::Range(1, 1000));
    beta_cmd->add_option("--set", set_spec, "comma-separated elements of S");
    beta_cmd->add_option("--mod", beta_mod, "also reduce modulo this value");

    // factors
    int factors_n = 5;
    auto* factors_cmd = app.add_subcommand("factors", "scan cyclotomic factors of Q_n");
    factors_cmd->add_option("--n", factors_n, "n")->required()->check(CLI::Range(1, 64));
    factors_cmd->add_option("--m-max", cfg.m_max, "largest cyclotomic index scanned");
    bool all_m = false, mult = true;
    factors_cmd->add_flag("--all-m", all_m, "scan odd indices too");
    factors_cmd->add_flag("--even-only", cfg.even_only, "scan even indices only (default)");
    factors_cmd->add_flag("--mult,!--no-mult", mult, "report multiplicities");

    // hist: exploratory residue counts a_{m,j}, e.g. for n = p^r + 2 where
    // a_0 = a_p holds but the full palindrome does not
    int hist_n = 6;
    u64 hist_m = 2;
    auto* hist_cmd = app.add_subcommand("hist", "print the residue histogram a_{m,j}");
    hist_cmd->add_option("--n", hist_n, "n")->required()->check(CLI::Range(1, 32));
    hist_cmd->add_option("--m", hist_m, "modulus")->required()->check(CLI::Range(u64{1}, u64{100000}));

    // verify
    std::string target;
    int verify_n = 0, verify_nmax = 0;
    u64 verify_q = 0;
    bool long_run = false;
    auto* verify_cmd = app.add_subcommand("verify", "run a named verifier");
    verify_cmd->add_option("target", target, "what to verify")->required();
    verify_cmd->add_option("--n", verify_n, "single n");
    verify_cmd->add_option("--n-max", verify_nmax, "sweep bound");
    verify_cmd->add_option("--q", verify_q, "prime power parameter");
    verify_cmd->add_option("--m-max", cfg.m_max, "largest cyclotomic index scanned");
    verify_cmd->add_flag("--long", long_run, "include the long rows");

    // table
    int table_which = 1, table_nmax = 0;
    auto* table_cmd = app.add_subcommand("table", "reconstruct a published table and diff it");
    table_cmd->add_option("which", table_which, "table number 1..6")->required();
    table_cmd->add_option("--n-max", table_nmax, "sweep bound (table 6)");
    table_cmd->add_flag("--long", long_run, "include the long rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (beta_cmd->parsed()) {
            auto mask = parse_set_spec(set_spec, beta_n);
            if (!mask) {
                std::cerr << "error: bad --set for n=" << beta_n << "\n";
                return kExitUsage;
            }
            Int value;
            if (std::popcount(*mask) <= 22) {
                value = beta_single(beta_n, *mask);
            } else if (beta_n <= kMaxExactN) {
                value = get_table(beta_n, cfg).at(*mask);
            } else {
                std::cerr << "error: set too large for direct evaluation and n exceeds exact mode; "
                             "use residue tooling\n";
                return kExitResource;
            }
            std::cout << value.str();
            if (beta_mod >= 1) std::cout << " (mod " << beta_mod << ": " << value % beta_mod << ")";
            std::cout << "\n";
            return kExitPass;
        }
        if (factors_cmd->parsed()) {
            if (factors_n > kMaxExactN) {
                std::cerr << "error: n exceeds the exact-mode ceiling " << kMaxExactN << "\n";
                return kExitResource;
            }
            BetaTable table = get_table(factors_n, cfg);
            print_factor_report(
                scan_factors(table, cfg.m_max, all_m ? false : cfg.even_only, mult, cfg.workers),
                cfg.format);
            return kExitPass;
        }
        if (hist_cmd->parsed()) {
            ResidueHistogram h;
            if (hist_n <= kMaxExactN) {
                h = residue_histogram(get_table(hist_n, cfg), hist_m);
            } else {
                h = residue_histogram(hist_n, build_residue_table(hist_n, hist_m, cfg.workers),
                                      hist_m);
            }
            if (cfg.format == "json") {
                json out;
                out["n"] = h.n;
                out["m"] = h.m;
                out["counts"] = h.counts;
                std::cout << out.dump() << "\n";
            } else if (cfg.format == "csv") {
                std::cout << "j,count\n";
                for (u64 j = 0; j < h.m; ++j) std::cout << j << "," << h.counts[j] << "\n";
            } else {
                for (u64 j = 0; j < h.m; ++j)
                    std::cout << "a_{" << h.m << "," << j << "} = " << h.counts[j] << "\n";
            }
            return kExitPass;
        }
        if (verify_cmd->parsed()) {
            if (target == "macmahon") {
                int hi = verify_nmax > 0 ? verify_nmax : (verify_n > 0 ? verify_n : 12);
                int lo = verify_n > 0 ? verify_n : 2;
                for (int n = lo; n <= hi; ++n) {
                    auto r = verify_macmahon(n);
                    if (int code = run_verify_result("macmahon n=" + std::to_string(n), r)) return code;
                }
                return kExitPass;
            }
            if (target == "parity") {
                std::vector<int> ns = verify_n > 0 ? std::vector<int>{verify_n}
                                                   : std::vector<int>{6, 11, 12, 16};
                for (int n : ns) {
                    auto r = verify_parity_theorem(n, cfg.workers);
                    if (int code = run_verify_result("parity n=" + std::to_string(n), r)) return code;
                }
                return kExitPass;
            }
            if (target == "table1")
                return run_verify_result(target, verify_table1(verify_nmax > 0 ? verify_nmax
                                                               : long_run      ? 31
                                                                               : 15,
                                                               cfg.workers));
            if (target == "table2") return run_verify_result(target, verify_table2(cfg.workers));
            if (target == "table3") return run_verify_result(target, verify_table3());
            if (target == "table4") return run_verify_result(target, verify_table4(cfg.workers));
            if (target == "table5") return run_verify_result(target, verify_table5(cfg.workers));
            if (target == "table6") {
                unsigned mm = cfg.m_max == 10000 ? 3000 : cfg.m_max;
                return run_verify_result(
                    target, verify_table6(3, verify_nmax > 0 ? verify_nmax : 16, mm, cfg.workers));
            }
            if (target == "prop71")
                return run_verify_result(target, verify_prop71(verify_nmax > 0 ? verify_nmax : 6,
                                                               cfg.workers));
            if (target == "thm72") {
                std::vector<int> ns = verify_n > 0 ? std::vector<int>{verify_n}
                                                   : std::vector<int>{6, 10, 12, 14, 18, 20, 22};
                for (int n : ns)
                    if (int code = run_theorem_report(verify_theorem_7_2(n, cfg.workers), cfg.format)) return code;
                return kExitPass;
            }
            if (target == "thm82") {
                std::vector<u64> qs = verify_q > 0 ? std::vector<u64>{verify_q}
                                                   : std::vector<u64>{3, 5, 7, 9, 11};
                for (u64 q : qs)
                    if (int code = run_theorem_report(verify_theorem_8_2(q, true, cfg.workers), cfg.format))
                        return code;
                return kExitPass;
            }
            if (target == "thm91") {
                std::vector<u64> qs = verify_q > 0 ? std::vector<u64>{verify_q}
                                                   : std::vector<u64>{11, 13, 17, 19};
                for (u64 q : qs)
                    if (int code = run_theorem_report(verify_theorem_9_1(q, true, cfg.workers), cfg.format))
                        return code;
                return kExitPass;
            }
            if (target == "prop66") return run_verify_result(target, verify_prop66(cfg.workers));
            if (target == "lemma65") return run_verify_result(target, verify_lemma65(cfg.workers));
            if (target == "lemma83")
                return run_verify_result(target, verify_lemma83(verify_q > 0 ? verify_q : 9,
                                                                cfg.workers));
            if (target == "eq8")
                return run_verify_result(target, verify_eq8(verify_q > 0 ? verify_q : 9, cfg.workers));
            if (target == "witnesses") {
                int hi = verify_nmax > 0 ? verify_nmax : 22;
                bool all_ok = true;
                for (int n = 3; n <= hi; ++n) {
                    if (std::popcount(static_cast<u64>(n)) > 3) continue;
                    auto report = cross_check_witnesses(static_cast<u64>(n), cfg.m_max, cfg.workers);
                    for (const auto& row : report.rows)
                        if (!row.confirmed) {
                            std::cout << "FAIL witness n=" << n << " s=" << row.s << " Phi_"
                                      << row.factor_index << " not confirmed\n";
                            all_ok = false;
                        }
                }
                std::cout << (all_ok ? "pass" : "FAIL") << " witnesses\n";
                return all_ok ? kExitPass : kExitFail;
            }
            std::cerr << "error: unknown verify target '" << target << "'\n";
            return kExitUsage;
        }
        if (table_cmd->parsed()) return cmd_table(table_which, table_nmax, long_run, cfg);
    } catch (const exact_mode_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

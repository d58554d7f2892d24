// Command-line front end: table construction with the on-disk cache,
// density/verification/counting/moment/asymptotic reports as CSV or JSON.
//
// Exit codes: 0 success or verified, 1 a verifier found violations,
// 2 usage or domain error, 3 a configured resource budget was exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sncharlab/sncharlab.hpp"

using namespace sncharlab;
using nlohmann::json;

namespace {

// fixed-point rendering keeps reports byte-deterministic across runs
std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << v;
    return os.str();
}

// decimal rendering of a nonnegative rational to 6 places, round half up
std::string fmt_rational(const mpq_class& q) {
    mpz_class num = q.get_num(), den = q.get_den();
    const bool neg = num < 0;
    if (neg) num = -num;
    mpz_class scaled = num * 1000000;
    mpz_class rounded = (2 * scaled + den) / (2 * den);
    mpz_class whole = rounded / 1000000, frac = rounded % 1000000;
    std::string fs = frac.get_str();
    fs.insert(fs.begin(), 6 - fs.size(), '0');
    return (neg ? "-" : "") + whole.get_str() + "." + fs;
}

std::string join_parts(const std::vector<int>& parts) {
    if (parts.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += "+";
        out += std::to_string(parts[i]);
    }
    return out;
}

struct Output {
    std::string path;  // empty = stdout

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::invalid_argument("cannot open output file: " + path);
        f << text;
    }
};

std::string density_csv_header() {
    return "n,p,method,total_entries,divisible_count,certified_count,zero_count,"
           "density_decimal\n";
}

std::string density_csv_row(const DensityReport& r) {
    std::ostringstream os;
    os << r.n << "," << (r.p ? std::to_string(*r.p) : "") << "," << to_string(r.method) << ","
       << r.total_entries.get_str() << ","
       << (r.divisible_count ? r.divisible_count->get_str() : "") << ","
       << (r.certified_count ? r.certified_count->get_str() : "") << ","
       << (r.zero_count ? r.zero_count->get_str() : "") << ",";
    if (r.sampled) {
        os << fmt_double(r.sampled->estimate);
    } else {
        mpq_class density(r.divisible_count ? *r.divisible_count
                                            : (r.certified_count ? *r.certified_count
                                                                 : (r.zero_count ? *r.zero_count
                                                                                 : mpz_class(0))),
                          r.total_entries);
        density.canonicalize();
        os << fmt_rational(density);
    }
    os << "\n";
    return os.str();
}

json density_json(const DensityReport& r) {
    json j;
    j["n"] = r.n;
    if (r.p) j["p"] = *r.p;
    j["method"] = to_string(r.method);
    j["total_entries"] = r.total_entries.get_str();
    if (r.divisible_count) j["divisible_count"] = r.divisible_count->get_str();
    if (r.certified_count) j["certified_count"] = r.certified_count->get_str();
    if (r.zero_count) j["zero_count"] = r.zero_count->get_str();
    if (r.sampled) {
        j["sampled_estimate"] = r.sampled->estimate;
        j["sampled_stderr"] = std::isfinite(r.sampled->stderr_)
                                  ? json(r.sampled->stderr_)
                                  : json("inf");
        j["samples"] = r.sampled->samples;
    }
    j["density_decimal"] = r.sampled ? fmt_double(r.sampled->estimate) : [&] {
        mpq_class density(r.divisible_count ? *r.divisible_count
                                            : (r.certified_count ? *r.certified_count
                                                                 : mpz_class(0)),
                          r.total_entries);
        density.canonicalize();
        return fmt_rational(density);
    }();
    return j;
}

std::string table_csv(const CharTable& t) {
    std::ostringstream os;
    os << "lambda";
    for (const Partition& mu : t.index) os << "," << join_parts(mu.parts());
    os << "\n";
    for (std::size_t li = 0; li < t.index.size(); ++li) {
        os << join_parts(t.index[li].parts());
        for (std::size_t mi = 0; mi < t.index.size(); ++mi)
            os << "," << t.value(li, mi).get_str();
        os << "\n";
    }
    return os.str();
}

json table_json(const CharTable& t) {
    json j;
    j["n"] = t.n;
    j["modulus"] = t.modulus ? json(*t.modulus) : json(nullptr);
    j["order"] = "revlex";
    auto rows = json::array();
    for (std::size_t li = 0; li < t.index.size(); ++li) {
        json row;
        row["lambda"] = t.index[li].parts();
        auto values = json::array();
        for (std::size_t mi = 0; mi < t.index.size(); ++mi)
            values.push_back(t.value(li, mi).get_str());
        row["values"] = std::move(values);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string series_csv(const char* name, const PSeries& s) {
    std::ostringstream os;
    os << "n," << name << "\n";
    for (int n = 0; n <= s.truncation(); ++n) os << n << "," << s[n].get_str() << "\n";
    return os.str();
}

json series_json(const char* name, const PSeries& s) {
    json j;
    auto values = json::array();
    for (int n = 0; n <= s.truncation(); ++n) values.push_back(s[n].get_str());
    j[name] = std::move(values);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric-group character tables, partition counting functions, "
                 "and divisibility-density experiments"};
    app.require_subcommand(1);

    int n = 0, max_n = -1, k = 1, t_param = 2, cap = -1, threads = 0;
    std::optional<int> modulus;
    double gamma = 0.01, delta = 1e-6;
    long long samples = 1000;
    std::uint64_t seed = 0;
    std::string format = "csv", out_path, cache_dir;
    std::vector<int> ks;
    if (const char* env = std::getenv("SNCHARLAB_CACHE_DIR")) cache_dir = env;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path);
    };

    // table
    CLI::App* table_cmd = app.add_subcommand("table", "full character table of S_n");
    table_cmd->add_option("--n", n, "table size")->required()->check(CLI::NonNegativeNumber);
    table_cmd->add_option("--mod", modulus, "compute residues mod this prime");
    table_cmd->add_option("--threads", threads);
    table_cmd->add_option("--cache-dir", cache_dir, "cache directory (SNCHARLAB_CACHE_DIR)");
    add_common(table_cmd);

    // density exact|certified|sampled
    CLI::App* density_cmd = app.add_subcommand("density", "divisibility density reports");
    density_cmd->require_subcommand(1);
    CLI::App* density_exact = density_cmd->add_subcommand("exact", "count entries mod p");
    CLI::App* density_cert = density_cmd->add_subcommand("certified", "t-core certificate count");
    CLI::App* density_sampled = density_cmd->add_subcommand("sampled", "Monte-Carlo certificate");
    for (CLI::App* cmd : {density_exact, density_cert, density_sampled}) {
        cmd->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
        cmd->add_option("--mod", modulus)->required();
        cmd->add_option("--threads", threads);
        cmd->add_option("--max-n", max_n, "emit one row per n from --n to --max-n");
        add_common(cmd);
    }
    density_sampled->add_option("--samples", samples);
    density_sampled->add_option("--seed", seed);

    // verify lemma21|lemma22|covering|eq21
    CLI::App* verify_cmd = app.add_subcommand("verify", "exhaustive lemma verification");
    verify_cmd->require_subcommand(1);
    CLI::App* v21 = verify_cmd->add_subcommand("lemma21", "p-merge congruence");
    v21->add_option("--max-n", max_n);
    v21->add_option("--mod", modulus, "restrict to one prime (default 2,3,5,7)");
    v21->add_option("--threads", threads);
    CLI::App* v22 = verify_cmd->add_subcommand("lemma22", "t-core vanishing");
    v22->add_option("--max-n", max_n);
    v22->add_option("--threads", threads);
    CLI::App* vcov = verify_cmd->add_subcommand("covering", "k = 1,3,5 circle covering");
    CLI::App* veq21 = verify_cmd->add_subcommand("eq21", "leading-digit predicate soundness");
    veq21->add_option("--max-n", max_n);
    veq21->add_option("--mod", modulus);
    veq21->add_option("--gamma", gamma);
    veq21->add_option("--n", n, "also sample at this size");
    veq21->add_option("--samples", samples);
    veq21->add_option("--seed", seed);

    // count pn|tcore|qp|r
    CLI::App* count_cmd = app.add_subcommand("count", "counting-function coefficients");
    count_cmd->require_subcommand(1);
    CLI::App* c_pn = count_cmd->add_subcommand("pn", "partition numbers");
    CLI::App* c_tcore = count_cmd->add_subcommand("tcore", "t-core partition counts");
    CLI::App* c_qp = count_cmd->add_subcommand("qp", "partitions into powers of p");
    CLI::App* c_r = count_cmd->add_subcommand("r", "partitions avoiding k*p^j parts");
    for (CLI::App* cmd : {c_pn, c_tcore, c_qp, c_r}) {
        cmd->add_option("--max-n", max_n)->required()->check(CLI::NonNegativeNumber);
        add_common(cmd);
    }
    c_tcore->add_option("--t", t_param)->required();
    c_qp->add_option("--mod", modulus)->required();
    c_r->add_option("--mod", modulus)->required();
    c_r->add_option("--ks", ks, "k values, coprime to p")->required();

    // moments (with --ks/--cap: the truncated-sum factorization ratio instead)
    CLI::App* moments_cmd = app.add_subcommand("moments", "M^(k) moment cross-check");
    moments_cmd->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
    moments_cmd->add_option("--k", k);
    moments_cmd->add_option("--mod", modulus)->required();
    moments_cmd->add_option("--ks", ks, "several k: report the joint/product ratio");
    moments_cmd->add_option("--cap", cap, "part-sum cap for the truncated ratio");
    add_common(moments_cmd);

    // asym rademacher|mahler|gp|critical-primes|erdos-lehner
    CLI::App* asym_cmd = app.add_subcommand("asym", "closed-form asymptotics");
    asym_cmd->require_subcommand(1);
    CLI::App* a_rad = asym_cmd->add_subcommand("rademacher", "first term vs exact p(n)");
    a_rad->add_option("--n", n)->required();
    add_common(a_rad);
    CLI::App* a_mahler = asym_cmd->add_subcommand("mahler", "q_p estimate vs exact");
    a_mahler->add_option("--n", n)->required();
    a_mahler->add_option("--mod", modulus)->required();
    add_common(a_mahler);
    CLI::App* a_gp = asym_cmd->add_subcommand("gp", "g_p over an eps grid");
    a_gp->add_option("--mod", modulus)->required();
    a_gp->add_option("--gamma", gamma);
    add_common(a_gp);
    CLI::App* a_crit = asym_cmd->add_subcommand("critical-primes", "sign scan for p <= 50");
    a_crit->add_option("--delta", delta);
    add_common(a_crit);
    CLI::App* a_el = asym_cmd->add_subcommand("erdos-lehner", "largest-part law");
    a_el->add_option("--n", n)->required();
    add_common(a_el);

    // sample
    CLI::App* sample_cmd = app.add_subcommand("sample", "uniform random partitions");
    sample_cmd->add_option("--n", n)->required();
    sample_cmd->add_option("--samples", samples);
    sample_cmd->add_option("--seed", seed);
    add_common(sample_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Output output{out_path};
    const bool json_format = format == "json";

    try {
        if (*table_cmd) {
            CharTable table;
            bool loaded = false;
            std::string cache_path;
            if (!cache_dir.empty()) {
                std::filesystem::create_directories(cache_dir);
                cache_path = (std::filesystem::path(cache_dir) /
                              cache_file_name(n, modulus)).string();
                if (std::filesystem::exists(cache_path)) {
                    table = read_table_cache(cache_path, modulus);
                    loaded = true;
                }
            }
            if (!loaded) {
                table = character_table(n, modulus, TableOptions{threads, 0});
                if (!cache_path.empty()) write_table_cache(cache_path, table);
            }
            output.emit(json_format ? table_json(table).dump(2) + "\n" : table_csv(table));
            return 0;
        }

        if (*density_cmd) {
            auto report_for = [&](int m) {
                if (*density_exact)
                    return exact_density_report(m, *modulus, ExperimentBudgets{},
                                                TableOptions{threads, 0});
                if (*density_cert) return certified_density_report(m, *modulus);
                return sampled_density_report(m, *modulus, samples, seed);
            };
            const int last = max_n < 0 ? n : max_n;
            if (last < n) throw std::invalid_argument("--max-n must be >= --n");
            if (json_format) {
                auto arr = json::array();
                for (int m = n; m <= last; ++m) arr.push_back(density_json(report_for(m)));
                output.emit((arr.size() == 1 ? arr[0] : arr).dump(2) + "\n");
            } else {
                std::string text = density_csv_header();
                for (int m = n; m <= last; ++m) text += density_csv_row(report_for(m));
                output.emit(text);
            }
            return 0;
        }

        if (*verify_cmd) {
            if (*vcov) {
                const bool covered = covering_check_p2();
                std::ostringstream os;
                os << "covering check (k = 1,3,5; bound " << fmt_double(covering_bound_p2())
                   << "): " << (covered ? "covered" : "NOT covered") << "\n";
                output.emit(os.str());
                return covered ? 0 : 1;
            }
            if (*v21) {
                const int limit = max_n < 0 ? 12 : max_n;
                const std::vector<int> primes =
                    modulus ? std::vector<int>{*modulus} : std::vector<int>{2, 3, 5, 7};
                long long violations = 0;
                for (int m = 0; m <= limit; ++m) {
                    const CharTable table = character_table(m, std::nullopt,
                                                            TableOptions{threads, 0});
                    for (int p : primes) violations += verify_lemma21(table, p);
                }
                std::ostringstream os;
                os << violations << " violations (lemma21, n <= " << limit << ")\n";
                output.emit(os.str());
                return violations == 0 ? 0 : 1;
            }
            if (*v22) {
                const int limit = max_n < 0 ? 14 : max_n;
                long long violations = 0;
                for (int m = 0; m <= limit; ++m)
                    violations += verify_lemma22(m, TableOptions{threads, 0});
                std::ostringstream os;
                os << violations << " violations (lemma22, n <= " << limit << ")\n";
                output.emit(os.str());
                return violations == 0 ? 0 : 1;
            }
            // eq21: predicate true must imply a large part after p-reduction
            const int p = modulus.value_or(2);
            const int limit = max_n < 0 ? 30 : max_n;
            long long violations = 0, fired = 0;
            for (int m = 2; m <= limit; ++m) {
                const double threshold = (1.0 + gamma) * std::sqrt(6.0) / (2.0 * M_PI) *
                                         std::sqrt(static_cast<double>(m)) *
                                         std::log(static_cast<double>(m));
                for (const Partition& mu : enumerate_partitions(m)) {
                    const Partition red = p_reduce(mu, p);
                    for (int kk = 1; kk <= m; ++kk) {
                        if (kk % p == 0) continue;
                        if (!eq21_predicate(m_statistic(mu, kk, p), kk, p, gamma, m)) continue;
                        ++fired;
                        if (static_cast<double>(red.largest()) < threshold) ++violations;
                    }
                }
            }
            if (veq21->count("--n")) {
                const double threshold = (1.0 + gamma) * std::sqrt(6.0) / (2.0 * M_PI) *
                                         std::sqrt(static_cast<double>(n)) *
                                         std::log(static_cast<double>(n));
                PartitionSampler sampler(SamplerConfig{n, seed, 1'000'000});
                for (long long s = 0; s < samples; ++s) {
                    const Partition mu = sampler.next();
                    const Partition red = p_reduce(mu, p);
                    for (int kk : {1, 3, 5}) {
                        if (kk % p == 0) continue;
                        if (!eq21_predicate(m_statistic(mu, kk, p), kk, p, gamma, n)) continue;
                        ++fired;
                        if (static_cast<double>(red.largest()) < threshold) ++violations;
                    }
                }
            }
            std::ostringstream os;
            os << violations << " violations (eq21, " << fired << " predicate fires)\n";
            output.emit(os.str());
            return violations == 0 ? 0 : 1;
        }

        if (*count_cmd) {
            if (*c_pn)
                output.emit(json_format ? series_json("pn", partition_numbers(max_n)).dump(2) + "\n"
                                        : series_csv("pn", partition_numbers(max_n)));
            else if (*c_tcore)
                output.emit(json_format
                                ? series_json("tcore", tcore_counts(t_param, max_n)).dump(2) + "\n"
                                : series_csv("tcore", tcore_counts(t_param, max_n)));
            else if (*c_qp)
                output.emit(json_format
                                ? series_json("qp", qp_counts(*modulus, max_n)).dump(2) + "\n"
                                : series_csv("qp", qp_counts(*modulus, max_n)));
            else
                output.emit(json_format
                                ? series_json("r", r_counts(ks, *modulus, max_n)).dump(2) + "\n"
                                : series_csv("r", r_counts(ks, *modulus, max_n)));
            return 0;
        }

        if (*moments_cmd) {
            if (!ks.empty()) {
                const int used_cap = cap < 0 ? n : cap;
                const mpq_class joint = eq41_bound(n, *modulus, ks, used_cap);
                const mpq_class ratio = lemma41_ratio(n, *modulus, ks, used_cap);
                if (json_format) {
                    json j;
                    j["n"] = n;
                    j["p"] = *modulus;
                    j["cap"] = used_cap;
                    j["ks"] = ks;
                    j["joint"] = joint.get_str();
                    j["joint_decimal"] = fmt_rational(joint);
                    j["ratio"] = ratio.get_str();
                    j["ratio_decimal"] = fmt_rational(ratio);
                    output.emit(j.dump(2) + "\n");
                } else {
                    std::ostringstream os;
                    os << "n,p,cap,ks,joint_decimal,ratio_decimal\n"
                       << n << "," << *modulus << "," << used_cap << ",";
                    for (std::size_t i = 0; i < ks.size(); ++i)
                        os << (i ? "+" : "") << ks[i];
                    os << "," << fmt_rational(joint) << "," << fmt_rational(ratio) << "\n";
                    output.emit(os.str());
                }
                return 0;
            }
            const MomentReport rep = moment_crosscheck(n, k, *modulus);
            if (json_format) {
                json j;
                j["n"] = rep.n;
                j["k"] = rep.k;
                j["p"] = rep.p;
                j["exact_sum"] = rep.exact_sum.get_str();
                j["exact_sum_sq"] = rep.exact_sum_sq.get_str();
                j["gf_sum"] = rep.gf_sum.get_str();
                j["gf_sum_sq"] = rep.gf_sum_sq.get_str();
                j["main_term"] = rep.main_term;
                j["main_term_sq"] = rep.main_term_sq;
                j["ratio"] = rep.ratio;
                j["ratio_sq"] = rep.ratio_sq;
                output.emit(j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "n,k,p,exact_sum,exact_sum_sq,gf_sum,gf_sum_sq,main_term,main_term_sq,"
                      "ratio,ratio_sq\n"
                   << rep.n << "," << rep.k << "," << rep.p << "," << rep.exact_sum.get_str()
                   << "," << rep.exact_sum_sq.get_str() << "," << rep.gf_sum.get_str() << ","
                   << rep.gf_sum_sq.get_str() << "," << fmt_double(rep.main_term) << ","
                   << fmt_double(rep.main_term_sq) << "," << fmt_double(rep.ratio) << ","
                   << fmt_double(rep.ratio_sq) << "\n";
                output.emit(os.str());
            }
            return 0;
        }

        if (*asym_cmd) {
            std::ostringstream os;
            if (*a_rad) {
                const double est = rademacher_estimate(n);
                os << "n,exact,estimate,relative_error\n" << n << ",";
                if (n <= 10000) {
                    const mpz_class exact = partition_numbers(n)[n];
                    os << exact.get_str() << "," << fmt_double(est) << ","
                       << fmt_double(std::abs(est - exact.get_d()) / exact.get_d());
                } else {
                    os << "," << fmt_double(est) << ",";
                }
                os << "\n";
            } else if (*a_mahler) {
                const double est = mahler_estimate(*modulus, n);
                os << "n,p,log_estimate,log_exact,log_ratio\n" << n << "," << *modulus << ",";
                if (n <= 100000) {
                    const double log_exact = std::log(qp_counts(*modulus, n)[n].get_d());
                    os << fmt_double(std::log(est)) << "," << fmt_double(log_exact) << ","
                       << fmt_double(std::log(est) / log_exact);
                } else {
                    os << fmt_double(std::log(est)) << ",,";
                }
                os << "\n";
            } else if (*a_gp) {
                os << "p,gamma,eps,g_p\n";
                for (int i = 0; i <= 20; ++i) {
                    const double eps = 0.25 * i / 20.0;
                    os << *modulus << "," << fmt_double(gamma) << "," << fmt_double(eps) << ","
                       << fmt_double(g_p(GpParams{*modulus, gamma, eps, 0.0, 0.0, 0})) << "\n";
                }
            } else if (*a_crit) {
                os << "p,sign\n";
                for (const auto& [p, sign] : critical_prime_check(delta))
                    os << p << "," << sign << "\n";
            } else {
                os << "M,threshold,prob\n";
                for (double M : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                    const auto pt = erdos_lehner(n, M);
                    os << fmt_double(M) << "," << fmt_double(pt.threshold) << ","
                       << fmt_double(pt.prob) << "\n";
                }
            }
            output.emit(os.str());
            return 0;
        }

        if (*sample_cmd) {
            PartitionSampler sampler(SamplerConfig{n, seed, 100'000'000});
            if (json_format) {
                json j;
                j["n"] = n;
                j["seed"] = seed;
                j["rng"] = "splitmix64-1.0";
                auto arr = json::array();
                for (long long s = 0; s < samples; ++s) arr.push_back(sampler.next().parts());
                j["samples"] = std::move(arr);
                output.emit(j.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "index,partition\n";
                for (long long s = 0; s < samples; ++s)
                    os << s << "," << join_parts(sampler.next().parts()) << "\n";
                output.emit(os.str());
            }
            return 0;
        }
    } catch (const budget_exceeded& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const sampler_exhausted& e) {
        std::cerr << "sampler exhausted: " << e.what() << " (attempts: " << e.attempts()
                  << ")\n";
        return 2;
    } catch (const cache_error& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        // a hard cross-check (enumeration vs series) disagreed
        std::cerr << "verification mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

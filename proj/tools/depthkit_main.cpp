// depthkit command-line tool: generate datasets, compute depth by any method,
// cross-verify methods, and run benchmark experiments.
//
// Exit codes: 0 success, 2 usage error, 3 method/dimension mismatch,
// 4 degeneracy.

#include "depthkit/depthkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace depthkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMethodMismatch = 3;
constexpr int kExitDegeneracy = 4;

struct MethodFlags {
    double eps = 0.25;
    double delta = 1.0;
    double C = 1.0;
    double K = 64.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> m;
    int workers = 0;
};

class MethodMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods = {
    "brute", "sweep2d", "projected", "bfs", "mc", "combined",
    "halfsample", "halfsample-naive", "approx3d", "tukey"};

bool known_method(const std::string& m) {
    for (const auto& s : kMethods) {
        if (s == m) return true;
    }
    return false;
}

ResultRecord run_method(const std::string& method, const PointSet& P, const Point& q,
                        const MethodFlags& flags, const std::string& instance_id,
                        bool timing) {
    ResultRecord rec;
    rec.method = method;
    rec.seed = flags.seed;
    rec.n = P.size();
    rec.d = P.dim;
    rec.instance_id = instance_id;

    const auto t0 = std::chrono::steady_clock::now();
    if (method == "brute") {
        BruteOptions opts;
        opts.workers = flags.workers;
        const auto r = brute_force(P, q, opts);
        rec.value = r.value;
        rec.work = r.work;
    } else if (method == "sweep2d") {
        if (P.dim != 2) throw MethodMismatch("sweep2d requires a 2-dimensional instance");
        const auto r = sweep_2d(P, q);
        rec.value = r.value;
        rec.work = r.work;
    } else if (method == "projected") {
        const auto r = exact_projected(P, q);
        rec.value = r.value;
        rec.work = r.work;
    } else if (method == "bfs") {
        const auto r = count_via_bfs(P, q);
        rec.value = static_cast<double>(r.count);
        rec.work = r.frontier_work;
    } else if (method == "mc") {
        MonteCarloParams params;
        params.eps = flags.eps;
        params.delta = flags.delta;
        params.m = flags.m ? *flags.m
                           : static_cast<std::uint64_t>(
                                 std::ceil(std::pow(double(P.size()), P.dim / 2.0)));
        params.seed = flags.seed;
        const auto r = monte_carlo(P, q, params);
        rec.value = r.value;
        rec.eps = r.eps;
        rec.work = r.work;
    } else if (method == "combined") {
        const auto r = combined(P, q, flags.eps, flags.delta, flags.seed);
        rec.value = r.value;
        rec.eps = r.eps;
        rec.work = r.work;
    } else if (method == "halfsample" || method == "halfsample-naive") {
        if (P.dim != 2) throw MethodMismatch("halfsample requires a 2-dimensional instance");
        const bool naive = method == "halfsample-naive";
        const auto r = half_sample_estimator(P, q, flags.eps, flags.C, flags.seed, naive);
        rec.value = r.value;
        rec.eps = r.eps;
        rec.work = r.work;
    } else if (method == "approx3d") {
        if (P.dim != 3) throw MethodMismatch("approx3d requires a 3-dimensional instance");
        const auto r = approx_3d(P, q, flags.eps, flags.seed, nullptr, flags.K, flags.delta);
        rec.value = r.value;
        rec.eps = r.eps;
        rec.work = r.work;
    } else if (method == "tukey") {
        if (P.dim == 2) {
            rec.value = static_cast<double>(tukey_2d(P, q).value);
        } else if (P.dim <= 4) {
            rec.value = static_cast<double>(tukey_small_d(P, q).value);
        } else {
            throw MethodMismatch("tukey requires d <= 4");
        }
    } else {
        throw CLI::ValidationError("--method", "unknown method '" + method + "'");
    }
    if (timing) {
        const auto t1 = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    return rec;
}

ParsedPointFile load_points(const std::string& path) {
    if (path == "-") return read_point_file(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open point file: " + path);
    return read_point_file(in);
}

nlohmann::ordered_json meta_to_json(const GenMetadata& meta) {
    nlohmann::ordered_json j;
    j["family"] = meta.family;
    j["n"] = meta.n;
    j["d"] = meta.d;
    j["m"] = meta.m;
    j["seed"] = meta.seed;
    j["perturb_scale"] = meta.perturb_scale;
    if (meta.ideal_sigma) j["ideal_sigma"] = *meta.ideal_sigma;
    if (meta.ideal_tau) j["ideal_tau"] = *meta.ideal_tau;
    if (meta.heavy_index) j["heavy_index"] = *meta.heavy_index;
    j["instance_id"] = meta.instance_id;
    j["gp_check_exhaustive"] = meta.gp_exhaustive;
    j["resamples"] = meta.resamples;
    return j;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckTally {
    std::string name;
    int passed = 0;
    int failed = 0;
};

class VerifySuite {
public:
    explicit VerifySuite(double eps) : eps_(eps) {}

    void run_instance(const PointSet& P, const Point& q) {
        const int n = P.size();
        const int d = P.dim;
        const std::uint64_t cap = default_work_cap();

        std::optional<std::uint64_t> sigma;
        if (binom_ld(n, d + 1) <= static_cast<long double>(cap)) {
            sigma = brute_force(P, q).exact_count();
        }

        if (d == 2 && sigma) {
            const auto sweep = sweep_2d(P, q);
            record("sweep2d == brute", sweep.exact_count() == *sigma);
            const auto wv = weights_2d(P, q);
            record("sum(weights) == 3*sigma", wv.total() == 3 * *sigma);
        }
        if (sigma && d >= 2 && d <= 3 && binom_ld(n, d) * n <= 2e7) {
            const auto proj = exact_projected(P, q);
            record("projected == brute", proj.exact_count() == *sigma);
        }
        if (sigma && d <= 4 && *sigma <= 200000) {
            const auto bfs = count_via_bfs(P, q);
            record("bfs == brute", bfs.status == BfsOutcome::Status::complete &&
                                       bfs.count == *sigma);
            record("bfs work bound",
                   bfs.frontier_work <=
                       static_cast<std::uint64_t>(n - d - 1) * (bfs.count + 1) + 1);
        }
        if (sigma && *sigma > 0) {
            record("parity matches prediction",
                   parity_of(*sigma) == parity_predicted(n, d));
        }
        std::optional<std::uint64_t> tau;
        if (d == 2) {
            tau = tukey_2d(P, q).value;
        } else if (d <= 4 && binom_ld(n, d - 1) * n <= 2e7) {
            tau = tukey_small_d(P, q).value;
        }
        if (sigma && tau) {
            record("sigma <= tau*C(n-1,d)",
                   static_cast<long double>(*sigma) <= static_cast<long double>(*tau) * binom_ld(n - 1, d));
            record("tau>=1 implies sigma>=1", *tau == 0 || *sigma >= 1);
        }
        if (sigma && *sigma > 0 && d <= 4 && *sigma <= 5000) {
            // degree regularity over all BFS nodes
            auto seed_simplex = find_seed_simplex(P, q);
            std::vector<Simplex> nodes;
            if (seed_simplex) {
                // re-walk BFS collecting nodes
                nodes = collect_nodes(P, q);
            }
            record("simplicial graph regular", degree_check(P, q, nodes));
        }
    }

    void record_degenerate() { ++degenerate_; }

    int report(std::ostream& os) const {
        bool all_ok = true;
        os << "check                                 pass   fail\n";
        for (const auto& t : tallies_) {
            os << pad(t.name, 36) << "  " << pad_num(t.passed) << "  " << pad_num(t.failed)
               << "\n";
            if (t.failed > 0) all_ok = false;
        }
        if (degenerate_ > 0)
            os << "(degenerate instances skipped: " << degenerate_ << ")\n";
        os << (all_ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
        return all_ok ? kExitOk : 1;
    }

private:
    static std::vector<Simplex> collect_nodes(const PointSet& P, const Point& q) {
        std::vector<Simplex> nodes;
        auto seed = find_seed_simplex(P, q);
        if (!seed) return nodes;
        std::set<std::vector<int>> visited;
        std::vector<Simplex> queue{*seed};
        visited.insert(seed->idx);
        while (!queue.empty()) {
            Simplex cur = queue.back();
            queue.pop_back();
            nodes.push_back(cur);
            for (int p = 0; p < P.size(); ++p) {
                bool inside = false;
                for (int i : cur.idx) {
                    if (i == p) { inside = true; break; }
                }
                if (inside) continue;
                Simplex nb = swap_vertex(cur, p, P, q);
                if (visited.insert(nb.idx).second) queue.push_back(nb);
            }
        }
        return nodes;
    }

    static std::string pad(std::string s, std::size_t w) {
        if (s.size() < w) s.resize(w, ' ');
        return s;
    }
    static std::string pad_num(int v) {
        std::string s = std::to_string(v);
        while (s.size() < 5) s.insert(s.begin(), ' ');
        return s;
    }

    void record(const std::string& name, bool ok) {
        for (auto& t : tallies_) {
            if (t.name == name) {
                ok ? ++t.passed : ++t.failed;
                return;
            }
        }
        tallies_.push_back(CheckTally{name, ok ? 1 : 0, ok ? 0 : 1});
    }

    double eps_;
    std::vector<CheckTally> tallies_;
    int degenerate_ = 0;
};

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::string> parse_str_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

std::string file_stem(const std::string& path) {
    if (path == "-") return "stdin";
    auto slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simplicial depth toolkit"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* cgen = app.add_subcommand("generate", "emit a seeded instance as a point file");
    std::string gen_family;
    GenSpec spec;
    std::string gen_out, gen_meta;
    cgen->add_option("--family", gen_family, "instance family")->required();
    cgen->add_option("--n", spec.n, "point count (cluster size for tight families)")->required();
    cgen->add_option("--d", spec.d, "dimension");
    cgen->add_option("--m", spec.m, "small-cluster size");
    cgen->add_option("--seed", spec.seed, "generator seed");
    cgen->add_option("--perturb", spec.perturb_scale, "perturbation scale");
    cgen->add_option("--out", gen_out, "output file (default stdout)");
    cgen->add_option("--meta", gen_meta, "metadata sidecar path");

    // ---- depth ----
    auto* cdep = app.add_subcommand("depth", "compute the depth of the query point");
    std::string dep_file, dep_method;
    MethodFlags flags;
    bool dep_csv = false, dep_timing = false;
    cdep->add_option("file", dep_file, "point file ('-' for stdin)")->required();
    cdep->add_option("--method", dep_method, "method")->required();
    cdep->add_option("--eps", flags.eps, "relative accuracy");
    cdep->add_option("--delta", flags.delta, "error-probability exponent");
    cdep->add_option("--C", flags.C, "heavy-threshold constant");
    cdep->add_option("--K", flags.K, "3D sampling lower-bound divisor");
    cdep->add_option("--seed", flags.seed, "method seed");
    std::uint64_t dep_m = 0;
    auto* mopt = cdep->add_option("--m", dep_m, "depth lower-bound guess for mc");
    cdep->add_option("--workers", flags.workers, "worker threads for brute force");
    cdep->add_flag("--csv", dep_csv, "emit a CSV row instead of JSON");
    cdep->add_flag("--timing", dep_timing, "record wall-clock time (non-deterministic)");

    // ---- verify ----
    auto* cver = app.add_subcommand("verify", "run the cross-method invariant suite");
    std::string ver_file, ver_family;
    int ver_n = 12, ver_d = 2, ver_m = 2, ver_trials = 20;
    std::uint64_t ver_seed = 1;
    double ver_eps = 0.25;
    cver->add_option("file", ver_file, "single point file to verify");
    cver->add_option("--family", ver_family, "instance family to sweep");
    cver->add_option("--n", ver_n, "points per instance");
    cver->add_option("--d", ver_d, "dimension");
    cver->add_option("--m", ver_m, "small-cluster size");
    cver->add_option("--trials", ver_trials, "number of seeded instances");
    cver->add_option("--seed", ver_seed, "base seed");
    cver->add_option("--eps", ver_eps, "accuracy parameter for conditional checks");

    // ---- bench ----
    auto* cben = app.add_subcommand("bench", "run methods over families and sizes, emit CSV");
    std::string ben_family = "uniform_ball", ben_sizes = "64", ben_methods, ben_out;
    int ben_trials = 10, ben_d = 2, ben_m = 2;
    std::uint64_t ben_seed = 1;
    double ben_eps = 0.25, ben_C = 1.0, ben_K = 64.0, ben_delta = 1.0;
    bool ben_timing = false;
    cben->add_option("--family", ben_family, "instance family");
    cben->add_option("--sizes", ben_sizes, "comma-separated point counts")->required();
    cben->add_option("--methods", ben_methods, "comma-separated methods")->required();
    cben->add_option("--trials", ben_trials, "runs per (size, method)");
    cben->add_option("--d", ben_d, "dimension");
    cben->add_option("--m", ben_m, "small-cluster size");
    cben->add_option("--seed", ben_seed, "master seed");
    cben->add_option("--eps", ben_eps, "relative accuracy");
    cben->add_option("--C", ben_C, "heavy-threshold constant");
    cben->add_option("--K", ben_K, "3D sampling lower-bound divisor");
    cben->add_option("--delta", ben_delta, "error-probability exponent");
    cben->add_option("--out", ben_out, "output CSV path (default stdout)");
    cben->add_flag("--timing", ben_timing, "record wall-clock times (non-deterministic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cgen->parsed()) {
            const auto fam = family_from_string(gen_family);
            if (!fam) {
                std::cerr << "unknown family: " << gen_family << "\n";
                return kExitUsage;
            }
            spec.family = *fam;
            const Instance inst = gen(spec);
            if (gen_out.empty()) {
                write_point_file(std::cout, inst.points, inst.q);
            } else {
                std::ofstream out(gen_out);
                if (!out) throw InputError("cannot open output file: " + gen_out);
                write_point_file(out, inst.points, inst.q);
            }
            if (!gen_meta.empty()) {
                std::ofstream mout(gen_meta);
                if (!mout) throw InputError("cannot open metadata file: " + gen_meta);
                mout << meta_to_json(inst.meta).dump(2) << "\n";
            }
            return kExitOk;
        }

        if (cdep->parsed()) {
            if (!known_method(dep_method)) {
                std::cerr << "unknown method: " << dep_method << "\n";
                return kExitUsage;
            }
            if (mopt->count() > 0) flags.m = dep_m;
            const auto pf = load_points(dep_file);
            const auto rec = run_method(dep_method, pf.points, pf.q, flags,
                                        file_stem(dep_file), dep_timing);
            if (dep_csv) {
                std::cout << csv_header() << "\n" << to_csv_row(rec) << "\n";
            } else {
                std::cout << to_json(rec).dump() << "\n";
            }
            return kExitOk;
        }

        if (cver->parsed()) {
            VerifySuite suite(ver_eps);
            if (!ver_file.empty()) {
                const auto pf = load_points(ver_file);
                try {
                    suite.run_instance(pf.points, pf.q);
                } catch (const DegeneracyError&) {
                    suite.record_degenerate();
                }
            } else {
                if (ver_family.empty()) {
                    std::cerr << "verify needs a file or --family\n";
                    return kExitUsage;
                }
                const auto fam = family_from_string(ver_family);
                if (!fam) {
                    std::cerr << "unknown family: " << ver_family << "\n";
                    return kExitUsage;
                }
                for (int t = 0; t < ver_trials; ++t) {
                    GenSpec vs;
                    vs.family = *fam;
                    vs.n = ver_n;
                    vs.d = ver_d;
                    vs.m = ver_m;
                    vs.seed = derive_seed(ver_seed, static_cast<std::uint64_t>(t));
                    const Instance inst = gen(vs);
                    try {
                        suite.run_instance(inst.points, inst.q);
                    } catch (const DegeneracyError&) {
                        suite.record_degenerate();
                    }
                }
            }
            return suite.report(std::cout);
        }

        if (cben->parsed()) {
            const auto fam = family_from_string(ben_family);
            if (!fam) {
                std::cerr << "unknown family: " << ben_family << "\n";
                return kExitUsage;
            }
            const auto sizes = parse_int_list(ben_sizes);
            const auto methods = parse_str_list(ben_methods);
            if (sizes.empty() || methods.empty()) {
                std::cerr << "bench needs non-empty --sizes and --methods\n";
                return kExitUsage;
            }
            for (const auto& m : methods) {
                if (!known_method(m)) {
                    std::cerr << "unknown method: " << m << "\n";
                    return kExitUsage;
                }
            }
            std::vector<ResultRecord> rows;
            for (int size : sizes) {
                GenSpec bs;
                bs.family = *fam;
                bs.n = size;
                bs.d = ben_d;
                bs.m = ben_m;
                bs.seed = derive_seed(ben_seed, static_cast<std::uint64_t>(size));
                const Instance inst = gen(bs);
                for (const auto& method : methods) {
                    for (int t = 0; t < ben_trials; ++t) {
                        MethodFlags mf;
                        mf.eps = ben_eps;
                        mf.delta = ben_delta;
                        mf.C = ben_C;
                        mf.K = ben_K;
                        mf.seed = derive_seed(ben_seed,
                                              0xB000 + static_cast<std::uint64_t>(size) * 1009 +
                                                  static_cast<std::uint64_t>(t));
                        rows.push_back(run_method(method, inst.points, inst.q, mf,
                                                  inst.meta.instance_id, ben_timing));
                        rows.back().method = method; // keep the requested name for sorting
                    }
                }
            }
            std::sort(rows.begin(), rows.end(), [](const ResultRecord& a, const ResultRecord& b) {
                if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
                if (a.method != b.method) return a.method < b.method;
                return a.seed < b.seed;
            });
            std::ostringstream csv;
            csv << csv_header() << "\n";
            for (const auto& r : rows) csv << to_csv_row(r) << "\n";
            if (ben_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(ben_out);
                if (!out) throw InputError("cannot open output file: " + ben_out);
                out << csv.str();
            }
            return kExitOk;
        }
    } catch (const MethodMismatch& e) {
        std::cerr << "method mismatch: " << e.what() << "\n";
        return kExitMethodMismatch;
    } catch (const DegeneracyError& e) {
        std::cerr << "degeneracy: " << e.what();
        if (!e.offending.empty()) {
            std::cerr << " (indices:";
            for (int i : e.offending) std::cerr << ' ' << i;
            std::cerr << ")";
        }
        std::cerr << "\n";
        return kExitDegeneracy;
    } catch (const CapExceededError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

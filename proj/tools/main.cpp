// arsp: generate datasets and constraints, compute rskyline probabilities
// with any of the implemented algorithms, cross-verify them, run eclipse
// queries on certain datasets, and benchmark parameter sweeps.

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "arsp/baselines.hpp"
#include "arsp/bnb.hpp"
#include "arsp/datagen.hpp"
#include "arsp/dataset_io.hpp"
#include "arsp/dual2d.hpp"
#include "arsp/eclipse.hpp"
#include "arsp/kdtt.hpp"
#include "arsp/validate.hpp"

namespace {

using namespace arsp;

constexpr int kExitOk = 0;
constexpr int kExitDeviation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitTooManyWorlds = 3;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

const std::vector<std::string> kArspAlgos{"enum",       "loop", "kdtt", "kdtt-fused",
                                          "qdtt-fused", "bnb",  "dual2d"};

bool is_singleton(const UncertainDataset& ds) {
    for (const auto& obj : ds.objects)
        if (obj.instances.size() != 1) return false;
    return true;
}

ArspResult run_algorithm(const std::string& algo, const UncertainDataset& ds,
                         const PreferenceSpec& spec, int* dprime_out = nullptr) {
    if (algo == "dual2d") {
        if (!std::holds_alternative<RatioBox>(spec))
            throw BadParamError("dual2d requires weight ratio constraints");
        const auto& rb = std::get<RatioBox>(spec);
        if (dprime_out) *dprime_out = preference_vertices(spec).dprime();
        const auto profile = is_singleton(ds) ? AngularIndex::Profile::singleton
                                              : AngularIndex::Profile::general;
        return dual2d_arsp(ds, rb, profile);
    }
    const VertexSet V = preference_vertices(spec);
    if (dprime_out) *dprime_out = V.dprime();
    if (algo == "enum") return enum_arsp(ds, V);
    if (algo == "loop") return loop_arsp(ds, V);
    if (algo == "bnb") return bnb_arsp(ds, V);
    KdttOptions opt;
    if (algo == "kdtt") {
        opt.fused = false;
    } else if (algo == "kdtt-fused") {
        opt.fused = true;
    } else if (algo == "qdtt-fused") {
        opt.fused = true;
        opt.variant = KdttOptions::Variant::quad;
    } else {
        throw BadParamError("unknown algorithm " + algo);
    }
    return kdtt_arsp(ds, V, opt);
}

std::size_t arsp_size(const ArspResult& r) {
    std::size_t s = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > 0.0) ++s;
    return s;
}

double enum_world_count(const UncertainDataset& ds) {
    double worlds = 1.0;
    for (const auto& obj : ds.objects)
        worlds *= double(obj.instances.size()) + (clamp_to_one(obj.total_prob()) < 1.0 ? 1 : 0);
    return worlds;
}

UncertainDataset load_dataset(const std::string& path) {
    auto ds = read_dataset_csv(path);
    const auto violations = validate_dataset(ds);
    for (const auto& v : violations) {
        if (v.warning) {
            std::cerr << "warning: object " << v.object_id << ": " << v.rule << "\n";
        } else {
            throw BadParamError("invalid dataset: object " + std::to_string(v.object_id) + ": " +
                                v.rule);
        }
    }
    return ds;
}

// ---------------------------------------------------------------------------
// gen / constraints
// ---------------------------------------------------------------------------

int cmd_gen(const std::string& dist, std::size_t m, int cnt, int d, double l, double phi,
            std::uint64_t seed, const std::string& out) {
    GenParams p;
    if (dist == "ind")
        p.dist = Distribution::IND;
    else if (dist == "anti")
        p.dist = Distribution::ANTI;
    else if (dist == "corr")
        p.dist = Distribution::CORR;
    else
        throw BadParamError("dist must be ind, anti or corr");
    p.m = m;
    p.cnt = cnt;
    p.d = d;
    p.l = l;
    p.phi = phi;
    p.seed = seed;
    GenReport rep;
    const auto ds = gen_dataset(p, &rep);
    write_dataset_csv(ds, out);
    std::cerr << "stats: objects=" << ds.object_count() << " instances=" << ds.instance_count()
              << " phi_exempt=" << rep.phi_exempt << "\n";
    return kExitOk;
}

int cmd_constraints(const std::string& kind, int d, int c, std::uint64_t seed,
                    const std::vector<double>& bounds, const std::string& out) {
    PreferenceSpec spec;
    if (kind == "wr") {
        spec = gen_constraints(ConstraintKind::WR, d, c, seed);
    } else if (kind == "im") {
        spec = gen_constraints(ConstraintKind::IM, d, c, seed);
    } else if (kind == "ratio") {
        if (bounds.size() != std::size_t(2 * (d - 1)))
            throw BadParamError("ratio needs 2(d-1) bounds: lo hi per dimension");
        RatioBox rb;
        rb.dim = d;
        for (int i = 0; i + 1 < d; ++i) rb.ranges.push_back({bounds[2 * i], bounds[2 * i + 1]});
        check_ratio_box(rb);
        spec = rb;
    } else {
        throw BadParamError("kind must be wr, im or ratio");
    }
    write_constraints(spec, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// arsp
// ---------------------------------------------------------------------------

int cmd_arsp(const std::string& algo, const std::string& dataset, const std::string& constraints,
             const std::string& out) {
    const auto ds = load_dataset(dataset);
    const auto spec = read_constraints(constraints);
    int dprime = 0;
    const double t0 = now_seconds();
    const auto result = run_algorithm(algo, ds, spec, &dprime);
    const double seconds = now_seconds() - t0;
    if (out.empty())
        write_result_csv(result, std::cout);
    else
        write_result_csv(result, out);
    std::cerr << "stats: algo=" << algo << " seconds=" << seconds
              << " arsp_size=" << arsp_size(result) << " dprime=" << dprime << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& dataset, const std::string& constraints,
               std::vector<std::string> algos, double tol, bool rational,
               const std::string& against) {
    const auto ds = load_dataset(dataset);
    const auto spec = read_constraints(constraints);
    if (algos.empty() && !rational) algos = {"loop"};

    double max_dev = 0.0;
    std::optional<ArspResult> reference;
    std::string reference_name;
    auto feed = [&](const std::string& name, const ArspResult& r) {
        if (!reference) {
            reference = r;
            reference_name = name;
            return;
        }
        const double dev = ArspResult::max_abs_diff(*reference, r);
        std::cerr << "verify: " << reference_name << " vs " << name << " max|diff|=" << dev
                  << "\n";
        max_dev = std::max(max_dev, dev);
    };

    if (rational) {
        const auto V = preference_vertices(spec);
        const double worlds = enum_world_count(ds);
        EnumOptions opt;
        if (worlds > opt.max_worlds)
            throw BadParamError("rational verification needs an enumerable dataset (" +
                                std::to_string(worlds) + " worlds)");
        const auto e = enum_arsp_exact(ds, V, opt);
        const auto l = loop_arsp_exact(ds, V);
        Rational worst(0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            Rational diff = e[i] - l[i];
            if (diff < 0) diff = -diff;
            if (diff > worst) worst = diff;
        }
        std::cerr << "verify: enum(exact) vs loop(exact) max|diff|="
                  << rational_to_double(worst) << "\n";
        max_dev = std::max(max_dev, rational_to_double(worst));
        reference = e.to_double(ds);
        reference_name = "enum(exact)";
    } else {
        // ground truth joins automatically whenever enumeration is feasible
        const double worlds = enum_world_count(ds);
        if (worlds <= EnumOptions{}.max_worlds) {
            feed("enum", run_algorithm("enum", ds, spec));
        } else {
            std::cerr << "verify: enum skipped (" << worlds << " worlds)\n";
        }
    }

    for (const auto& algo : algos) {
        if (rational && algo == "enum") continue;
        feed(algo, run_algorithm(algo, ds, spec));
    }
    if (!against.empty()) feed("file:" + against, read_result_csv(against, ds));

    std::cout << "max deviation " << max_dev << " (tolerance " << tol << ")\n";
    return max_dev <= tol ? kExitOk : kExitDeviation;
}

// ---------------------------------------------------------------------------
// eclipse
// ---------------------------------------------------------------------------

int cmd_eclipse(const std::string& dataset, const std::string& constraints,
                const std::string& algo, const std::string& out) {
    const auto ds = load_dataset(dataset);
    if (!is_singleton(ds)) throw BadParamError("eclipse expects a certain dataset");
    PointSet pts;
    std::vector<int> ids;
    for (const auto& obj : ds.objects) {
        if (obj.instances[0].prob != 1.0)
            throw BadParamError("eclipse expects every point with probability 1");
        pts.push_back(obj.instances[0].coords);
        ids.push_back(obj.object_id);
    }
    const auto spec = read_constraints(constraints);
    if (!std::holds_alternative<RatioBox>(spec))
        throw BadParamError("eclipse requires weight ratio constraints");
    const auto& rb = std::get<RatioBox>(spec);

    const double t0 = now_seconds();
    const auto members =
        algo == "pruned" ? eclipse_pruned(pts, rb) : eclipse_naive(pts, rb);
    const double seconds = now_seconds() - t0;

    std::ostringstream body;
    body << "object_id\n";
    for (auto i : members) body << ids[i] << "\n";
    if (out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out);
        f << body.str();
    }
    std::cerr << "stats: algo=" << algo << " seconds=" << seconds << " size=" << members.size()
              << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOutcome {
    bool finished = false;
    double seconds = 0.0;
    std::size_t size = 0;
};

// Runs work() in a forked child so a hung configuration can be killed at the
// wall-clock cap and recorded as INF.
BenchOutcome run_capped(double cap_seconds, const std::function<std::size_t()>& work) {
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork failed");
    if (pid == 0) {
        close(fds[0]);
        const double t0 = now_seconds();
        const std::size_t size = work();
        const double seconds = now_seconds() - t0;
        double payload[2] = {seconds, double(size)};
        ssize_t ignored = write(fds[1], payload, sizeof payload);
        (void)ignored;
        close(fds[1]);
        _exit(0);
    }
    close(fds[1]);
    const double deadline = now_seconds() + cap_seconds;
    BenchOutcome out;
    while (true) {
        int status = 0;
        const pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            double payload[2];
            if (read(fds[0], payload, sizeof payload) == sizeof payload &&
                WIFEXITED(status) && WEXITSTATUS(status) == 0) {
                out.finished = true;
                out.seconds = payload[0];
                out.size = std::size_t(payload[1]);
            }
            break;
        }
        if (now_seconds() > deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            break;
        }
        usleep(20000);
    }
    close(fds[0]);
    return out;
}

std::map<std::string, std::string> read_keyvalues(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParamError("cannot open bench spec " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw BadParamError("bench spec expects key=value: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_bench(const std::string& spec_path, const std::string& out_path) {
    const auto kv = read_keyvalues(spec_path);
    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    const double cap = std::stod(get("timeout", "3600"));
    const std::string mode = get("mode", "arsp");
    const auto algos = split_list(get("algos", mode == "eclipse" ? "naive,pruned" : "loop"));

    // exactly one swept key; every other key stays fixed
    const std::vector<std::string> sweepable =
        mode == "eclipse" ? std::vector<std::string>{"n", "d"}
                          : std::vector<std::string>{"m", "cnt", "d", "l", "phi", "c"};
    std::string sweep_key;
    std::vector<std::string> sweep_values;
    for (const auto& key : sweepable) {
        const auto values = split_list(get(key, ""));
        if (values.size() > 1) {
            if (!sweep_key.empty()) throw BadParamError("bench sweeps one parameter at a time");
            sweep_key = key;
            sweep_values = values;
        }
    }
    if (sweep_key.empty()) throw BadParamError("bench spec needs one comma-separated sweep key");

    std::ostringstream csv;
    csv << "param,algo,seconds,arsp_size\n";
    for (const auto& value : sweep_values) {
        auto field = [&](const std::string& key, const std::string& fallback) {
            return key == sweep_key ? value : get(key, fallback);
        };
        for (const auto& algo : algos) {
            BenchOutcome outcome;
            if (mode == "eclipse") {
                GenParams p;
                p.dist = Distribution::IND;
                p.m = std::stoul(field("n", "16384"));
                p.cnt = 1;
                p.d = std::stoi(field("d", "3"));
                p.l = 0.0;
                p.seed = std::stoull(get("seed", "1"));
                const auto ds = gen_dataset(p);
                PointSet pts;
                for (const auto& obj : ds.objects) pts.push_back(obj.instances[0].coords);
                RatioBox rb;
                rb.dim = p.d;
                const double qlo = std::stod(get("q_lo", "0.36"));
                const double qhi = std::stod(get("q_hi", "2.75"));
                for (int i = 0; i + 1 < p.d; ++i) rb.ranges.push_back({qlo, qhi});
                outcome = run_capped(cap, [&]() {
                    return algo == "pruned" ? eclipse_pruned(pts, rb).size()
                                            : eclipse_naive(pts, rb).size();
                });
            } else {
                GenParams p;
                const std::string dist = get("dist", "ind");
                p.dist = dist == "anti"   ? Distribution::ANTI
                         : dist == "corr" ? Distribution::CORR
                                          : Distribution::IND;
                p.m = std::stoul(field("m", "1000"));
                p.cnt = std::stoi(field("cnt", "10"));
                p.d = std::stoi(field("d", "3"));
                p.l = std::stod(field("l", "0.2"));
                p.phi = std::stod(field("phi", "0"));
                p.seed = std::stoull(get("seed", "1"));
                const auto ds = gen_dataset(p);
                const int c = std::stoi(field("c", std::to_string(p.d - 1)));
                const std::string ckind = get("ckind", "wr");
                PreferenceSpec spec;
                if (ckind == "ratio") {
                    RatioBox rb;
                    rb.dim = p.d;
                    for (int i = 0; i + 1 < p.d; ++i) rb.ranges.push_back({0.5, 2.0});
                    spec = rb;
                } else {
                    spec = gen_constraints(
                        ckind == "im" ? ConstraintKind::IM : ConstraintKind::WR, p.d, c,
                        p.seed + 7);
                }
                outcome = run_capped(cap, [&]() {
                    return arsp_size(run_algorithm(algo, ds, spec));
                });
            }
            csv << value << ',' << algo << ',';
            if (outcome.finished)
                csv << outcome.seconds << ',' << outcome.size << "\n";
            else
                csv << "INF," << "\n";
            std::cerr << "bench: " << sweep_key << "=" << value << " algo=" << algo << " "
                      << (outcome.finished ? std::to_string(outcome.seconds) + "s" : "INF")
                      << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path);
        f << csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"restricted-skyline probabilities on uncertain datasets"};
    app.require_subcommand(1);

    // gen
    std::string g_dist = "ind", g_out = "dataset.csv";
    std::size_t g_m = 1000;
    int g_cnt = 10, g_d = 2;
    double g_l = 0.2, g_phi = 0.0;
    std::uint64_t g_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate a synthetic uncertain dataset");
    gen->add_option("--dist", g_dist, "ind|anti|corr");
    gen->add_option("--m", g_m, "number of objects");
    gen->add_option("--cnt", g_cnt, "max instances per object");
    gen->add_option("--d", g_d, "dimensionality");
    gen->add_option("--l", g_l, "max box edge length");
    gen->add_option("--phi", g_phi, "fraction of objects with total < 1");
    gen->add_option("--seed", g_seed, "random seed");
    gen->add_option("--out", g_out, "output dataset csv");

    // constraints
    std::string c_kind = "wr", c_out = "constraints.txt";
    int c_d = 2, c_c = 1;
    std::uint64_t c_seed = 1;
    std::vector<double> c_bounds;
    auto* cons = app.add_subcommand("constraints", "generate a constraint file");
    cons->add_option("--kind", c_kind, "wr|im|ratio");
    cons->add_option("--d", c_d, "dimensionality");
    cons->add_option("--c", c_c, "number of constraints");
    cons->add_option("--seed", c_seed, "random seed (im)");
    cons->add_option("--bounds", c_bounds, "ratio bounds: lo hi per dimension");
    cons->add_option("--out", c_out, "output constraint file");

    // arsp
    std::string a_algo = "loop", a_dataset, a_constraints, a_out;
    auto* arsp_cmd = app.add_subcommand("arsp", "compute all rskyline probabilities");
    arsp_cmd->add_option("--algo", a_algo, "enum|loop|kdtt|kdtt-fused|qdtt-fused|bnb|dual2d")
        ->check(CLI::IsMember(kArspAlgos));
    arsp_cmd->add_option("--dataset", a_dataset, "dataset csv")->required();
    arsp_cmd->add_option("--constraints", a_constraints, "constraint file")->required();
    arsp_cmd->add_option("--out", a_out, "output csv (stdout when omitted)");

    // verify
    std::string v_dataset, v_constraints, v_against;
    std::vector<std::string> v_algos;
    double v_tol = 1e-9;
    bool v_rational = false;
    auto* verify = app.add_subcommand("verify", "cross-check algorithms against each other");
    verify->add_option("--dataset", v_dataset)->required();
    verify->add_option("--constraints", v_constraints)->required();
    verify->add_option("--algos", v_algos, "algorithms to compare")->delimiter(',');
    verify->add_option("--tol", v_tol, "max allowed per-instance deviation");
    verify->add_flag("--rational", v_rational, "exact enum-vs-loop comparison");
    verify->add_option("--against", v_against, "also compare a result csv");

    // eclipse
    std::string e_dataset, e_constraints, e_algo = "pruned", e_out;
    auto* ecl = app.add_subcommand("eclipse", "eclipse query on a certain dataset");
    ecl->add_option("--dataset", e_dataset)->required();
    ecl->add_option("--constraints", e_constraints, "ratio constraint file")->required();
    ecl->add_option("--algo", e_algo, "naive|pruned")
        ->check(CLI::IsMember(std::vector<std::string>{"naive", "pruned"}));
    ecl->add_option("--out", e_out, "output file (stdout when omitted)");

    // bench
    std::string b_spec, b_out;
    auto* bench = app.add_subcommand("bench", "sweep a parameter grid and time algorithms");
    bench->add_option("--spec", b_spec, "key=value grid file")->required();
    bench->add_option("--out", b_out, "output csv (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(g_dist, g_m, g_cnt, g_d, g_l, g_phi, g_seed, g_out);
        if (cons->parsed()) return cmd_constraints(c_kind, c_d, c_c, c_seed, c_bounds, c_out);
        if (arsp_cmd->parsed()) return cmd_arsp(a_algo, a_dataset, a_constraints, a_out);
        if (verify->parsed())
            return cmd_verify(v_dataset, v_constraints, v_algos, v_tol, v_rational, v_against);
        if (ecl->parsed()) return cmd_eclipse(e_dataset, e_constraints, e_algo, e_out);
        if (bench->parsed()) return cmd_bench(b_spec, b_out);
    } catch (const TooManyWorldsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooManyWorlds;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}

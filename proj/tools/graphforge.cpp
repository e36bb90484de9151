// SPDX-License-Identifier: Apache-2.0
// graphforge: random graph generation, randomization, statistics, and
// oracle verification from the command line.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "graphforge/edge_io.hpp"
#include "graphforge/gen_basic.hpp"
#include "graphforge/gen_block.hpp"
#include "graphforge/gen_degree.hpp"
#include "graphforge/gen_spatial.hpp"
#include "graphforge/parallel.hpp"
#include "graphforge/sampling.hpp"
#include "graphforge/stats.hpp"
#include "graphforge/transform.hpp"

using namespace graphforge;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;

struct GenSpec {
    std::string model;
    std::string output = "out.txt";
    std::string format = "text";
    std::string seed_text = "0";
    std::uint32_t threads = 0;

    std::uint64_t n = 0, m = 0, n1 = 0, n2 = 0;
    double p = -1;
    std::uint64_t d = 1, n0 = 0;
    bool simple = false;
    bool directed = false, loops = false;
    double r = 0;
    int dim = 2;
    bool torus = false;
    double waxman_alpha = 0, waxman_beta = 0;
    double alpha = 0.75;
    double radius_R = 0;
    std::string degrees_file, in_degrees_file, out_degrees_file, weights_file;
    double swaps_per_edge = 10;
    std::uint32_t scale = 0;
    std::string abcd = "0.57,0.19,0.19,0.05";
    double noise = 0;
    bool dedup = false;
    bool undirected = false;
    std::uint32_t communities = 0;
    std::string probs, pmat;
    std::string dcounts, ccs;
    double beta = 1.0;
};

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        const std::uint64_t s =
            (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
        std::cout << "seed " << s << "\n";
        return s;
    }
    return std::stoull(text);
}

std::uint32_t resolve_threads(std::uint32_t flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("GRAPHFORGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::uint32_t>(v);
    }
    return 1;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// "key:value,key:value" pairs.
template <typename V>
std::map<std::uint64_t, V> parse_pairs(const std::string& text) {
    std::map<std::uint64_t, V> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidInputError("expected key:value pairs: " + text);
        out[std::stoull(item.substr(0, colon))] =
            static_cast<V>(std::stod(item.substr(colon + 1)));
    }
    return out;
}

DegreeSequence read_degree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open degree file: " + path);
    DegreeSequence d;
    std::uint64_t x;
    while (in >> x) d.push_back(x);
    return d;
}

std::vector<double> read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open weight file: " + path);
    std::vector<double> w;
    double x;
    while (in >> x) w.push_back(x);
    return w;
}

EdgeFormat parse_format(const std::string& f) {
    if (f == "text") return EdgeFormat::kText;
    if (f == "bin") return EdgeFormat::kBinary;
    throw InvalidInputError("unknown format: " + f);
}

std::uint32_t pick_parts(std::uint32_t threads) {
    return threads == 1 ? 1 : threads * 8;
}

ErVariant er_variant(const GenSpec& spec) {
    if (spec.n1 > 0 || spec.n2 > 0) return ErVariant::kBipartite;
    if (spec.directed) return spec.loops ? ErVariant::kDirectedLoops
                                         : ErVariant::kDirectedNoLoops;
    return ErVariant::kUndirected;
}

void write_labels(const std::string& path, const std::vector<std::uint32_t>& labels) {
    std::ofstream out(path);
    for (std::size_t v = 0; v < labels.size(); ++v) out << v << ' ' << labels[v] << '\n';
}

void write_points(const std::string& path, const std::vector<double>& coords, int dim) {
    std::ofstream out(path);
    const std::size_t n = coords.size() / dim;
    for (std::size_t v = 0; v < n; ++v) {
        out << v;
        for (int a = 0; a < dim; ++a) out << ' ' << coords[v * dim + a];
        out << '\n';
    }
}

int cmd_gen(const GenSpec& spec) {
    const std::uint64_t seed = parse_seed(spec.seed_text);
    const std::uint32_t threads = resolve_threads(spec.threads);
    const std::uint32_t parts = pick_parts(threads);
    const RngStream base(seed);
    const EdgeFormat format = parse_format(spec.format);

    Graph g;
    if (spec.model == "gnp") {
        GnpParams p{.n = spec.n, .p = spec.p, .variant = er_variant(spec),
                    .n1 = spec.n1, .n2 = spec.n2};
        g = run_partitioned([&](Partition part) { return gnp(p, base, part); }, parts,
                            threads);
        g.directed = p.variant == ErVariant::kDirectedNoLoops ||
                     p.variant == ErVariant::kDirectedLoops;
        g.allow_loops = p.variant == ErVariant::kDirectedLoops;
        g.n = p.variant == ErVariant::kBipartite ? p.n1 + p.n2 : p.n;
    } else if (spec.model == "gnm") {
        GnmParams p{.n = spec.n, .m = spec.m, .variant = er_variant(spec),
                    .n1 = spec.n1, .n2 = spec.n2};
        g = run_partitioned([&](Partition part) { return gnm(p, base, part); }, parts,
                            threads);
        g.directed = p.variant == ErVariant::kDirectedNoLoops ||
                     p.variant == ErVariant::kDirectedLoops;
        g.allow_loops = p.variant == ErVariant::kDirectedLoops;
        g.n = p.variant == ErVariant::kBipartite ? p.n1 + p.n2 : p.n;
    } else if (spec.model == "ba") {
        g = ba_sequential({.n = spec.n, .d = spec.d, .seed_nodes = spec.n0,
                           .simple = spec.simple},
                          base);
    } else if (spec.model == "ba-hash") {
        BaParams p{.n = spec.n, .d = spec.d, .seed_nodes = spec.n0};
        g = run_partitioned([&](Partition part) { return ba_hash(p, base, part); }, parts,
                            threads);
        g.n = p.n;
        g.allow_loops = g.allow_multi = true;
    } else if (spec.model == "copy") {
        Graph seedg;
        if (spec.n0 < 1) throw InfeasibleError("copy: need --n0 >= 1 seed nodes");
        seedg.n = spec.n0;
        for (NodeId u = 0; u < spec.n0; ++u)
            for (NodeId v = u + 1; v < spec.n0; ++v) seedg.edges.push_back({u, v});
        g = node_copy({.n = spec.n, .d = spec.d,
                       .p = spec.p < 0 ? 0.5 : spec.p, .seed = seedg,
                       .simple = spec.simple},
                      base);
    } else if (spec.model == "threshold") {
        const double p = spec.p < 0 ? 0.5 : spec.p;
        g = run_partitioned(
            [&](Partition part) { return threshold_graph(spec.n, p, base, part); }, parts,
            threads);
        g.n = spec.n;
    } else if (spec.model == "wrg") {
        const double p = spec.p < 0 ? 0.5 : spec.p;
        g = run_partitioned([&](Partition part) { return wrg(spec.n, p, base, part); },
                            parts, threads);
        g.n = spec.n;
    } else if (spec.model == "rgg" || spec.model == "rhg") {
        // Spatial models carry a point set; merge the pieces by hand.
        std::vector<double> coords;
        if (spec.model == "rgg") {
            RggParams p{.n = spec.n, .r = spec.r, .dim = spec.dim, .torus = spec.torus};
            if (spec.waxman_beta > 0)
                p.waxman = WaxmanParams{spec.waxman_alpha > 0 ? spec.waxman_alpha : 1.0,
                                        spec.waxman_beta};
            for (std::uint32_t i = 0; i < parts; ++i) {
                RggResult piece = rgg(p, base, Partition{i, parts});
                g.edges.insert(g.edges.end(), piece.graph.edges.begin(),
                               piece.graph.edges.end());
                coords.insert(coords.end(), piece.coords.begin(), piece.coords.end());
            }
            g.n = spec.n;
            write_points(spec.output + ".points", coords, spec.dim);
        } else {
            RhgParams p{.n = spec.n, .alpha = spec.alpha, .R = spec.radius_R};
            for (std::uint32_t i = 0; i < parts; ++i) {
                RhgResult piece = rhg_threshold(p, base, Partition{i, parts});
                g.edges.insert(g.edges.end(), piece.graph.edges.begin(),
                               piece.graph.edges.end());
                for (std::size_t j = 0; j < piece.radius.size(); ++j) {
                    coords.push_back(piece.radius[j]);
                    coords.push_back(piece.angle[j]);
                }
            }
            g.n = spec.n;
            write_points(spec.output + ".points", coords, 2);
        }
    } else if (spec.model == "chung-lu") {
        const auto w = read_weight_file(spec.degrees_file.empty() ? spec.weights_file
                                                                  : spec.degrees_file);
        g = run_partitioned(
            [&](Partition part) { return chung_lu(w, base, part).graph; }, parts, threads);
        g.n = w.size();
    } else if (spec.model == "cm") {
        g = configuration_model(read_degree_file(spec.degrees_file), base);
    } else if (spec.model == "cm-erased") {
        g = erased_cm(read_degree_file(spec.degrees_file), base);
    } else if (spec.model == "cm-simple") {
        g = cm_simple_rejection(read_degree_file(spec.degrees_file), base);
    } else if (spec.model == "cm-directed") {
        g = cm_directed(read_degree_file(spec.in_degrees_file),
                        read_degree_file(spec.out_degrees_file), base);
    } else if (spec.model == "fdsm") {
        g = fdsm(read_degree_file(spec.degrees_file), spec.swaps_per_edge, base);
    } else if (spec.model == "regular") {
        g = random_regular(spec.n, spec.d, base);
    } else if (spec.model == "sbm") {
        SbmParams p{.n = spec.n, .k = spec.communities,
                    .community_prob = parse_list(spec.probs),
                    .p_matrix = parse_list(spec.pmat)};
        const SbmResult head = sbm_communities(p, base);
        g = run_partitioned([&](Partition part) { return sbm(p, base, part).graph; },
                            parts, threads);
        g.n = p.n;
        write_labels(spec.output + ".labels", head.community);
    } else if (spec.model == "rmat") {
        const auto w = parse_list(spec.abcd);
        if (w.size() != 4) throw InfeasibleError("rmat: --abcd needs four values");
        RmatParams p{.scale = spec.scale, .m = spec.m, .a = w[0], .b = w[1], .c = w[2],
                     .d = w[3], .noise = spec.noise, .dedup = spec.dedup,
                     .undirected = spec.undirected};
        if (p.dedup) {
            g = rmat(p, base);  // the dedup pass is a whole-graph operation
        } else {
            g = run_partitioned([&](Partition part) { return rmat(p, base, part); },
                                parts, threads);
            g.n = std::uint64_t{1} << p.scale;
            g.directed = !p.undirected;
            g.allow_loops = g.allow_multi = true;
        }
    } else if (spec.model == "bter") {
        BterParams p{.degree_counts = parse_pairs<std::uint64_t>(spec.dcounts),
                     .cc_by_degree = parse_pairs<double>(spec.ccs),
                     .beta = spec.beta};
        g = bter(p, base).graph;
    } else {
        throw InvalidInputError("unknown model: " + spec.model);
    }

    write_edge_list_file(spec.output, g, format);
    return 0;
}

int cmd_randomize(const std::string& input, const std::string& method,
                  std::uint64_t amount, const std::string& seed_text, bool dk2,
                  const std::string& output, const std::string& format) {
    const Graph in = read_edge_list_auto(input);
    if (in.directed) throw InvalidInputError("randomize: undirected input required");
    AdjacencyGraph g = AdjacencyGraph::from_graph(in);
    const RngStream base(parse_seed(seed_text));
    if (method == "es") {
        edge_switch(g, amount, base, {.dk2_restricted = dk2});
    } else if (method == "curveball") {
        RngStream rng = base.child("curveball");
        for (std::uint64_t t = 0; t < amount && g.n() >= 2; ++t) {
            const NodeId u = rng.uniform_int(0, g.n());
            NodeId v = rng.uniform_int(0, g.n() - 1);
            if (v >= u) ++v;
            curveball_trade(g, u, v, rng);
        }
    } else if (method == "gcb") {
        global_curveball(g, amount, base);
    } else {
        throw InvalidInputError("unknown method: " + method);
    }
    write_edge_list_file(output, g.to_graph(), parse_format(format));
    return 0;
}

int cmd_stats(const std::string& input, bool with_distance,
              std::uint64_t distance_sample, bool machine, std::uint64_t seed) {
    const Graph g = read_edge_list_auto(input);
    if (g.directed)
        throw InvalidInputError("stats: directed input; orient or symmetrize first");
    {
        std::vector<Edge> sorted = g.edges;
        std::sort(sorted.begin(), sorted.end());
        const bool loops = std::any_of(sorted.begin(), sorted.end(),
                                       [](const Edge& e) { return e.u == e.v; });
        const bool dups =
            std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        if (loops || dups)
            throw InvalidInputError(
                "stats: input has loops or duplicate edges; pass it through a "
                "simplifying step first");
    }
    StatsOptions opt;
    opt.with_distance = with_distance;
    if (distance_sample > 0) opt.distance_sample = distance_sample;
    opt.seed = seed;
    const GraphStats s = compute_stats(g, opt);
    if (machine) {
        std::cout << "n=" << s.n << "\nm=" << s.m << "\ndensity=" << s.density
                  << "\navg_degree=" << s.avg_degree << "\nglobal_cc=" << s.global_cc
                  << "\ncomponents=" << s.component_count
                  << "\nlargest_component=" << s.largest_component_size << "\n";
        if (s.avg_distance) std::cout << "avg_distance=" << *s.avg_distance << "\n";
    } else {
        std::cout << "nodes              " << s.n << "\n"
                  << "edges              " << s.m << "\n"
                  << "density            " << s.density << "\n"
                  << "avg degree         " << s.avg_degree << "\n"
                  << "global clustering  " << s.global_cc << "\n"
                  << "components         " << s.component_count << "\n"
                  << "largest component  " << s.largest_component_size << "\n";
        if (s.avg_distance) std::cout << "avg distance       " << *s.avg_distance << "\n";
    }
    return 0;
}

// Brute-force oracle comparisons on small instances.
int cmd_verify(const std::string& model, std::uint64_t n, double r, int dim, bool torus,
               double alpha, double radius_R, std::uint64_t k, std::uint64_t seeds,
               std::uint64_t budget) {
    if (n > budget)
        throw BudgetExceededError("verify: n exceeds the oracle budget " +
                                  std::to_string(budget));
    bool ok = true;
    if (model == "rgg") {
        for (std::uint64_t s = 0; s < seeds; ++s) {
            const RggParams p{.n = n, .r = r, .dim = dim, .torus = torus};
            const RggResult res = rgg(p, RngStream(s));
            Graph oracle = rgg_from_points(p, res.coords);
            Graph got = res.graph;
            std::sort(got.edges.begin(), got.edges.end());
            const bool pass = got.edges == oracle.edges;
            ok = ok && pass;
            std::cout << "rgg seed " << s << ": " << (pass ? "ok" : "MISMATCH") << " ("
                      << got.m() << " edges)\n";
        }
    } else if (model == "rhg") {
        for (std::uint64_t s = 0; s < seeds; ++s) {
            const RhgParams p{.n = n, .alpha = alpha, .R = radius_R};
            const RhgResult res = rhg_threshold(p, RngStream(s));
            Graph oracle;
            oracle.n = n;
            for (NodeId a = 0; a < n; ++a)
                for (NodeId b = a + 1; b < n; ++b)
                    if (hyperbolic_distance(res.radius[a], res.angle[a], res.radius[b],
                                            res.angle[b]) <= p.R)
                        oracle.edges.push_back({a, b});
            Graph got = res.graph;
            std::sort(got.edges.begin(), got.edges.end());
            const bool pass = got.edges == oracle.edges;
            ok = ok && pass;
            std::cout << "rhg seed " << s << ": " << (pass ? "ok" : "MISMATCH") << " ("
                      << got.m() << " edges)\n";
        }
    } else if (model == "k-of-n") {
        // Chi-square of sample_k_of_n over all C(n, k) subsets.
        std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
        const std::uint64_t runs = 150'000;
        for (std::uint64_t t = 0; t < runs; ++t) {
            RngStream rng = RngStream(t).child("verify");
            ++counts[sample_k_of_n(k, {0, n}, rng)];
        }
        double expected = static_cast<double>(runs);
        for (std::uint64_t i = 0; i < k; ++i)
            expected = expected * static_cast<double>(k - i) / static_cast<double>(n - i);
        double stat = 0;
        std::uint64_t cells = 0;
        for (const auto& [subset, c] : counts) {
            const double diff = static_cast<double>(c) - expected;
            stat += diff * diff / expected;
            ++cells;
        }
        // Conservative normal-tail bound on the chi-square statistic.
        const double dof = static_cast<double>(cells - 1);
        const bool pass = stat < dof + 6 * std::sqrt(2 * dof) && cells >= 2;
        ok = ok && pass;
        std::cout << "k-of-n chi2 stat " << stat << " over " << cells
                  << " subsets: " << (pass ? "ok" : "FAIL") << "\n";
    } else {
        throw InvalidInputError("unknown verify model: " + model);
    }
    std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
    return ok ? 0 : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphforge: scalable random graph generation"};
    app.require_subcommand(1);

    GenSpec spec;
    auto* gen = app.add_subcommand("gen", "generate a graph");
    gen->add_option("model", spec.model, "model name")->required();
    gen->add_option("--n", spec.n);
    gen->add_option("--m", spec.m);
    gen->add_option("--p", spec.p);
    gen->add_option("--d", spec.d);
    gen->add_option("--n0", spec.n0);
    gen->add_flag("--simple", spec.simple);
    gen->add_flag("--directed", spec.directed);
    gen->add_flag("--loops", spec.loops);
    gen->add_option("--n1", spec.n1);
    gen->add_option("--n2", spec.n2);
    gen->add_option("--r", spec.r);
    gen->add_option("--dim", spec.dim);
    gen->add_flag("--torus", spec.torus);
    gen->add_option("--waxman-alpha", spec.waxman_alpha);
    gen->add_option("--waxman-beta", spec.waxman_beta);
    gen->add_option("--alpha", spec.alpha);
    gen->add_option("--R", spec.radius_R);
    gen->add_option("--degrees", spec.degrees_file);
    gen->add_option("--weights", spec.weights_file);
    gen->add_option("--in-degrees", spec.in_degrees_file);
    gen->add_option("--out-degrees", spec.out_degrees_file);
    gen->add_option("--swaps-per-edge", spec.swaps_per_edge);
    gen->add_option("--scale", spec.scale);
    gen->add_option("--abcd", spec.abcd);
    gen->add_option("--noise", spec.noise);
    gen->add_flag("--dedup", spec.dedup);
    gen->add_flag("--undirected", spec.undirected);
    gen->add_option("--k", spec.communities);
    gen->add_option("--probs", spec.probs);
    gen->add_option("--pmat", spec.pmat);
    gen->add_option("--dcounts", spec.dcounts);
    gen->add_option("--ccs", spec.ccs);
    gen->add_option("--beta", spec.beta);
    gen->add_option("-o,--output", spec.output);
    gen->add_option("--format", spec.format)->check(CLI::IsMember({"text", "bin"}));
    gen->add_option("--seed", spec.seed_text);
    gen->add_option("--threads", spec.threads);

    std::string rz_input, rz_method = "es", rz_seed = "0", rz_output = "out.txt",
                rz_format = "text";
    std::uint64_t rz_amount = 0;
    bool rz_dk2 = false;
    auto* rz = app.add_subcommand("randomize", "degree-preserving randomization");
    rz->add_option("--input", rz_input)->required();
    rz->add_option("--method", rz_method)->check(CLI::IsMember({"es", "curveball", "gcb"}));
    rz->add_option("--amount", rz_amount)->required();
    rz->add_flag("--dk2", rz_dk2);
    rz->add_option("--seed", rz_seed);
    rz->add_option("-o,--output", rz_output);
    rz->add_option("--format", rz_format)->check(CLI::IsMember({"text", "bin"}));

    std::string st_input;
    bool st_distance = false, st_machine = false;
    std::uint64_t st_sample = 0, st_seed = 0;
    auto* st = app.add_subcommand("stats", "graph statistics");
    st->add_option("--input", st_input)->required();
    st->add_flag("--distance", st_distance);
    st->add_option("--distance-sample", st_sample);
    st->add_flag("--machine", st_machine);
    st->add_option("--seed", st_seed);

    std::string vf_model;
    std::uint64_t vf_n = 200, vf_k = 2, vf_seeds = 5, vf_budget = 2000;
    double vf_r = 0.1, vf_alpha = 0.75, vf_R = 8.0;
    int vf_dim = 2;
    bool vf_torus = false;
    auto* vf = app.add_subcommand("verify", "compare against brute-force oracles");
    vf->add_option("--model", vf_model)->required();
    vf->add_option("--n", vf_n);
    vf->add_option("--r", vf_r);
    vf->add_option("--dim", vf_dim);
    vf->add_flag("--torus", vf_torus);
    vf->add_option("--alpha", vf_alpha);
    vf->add_option("--R", vf_R);
    vf->add_option("--k", vf_k);
    vf->add_option("--seeds", vf_seeds);
    vf->add_option("--budget", vf_budget);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(spec);
        if (rz->parsed())
            return cmd_randomize(rz_input, rz_method, rz_amount, rz_seed, rz_dk2, rz_output,
                                 rz_format);
        if (st->parsed())
            return cmd_stats(st_input, st_distance, st_sample, st_machine, st_seed);
        if (vf->parsed())
            return cmd_verify(vf_model, vf_n, vf_r, vf_dim, vf_torus, vf_alpha, vf_R, vf_k,
                              vf_seeds, vf_budget);
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

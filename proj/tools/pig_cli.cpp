#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "pig/errors.hpp"
#include "pig/io.hpp"
#include "pig/oracle.hpp"
#include "pig/pq_tree.hpp"
#include "pig/recognition.hpp"
#include "pig/uniqueness.hpp"

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw pig::InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

pig::PartitionedGraph load_graph(const std::string& path) {
    std::istringstream in(slurp(path));
    return pig::parse_graph(in);
}

int run_recognize(const std::string& path, bool want_unique, bool json, bool recheck, bool parallel) {
    pig::PartitionedGraph g = load_graph(path);
    auto outcome = pig::recognize(g, parallel);
    if (auto* rej = std::get_if<pig::Reject>(&outcome)) {
        std::cout << (json ? pig::reject_to_json(*rej)
                           : std::string("rejected: ") + to_string(rej->stage) + ": " + rej->detail + "\n");
        return 1;
    }
    auto& res = std::get<pig::RecognitionResult>(outcome);
    pig::UniquenessVerdict verdict;
    if (want_unique) verdict = pig::is_unique_normal_model(g, res);
    const pig::UniquenessVerdict* vp = want_unique ? &verdict : nullptr;
    std::string json_text = pig::model_to_json(g, res, vp);
    if (recheck) {
        std::istringstream back(json_text);
        pig::ProbeIntervalModel m = pig::parse_model_json(back, g);
        if (!(m.matrix == res.model.matrix) || !pig::verify_model(g, m.matrix) ||
            !pig::is_normal_model(g, m.matrix))
            throw pig::InvalidInput("model round-trip verification failed");
        std::cerr << "verify: ok\n";
    }
    std::cout << (json ? json_text : pig::model_to_text(g, res, vp));
    return 0;
}

int run_verify(const std::string& graph_path, const std::string& model_path) {
    pig::PartitionedGraph g = load_graph(graph_path);
    std::istringstream in(slurp(model_path));
    pig::ProbeIntervalModel model = pig::parse_model_json(in, g);
    bool valid = pig::verify_model(g, model.matrix);
    bool normal = valid && pig::is_normal_model(g, model.matrix);
    std::cout << "model: " << (valid ? "valid" : "invalid") << "\n"
              << "normal: " << (normal ? "yes" : "no") << "\n";
    return valid ? 0 : 1;
}

int run_gen(const pig::GeneratorParams& params, const std::string& out_path) {
    auto [model, g] = pig::random_normal_model(params);
    (void)model;
    std::string text = pig::format_graph(g, "seed " + std::to_string(params.seed));
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else {
        std::ofstream f(out_path);
        if (!f) throw pig::InvalidInput("cannot open " + out_path);
        f << text;
    }
    return 0;
}

// "2^12..2^17" or "4096..131072"
std::pair<long long, long long> parse_sizes(const std::string& spec) {
    auto dots = spec.find("..");
    if (dots == std::string::npos) throw pig::InvalidInput("size range must look like 2^12..2^17");
    auto one = [&](std::string s) -> long long {
        auto caret = s.find("2^");
        try {
            if (caret == 0) return 1LL << std::stoi(s.substr(2));
            return std::stoll(s);
        } catch (const std::exception&) {
            throw pig::InvalidInput("bad size '" + s + "'");
        }
    };
    long long lo = one(spec.substr(0, dots)), hi = one(spec.substr(dots + 2));
    if (lo < 8 || hi < lo) throw pig::InvalidInput("empty size range");
    return {lo, hi};
}

pig::GeneratorParams bench_params(long long target, std::uint64_t seed) {
    pig::GeneratorParams p;
    int probes = static_cast<int>(std::max(target / 4, 4LL));
    p.probes_min = p.probes_max = probes;
    p.n1 = p.n2 = probes / 50;
    p.ns = probes / 10;
    p.columns = 2 * p.n1 + 3 * p.n2 + std::max(probes / 2, 1);
    p.density = 0.2;
    p.seed = seed;
    return p;
}

int run_bench(const std::string& sizes, int reps, bool parallel, std::uint64_t seed) {
    auto [lo, hi] = parse_sizes(sizes);
    std::vector<double> medians;
    std::cout << "size n m cols median_ms ratio\n";
    double prev = 0;
    for (long long target = lo; target <= hi; target *= 2) {
        auto params = bench_params(target, seed);
        auto [model, g] = pig::random_normal_model(params);
        (void)model;
        std::vector<double> times;
        int cols = 0;
        for (int rep = 0; rep < reps; rep++) {
            auto t0 = std::chrono::steady_clock::now();
            auto outcome = pig::recognize(g, parallel);
            auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
            if (!std::holds_alternative<pig::RecognitionResult>(outcome))
                throw pig::InvalidInput("bench instance unexpectedly rejected");
            cols = std::get<pig::RecognitionResult>(outcome).model.matrix.n_cols();
            times.push_back(dt.count());
        }
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        medians.push_back(median);
        std::cout << target << " " << g.n() << " " << g.m << " " << cols << " " << median;
        if (prev > 0) std::cout << " " << median / prev;
        std::cout << "\n";
        prev = median;
    }
    if (medians.size() > 1) {
        std::vector<double> ratios;
        for (std::size_t i = 1; i < medians.size(); i++) ratios.push_back(medians[i] / medians[i - 1]);
        std::sort(ratios.begin(), ratios.end());
        std::cout << "median doubling ratio: " << ratios[ratios.size() / 2] << "\n";
    }
    return 0;
}

int run_pq(const std::string& matrix_path, const std::string& restrict_spec,
           const std::string& intersect_path) {
    std::istringstream in(slurp(matrix_path));
    pig::BinaryMatrix m = pig::parse_matrix(in);
    auto tree = pig::PQTree::build(m);
    if (!tree) {
        std::cout << "no consecutive-ones ordering\n";
        return 1;
    }
    std::cout << "tree: " << pig::format_pq_tree(*tree) << "\n";
    if (!restrict_spec.empty()) {
        std::vector<pig::ColId> keep;
        std::istringstream ss(restrict_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) keep.push_back(std::stoi(tok));
        std::cout << "restricted: " << pig::format_pq_tree(tree->restricted(keep)) << "\n";
    }
    if (!intersect_path.empty()) {
        std::istringstream in2(slurp(intersect_path));
        auto other = pig::PQTree::build(pig::parse_matrix(in2));
        if (!other) {
            std::cout << "other: no consecutive-ones ordering\n";
            return 1;
        }
        auto both = pig::PQTree::intersect(*tree, *other);
        if (both)
            std::cout << "intersection: " << pig::format_pq_tree(*both) << "\n";
        else
            std::cout << "intersection: empty\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partitioned probe interval graph recognizer"};
    app.require_subcommand(1);

    std::string rec_path;
    bool rec_unique = false, rec_json = false, rec_verify = false, rec_parallel = false;
    auto* rec = app.add_subcommand("recognize", "recognize a graph and print its model");
    rec->add_option("file", rec_path, "graph file, or - for stdin")->required();
    rec->add_flag("--unique", rec_unique, "also decide normal-model uniqueness");
    rec->add_flag("--json", rec_json, "JSON output");
    rec->add_flag("--verify", rec_verify, "round-trip the model through the verifier");
    rec->add_flag("--parallel", rec_parallel, "process components in parallel");

    std::string ver_graph, ver_model;
    auto* ver = app.add_subcommand("verify", "check a claimed model against a graph");
    ver->add_option("graph", ver_graph, "graph file")->required();
    ver->add_option("model", ver_model, "model JSON file")->required();

    pig::GeneratorParams gp;
    int gen_probes = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a solvable instance");
    gen->add_option("--seed", gp.seed, "RNG seed (the output is a pure function of it)");
    gen->add_option("--probes", gen_probes, "exact probe count");
    gen->add_option("--probes-min", gp.probes_min, "probe count lower bound");
    gen->add_option("--probes-max", gp.probes_max, "probe count upper bound");
    gen->add_option("--n1", gp.n1, "boundary-stretching non-probes");
    gen->add_option("--n2", gp.n2, "between-clique non-probes");
    gen->add_option("--ns", gp.ns, "simplicial non-probes");
    gen->add_option("--columns", gp.columns, "total columns (0 = derive)");
    gen->add_option("--density", gp.density, "free-probe growth chance in [0,1]");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    std::string bench_sizes = "2^12..2^17";
    int bench_reps = 5;
    bool bench_parallel = false;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "time recognition across doubling sizes");
    bench->add_option("--sizes", bench_sizes, "n+m range, e.g. 2^12..2^17");
    bench->add_option("--reps", bench_reps, "repetitions per size (median reported)")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--parallel", bench_parallel, "recognize components in parallel");
    bench->add_option("--seed", bench_seed, "instance seed");

    std::string pq_path, pq_restrict, pq_intersect;
    auto* pq = app.add_subcommand("pq", "build and inspect a consecutive-ones tree");
    pq->add_option("matrix", pq_path, "matrix file")->required();
    pq->add_option("--restrict", pq_restrict, "comma-separated columns to keep");
    pq->add_option("--intersect", pq_intersect, "second matrix file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rec->parsed()) return run_recognize(rec_path, rec_unique, rec_json, rec_verify, rec_parallel);
        if (ver->parsed()) return run_verify(ver_graph, ver_model);
        if (gen->parsed()) {
            if (gen_probes > 0) gp.probes_min = gp.probes_max = gen_probes;
            return run_gen(gp, gen_out);
        }
        if (bench->parsed()) return run_bench(bench_sizes, bench_reps, bench_parallel, bench_seed);
        if (pq->parsed()) return run_pq(pq_path, pq_restrict, pq_intersect);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

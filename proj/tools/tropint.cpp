// Command-line interface: cycles and functions travel between subcommands
// as interchange files, so computations chain through the filesystem.

#include <CLI11.hpp>
#include <json.hpp>

#include "tropint/intersection.hpp"
#include "tropint/io.hpp"
#include "tropint/matroid.hpp"
#include "tropint/moduli.hpp"
#include "tropint/util.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace tropint;
using json = nlohmann::ordered_json;

namespace {

struct Output {
    bool as_json = false;
    std::string path;  // empty = stdout

    void emit_cycle(const TropicalCycle& x) const {
        std::string doc = write_cycle(x);
        if (path.empty())
            std::cout << doc;
        else
            write_file(path, doc);
    }

    void emit_report(const json& j, const std::string& text) const {
        std::string doc = as_json ? j.dump(2) + "\n" : text;
        if (path.empty())
            std::cout << doc;
        else
            write_file(path, doc);
    }
};

json cycle_summary(const TropicalCycle& x) {
    json j;
    j["ambient_dim"] = x.ambient_dim();
    j["maximal_cells"] = x.complex.size();
    j["dim"] = x.dim();
    json w = json::array();
    for (const auto& wi : x.weights) w.push_back(wi.str());
    j["weights"] = std::move(w);
    return j;
}

std::string summary_text(const TropicalCycle& x) {
    std::ostringstream os;
    os << "maximal cells: " << x.complex.size() << "\n";
    os << "dim: " << x.dim() << " (ambient " << x.ambient_dim() << ")\n";
    os << "weights:";
    for (const auto& w : x.weights) os << " " << w.str();
    os << "\n";
    return os.str();
}

Matroid matroid_from_flags(const std::string& file, const std::string& matrix_file,
                           const std::string& uniform, int graphic) {
    int sources = !file.empty() + !matrix_file.empty() + !uniform.empty() + (graphic > 0);
    if (sources != 1)
        throw TropError("specify exactly one of --matroid, --matrix, --uniform, --graphic");
    if (!file.empty()) return read_matroid(read_file(file));
    if (!matrix_file.empty()) {
        Matroid m = read_matroid(read_file(matrix_file));
        if (!m.realization().has_value()) throw TropError("--matrix expects a matrix block");
        return m;
    }
    if (graphic > 0) return complete_graph_matroid(static_cast<size_t>(graphic));
    auto comma = uniform.find(',');
    if (comma == std::string::npos) throw TropError("--uniform expects rank,n");
    return Matroid::uniform(std::stoul(uniform.substr(0, comma)),
                            std::stoul(uniform.substr(comma + 1)));
}

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) out.emplace_back(token);
    return out;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

TropicalPolynomial random_polynomial(std::mt19937& rng, size_t vars, int terms) {
    std::uniform_int_distribution<int> e(-2, 2), c(-5, 5);
    std::vector<TropicalTerm> list;
    for (int t = 0; t < terms; ++t) {
        ZVec exp(vars);
        for (size_t i = 0; i < vars; ++i) exp[i] = e(rng);
        list.push_back({exp, Rat(c(rng))});
    }
    return TropicalPolynomial(TropicalMode::Max, list);
}

// the standard line in the first two coordinates times R^{k-1}, inside R^n
TropicalCycle line_times_plane(size_t k, size_t n) {
    std::vector<Polyhedron> cells;
    for (const auto& dir : {std::vector<int>{1, 1}, {-1, 0}, {0, -1}}) {
        std::vector<QVec> rays = {QVec(n, Rat(0))};
        rays[0][0] = dir[0];
        rays[0][1] = dir[1];
        std::vector<QVec> lin;
        for (size_t i = 0; i < k - 1; ++i) {
            QVec l(n, Rat(0));
            l[2 + i] = 1;
            lin.push_back(std::move(l));
        }
        cells.push_back(Polyhedron::cone_from_generators(n, rays, lin));
    }
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_cells(n, std::move(cells));
    x.weights.assign(3, Int(1));
    return x;
}

int run_bench(const std::string& suite, size_t nmin, size_t nmax, const std::string& ks,
              int terms, const std::string& uniform_cap) {
    std::mt19937 rng(20240229);
    std::cout << std::fixed << std::setprecision(3);
    if (suite == "divisors") {
        std::vector<Int> klist = parse_int_list(ks);
        std::cout << "divisor of a random " << terms << "-term polynomial on L x R^(k-1) in R^n\n";
        std::cout << "k\\n";
        for (size_t n = nmin; n <= nmax; ++n) std::cout << "\tn=" << n;
        std::cout << "\n";
        for (const Int& kk : klist) {
            size_t k = static_cast<size_t>(kk);
            std::cout << "k=" << k;
            for (size_t n = nmin; n <= nmax; ++n) {
                if (k + 1 > n) {
                    std::cout << "\t-";
                    continue;
                }
                TropicalCycle x = line_times_plane(k, n);
                TropicalPolynomial f = random_polynomial(rng, n, terms);
                auto start = std::chrono::steady_clock::now();
                TropicalCycle div = divisor(f, x);
                std::cout << "\t" << seconds_since(start);
            }
            std::cout << "\n";
        }
        return 0;
    }
    if (suite == "intersect") {
        std::cout << "successive divisors f.(g.R^n) vs intersection (f.R^n).(g.R^n)\n";
        std::cout << "n\tdivisors\tintersection\n";
        for (size_t n = nmin; n <= nmax; ++n) {
            TropicalPolynomial f = random_polynomial(rng, n, terms);
            TropicalPolynomial g = random_polynomial(rng, n, terms);
            auto start = std::chrono::steady_clock::now();
            TropicalCycle successive = divisor(f, divisor(g, unit_cycle(n)));
            double t1 = seconds_since(start);
            start = std::chrono::steady_clock::now();
            TropicalCycle product =
                stable_intersect(divisor(f, unit_cycle(n)), divisor(g, unit_cycle(n)));
            double t2 = seconds_since(start);
            std::cout << n << "\t" << t1 << "\t" << t2 << "\n";
        }
        return 0;
    }
    if (suite == "bergman") {
        std::vector<std::pair<std::string, Matroid>> rows;
        size_t cap_r = 3, cap_n = 5;
        if (!uniform_cap.empty()) {
            auto comma = uniform_cap.find(',');
            cap_r = std::stoul(uniform_cap.substr(0, comma));
            cap_n = std::stoul(uniform_cap.substr(comma + 1));
        }
        for (size_t r = 2; r <= cap_r; ++r)
            for (size_t nn = r + 2; nn <= cap_n; ++nn)
                rows.emplace_back("U_{" + std::to_string(r) + "," + std::to_string(nn) + "}",
                                  Matroid::uniform(r, nn));
        rows.emplace_back("K_4", complete_graph_matroid(4));
        std::cout << "matroid\trincon\tnormalfan\n";
        for (const auto& [name, m] : rows) {
            auto start = std::chrono::steady_clock::now();
            bergman_fan_rincon(m);
            double t1 = seconds_since(start);
            start = std::chrono::steady_clock::now();
            bergman_fan_normal(m);
            double t2 = seconds_since(start);
            std::cout << name << "\t" << t1 << "\t" << t2 << "\n";
        }
        return 0;
    }
    std::cerr << "unknown bench suite: " << suite << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropint: exact tropical intersection theory"};
    app.require_subcommand(1);

    int threads = 0;
    bool as_json = false;
    app.add_option("--threads", threads, "worker cap for parallel loops");
    app.add_flag("--json", as_json, "machine-readable output");

    std::string in_a, in_b, out_path, poly_text, function_file, method = "stable";
    std::string matroid_file, matrix_file, uniform_spec, curve_text, klist, metric_text,
        pruefer_text;
    int power = 1, graphic = 0, skeleton_k = 0;
    size_t nval = 0;

    auto* balance = app.add_subcommand("balance", "check the balancing condition");
    balance->add_option("cycle", in_a)->required();

    auto* weightspace = app.add_subcommand("weight-space", "weight space and irreducibility");
    weightspace->add_option("cycle", in_a)->required();

    auto* summary = app.add_subcommand("summary", "dimensions and weights of a cycle");
    summary->add_option("cycle", in_a)->required();

    auto* div = app.add_subcommand("divisor", "divisor of a function on a cycle");
    div->add_option("cycle", in_a)->required();
    div->add_option("--poly", poly_text, "tropical polynomial, e.g. max(x,y,0)");
    div->add_option("--function", function_file, "piecewise affine function file");
    div->add_option("--power", power, "apply the divisor k times");
    div->add_option("-o,--output", out_path);

    auto* inter = app.add_subcommand("intersect", "intersection product of two cycles");
    inter->add_option("a", in_a)->required();
    inter->add_option("b", in_b)->required();
    inter->add_option("--method", method, "stable | diagonal");
    inter->add_option("-o,--output", out_path);

    auto* berg = app.add_subcommand("bergman", "Bergman fan of a matroid");
    berg->add_option("--matroid", matroid_file);
    berg->add_option("--matrix", matrix_file);
    berg->add_option("--uniform", uniform_spec, "rank,n");
    berg->add_option("--graphic", graphic, "complete graph K_k");
    berg->add_option("--method", method, "rincon | normalfan");
    berg->add_option("-o,--output", out_path);

    auto* m0ncmd = app.add_subcommand("m0n", "moduli fan of rational n-marked curves");
    m0ncmd->add_option("n", nval)->required();
    m0ncmd->add_option("-o,--output", out_path);

    auto* local = app.add_subcommand("local-m0n", "moduli fan locally around a curve");
    local->add_option("--n", nval)->required();
    local->add_option("--curve", curve_text)->required();
    local->add_option("-o,--output", out_path);

    auto* psi = app.add_subcommand("psi", "product of Psi classes on the moduli fan");
    psi->add_option("n", nval)->required();
    psi->add_option("--k", klist, "comma-separated exponents")->required();
    psi->add_option("-o,--output", out_path);

    auto* curvecmd = app.add_subcommand("curve", "convert between curve descriptions");
    curvecmd->add_option("--n", nval)->required();
    curvecmd->add_option("--to-metric", curve_text);
    curvecmd->add_option("--from-metric", metric_text);
    curvecmd->add_option("--to-pruefer", pruefer_text);
    curvecmd->add_option("--from-pruefer", pruefer_text);

    auto* skel = app.add_subcommand("skeleton", "k-skeleton of a cycle");
    skel->add_option("cycle", in_a)->required();
    skel->add_option("-k", skeleton_k)->required();
    skel->add_option("-o,--output", out_path);

    auto* prod = app.add_subcommand("product", "cartesian product of cycles");
    prod->add_option("a", in_a)->required();
    prod->add_option("b", in_b)->required();
    prod->add_option("-o,--output", out_path);

    std::string bench_suite;
    size_t bench_nmin = 2, bench_nmax = 4;
    std::string bench_k = "1,3", bench_uniform;
    int bench_terms = 5;
    auto* bench = app.add_subcommand("bench", "benchmark harness at desk scale");
    bench->add_option("suite", bench_suite, "divisors | intersect | bergman")->required();
    bench->add_option("--nmin", bench_nmin);
    bench->add_option("--nmax", bench_nmax);
    bench->add_option("--k", bench_k);
    bench->add_option("--terms", bench_terms);
    bench->add_option("--uniform", bench_uniform, "cap rank,n for the uniform family");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) set_max_threads(threads);
    Output out{as_json, out_path};

    try {
        if (balance->parsed()) {
            TropicalCycle x = read_cycle(read_file(in_a));
            BalanceReport r = balancing_report(x);
            json j;
            j["balanced"] = r.balanced;
            j["offending_cells"] = r.offending.size();
            std::ostringstream os;
            os << (r.balanced ? "balanced" : "not balanced");
            if (!r.balanced) os << " (" << r.offending.size() << " offending cells)";
            os << "\n";
            out.emit_report(j, os.str());
            return r.balanced ? 0 : 1;
        }
        if (summary->parsed()) {
            TropicalCycle x = read_cycle(read_file(in_a));
            out.emit_report(cycle_summary(x), summary_text(x));
            return 0;
        }
        if (weightspace->parsed()) {
            TropicalCycle x = read_cycle(read_file(in_a));
            WeightSpace ws = weight_space(x);
            bool irr = is_irreducible(x);
            json j;
            j["dimension"] = ws.dimension;
            j["irreducible"] = irr;
            json basis = json::array();
            for (const auto& b : ws.lattice_basis) {
                json row = json::array();
                for (const auto& v : b) row.push_back(v.str());
                basis.push_back(std::move(row));
            }
            j["lattice_basis"] = std::move(basis);
            std::ostringstream os;
            os << "weight space dimension: " << ws.dimension << "\n";
            os << "irreducible: " << (irr ? "true" : "false") << "\n";
            for (const auto& b : ws.lattice_basis) {
                for (size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i].str();
                os << "\n";
            }
            out.emit_report(j, os.str());
            return 0;
        }
        if (div->parsed()) {
            TropicalCycle x = read_cycle(read_file(in_a));
            TropicalCycle result;
            if (!poly_text.empty()) {
                result = divisor_power(parse_polynomial(poly_text), power, x);
            } else if (!function_file.empty()) {
                RationalFunctionOnCycle f = read_function(read_file(function_file));
                result = x;
                for (int i = 0; i < power && !result.is_empty(); ++i) result = divisor(f, result);
            } else {
                throw TropError("divisor needs --poly or --function");
            }
            out.emit_cycle(result);
            return 0;
        }
        if (inter->parsed()) {
            TropicalCycle a = read_cycle(read_file(in_a));
            TropicalCycle b = read_cycle(read_file(in_b));
            TropicalCycle result = method == "diagonal" ? diagonal_intersect(a, b)
                                                        : stable_intersect(a, b);
            out.emit_cycle(result);
            return 0;
        }
        if (berg->parsed()) {
            Matroid m = matroid_from_flags(matroid_file, matrix_file, uniform_spec, graphic);
            BergmanFan fan =
                method == "normalfan" ? bergman_fan_normal(m) : bergman_fan_rincon(m);
            out.emit_cycle(fan.cycle);
            return 0;
        }
        if (m0ncmd->parsed()) {
            out.emit_cycle(m0n(nval));
            return 0;
        }
        if (local->parsed()) {
            RationalCurve tau = parse_curve(nval, curve_text);
            out.emit_cycle(local_m0n(tau));
            return 0;
        }
        if (psi->parsed()) {
            out.emit_cycle(psi_product(nval, parse_int_list(klist)));
            return 0;
        }
        if (curvecmd->parsed()) {
            json j;
            std::ostringstream os;
            if (curvecmd->count("--to-metric")) {
                RationalCurve c = parse_curve(nval, curve_text);
                MetricVector m = curve_to_metric(c);
                json arr = json::array();
                for (size_t i = 0; i < m.d.size(); ++i) {
                    arr.push_back(rat_to_string(m.d[i]));
                    os << (i ? " " : "") << rat_to_string(m.d[i]);
                }
                os << "\n";
                j["metric"] = std::move(arr);
            } else if (curvecmd->count("--from-metric")) {
                MetricVector m;
                m.n = nval;
                std::istringstream is(metric_text);
                std::string tok;
                while (is >> tok) m.d.push_back(parse_rational(tok));
                if (m.d.size() != nval * (nval - 1) / 2)
                    throw TropError("metric needs C(n,2) entries");
                RationalCurve c = metric_to_curve(m);
                j["curve"] = curve_to_string(c);
                os << curve_to_string(c) << "\n";
            } else if (curvecmd->count("--to-pruefer")) {
                RationalCurve c = parse_curve(nval, pruefer_text);
                PrueferSequence p = curve_to_pruefer(c);
                json arr = json::array();
                for (size_t i = 0; i < p.entries.size(); ++i) {
                    arr.push_back(p.entries[i]);
                    os << (i ? " " : "") << p.entries[i];
                }
                os << "\n";
                j["pruefer"] = std::move(arr);
            } else if (curvecmd->count("--from-pruefer")) {
                PrueferSequence p;
                p.n = nval;
                std::istringstream is(pruefer_text);
                size_t e;
                while (is >> e) p.entries.push_back(e);
                RationalCurve c = pruefer_to_curve(p);
                j["curve"] = curve_to_string(c);
                os << curve_to_string(c) << "\n";
            } else {
                throw TropError("curve needs one of --to-metric, --from-metric, "
                                "--to-pruefer, --from-pruefer");
            }
            out.emit_report(j, os.str());
            return 0;
        }
        if (skel->parsed()) {
            TropicalCycle x = read_cycle(read_file(in_a));
            PolyhedralComplex sk = k_skeleton(x, skeleton_k);
            TropicalCycle result;
            result.complex = sk;
            result.weights.assign(sk.size(), Int(1));
            out.emit_cycle(result);
            return 0;
        }
        if (prod->parsed()) {
            TropicalCycle a = read_cycle(read_file(in_a));
            TropicalCycle b = read_cycle(read_file(in_b));
            out.emit_cycle(cartesian_product(a, b));
            return 0;
        }
        if (bench->parsed())
            return run_bench(bench_suite, bench_nmin, bench_nmax, bench_k, bench_terms,
                             bench_uniform);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// commgraph: exact commuting-graph toolkit for matrix rings over finite
// fields and definite rational quaternion algebras.

#include "commgraph/analyzer.hpp"
#include "commgraph/embedding.hpp"
#include "commgraph/experiments.hpp"
#include "commgraph/io.hpp"
#include "commgraph/oracle.hpp"
#include "commgraph/path.hpp"
#include "commgraph/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace commgraph;

namespace {

constexpr int kExitResolved = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnresolved = 2;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_report(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write report '" + path + "'");
    out << j.dump(2) << "\n";
}

template <class D>
nlohmann::json path_to_json(const PathWitness<D>& w) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : w.vertices) verts.push_back(matrix_to_text(v));
    return nlohmann::json{{"length", w.length()}, {"vertices", verts}, {"strategy", w.strategy_log}};
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Exact: return "exact";
        case VerdictKind::UpperWitnessed: return "upper-witnessed";
        case VerdictKind::LowerCertified: return "lower-certified";
        case VerdictKind::Disconnected: return "disconnected";
        default: return "unresolved";
    }
}

template <class D>
int run_dist(const DMatrix<D>& A, const DMatrix<D>& B, std::uint64_t seed, const std::string& report) {
    WitnessSearchConfig cfg;
    cfg.seed = seed;
    auto v = assemble_path(A, B, cfg);

    nlohmann::json j{{"tool", kToolName}, {"version", kToolVersion},
                     {"ring", A.ring->spec_string()}, {"seed", seed},
                     {"verdict", verdict_name(v.kind)}, {"notes", v.notes}};
    std::cout << "ring: " << A.ring->spec_string() << "\n";
    switch (v.kind) {
        case VerdictKind::Exact:
            std::cout << "distance: " << v.value << " (exact)\n";
            j["distance"] = v.value;
            break;
        case VerdictKind::UpperWitnessed:
            std::cout << "distance: <= " << v.value << " (verified path)\n";
            j["distance_upper_bound"] = v.value;
            break;
        case VerdictKind::Disconnected:
            std::cout << "distance: infinite (pair certified disconnected)\n";
            break;
        default:
            std::cout << "verdict: UNRESOLVED\n";
            break;
    }
    if (v.witness) {
        j["path"] = path_to_json(*v.witness);
        std::cout << "path (" << v.witness->length() << " edges):\n";
        for (const auto& vert : v.witness->vertices) std::cout << matrix_to_text(vert) << "\n";
        for (const auto& s : v.witness->strategy_log) std::cout << "  strategy: " << s << "\n";
    }
    for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
    write_report(report, j);
    return v.resolved() ? kExitResolved : kExitUnresolved;
}

template <class D>
int run_en_distance(const DMatrix<D>& A, std::uint64_t seed, const std::string& report) {
    WitnessSearchConfig cfg;
    cfg.seed = seed;
    auto v = distance_to_EN(A, cfg);
    nlohmann::json j{{"tool", kToolName}, {"version", kToolVersion},
                     {"ring", A.ring->spec_string()}, {"seed", seed}, {"notes", v.notes}};
    std::cout << "ring: " << A.ring->spec_string() << "\n";
    if (v.resolved()) {
        std::cout << "d(A, E u N) = " << v.distance << "\n";
        j["distance"] = v.distance;
        j["path"] = path_to_json(v.path);
        for (const auto& vert : v.path.vertices) std::cout << matrix_to_text(vert) << "\n";
        for (const auto& s : v.path.strategy_log) std::cout << "  strategy: " << s << "\n";
    } else {
        std::cout << "verdict: UNRESOLVED\n";
        j["verdict"] = "unresolved";
        if (v.clique_certificate) j["clique_certificate"] = true;
    }
    for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
    write_report(report, j);
    return v.resolved() ? kExitResolved : kExitUnresolved;
}

template <class D>
int run_analyze(const DMatrix<D>& A, std::uint64_t seed) {
    if (is_central(A)) {
        std::cout << "input is central: not a vertex of the commuting graph\n";
        return kExitUsage;
    }
    WitnessSearchConfig cfg;
    cfg.seed = seed;
    auto rep = classify<D>(A, cfg);
    std::cout << "ring: " << A.ring->spec_string() << "\n";
    if constexpr (std::is_same_v<D, Fq>) {
        std::cout << "minpoly: " << poly_to_text(rep.minpoly, A.ring->fq) << "\n";
    } else {
        std::cout << "minpoly: " << poly_to_text(rep.minpoly) << "\n";
    }
    std::cout << "dim <A>: " << rep.dim << "\n";
    std::cout << "kind: " << to_string(rep.kind) << (rep.kind_exact ? "" : " (not certified)") << "\n";
    std::cout << "derogatory: " << to_string(rep.derogatory) << "\n";
    if constexpr (std::is_same_v<D, Fq>) {
        std::cout << "factors:";
        for (const auto& [f, e] : rep.fq_factors) {
            std::cout << " (" << f.to_string() << ")";
            if (e > 1) std::cout << "^" << e;
        }
        std::cout << "\n";
        if (rep.kind == AlgebraKind::FIELD && rep.dim == A.ring->n) {
            bool n_prime = A.ring->n >= 2;
            for (int t = 2; t * t <= A.ring->n; ++t)
                if (A.ring->n % t == 0) n_prime = false;
            if (n_prime && centralizer(A).dim() == rep.dim)
                std::cout << "note: <A> is a full-degree field with no proper intermediate subfield; "
                             "the noncentral elements of C(A) = <A> form a clique component\n";
        }
    } else {
        if (rep.coprime_split)
            std::cout << "split: (" << rep.coprime_split->first.to_string() << ") * ("
                      << rep.coprime_split->second.to_string() << ")\n";
        if (rep.centralizer_dim >= 0) std::cout << "dim C(A): " << rep.centralizer_dim << "\n";
        if (rep.no_proper_subfield_proven)
            std::cout << "note: <A> proven to have no proper intermediate subfield (clique component)\n";
        if (!rep.subfield_generators.empty())
            std::cout << "note: quadratic subfield generator available for the distance-2 hop\n";
    }
    if (rep.witness) {
        std::cout << "witness (" << (is_idempotent(*rep.witness) ? "idempotent" : "nilpotent, index 2")
                  << "): " << rep.witness_origin << "\n"
                  << matrix_to_text(*rep.witness);
    } else {
        std::cout << "witness: none\n";
    }
    return kExitResolved;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " - exact commuting graphs of matrix rings over division rings"};
    app.require_subcommand(1);

    std::string matrix_path, matrix_path_b, ring_spec, report_path, csv_path, experiment_name;
    std::uint64_t seed = 1;
    int arg_n = 0;
    std::string arg_field;
    int samples = 100, pair_samples = 100, draw_budget = 64;
    bool full_mode = false, components_mode = false, no_hop = false;

    auto* analyze = app.add_subcommand("analyze", "classify <A> and extract an E u N witness");
    analyze->add_option("--matrix", matrix_path, "matrix file ('-' for stdin)")->required();
    analyze->add_option("--ring", ring_spec, "expected ring spec (validated against the file header)");
    analyze->add_option("--seed", seed, "seed for randomized witness search");

    auto* dist = app.add_subcommand("dist", "distance verdict and explicit path between two vertices");
    dist->add_option("a", matrix_path, "matrix file A")->required();
    dist->add_option("b", matrix_path_b, "matrix file B")->required();
    dist->add_option("--seed", seed, "seed");
    dist->add_option("--report", report_path, "write a JSON report");

    auto* endist = app.add_subcommand("en-distance", "distance from A to the idempotents-and-nilpotents set");
    endist->add_option("a", matrix_path, "matrix file A")->required();
    endist->add_option("--seed", seed, "seed");
    endist->add_option("--report", report_path, "write a JSON report");

    auto* conn = app.add_subcommand("connectivity", "decide connectivity of M_n(F_q) via the intermediate-subfield criterion");
    conn->add_option("n", arg_n, "matrix size n >= 3")->required();
    conn->add_option("field", arg_field, "field spec, e.g. gf(2) or gf(3^2)")->required();

    auto* census = app.add_subcommand("census", "exhaustive commuting graph of a tiny M_n(F_q)");
    census->add_option("n", arg_n, "matrix size")->required();
    census->add_option("field", arg_field, "field spec")->required();
    census->add_flag("--full", full_mode, "all-pairs BFS census (default)");
    census->add_flag("--components", components_mode, "components only (larger instances)");
    census->add_option("--csv", csv_path, "write per-component size,diameter CSV");
    census->add_option("--report", report_path, "write a JSON report");

    auto* embed_cmd = app.add_subcommand("embed", "emit the regular-representation image of A");
    embed_cmd->add_option("--matrix", matrix_path, "matrix file")->required();

    auto* exp = app.add_subcommand("experiment", "seeded bulk experiments");
    exp->add_option("name", experiment_name,
                    "one of: en-witness, subfield-hop, diameter-upper, diameter-lower, embedding-correspondence, oracle-agreement, quat-observation")
        ->required();
    exp->add_option("--ring", ring_spec, "ring spec, e.g. 'M(3, gf(2))' or 'M(2, quat(-1,-1))'")->required();
    exp->add_option("--samples", samples, "sample count");
    exp->add_option("--pairs", pair_samples, "pair count (observation experiment)");
    exp->add_option("--seed", seed, "seed");
    exp->add_option("--draw-budget", draw_budget, "idempotent search draw budget");
    exp->add_flag("--no-subfield-hop", no_hop, "disable the subfield hop strategy");
    exp->add_option("--report", report_path, "write the JSON report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analyze) {
            auto M = parse_matrix_text(read_file(matrix_path));
            if (!ring_spec.empty()) {
                auto expect = parse_ring_spec(ring_spec);
                if (!expect) throw std::invalid_argument("unknown ring spec '" + ring_spec + "'");
                if (*expect != ring_of(M))
                    throw std::invalid_argument("matrix file ring does not match --ring");
            }
            return std::visit([&](const auto& A) { return run_analyze(A, seed); }, M);
        }

        if (*dist) {
            auto MA = parse_matrix_text(read_file(matrix_path));
            auto MB = parse_matrix_text(read_file(matrix_path_b));
            if (ring_of(MA) != ring_of(MB)) throw std::invalid_argument("matrices live in different rings");
            if (std::holds_alternative<DMatrix<Fq>>(MA))
                return run_dist(std::get<DMatrix<Fq>>(MA), std::get<DMatrix<Fq>>(MB), seed, report_path);
            return run_dist(std::get<DMatrix<Quat>>(MA), std::get<DMatrix<Quat>>(MB), seed, report_path);
        }

        if (*endist) {
            auto MA = parse_matrix_text(read_file(matrix_path));
            return std::visit([&](const auto& A) { return run_en_distance(A, seed, report_path); }, MA);
        }

        if (*conn) {
            auto fs = parse_field_spec(arg_field);
            if (!fs || fs->rationals) throw std::invalid_argument("connectivity needs a finite field spec");
            auto v = decide_connectivity_fq(arg_n, fs->fq);
            switch (v.status) {
                case ConnectivityVerdict::Status::Connected:
                    std::cout << "connected\n" << v.reason << "\n";
                    return kExitResolved;
                case ConnectivityVerdict::Status::Disconnected:
                    std::cout << "disconnected\n" << v.reason << "\n";
                    return kExitResolved;
                default:
                    std::cout << "rejected\n" << v.reason << "\n";
                    return kExitUsage;
            }
        }

        if (*census) {
            auto fs = parse_field_spec(arg_field);
            if (!fs || fs->rationals) throw std::invalid_argument("census needs a finite field spec");
            const RingContext* ring = RingContext::get(arg_n, fs->fq);
            const bool full = !components_mode;
            auto c = build_census(ring, full);
            std::cout << "ring: " << ring->spec_string() << "\n"
                      << "matrices: " << c.total_matrices << "\n"
                      << "vertices (noncentral): " << c.vertex_count << "\n"
                      << "components: " << c.components.size() << "\n"
                      << (c.connected ? "connected\n" : "disconnected\n");
            nlohmann::json jcomps = nlohmann::json::array();
            for (const auto& comp : c.components) {
                std::cout << "  component: size " << comp.size;
                if (comp.diameter) std::cout << ", diameter " << *comp.diameter;
                if (comp.is_clique && *comp.is_clique) std::cout << ", clique";
                std::cout << ", representative index " << comp.representative << "\n";
                nlohmann::json jc{{"size", comp.size}, {"representative", comp.representative}};
                if (comp.diameter) jc["diameter"] = *comp.diameter;
                if (comp.is_clique) jc["is_clique"] = *comp.is_clique;
                if (full) {
                    nlohmann::json h = nlohmann::json::object();
                    for (auto& [d, cnt] : comp.distance_histogram) h[std::to_string(d)] = cnt;
                    jc["distance_histogram"] = h;
                }
                jcomps.push_back(jc);
            }
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw std::invalid_argument("cannot write CSV '" + csv_path + "'");
                csv << "size,diameter\n";
                for (const auto& comp : c.components)
                    csv << comp.size << "," << (comp.diameter ? std::to_string(*comp.diameter) : "") << "\n";
            }
            write_report(report_path, nlohmann::json{{"tool", kToolName}, {"version", kToolVersion},
                                                     {"ring", ring->spec_string()}, {"mode", full ? "full" : "components"},
                                                     {"vertices", c.vertex_count}, {"connected", c.connected},
                                                     {"components", jcomps}});
            return kExitResolved;
        }

        if (*embed_cmd) {
            auto M = parse_matrix_text(read_file(matrix_path));
            if (std::holds_alternative<DMatrix<Fq>>(M)) {
                // k = 1: the embedding is the identity, re-emitted in the
                // matrix file format
                std::cout << matrix_to_text(std::get<DMatrix<Fq>>(M));
                return kExitResolved;
            }
            const auto& A = std::get<DMatrix<Quat>>(M);
            auto e = embed(A);
            std::cout << "embedded: " << e.image.rows() << "x" << e.image.cols() << " over q\n";
            for (Eigen::Index i = 0; i < e.image.rows(); ++i) {
                for (Eigen::Index j = 0; j < e.image.cols(); ++j) {
                    if (j) std::cout << " ";
                    std::cout << to_string(e.image(i, j));
                }
                std::cout << "\n";
            }
            return kExitResolved;
        }

        if (*exp) {
            auto ring = parse_ring_spec(ring_spec);
            if (!ring) throw std::invalid_argument("unknown ring spec '" + ring_spec + "'");
            ExperimentConfig cfg;
            cfg.ring = *ring;
            cfg.samples = samples;
            cfg.pair_samples = pair_samples;
            cfg.seed = seed;
            cfg.idempotent_draw_budget = draw_budget;
            cfg.subfield_hop_enabled = !no_hop;
            auto j = run_experiment(experiment_name, cfg);
            std::cout << j.dump(2) << "\n";
            write_report(report_path, j);
            return j.value("ok", false) ? kExitResolved : kExitUnresolved;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

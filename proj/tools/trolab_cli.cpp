// trolab: numerical laboratory for orthogonality preservers between
// finite-dimensional C*-algebras. JSON in, JSON report out.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trolab/funcalc.hpp"
#include "trolab/json_io.hpp"
#include "trolab/preservers.hpp"
#include "trolab/tolerances.hpp"

using namespace trolab;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    std::uint64_t seed = 1;
    int trials = 200;
    int restarts = 12;
    std::string out_path;
};

json config_json(const RunConfig& cfg) {
    return json{{"seed", cfg.seed},
                {"trials", cfg.trials},
                {"restarts", cfg.restarts},
                {"tolerances",
                 {{"eps_abs", tolerances().eps_abs},
                  {"eps_rel", tolerances().eps_rel},
                  {"rank_tol", tolerances().rank_tol},
                  {"span_tol", tolerances().span_tol}}}};
}

// FNV-1a over the raw input bytes, for replayable report provenance.
std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const json& report, const RunConfig& cfg, int code) {
    if (cfg.out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) {
            std::cerr << "cannot write: " << cfg.out_path << "\n";
            return 1;
        }
        out << report.dump(2) << "\n";
    }
    return code;
}

json make_report(const std::string& command, const std::string& input_bytes,
                 const RunConfig& cfg, json results) {
    return json{{"command", command},
                {"inputs_digest", digest(input_bytes)},
                {"config", config_json(cfg)},
                {"results", std::move(results)},
                {"version", kVersion}};
}

json verdicts_json(const ClassificationReport& rep) {
    json v = json::object();
    for (const auto& [name, verdict] : rep.verdicts) v[name] = to_string(verdict);
    return v;
}

json factorization_json(const Factorization& f) {
    return json{{"h", to_json(f.h)},
                {"r", to_json(f.r)},
                {"S", to_json(f.s)},
                {"residual", f.residual}};
}

int cmd_classify(const std::string& map_path, bool order_zero, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    ClassificationReport rep = order_zero ? classify_order_zero(t, cfg.trials, cfg.seed)
                                          : classify_cop(t, cfg.trials, cfg.seed);
    json results{{"verdicts", verdicts_json(rep)},
                 {"witnesses", rep.witnesses},
                 {"consistent", rep.consistent}};
    if (rep.factorization) results["factorization"] = factorization_json(*rep.factorization);
    return emit(make_report(order_zero ? "classify --order-zero" : "classify", bytes, cfg,
                            results),
                cfg, rep.consistent ? 0 : 2);
}

int cmd_factorize(const std::string& map_path, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    FactorizeResult fr = factorize(t);
    json results{{"ok", fr.ok()}};
    if (fr.ok()) {
        results["factorization"] = factorization_json(*fr.factorization);
    } else {
        results["failure"] = fr.failure;
        results["identity_violation"] = fr.identity_violation;
        if (fr.witness) results["witness"] = to_json(*fr.witness);
    }
    return emit(make_report("factorize", bytes, cfg, results), cfg, 0);
}

int cmd_decompose(const std::string& map_path, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    TripleHomDecomposition dec = decompose_triple_hom(t);
    json results{{"hom_part", to_json(dec.hom_part)},
                 {"anti_part", to_json(dec.anti_part)}};
    return emit(make_report("decompose", bytes, cfg, results), cfg, 0);
}

int cmd_norms(const std::string& map_path, int n_max, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    json table = json::array();
    std::optional<Element> warm;
    for (int n = 1; n <= n_max; ++n) {
        NormEstimate est = estimate_amplified_norm(t, n, cfg.restarts, cfg.seed, warm);
        table.push_back(json{{"n", n},
                             {"lower_bound", est.lower_bound},
                             {"iterations", est.iterations},
                             {"converged", est.converged}});
        warm = est.witness;
    }
    return emit(make_report("norms", bytes, cfg, json{{"table", table}}), cfg, 0);
}

int cmd_funcalc(const std::string& map_path, const std::string& preset,
                const std::string& tensor_path, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    FactorizeResult fr = factorize(t);
    if (!fr.ok()) {
        std::cerr << "funcalc: factorization failed: " << fr.failure << "\n";
        return 2;
    }
    json results;
    if (!tensor_path.empty()) {
        FiniteTensor tensor;
        json tj = json::parse(slurp(tensor_path));
        for (const json& term : tj.at("terms"))
            tensor.terms.emplace_back(ScalarFunction::from_preset(term.at("f").get<std::string>()),
                                      element_from_json(term.at("a")));
        results["phi"] = to_json(evaluate_phi(*fr.factorization, tensor));
    } else {
        LinearMap ft = op_functional_calculus(*fr.factorization, ScalarFunction::from_preset(preset));
        results["map"] = to_json(ft);
        results["weight_norm"] = ft.apply(Element::unit(t.domain())).operator_norm();
    }
    return emit(make_report("funcalc", bytes, cfg, results), cfg, 0);
}

int cmd_tro_closure(const std::string& map_path, int max_rounds, const RunConfig& cfg) {
    const std::string bytes = slurp(map_path);
    LinearMap t = map_from_json(json::parse(bytes));
    TroClosure cl = tro_closure_of_range(t, max_rounds);
    json basis = json::array();
    for (const Element& e : cl.basis) basis.push_back(to_json(e));
    json results{{"dimension", cl.dim()},
                 {"rounds", cl.rounds},
                 {"stabilized", cl.stabilized},
                 {"basis", basis}};
    return emit(make_report("tro-closure", bytes, cfg, results), cfg, cl.stabilized ? 0 : 2);
}

int cmd_generate(const std::string& kind, const std::vector<int>& blocks,
                 const std::vector<int>& cod_blocks, int multiplicity, int anti_copies,
                 int padding, bool contractive, const RunConfig& cfg) {
    Algebra domain(blocks);
    GeneratedMap g;
    if (kind == "tro_hom") {
        g = make_tro_hom(domain, multiplicity, cfg.seed, padding);
    } else if (kind == "tro_anti_hom") {
        g = make_tro_anti_hom(domain, multiplicity, cfg.seed, padding);
    } else if (kind == "weighted_tro_hom") {
        g = make_weighted_tro_hom(domain, multiplicity, cfg.seed, padding, contractive);
    } else if (kind == "weighted_triple_hom_mixed") {
        g = make_weighted_mixed_triple_hom(domain, multiplicity, std::max(anti_copies, 1),
                                           cfg.seed, contractive);
    } else if (kind == "cp_order_zero") {
        g = make_cp_order_zero(domain, multiplicity, cfg.seed, padding);
    } else if (kind == "random_map") {
        Algebra codomain(cod_blocks.empty() ? blocks : cod_blocks);
        g = make_random_map(domain, codomain, cfg.seed);
    } else {
        std::cerr << "unknown kind: " << kind << "\n";
        return 1;
    }
    if (cfg.out_path.empty()) {
        std::cerr << "generate requires --out\n";
        return 1;
    }
    std::ofstream out(cfg.out_path);
    if (!out) {
        std::cerr << "cannot write: " << cfg.out_path << "\n";
        return 1;
    }
    out << to_json(g.map).dump(2) << "\n";
    json truth{{"kind", kind}, {"expected", g.expected}, {"config", config_json(cfg)}};
    if (g.weight) truth["h"] = to_json(*g.weight);
    if (g.supporting) truth["S"] = to_json(*g.supporting);
    std::ofstream side(cfg.out_path + ".truth.json");
    side << truth.dump(2) << "\n";
    return 0;
}

int cmd_repro_paper(const RunConfig& cfg) {
    json items = json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, json detail) {
        items.push_back(json{{"item", name}, {"pass", pass}, {"detail", std::move(detail)}});
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "\n";
    };

    // (i) orthogonal pair whose amplified-transpose images collide
    {
        auto [x, y] = transpose_counterexample_pair();
        LinearMap theta2 = make_transpose(2);
        Element tx = theta2.amplified_apply(x);
        Element ty = theta2.amplified_apply(y);
        Element prod = tx.adjoint() * ty;
        const double expected[4][4] = {{0, 3, 0, -3}, {0, 0, 0, 0}, {0, 3, 0, -3}, {0, 0, 0, 0}};
        double err = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                err = std::max(err, std::abs(prod.block(0)(i, j) - cplx(expected[i][j])));
        record("orthogonal pair with non-orthogonal transpose images",
               is_orthogonal(x, y) && err <= 1e-12,
               json{{"entrywise_error", err}, {"pair_orthogonal", is_orthogonal(x, y)}});
    }

    // (ii) transpose kills zero TRO products: [S(e11), S(e11), S(e21)] = e12
    {
        Algebra m2({2});
        Element a = Element::matrix_unit(m2, 0, 0, 0);
        Element b = Element::matrix_unit(m2, 0, 1, 0);
        LinearMap theta = make_transpose(2);
        Element img = tro_product(theta.apply(a), theta.apply(a), theta.apply(b));
        Element e12 = Element::matrix_unit(m2, 0, 0, 1);
        const double in_err = tro_product(a, a, b).operator_norm();
        const double out_err = (img - e12).operator_norm();
        record("zero TRO product mapped to e12 by the transpose",
               in_err <= 1e-12 && out_err <= 1e-12,
               json{{"input_product_norm", in_err}, {"output_error", out_err}});
    }

    // (iii) amplified transpose norm table: ||theta(m)_n|| = min(n, m)
    {
        json table = json::array();
        bool ok = true;
        for (int m = 1; m <= 3; ++m) {
            LinearMap theta = make_transpose(m);
            std::optional<Element> warm;
            for (int n = 1; n <= 4; ++n) {
                NormEstimate est =
                    estimate_amplified_norm(theta, n, cfg.restarts, cfg.seed, warm);
                warm = est.witness;
                const double exact = std::min(n, m);
                const bool hit = std::abs(est.lower_bound - exact) <= 1e-3;
                ok = ok && hit;
                table.push_back(json{{"m", m},
                                     {"n", n},
                                     {"estimate", est.lower_bound},
                                     {"exact", exact},
                                     {"hit", hit}});
            }
        }
        record("transpose amplification norm table min(n, m)", ok, table);
    }

    return emit(make_report("repro-paper", "", cfg, json{{"items", items}, {"all_pass", all_pass}}),
                cfg, all_pass ? 0 : 2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for orthogonality preservers on matrix algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--trials", cfg.trials, "sampling trials")->check(CLI::PositiveNumber);
    app.add_option("--restarts", cfg.restarts, "norm-estimation restarts")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-rel", tolerances().eps_rel, "relative tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-abs", tolerances().eps_abs, "absolute tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--rank-tol", tolerances().rank_tol, "singular value cutoff")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_path, "report output path");

    std::string map_path, preset = "identity", tensor_path, kind;
    std::vector<int> blocks{2}, cod_blocks;
    int n_max = 4, max_rounds = 10, multiplicity = 2, anti_copies = 0, padding = 0;
    bool order_zero = false, contractive = false;

    CLI::App* classify = app.add_subcommand("classify", "classification report")->fallthrough();
    classify->add_option("--map", map_path)->required();
    classify->add_flag("--order-zero", order_zero, "use the positive-map classification");

    CLI::App* fact = app.add_subcommand("factorize", "weighted TRO factorization")->fallthrough();
    fact->add_option("--map", map_path)->required();

    CLI::App* dec = app.add_subcommand("decompose", "split a triple homomorphism")->fallthrough();
    dec->add_option("--map", map_path)->required();

    CLI::App* norms = app.add_subcommand("norms", "amplified norm lower bounds")->fallthrough();
    norms->add_option("--map", map_path)->required();
    norms->add_option("--n-max", n_max)->check(CLI::PositiveNumber);

    CLI::App* fc = app.add_subcommand("funcalc", "triple functional calculus")->fallthrough();
    fc->add_option("--map", map_path)->required();
    fc->add_option("--f", preset, "scalar function preset");
    fc->add_option("--tensor", tensor_path, "finite tensor JSON to evaluate");

    CLI::App* cl = app.add_subcommand("tro-closure", "TRO generated by the range")->fallthrough();
    cl->add_option("--map", map_path)->required();
    cl->add_option("--max-rounds", max_rounds)->check(CLI::PositiveNumber);

    CLI::App* gen = app.add_subcommand("generate", "ground-truth map fixtures")->fallthrough();
    gen->add_option("--kind", kind)->required();
    gen->add_option("--blocks", blocks, "domain block dimensions");
    gen->add_option("--codomain-blocks", cod_blocks, "codomain blocks (random_map)");
    gen->add_option("--multiplicity", multiplicity)->check(CLI::PositiveNumber);
    gen->add_option("--anti-copies", anti_copies);
    gen->add_option("--padding", padding);
    gen->add_flag("--contractive", contractive);

    CLI::App* repro = app.add_subcommand("repro-paper", "reference example corpus")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(classify)) return cmd_classify(map_path, order_zero, cfg);
        if (app.got_subcommand(fact)) return cmd_factorize(map_path, cfg);
        if (app.got_subcommand(dec)) return cmd_decompose(map_path, cfg);
        if (app.got_subcommand(norms)) return cmd_norms(map_path, n_max, cfg);
        if (app.got_subcommand(fc)) return cmd_funcalc(map_path, preset, tensor_path, cfg);
        if (app.got_subcommand(cl)) return cmd_tro_closure(map_path, max_rounds, cfg);
        if (app.got_subcommand(gen))
            return cmd_generate(kind, blocks, cod_blocks, multiplicity, anti_copies, padding,
                                contractive, cfg);
        if (app.got_subcommand(repro)) return cmd_repro_paper(cfg);
    } catch (const json::exception& e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return 1;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 1;
    } catch (const DecompositionError& e) {
        std::cerr << "decomposition alarm: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

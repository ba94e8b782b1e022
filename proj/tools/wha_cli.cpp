#include "wha/io.hpp"
#include "wha/tower.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace wha;
using io::Json;

namespace {

struct Config {
    double tol = 0.0;
    int budget = kDefaultBudget;
    std::string format = "json";
    std::string out;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json parse(const std::string& text, const std::string& path)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream s;
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return s.str();
}

// Fingerprint of the command line and every input file it read.
struct Inputs {
    std::string material;
    void add(const std::string& label, const std::string& content) { material += label + '\0' + content + '\0'; }
};

void emit(const Config& cfg, const Json& doc)
{
    std::string text;
    if (cfg.format == "text") {
        std::ostringstream s;
        std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& prefix) {
            if (j.is_object() && j.contains("checks") && j.at("checks").is_array()) {
                for (const auto& c : j.at("checks"))
                    s << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << prefix << c.at("name").get<std::string>()
                      << "  residual=" << c.at("residual").dump() << "\n";
            }
            if (j.is_object())
                for (auto it = j.begin(); it != j.end(); ++it) {
                    if (it.key() == "checks") continue;
                    if (it.value().is_object()) {
                        walk(it.value(), prefix + it.key() + ".");
                    } else if (it.value().is_array() && !it.value().empty() && it.value().front().is_object()) {
                        for (size_t i = 0; i < it.value().size(); ++i)
                            walk(it.value()[i], prefix + it.key() + "[" + std::to_string(i) + "].");
                    } else if (!it.value().is_array() || it.value().size() <= 16) {
                        s << prefix << it.key() << " = " << it.value().dump() << "\n";
                    } else {
                        s << prefix << it.key() << " = [" << it.value().size() << " entries]\n";
                    }
                }
        };
        walk(doc, "");
        text = s.str();
    } else {
        text = doc.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw InputError("cannot write " + cfg.out);
        f << text;
    }
}

Json meta(const std::string& command, const Inputs& inputs)
{
    return {{"command", command}, {"tolerance", tolerance()}, {"input_sha256", sha256_hex(inputs.material)}};
}

bool all_ok(const Json& doc)
{
    bool ok = true;
    std::function<void(const Json&)> walk = [&](const Json& j) {
        if (j.is_object()) {
            if (j.contains("ok") && j.at("ok").is_boolean() && !j.at("ok").get<bool>()) ok = false;
            for (const auto& v : j) walk(v);
        } else if (j.is_array()) {
            for (const auto& v : j) walk(v);
        }
    };
    walk(doc);
    return ok;
}

Json load(const std::string& path, Inputs& inputs)
{
    const std::string text = read_file(path);
    inputs.add(path, text);
    return parse(text, path);
}

Json dims_json(const std::vector<int>& v) { return Json(v); }

FiniteGroup named_group(const std::string& choice, Inputs& inputs)
{
    if (choice == "S3") return symmetric_group3();
    if (choice == "Klein" || choice == "Z2xZ2") return klein_group();
    if (choice.size() > 1 && choice[0] == 'Z' && choice.find_first_not_of("0123456789", 1) == std::string::npos)
        return cyclic_group(std::stoi(choice.substr(1)));
    return io::group_from_json(load(choice, inputs));
}

std::vector<int> subgroup_of(const FiniteGroup& g, const std::string& choice)
{
    std::vector<int> h;
    if (choice == "trivial") return {g.identity};
    if (choice == "all") {
        for (int x = 0; x < g.order; ++x) h.push_back(x);
        return h;
    }
    std::stringstream s(choice);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            h.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError("subgroup list must hold element indices: " + choice);
        }
    }
    return h;
}

int cmd_verify(const Config& cfg, const std::string& path)
{
    Inputs inputs;
    const Json doc = load(path, inputs);
    Json out = {{"meta", meta("verify", inputs)}};
    const std::string kind = io::record_kind(doc);
    out["kind"] = kind;
    try {
        if (kind == "star_algebra") {
            const StarAlgebra a = io::star_algebra_from_json(doc);
            Report r;
            r.flag("star_algebra_structure", true);
            r.flag("cstar_certified", a.certified_cstar());
            out["report"] = io::to_json(r);
        } else if (kind == "weak_hopf") {
            const WeakHopf w = io::weak_hopf_from_json(doc);
            out["report"] = io::to_json(verify_weak_hopf(w).checks);
        } else {
            const ModuleAlgebra ma = io::module_from_json(doc);
            Report r = verify_module_axioms(ma);
            r.merge(verify_coaction(ma), "coaction.");
            r.merge(verify_fixed_points(ma), "fixed_points.");
            out["report"] = io::to_json(r);
        }
    } catch (const MathError& e) {
        out["report"] = {{"ok", false}, {"checks", Json::array({{{"name", e.kind()}, {"residual", 1.0}, {"pass", false}}})}};
        out["diagnostic"] = e.what();
    }
    emit(cfg, out);
    return all_ok(out) ? 0 : 1;
}

int cmd_example(const Config& cfg, const std::string& kind, const std::string& group, const std::string& normal,
                const std::string& cocycle, const std::string& seed, bool order2x2, bool dual)
{
    Inputs inputs;
    inputs.add("args", kind + '|' + group + '|' + normal + '|' + cocycle + '|' + seed + '|' + std::to_string(order2x2) +
                           '|' + std::to_string(dual));
    Json record;
    if (kind == "group" || kind == "twisted") {
        FiniteGroup g = order2x2 ? cyclic_group(2) : named_group(group, inputs);
        const std::vector<int> h = order2x2 ? std::vector<int>{0, 1} : subgroup_of(g, normal);
        WeakHopf w = group_weak_hopf(g, h);
        if (kind == "twisted") {
            if (cocycle == "pauli") {
                const PauliData p = pauli_data();
                w = twisted_group_weak_hopf(p.group, p.subgroup, p.cocycle);
            } else {
                if (cocycle.empty()) throw InputError("twisted example needs --cocycle <file|pauli>");
                w = twisted_group_weak_hopf(g, h, io::cocycle_from_json(load(cocycle, inputs)));
            }
        }
        record = io::weak_hopf_json(dual ? w.dual() : w);
    } else if (kind == "action") {
        ModuleAlgebra ma = [&] {
            if (seed == "sign") return diagonal_sign_action();
            if (seed == "collapsed") return collapsed_action();
            if (seed == "dual") {
                FiniteGroup g = named_group(group, inputs);
                return canonical_dual_module(group_weak_hopf(g, subgroup_of(g, normal)));
            }
            throw InputError("unknown action seed '" + seed + "' (sign, collapsed, dual)");
        }();
        record = io::module_json(ma);
    } else {
        throw InputError("unknown example kind '" + kind + "' (group, twisted, action)");
    }
    record["meta"] = meta("example", inputs);
    emit(cfg, record);
    return 0;
}

int cmd_integrals(const Config& cfg, const std::string& path, const std::string& integral)
{
    Inputs inputs;
    const WeakHopf w = io::weak_hopf_from_json(load(path, inputs));
    const AxiomReport ax = verify_weak_hopf(w);
    Json out = {{"meta", meta("integrals", inputs)}, {"axioms", io::to_json(ax.checks)}};
    if (!ax.ok()) {
        emit(cfg, out);
        return 1;
    }
    const Subspace li = left_integral_space(w), ri = right_integral_space(w);
    const HaarData& hd = haar(w);
    Report checks = verify_haar(w);
    checks.merge(verify_modular(w), "modular.");
    out["left_integral_dim"] = li.dim();
    out["right_integral_dim"] = ri.dim();
    out["two_sided_integral_dim"] = li.intersect(ri, tolerance()).dim();
    out["haar"] = io::to_json(hd.h);
    out["dual_haar"] = io::to_json(hd.hhat);
    out["dual_left_integral_of_haar"] = io::to_json(hd.lambda_h);
    out["g_L"] = io::to_json(hd.g_L);
    out["g_R"] = io::to_json(hd.g_R);
    out["g"] = io::to_json(hd.g);
    out["identities"] = io::to_json(checks);
    if (!integral.empty()) {
        const Vec l = io::vector_from(load(integral, inputs), w.dim(), "integral");
        const IntegralClass c = classify(w, l);
        Report r;
        r.flag("is_left_integral", li.contains(l, tolerance()));
        out["classification"] = {{"nondegenerate", c.nondegenerate},
                                 {"positive", c.positive},
                                 {"normalized", c.normalized},
                                 {"gram_positive", c.gram_positive},
                                 {"gram_nondegenerate", c.gram_nondegenerate},
                                 {"report", io::to_json(r)}};
        out["meta"] = meta("integrals", inputs);
    }
    emit(cfg, out);
    return all_ok(out) ? 0 : 1;
}

ModuleAlgebra load_action(const std::string& path, Inputs& inputs)
{
    ModuleAlgebra ma = io::module_from_json(load(path, inputs));
    const Report r = verify_module_axioms(ma);
    if (!r.ok()) throw MathError("ActionAxiomViolation", r.failures().front());
    return ma;
}

int cmd_crossed(const Config& cfg, const std::string& path)
{
    Inputs inputs;
    const ModuleAlgebra ma = load_action(path, inputs);
    const CrossedProduct x(ma);
    const WeakHopf& w = ma.hopf();
    const double tol = tolerance();
    Json out = {{"meta", meta("crossed", inputs)}};
    out["quotient_dim"] = x.dim();
    out["raw_dim"] = x.raw_dim();
    out["relation_rank"] = x.relations().dim();
    out["module_embedding_kernel_dim"] = ma.dim() - numerical_rank(x.embed_module(), tol);
    out["acting_embedding_kernel_dim"] = w.dim() - numerical_rank(x.embed_acting(), tol);
    out["structure"] = io::to_json(verify_crossed_product(x));
    const CommutantData cd = commutant_suite(x);
    out["commutants"] = {{"module_commutant_dim", cd.module_commutant.dim()},
                         {"fixed_commutant_in_module_dim", cd.fixed_in_module.dim()},
                         {"fixed_commutant_in_cross_dim", cd.fixed_in_cross.dim()},
                         {"cross_center_dim", cd.cross_center.dim()},
                         {"report", io::to_json(cd.checks)}};
    const GaloisResult g = galois_test(x);
    out["galois"] = {{"is_galois", g.is_galois}, {"gamma_rank", g.gamma_rank}, {"report", io::to_json(g.checks)}};
    out["jones_relation"] = io::to_json(jones_relation(x, haar(w).h));
    out["temperley_lieb"] = io::to_json(tlj_elements(x, haar(w).h).checks);
    emit(cfg, out);
    return all_ok(out) ? 0 : 1;
}

int cmd_tower(const Config& cfg, const std::string& path, int depth)
{
    Inputs inputs;
    inputs.add("depth", std::to_string(depth));
    const ModuleAlgebra ma = load_action(path, inputs);
    const Tower t = build_tower(ma, depth, cfg.budget);
    Json out = {{"meta", meta("tower", inputs)}};
    out["dims"] = dims_json(t.dims());
    out["jones_relations"] = io::to_json(tower_jones_relations(t));
    Json levels = Json::array();
    for (int i = 0; i < t.depth(); ++i) levels.push_back(io::to_json(basic_construction_check(t, i)));
    out["basic_construction"] = levels;
    const CommutantTable ct = commutant_table(t);
    out["commutant_table"] = {{"derived_dims", dims_json(ct.derived_dims)},
                              {"expected_derived_dims", dims_json(ct.expected_derived_dims)},
                              {"regular", ct.regular},
                              {"report", io::to_json(ct.checks)}};
    out["center_table"] = {{"center_dims", dims_json(ct.center_dims)},
                           {"adjacent_center_intersection_dims", dims_json(ct.global_fixed_dims)}};
    const DepthTwo d2 = depth2_check(t);
    out["depth2"] = {{"holds", d2.holds}, {"report", io::to_json(d2.checks)}};
    emit(cfg, out);
    return all_ok(out) ? 0 : 1;
}

int cmd_report(const Config& cfg, const std::string& path)
{
    Inputs inputs;
    const Json doc = load(path, inputs);
    Config text = cfg;
    text.format = cfg.format == "json" ? "text" : cfg.format;
    emit(text, doc);
    return all_ok(doc) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verification and computation engine for finite-dimensional weak C*-Hopf algebras"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--tol", cfg.tol, "numerical tolerance (default 1e-9 or WHA_TOL)")->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "largest raw dimension a tower level may use")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out, "write output to this file instead of stdout");

    std::string path, integral, kind, group = "Z2", normal = "trivial", cocycle, seed = "sign";
    int depth = 1;
    bool order2x2 = false, dual = false;

    auto* verify = app.add_subcommand("verify", "verify a star algebra, weak Hopf algebra or module algebra record");
    verify->add_option("path", path, "JSON record")->required();

    auto* example = app.add_subcommand("example", "emit a generated record");
    example->add_option("kind", kind, "group | twisted | action")->required();
    example->add_option("--group", group, "Z<n>, S3, Klein or a group JSON file");
    example->add_option("--normal", normal, "normal subgroup: trivial, all, or element indices a,b,...");
    example->add_option("--cocycle", cocycle, "cocycle JSON file, or 'pauli'");
    example->add_option("--seed", seed, "action seed: sign, collapsed, dual");
    example->add_flag("--order2x2", order2x2, "shorthand for the pair (Z2, Z2)");
    example->add_flag("--dual", dual, "emit the dual weak Hopf algebra instead");

    auto* integrals = app.add_subcommand("integrals", "integral spaces, Haar data and modular elements");
    integrals->add_option("path", path, "weak Hopf algebra record")->required();
    integrals->add_option("--integral", integral, "JSON array with a left integral to classify");

    auto* crossed = app.add_subcommand("crossed", "crossed product of a module algebra");
    crossed->add_option("path", path, "module algebra record")->required();

    auto* tower = app.add_subcommand("tower", "Jones tower of alternating crossed products");
    tower->add_option("--seed", path, "module algebra record")->required();
    tower->add_option("--depth", depth, "number of crossed-product steps")->check(CLI::NonNegativeNumber);
    tower->add_option("--report", cfg.out, "same as --out");

    auto* report = app.add_subcommand("report", "render a JSON report as text");
    report->add_option("path", path, "report produced by another command")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cfg.tol > 0.0) set_tolerance(cfg.tol);
        if (*verify) return cmd_verify(cfg, path);
        if (*example) return cmd_example(cfg, kind, group, normal, cocycle, seed, order2x2, dual);
        if (*integrals) return cmd_integrals(cfg, path, integral);
        if (*crossed) return cmd_crossed(cfg, path);
        if (*tower) return cmd_tower(cfg, path, depth);
        if (*report) return cmd_report(cfg, path);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "mathematical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

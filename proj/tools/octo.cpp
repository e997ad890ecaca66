#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "octo/census.hpp"
#include "octo/json_io.hpp"

namespace {

using namespace octo;

struct GlobalConfig {
    std::string field = "7^1";
    int max_degree = kDefaultMaxDegree;
    int workers = 0;
    std::string format = "json";
    std::uint64_t cap = 6561;

    FieldContext context() const {
        FieldContext ctx;
        if (field == "complex") {
            ctx.complex_backend = true;
            return ctx;
        }
        auto caret = field.find('^');
        std::string ps = caret == std::string::npos ? field : field.substr(0, caret);
        std::string ms = caret == std::string::npos ? "1" : field.substr(caret + 1);
        try {
            ctx.p = std::stoll(ps);
            ctx.m = std::stoi(ms);
        } catch (const std::exception&) {
            throw ParseError("--field expects p^m or 'complex', got " + field);
        }
        (void)tower_level(ctx.p, ctx.m);
        return ctx;
    }

    SolveOptions solve_options() const {
        SolveOptions opt;
        opt.max_degree = max_degree;
        return opt;
    }

    CensusOptions census_options() const {
        CensusOptions opt;
        opt.cap = cap;
        opt.workers = workers;
        opt.solve = solve_options();
        return opt;
    }
};

Json read_json_input(const std::string& inline_json, const std::string& file) {
    std::string text;
    if (!inline_json.empty()) {
        text = inline_json;
    } else if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ParseError("cannot open " + file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
}

// Expression trees for `eval`: an octonion literal, or an operator node.
struct EvalValue {
    bool scalar = false;
    Octonion oct;
    FieldElement fe;
};

EvalValue eval_expr(const Json& j, const FieldContext& ctx) {
    if (!j.is_object()) throw ParseError("expression must be a JSON object");
    if (!j.contains("op")) return {false, octonion_from_json(j, ctx), FieldElement()};
    std::string op = j.at("op").get<std::string>();
    auto arg = [&](const char* key) { return eval_expr(j.at(key), ctx); };
    auto need_oct = [&](EvalValue v) {
        if (v.scalar) throw ParseError("operator '" + op + "' needs an octonion argument");
        return v.oct;
    };
    if (op == "unit") return {false, Octonion::unit(ctx.from_int(1)), FieldElement()};
    if (op == "zero") return {false, Octonion::zero(ctx.from_int(0)), FieldElement()};
    if (op == "mul" || op == "add" || op == "sub") {
        const Json& args = j.at("args");
        if (!args.is_array() || args.size() < 2)
            throw ParseError("operator '" + op + "' needs an args array");
        Octonion acc = need_oct(eval_expr(args[0], ctx));
        for (size_t i = 1; i < args.size(); ++i) {
            Octonion rhs = need_oct(eval_expr(args[i], ctx));
            acc = op == "mul" ? acc * rhs : (op == "add" ? acc + rhs : acc - rhs);
        }
        return {false, acc, FieldElement()};
    }
    if (op == "conj") return {false, need_oct(arg("arg")).conj(), FieldElement()};
    if (op == "neg") return {false, -need_oct(arg("arg")), FieldElement()};
    if (op == "inverse") return {false, need_oct(arg("arg")).inverse(), FieldElement()};
    if (op == "pow") {
        std::int64_t e = j.at("exp").get<std::int64_t>();
        return {false, need_oct(arg("arg")).pow_ch(e), FieldElement()};
    }
    if (op == "norm") return {true, Octonion(), need_oct(arg("arg")).norm()};
    if (op == "trace") return {true, Octonion(), need_oct(arg("arg")).trace()};
    throw ParseError("unknown operator '" + op + "'");
}

int cmd_eval(const GlobalConfig& cfg, const std::string& expr, const std::string& file) {
    FieldContext ctx = cfg.context();
    EvalValue v = eval_expr(read_json_input(expr, file), ctx);
    Json out = v.scalar ? Json{{"scalar", field_to_json(v.fe)}}
                        : Json{{"octonion", octonion_to_json(v.oct)}};
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_solve(const GlobalConfig& cfg, const std::string& inst_json, const std::string& file) {
    FieldContext ctx = cfg.context();
    ProblemInstance inst = instance_from_json(read_json_input(inst_json, file), ctx);
    SolveResult res = solve(inst, cfg.solve_options());
    if (std::holds_alternative<SolveCertificate>(res)) {
        std::cout << certificate_to_json(std::get<SolveCertificate>(res)).dump() << "\n";
        return 0;
    }
    std::cout << witness_to_json(std::get<ObstructionWitness>(res)).dump() << "\n";
    return 2;
}

int cmd_classify(const GlobalConfig& cfg, const std::string& pair_json,
                 const std::string& file) {
    FieldContext ctx = cfg.context();
    Json j = read_json_input(pair_json, file);
    Octonion A1, A2;
    if (j.contains("family")) {
        auto [B1, B2] = rep_from_json(j, ctx).realize();
        A1 = B1;
        A2 = B2;
    } else {
        if (!j.contains("A1") || !j.contains("A2"))
            throw ParseError("pair needs A1 and A2 (or a family)");
        A1 = octonion_from_json(j.at("A1"), ctx);
        A2 = octonion_from_json(j.at("A2"), ctx);
    }
    Verdict v = classify(A1, A2);
    std::cout << verdict_to_json(v).dump() << "\n";
    return 0;
}

std::pair<std::int64_t, int> parse_q(std::uint64_t q) {
    if (q < 2) throw ParseError("--q must be a prime power >= 2");
    for (std::int64_t p = 2; static_cast<std::uint64_t>(p) * p <= q; ++p) {
        if (q % p == 0) {
            int m = 0;
            std::uint64_t r = q;
            while (r % p == 0) {
                r /= p;
                ++m;
            }
            if (r != 1) throw ParseError("--q must be a prime power");
            return {p, m};
        }
    }
    return {static_cast<std::int64_t>(q), 1};
}

void print_census(const GlobalConfig& cfg, const CensusReport& rep) {
    if (cfg.format == "table")
        std::cout << census_to_table(rep);
    else
        std::cout << census_to_json(rep).dump() << "\n";
}

int cmd_census(const GlobalConfig& cfg, int family, const std::string& values_csv,
               const std::string& pair_json, const std::string& file, std::uint64_t q,
               std::int64_t k1, std::int64_t k2, bool all_families, bool sweep) {
    auto [p, m] = parse_q(q);
    CensusOptions opt = cfg.census_options();
    FieldContext ctx;
    ctx.p = p;
    ctx.m = m;

    if (sweep) {
        auto rows = census_nonsurjective_families(p, m, k1, k2, opt);
        if (cfg.format == "table") {
            std::cout << "family  params      image/total     proper  mask_ok\n";
            for (const auto& r : rows) {
                std::ostringstream os;
                os << r.image_size << "/" << r.total;
                std::printf("%-7d %-11s %-15s %-7s %s\n", r.family, r.params.c_str(),
                            os.str().c_str(), r.proper_subset ? "yes" : "NO",
                            r.mask_respected ? "yes" : "NO");
            }
        } else {
            Json out = Json::array();
            for (const auto& r : rows)
                out.push_back(Json{{"family", r.family},
                                   {"params", r.params},
                                   {"image_size", r.image_size},
                                   {"total", r.total},
                                   {"proper_subset", r.proper_subset},
                                   {"mask_respected", r.mask_respected}});
            std::cout << out.dump() << "\n";
        }
        return 0;
    }

    auto family_values = [&](int fam) {
        std::vector<FieldElement> vals;
        auto nz = nonsurjective_family_param_nonzero(fam);
        if (!values_csv.empty()) {
            std::stringstream ss(values_csv);
            std::string tok;
            while (std::getline(ss, tok, ','))
                vals.push_back(FieldElement::finite(p, m, {std::stoll(tok)}));
            if (vals.size() != nz.size())
                throw ParseError("family " + std::to_string(fam) + " takes " +
                                 std::to_string(nz.size()) + " parameter values");
        } else {
            for (bool need_nz : nz) vals.push_back(ctx.from_int(need_nz ? 1 : 0));
        }
        return vals;
    };

    if (all_families) {
        for (int fam = 1; fam <= 8; ++fam) {
            auto [A1, A2] = nonsurjective_family_pair(fam, family_values(fam), p, m);
            CensusReport rep = image_census(A1, A2, k1, k2, p, m, opt);
            if (cfg.format == "table") std::cout << "family " << fam << ":\n";
            print_census(cfg, rep);
        }
        return 0;
    }

    Octonion A1, A2;
    if (family > 0) {
        auto [B1, B2] = nonsurjective_family_pair(family, family_values(family), p, m);
        A1 = B1;
        A2 = B2;
    } else {
        Json j = read_json_input(pair_json, file);
        if (j.contains("family")) {
            auto [B1, B2] = rep_from_json(j, ctx).realize();
            A1 = B1;
            A2 = B2;
        } else {
            A1 = octonion_from_json(j.at("A1"), ctx);
            A2 = octonion_from_json(j.at("A2"), ctx);
        }
    }
    print_census(cfg, image_census(A1, A2, k1, k2, p, m, opt));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"split-octonion two-term power sums: solve, classify, census"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    app.add_option("--field", cfg.field, "ambient field, p^m or 'complex'")
        ->envname("OCTO_FIELD");
    app.add_option("--max-degree", cfg.max_degree, "tower extension degree bound")
        ->envname("OCTO_MAX_DEGREE");
    app.add_option("--workers", cfg.workers, "census worker threads (0 = auto)")
        ->envname("OCTO_WORKERS");
    app.add_option("--format", cfg.format, "output format: json or table")
        ->envname("OCTO_FORMAT")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--cap", cfg.cap, "enumeration cap on q^8 for censuses")
        ->envname("OCTO_CAP");

    std::string expr, expr_file;
    auto* eval = app.add_subcommand("eval", "evaluate an octonion expression tree");
    eval->add_option("--expr", expr, "inline JSON expression");
    eval->add_option("--expr-file", expr_file, "file with a JSON expression");

    std::string inst, inst_file;
    auto* solve_cmd = app.add_subcommand("solve", "solve A = A1 X^k1 + A2 Y^k2");
    solve_cmd->add_option("--instance", inst, "inline JSON instance");
    solve_cmd->add_option("--instance-file", inst_file, "file with a JSON instance");

    std::string pair, pair_file;
    auto* cls = app.add_subcommand("classify", "surjectivity verdict for a representative pair");
    cls->add_option("--pair", pair, "inline JSON pair");
    cls->add_option("--pair-file", pair_file, "file with a JSON pair");

    int family = 0;
    std::string values_csv, cpair, cpair_file;
    std::uint64_t q = 2;
    std::int64_t k1 = 2, k2 = 2;
    bool all_families = false, sweep = false;
    auto* cen = app.add_subcommand("census", "exhaustive image census over a small field");
    for (auto* sub : {eval, solve_cmd, cls, cen}) sub->fallthrough();
    cen->add_option("--family", family, "non-surjective family index 1-8");
    cen->add_option("--values", values_csv, "family parameter values, comma separated");
    cen->add_option("--pair", cpair, "inline JSON pair");
    cen->add_option("--pair-file", cpair_file, "file with a JSON pair");
    cen->add_option("--q", q, "field size (prime power)");
    cen->add_option("--k1", k1, "first exponent");
    cen->add_option("--k2", k2, "second exponent");
    cen->add_flag("--all-families", all_families, "census all eight families once");
    cen->add_flag("--sweep", sweep, "sweep every parameter choice of every family");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(cfg, expr, expr_file);
        if (solve_cmd->parsed()) return cmd_solve(cfg, inst, inst_file);
        if (cls->parsed()) return cmd_classify(cfg, pair, pair_file);
        if (cen->parsed())
            return cmd_census(cfg, family, values_csv, cpair, cpair_file, q, k1, k2,
                              all_families, sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lorext/io.hpp"
#include "lorext/verify.hpp"

namespace {

using lorext::json;

struct CommonIn {
    std::string space_path, weight_path, sample_path, symbol_path;
    std::string out_path, format = "json";
    double p = 2.0, s = 2.0, q = 0.0, r = 0.0, theta = 1.0, alpha = 0.25;
    int m = 0;
    unsigned long long seed = 0;
    int threads = 0;
    std::string eps_grid_csv;
};

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

void emit(const CommonIn& in, const json& j, const std::string& csv_fallback = "") {
    std::string text;
    if (in.format == "csv" && !csv_fallback.empty()) {
        text = csv_fallback;
    } else {
        text = j.dump(2) + "\n";
    }
    if (in.out_path.empty()) {
        std::cout << text;
    } else {
        lorext::write_text_file(in.out_path, text);
    }
}

std::string values_csv(const std::vector<double>& v) {
    std::string text = "index,value\n";
    for (size_t i = 0; i < v.size(); ++i) {
        text += std::to_string(i) + "," + lorext::format_float(v[i]) + "\n";
    }
    return text;
}

lorext::SpacePtr load_space(const CommonIn& in) {
    if (in.space_path.empty()) throw lorext::InputError("--space is required");
    return lorext::space_from_json(lorext::load_json_file(in.space_path));
}

lorext::Weight load_weight(const CommonIn& in, const lorext::SpacePtr& sp) {
    if (in.weight_path.empty()) return lorext::Weight::uniform(sp);
    return lorext::weight_from_json(lorext::load_json_file(in.weight_path), sp);
}

lorext::Sample load_sample(const CommonIn& in, const lorext::SpacePtr& sp) {
    if (in.sample_path.empty()) throw lorext::InputError("--sample is required");
    return lorext::sample_from_json(lorext::load_json_file(in.sample_path), sp);
}

void add_common(CLI::App* cmd, CommonIn& in) {
    cmd->add_option("--space", in.space_path, "space JSON file");
    cmd->add_option("--weight", in.weight_path, "weight JSON array file");
    cmd->add_option("--sample", in.sample_path, "sample JSON array file");
    cmd->add_option("--symbol", in.symbol_path, "BMO symbol JSON array file");
    cmd->add_option("--p", in.p, "first exponent");
    cmd->add_option("--s", in.s, "second exponent (inf allowed)");
    cmd->add_option("--q", in.q, "off-diagonal first exponent");
    cmd->add_option("--r", in.r, "off-diagonal second exponent");
    cmd->add_option("--theta", in.theta, "grand exponent");
    cmd->add_option("--alpha", in.alpha, "fractional order");
    cmd->add_option("--m", in.m, "commutator order / iteration count");
    cmd->add_option("--eps-grid", in.eps_grid_csv, "comma-separated eps grid override");
    cmd->add_option("--seed", in.seed, "random seed");
    cmd->add_option("--threads", in.threads, "thread count (0 = LOREXT_THREADS or hardware)");
    cmd->add_option("--out", in.out_path, "output file (stdout when absent)");
    cmd->add_option("--format", in.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

int run_norm(const CommonIn& in, const std::string& kind) {
    auto sp = load_space(in);
    auto w = load_weight(in, sp);
    auto f = load_sample(in, sp);
    std::vector<double> grid = parse_grid(in.eps_grid_csv);
    json out;
    out["norm_kind"] = kind;
    out["params"] = json{{"p", in.p}, {"s", in.s}, {"theta", in.theta}};
    double value = 0.0;
    double witness_eps = 0.0;
    if (kind == "lorentz") {
        value = lorext::lorentz_norm_rearr(f, w, in.p, in.s);
    } else if (kind == "lorentz-dist") {
        value = lorext::lorentz_norm_dist(f, w, in.p, in.s);
    } else if (kind == "banach") {
        value = lorext::banach_norm(f, w, in.p, in.s);
    } else if (kind == "lebesgue") {
        value = lorext::lebesgue_norm(f, w, in.p);
    } else if (kind == "iwaniec-sbordone") {
        auto g = lorext::iwaniec_sbordone_norm(f, w, in.p, in.theta, grid);
        value = g.value;
        witness_eps = g.witness_eps;
    } else if (kind == "grand") {
        auto g = lorext::grand_lorentz_norm(f, w, in.p, in.s, in.theta, grid);
        value = g.value;
        witness_eps = g.witness_eps;
    } else if (kind == "double-grand") {
        auto g = lorext::double_grand_lorentz_norm(f, w, in.p, in.s, in.theta, grid);
        value = g.value;
        witness_eps = g.witness_eps;
        out["witness_eps2"] = g.witness_eps2;
    } else {
        throw lorext::InputError("unknown norm kind: " + kind);
    }
    out["value"] = value;
    out["witness_eps"] = witness_eps;
    emit(in, out, "quantity,value\n" + kind + "," + lorext::format_float(value) + "\n");
    return 0;
}

int run_rearrange(const CommonIn& in) {
    auto sp = load_space(in);
    auto w = load_weight(in, sp);
    auto f = load_sample(in, sp);
    const lorext::StepFunction r = lorext::rearrangement(f, w);
    json out;
    out["knots"] = r.knots();
    out["levels"] = r.levels();
    out["domain_end"] = r.domain_end();
    std::string csv = "knot,level\n";
    for (size_t i = 0; i < r.levels().size(); ++i) {
        csv += lorext::format_float(r.knots()[i]) + "," + lorext::format_float(r.levels()[i]) + "\n";
    }
    emit(in, out, csv);
    return 0;
}

int run_weight_const(const CommonIn& in, const std::string& kind) {
    auto sp = load_space(in);
    auto w = load_weight(in, sp);
    json out;
    out["kind"] = kind;
    out["p"] = in.p;
    out["q"] = in.q;
    double value = 0.0;
    json witness;
    if (kind == "ap") {
        auto c = lorext::ap_characteristic(w, in.p);
        value = c.value;
        witness = json{{"center", c.witness.center}, {"radius", c.witness.radius},
                       {"members", c.witness.members}};
    } else if (kind == "a1") {
        value = lorext::a1_characteristic(w);
    } else if (kind == "ainf") {
        auto c = lorext::ainf_characteristics(w);
        value = c.exponential;
        out["fujii_wilson"] = c.fujii_wilson;
    } else if (kind == "apq") {
        auto c = lorext::apq_characteristic(w, in.p, in.q);
        value = c.value;
        witness = json{{"center", c.witness.center}, {"radius", c.witness.radius},
                       {"members", c.witness.members}};
    } else if (kind == "aps") {
        auto c = lorext::aps_constant(w, in.p, in.s);
        value = c.value;
        witness = json{{"center", c.witness.center}, {"radius", c.witness.radius},
                       {"members", c.witness.members}};
    } else if (kind == "eps0") {
        const auto sc = lorext::structural_constants(*sp, lorext::CbarMode::Auto);
        value = lorext::openness_eps0(w, in.p, sc.tau);
    } else {
        throw lorext::InputError("unknown characteristic kind: " + kind);
    }
    out["value"] = value;
    out["witness_ball"] = witness;
    emit(in, out, "quantity,value\n" + kind + "," + lorext::format_float(value) + "\n");
    return 0;
}

int run_operator(const CommonIn& in, const std::string& name) {
    auto sp = load_space(in);
    auto f = load_sample(in, sp);
    std::optional<lorext::Sample> b;
    if (!in.symbol_path.empty()) {
        b = lorext::sample_from_json(lorext::load_json_file(in.symbol_path), sp);
    }
    if (name == "bmo") {
        json out;
        out["operator"] = "bmo";
        out["value"] = lorext::bmo_norm(f);
        emit(in, out, "quantity,value\nbmo," + lorext::format_float(lorext::bmo_norm(f)) + "\n");
        return 0;
    }
    const lorext::PointOperator op =
        lorext::make_operator(name, sp, in.alpha, in.m, b ? &*b : nullptr);
    const lorext::Sample g = op.apply(f);
    json out;
    out["operator"] = name;
    out["values"] = g.values;
    emit(in, out, values_csv(g.values));
    return 0;
}

int run_extrapolate(const CommonIn& in, const std::string& formula, double p0, double q0,
                    double char_in, double cbar_in, const std::string& rate) {
    const lorext::RateFunction N = rate == "identity" ? lorext::RateFunction::identity()
                                                      : lorext::RateFunction::power(std::stod(rate));
    json out;
    out["formula"] = formula;
    json inputs{{"p", in.p},   {"q", in.q},   {"p0", p0},        {"q0", q0},
                {"s", in.s},   {"theta", in.theta}, {"alpha", in.alpha}, {"characteristic", char_in},
                {"c_bar", cbar_in}, {"rate", rate}};
    out["inputs"] = inputs;
    double value = 0.0;
    std::string branch;
    double slack = 1.0;
    if (formula == "gamma") {
        value = lorext::gamma_exponent(p0, q0);
    } else if (formula == "kdiag") {
        auto k = lorext::k_diag(char_in, in.p, p0, N, cbar_in);
        value = k.value;
        branch = k.branch;
    } else if (formula == "koffdiag") {
        auto k = lorext::k_offdiag(char_in, in.p, in.q, p0, q0, N, cbar_in);
        value = k.value;
        branch = k.branch;
        auto k2 = lorext::k_offdiag(char_in, in.p, in.q, p0, q0, N, cbar_in,
                                    lorext::OffdiagForm::Remark);
        out["remark_form_value"] = k2.value;
        out["gamma"] = k.gamma;
    } else if (formula == "marcinkiewicz" || formula == "dual-marcinkiewicz" ||
               formula == "k1") {
        auto sp = load_space(in);
        auto w = load_weight(in, sp);
        const auto sc = lorext::structural_constants(*sp, lorext::CbarMode::Auto);
        if (formula == "marcinkiewicz") {
            auto mb = lorext::maximal_lorentz_bound(w, in.p, sc.tau);
            value = mb.value;
            out["eps0"] = mb.eps0;
            slack = mb.slack;
        } else if (formula == "dual-marcinkiewicz") {
            auto mb = lorext::dual_maximal_lorentz_bound(w, in.p, sc.tau);
            value = mb.value;
            out["eps0"] = mb.eps0;
            slack = mb.slack;
        } else {
            auto k = lorext::k1_lorentz(w, in.p, in.s, q0, p0, N, sc.tau, sc.c_bar);
            value = k.value;
            branch = k.branch;
            out["printed_value"] = k.printed_value;
            out["grand_sup"] = k.grand_sup;
            out["tilde_m_bound"] = k.tilde_m_bound;
        }
    } else if (formula == "phi-psi") {
        auto pp = lorext::phi_psi(in.alpha, in.p, in.q, in.theta, char_in);
        out["phi"] = pp.phi;
        value = pp.psi;
    } else if (formula == "eta") {
        value = lorext::eta_from_epsilon(in.alpha, in.p, in.q, char_in);
    } else {
        throw lorext::InputError("unknown formula: " + formula);
    }
    out["branch"] = branch;
    out["value"] = value;
    out["slack"] = slack;
    emit(in, out, "quantity,value\n" + formula + "," + lorext::format_float(value) + "\n");
    return 0;
}

int run_verify(const CommonIn& in, const std::string& scenario_path, bool as_sweep) {
    json sc = lorext::load_json_file(scenario_path);
    lorext::ScenarioConfig cfg = lorext::scenario_from_json(sc);
    if (in.seed != 0) cfg.seed = in.seed;
    if (in.threads != 0) cfg.threads = in.threads;
    const lorext::Report rep = lorext::run_scenario(cfg);
    if (as_sweep || in.format == "csv") {
        emit(in, json{}, rep.to_csv());
    } else {
        if (in.out_path.empty()) {
            std::cout << rep.to_json_string();
        } else {
            lorext::write_text_file(in.out_path, rep.to_json_string());
        }
    }
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-space toolkit for weighted Lorentz norms, Muckenhoupt "
                 "characteristics, canonical operators and extrapolation constants"};
    app.require_subcommand(1);
    CommonIn in;

    std::string norm_kind = "lorentz";
    auto* norm = app.add_subcommand("norm", "evaluate a norm");
    add_common(norm, in);
    norm->add_option("--kind", norm_kind,
                     "lorentz|lorentz-dist|banach|lebesgue|iwaniec-sbordone|grand|double-grand");

    auto* rearr = app.add_subcommand("rearrange", "weighted decreasing rearrangement");
    add_common(rearr, in);

    std::string wc_kind = "ap";
    auto* wconst = app.add_subcommand("weight-const", "Muckenhoupt type characteristics");
    add_common(wconst, in);
    wconst->add_option("--kind", wc_kind, "ap|a1|ainf|apq|aps|eps0");

    std::string op_name = "maximal";
    auto* oper = app.add_subcommand("operator", "apply a pointwise operator");
    add_common(oper, in);
    oper->add_option("--name", op_name,
                     "maximal|maximal^m|frac_maximal|frac_integral|hilbert|commutator_cz|"
                     "commutator_frac|bmo");

    std::string formula = "gamma", rate = "identity";
    double p0 = 2.0, q0 = 2.0, char_in = 1.0, cbar_in = 2.0;
    auto* extr = app.add_subcommand("extrapolate-const", "evaluate a constant formula");
    add_common(extr, in);
    extr->add_option("--formula", formula,
                     "gamma|kdiag|koffdiag|marcinkiewicz|dual-marcinkiewicz|k1|phi-psi|eta");
    extr->add_option("--p0", p0, "base exponent p0");
    extr->add_option("--q0", q0, "base exponent q0");
    extr->add_option("--characteristic", char_in, "weight characteristic (or A for phi-psi/eta)");
    extr->add_option("--c-bar", cbar_in, "structural constant");
    extr->add_option("--rate", rate, "rate function: identity or a power exponent");

    std::string scenario_path;
    auto* verify = app.add_subcommand("verify", "run a verification scenario");
    add_common(verify, in);
    verify->add_option("--scenario", scenario_path, "scenario JSON file")->required();

    auto* sweep = app.add_subcommand("sweep", "run a scenario and emit flat CSV rows");
    add_common(sweep, in);
    sweep->add_option("--scenario", scenario_path, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
        if (norm->parsed()) return run_norm(in, norm_kind);
        if (rearr->parsed()) return run_rearrange(in);
        if (wconst->parsed()) return run_weight_const(in, wc_kind);
        if (oper->parsed()) return run_operator(in, op_name);
        if (extr->parsed()) return run_extrapolate(in, formula, p0, q0, char_in, cbar_in, rate);
        if (verify->parsed()) return run_verify(in, scenario_path, false);
        if (sweep->parsed()) return run_verify(in, scenario_path, true);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const lorext::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

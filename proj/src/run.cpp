#include "folcoh/run.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace folcoh {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kAnalyses = {
    "validate",  "check-identities",    "cohomology",
    "twisted-cohomology", "formality",  "geometric-formality",
    "flow",      "gysin",               "diagnostics"};

std::vector<std::string> normalize_requested(const std::vector<std::string>& requested) {
    for (const auto& name : requested)
        if (std::find(kAnalyses.begin(), kAnalyses.end(), name) == kAnalyses.end()) {
            std::string known;
            for (const auto& k : kAnalyses)
                known += (known.empty() ? "" : ", ") + k;
            throw ParseError("unknown analysis '" + name + "' (known: " + known + ")");
        }
    if (requested.empty())
        return kAnalyses;
    std::vector<std::string> out;
    for (const auto& name : kAnalyses)
        if (std::find(requested.begin(), requested.end(), name) != requested.end())
            out.push_back(name);
    return out;
}

// The twist is either a rational multiple of kappa_b or a one-form
// expression over the model generators. A twist that does not define a
// complex is an input error, not a failed check.
Form resolve_twist(const std::string& spec, const FoliationContext& ctx) {
    Form twist = Form::zero(1);
    bool parsed = false;
    try {
        Scalar a = scalar_from_string(spec);
        twist = ctx.kappa_b * a;
        parsed = true;
    } catch (const std::invalid_argument&) {
    }
    if (!parsed)
        twist = parse_form_expr(spec, ctx.model, 1);
    if (!differential(twist, ctx.model).is_zero())
        throw ParseError("twist '" + spec + "' is not closed");
    if (!is_basic(ctx, twist))
        throw ParseError("twist '" + spec + "' is not basic");
    return twist;
}

struct Renderer {
    OutputFormat format = OutputFormat::Text;
    std::vector<std::string> names;
    std::ostringstream out;

    void line(const std::string& s) {
        if (format == OutputFormat::Text)
            out << s << "\n";
    }
    void heading(const std::string& s) { line("== " + s + " =="); }
    void json(const ordered_json& j) {
        if (format == OutputFormat::Structured)
            out << j.dump() << "\n";
    }
    std::string form(const Form& f) const { return f.to_string(names); }
    std::string str() const { return out.str(); }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }
std::string passfail(bool b) { return b ? "pass" : "FAIL"; }

ordered_json checks_json(const std::vector<CheckResult>& checks) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        j["witness"] = c.witness;
        arr.push_back(j);
    }
    return arr;
}

void render_checks_text(Renderer& r, const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        std::string s = "check " + c.name + ": " + passfail(c.pass);
        if (!c.pass && !c.witness.empty())
            s += "  [" + c.witness + "]";
        r.line(s);
    }
}

ordered_json degree_json(const Renderer& r, const CohomologyDegree& deg) {
    ordered_json j;
    j["degree"] = deg.degree;
    j["dim"] = deg.dim;
    j["dim_harmonic"] = deg.dim_harmonic;
    ordered_json gens = ordered_json::array();
    for (const auto& g : deg.generators)
        gens.push_back(r.form(g));
    j["generators"] = gens;
    ordered_json kernel = ordered_json::array();
    for (const auto& k : deg.kernel_basis)
        kernel.push_back(r.form(k));
    j["kernel"] = kernel;
    ordered_json image = ordered_json::array();
    for (const auto& b : deg.image_basis)
        image.push_back(r.form(b));
    j["image"] = image;
    return j;
}

ordered_json complex_json(const Renderer& r, const CohomologyReport& rep,
                          int degree_filter) {
    ordered_json j;
    j["complex"] = rep.complex == Complex::Basic ? "basic" : "full";
    j["twist"] = r.form(rep.twist);
    ordered_json degrees = ordered_json::array();
    for (const auto& deg : rep.degrees)
        if (degree_filter < 0 || deg.degree == degree_filter)
            degrees.push_back(degree_json(r, deg));
    j["degrees"] = degrees;
    j["dims_agree"] = rep.dims_agree;
    j["harmonics_embed"] = rep.harmonics_embed;
    j["hodge_kernel_split"] = rep.hodge_kernel_split;
    return j;
}

void render_complex_text(Renderer& r, const CohomologyReport& rep, int degree_filter) {
    std::string which = rep.complex == Complex::Basic ? "basic" : "full";
    r.line(which + " complex, twist " + r.form(rep.twist));
    for (const auto& deg : rep.degrees) {
        if (degree_filter >= 0 && deg.degree != degree_filter)
            continue;
        std::string gens;
        for (const auto& g : deg.generators)
            gens += (gens.empty() ? "" : ",  ") + r.form(g);
        if (gens.empty())
            gens = "(none)";
        r.line("  H^" + std::to_string(deg.degree) + ": dim " + std::to_string(deg.dim) +
               ", harmonic " + std::to_string(deg.dim_harmonic) + ", generators: " + gens);
    }
    r.line("  dims agree: " + yesno(rep.dims_agree) +
           ", harmonics embed: " + yesno(rep.harmonics_embed) +
           ", hodge kernel split: " + yesno(rep.hodge_kernel_split));
}

bool crosschecks_pass(const CohomologyReport& rep) {
    return rep.dims_agree && rep.harmonics_embed && rep.hodge_kernel_split;
}

std::string opt_text(const std::optional<bool>& v) {
    if (!v.has_value())
        return "not applicable";
    return *v ? "holds" : "FAILS";
}

ordered_json opt_json(const std::optional<bool>& v) {
    if (!v.has_value())
        return nullptr;
    return *v;
}

} // namespace

const std::vector<std::string>& analysis_names() { return kAnalyses; }

RunResult run_analyses(const RunConfig& config) {
    RunResult result;
    Renderer r;
    r.format = config.format;

    std::vector<std::string> requested;
    Model model;
    try {
        requested = normalize_requested(config.analyses);
        model = parse_manifest(config.manifest_text, config.param_overrides);
    } catch (const ParseError& e) {
        result.exit_code = 2;
        result.output = std::string("error: ") + e.what() + "\n";
        return result;
    }
    r.names = model.generators;

    bool failed = false;
    auto want = [&](const std::string& name) {
        return std::find(requested.begin(), requested.end(), name) != requested.end();
    };

    // Validation always runs; it is only reported when requested or broken.
    ValidationReport val = validate_model(model);
    if (want("validate") || !val.ok()) {
        ordered_json j;
        j["analysis"] = "validate";
        j["checks"] = checks_json(val.checks);
        j["unimodular"] = val.unimodular;
        j["unimodular_witness"] = val.unimodular_witness;
        j["ok"] = val.ok();
        r.json(j);
        r.heading("validate");
        render_checks_text(r, val.checks);
        r.line("unimodular: " + yesno(val.unimodular) +
               (val.unimodular ? "" : "  [" + val.unimodular_witness + "]"));
        r.line("result: " + passfail(val.ok()));
        r.line("");
    }
    if (!val.ok()) {
        result.exit_code = 1;
        result.output = r.str();
        return result;
    }
    // Adjointness of the combinatorial codifferential needs an invariant
    // volume; without it the harmonic crosschecks are reported, not enforced.
    bool enforce = val.unimodular;

    try {
        FoliationContext ctx = make_context(model);
        Form zero1 = Form::zero(1);

        Form twist;
        if (want("twisted-cohomology")) {
            try {
                twist = resolve_twist(config.twist_spec, ctx);
            } catch (const ParseError& e) {
                result.exit_code = 2;
                result.output = std::string("error: ") + e.what() + "\n";
                return result;
            }
        }

        for (const auto& name : requested) {
            if (name == "validate")
                continue;
            if (name == "check-identities") {
                auto checks = context_checks(ctx);
                bool ok = std::all_of(checks.begin(), checks.end(),
                                      [](const CheckResult& c) { return c.pass; });
                ordered_json j;
                j["analysis"] = "check-identities";
                j["checks"] = checks_json(checks);
                j["ok"] = ok;
                r.json(j);
                r.heading("check-identities");
                render_checks_text(r, checks);
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "cohomology") {
                auto basic = compute_cohomology(ctx, Complex::Basic, zero1);
                auto full = compute_cohomology(ctx, Complex::Full, zero1);
                auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
                auto taut = tautness(ctx, basic);
                auto duality = duality_check(ctx, basic, twisted);
                bool duality_ok = std::all_of(
                    duality.begin(), duality.end(), [](const DualityDegree& d) {
                        return d.dims_match && d.pairing_nonsingular;
                    });
                bool ok = !enforce || (crosschecks_pass(basic) && crosschecks_pass(full) &&
                                       taut.routes_agree && duality_ok);
                ordered_json j;
                j["analysis"] = "cohomology";
                j["basic"] = complex_json(r, basic, config.degree_filter);
                j["full"] = complex_json(r, full, config.degree_filter);
                ordered_json tj;
                tj["kappa_b_zero"] = taut.kappa_b_zero;
                tj["top_dim"] = taut.top_dim;
                tj["taut"] = taut.taut;
                tj["routes_agree"] = taut.routes_agree;
                j["tautness"] = tj;
                ordered_json dual = ordered_json::array();
                for (const auto& d : duality) {
                    ordered_json dj;
                    dj["degree"] = d.degree;
                    dj["dim_plain"] = d.dim_plain;
                    dj["dim_twisted"] = d.dim_twisted;
                    dj["dims_match"] = d.dims_match;
                    dj["pairing_nonsingular"] = d.pairing_nonsingular;
                    dual.push_back(dj);
                }
                j["duality"] = dual;
                j["crosschecks_enforced"] = enforce;
                j["ok"] = ok;
                r.json(j);
                r.heading("cohomology");
                render_complex_text(r, basic, config.degree_filter);
                render_complex_text(r, full, config.degree_filter);
                r.line(std::string("tautness: ") + (taut.taut ? "taut" : "not taut") +
                       " (kappa_b zero: " + yesno(taut.kappa_b_zero) + ", dim H^" +
                       std::to_string(ctx.q) + " = " + std::to_string(taut.top_dim) +
                       ", routes agree: " + yesno(taut.routes_agree) + ")");
                std::string dual_text;
                for (const auto& d : duality)
                    dual_text += (dual_text.empty() ? "" : ", ") + std::to_string(d.degree) +
                                 ":" + (d.dims_match && d.pairing_nonsingular ? "ok" : "FAIL");
                r.line("duality vs twisted complement: " + dual_text);
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "twisted-cohomology") {
                auto basic = compute_cohomology(ctx, Complex::Basic, twist);
                auto full = compute_cohomology(ctx, Complex::Full, twist);
                bool ok = !enforce || (crosschecks_pass(basic) && crosschecks_pass(full));
                ordered_json j;
                j["analysis"] = "twisted-cohomology";
                j["twist"] = r.form(twist);
                j["basic"] = complex_json(r, basic, config.degree_filter);
                j["full"] = complex_json(r, full, config.degree_filter);
                j["crosschecks_enforced"] = enforce;
                j["ok"] = ok;
                r.json(j);
                r.heading("twisted-cohomology");
                render_complex_text(r, basic, config.degree_filter);
                render_complex_text(r, full, config.degree_filter);
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "formality") {
                auto rep = transverse_formality(ctx);
                bool ok = rep.verdicts_agree;
                ordered_json j;
                j["analysis"] = "formality";
                j["formal"] = rep.formal;
                j["wedge_route"] = rep.wedge_formal;
                j["interior_route"] = rep.interior_formal;
                j["verdicts_agree"] = rep.verdicts_agree;
                ordered_json per = ordered_json::array();
                for (bool b : rep.formal_in_degree)
                    per.push_back(b);
                j["formal_in_degree"] = per;
                j["failure_count"] = rep.failure_count;
                if (rep.first_failure) {
                    ordered_json w;
                    w["left"] = r.form(rep.first_failure->left);
                    w["right"] = r.form(rep.first_failure->right);
                    j["first_failure"] = w;
                } else {
                    j["first_failure"] = nullptr;
                }
                j["kk_contractions_harmonic"] = rep.kk_contractions_harmonic;
                ordered_json hp = ordered_json::array(), ht = ordered_json::array();
                for (const auto& space : rep.harmonic_plain)
                    hp.push_back(space.size());
                for (const auto& space : rep.harmonic_twisted)
                    ht.push_back(space.size());
                j["plain_harmonic_dims"] = hp;
                j["twisted_harmonic_dims"] = ht;
                j["ok"] = ok;
                r.json(j);
                r.heading("formality");
                r.line(std::string("transversely formal: ") + yesno(rep.formal) +
                       " (wedge route: " + yesno(rep.wedge_formal) +
                       ", interior route: " + yesno(rep.interior_formal) +
                       ", routes agree: " + yesno(rep.verdicts_agree) + ")");
                if (rep.first_failure)
                    r.line("first failing product: (" + r.form(rep.first_failure->left) +
                           ") ^ (" + r.form(rep.first_failure->right) + ")  [" +
                           std::to_string(rep.failure_count) + " failing pair(s)]");
                std::string per_text;
                for (std::size_t i = 0; i < rep.formal_in_degree.size(); ++i)
                    per_text += (per_text.empty() ? "" : ", ") + std::to_string(i) + ":" +
                                yesno(rep.formal_in_degree[i]);
                r.line("formal in degree: " + per_text);
                r.line("twisted-harmonic contractions plain-harmonic: " +
                       yesno(rep.kk_contractions_harmonic));
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "geometric-formality") {
                auto rep = geometric_formality(ctx);
                ordered_json j;
                j["analysis"] = "geometric-formality";
                j["formal"] = rep.formal;
                j["failure_count"] = rep.failure_count;
                if (rep.first_failure) {
                    ordered_json w;
                    w["left"] = r.form(rep.first_failure->left);
                    w["right"] = r.form(rep.first_failure->right);
                    j["first_failure"] = w;
                } else {
                    j["first_failure"] = nullptr;
                }
                ordered_json hd = ordered_json::array();
                for (const auto& space : rep.harmonic)
                    hd.push_back(space.size());
                j["harmonic_dims"] = hd;
                j["ok"] = true;
                r.json(j);
                r.heading("geometric-formality");
                r.line("geometrically formal: " + yesno(rep.formal));
                if (rep.first_failure)
                    r.line("first failing product: (" + r.form(rep.first_failure->left) +
                           ") ^ (" + r.form(rep.first_failure->right) + ")  [" +
                           std::to_string(rep.failure_count) + " failing pair(s)]");
                r.line("result: pass");
                r.line("");
            } else if (name == "flow") {
                if (ctx.p != 1) {
                    ordered_json j;
                    j["analysis"] = "flow";
                    j["applicable"] = false;
                    j["reason"] = "requires a one-dimensional foliation";
                    j["ok"] = true;
                    r.json(j);
                    r.heading("flow");
                    r.line("not applicable: requires a one-dimensional foliation");
                    r.line("");
                    continue;
                }
                auto rep = flow_quantities(ctx);
                bool ok = rep.d_phi0_identity.value_or(true) &&
                          rep.delta_phi0_identity.value_or(true);
                ordered_json j;
                j["analysis"] = "flow";
                j["applicable"] = true;
                j["xi_flat"] = r.form(rep.xi_flat);
                j["kappa"] = r.form(rep.kappa);
                j["kappa_b"] = r.form(rep.kappa_b);
                j["phi0"] = r.form(rep.phi0);
                j["lambda"] = scalar_to_string(rep.lambda);
                j["phi0_norm_sq"] = scalar_to_string(rep.phi0_norm_sq);
                j["kappa_norm_sq"] = scalar_to_string(rep.kappa_norm_sq);
                j["kappa_is_basic"] = rep.kappa_is_basic;
                j["kappa_b_harmonic"] = rep.kappa_b_harmonic;
                j["phi0_is_basic"] = rep.phi0_is_basic;
                j["d_phi0_identity"] = opt_json(rep.d_phi0_identity);
                j["delta_phi0_identity"] = opt_json(rep.delta_phi0_identity);
                j["ricci_aligned"] = opt_json(rep.ricci_aligned);
                j["delta_b_phi0"] = r.form(rep.delta_b_phi0);
                j["laplacian_xi"] = r.form(rep.laplacian_xi);
                j["ok"] = ok;
                r.json(j);
                r.heading("flow");
                r.line("xi_flat = " + r.form(rep.xi_flat));
                r.line("kappa = " + r.form(rep.kappa) + ", kappa_b = " + r.form(rep.kappa_b) +
                       " (basic: " + yesno(rep.kappa_is_basic) +
                       ", harmonic: " + yesno(rep.kappa_b_harmonic) + ")");
                r.line("phi0 = " + r.form(rep.phi0) +
                       " (basic: " + yesno(rep.phi0_is_basic) + ")");
                r.line("lambda = " + scalar_to_string(rep.lambda) +
                       ", |phi0|^2 = " + scalar_to_string(rep.phi0_norm_sq) +
                       ", |kappa|^2 = " + scalar_to_string(rep.kappa_norm_sq));
                r.line("identity d(phi0) = -kappa ^ phi0: " + opt_text(rep.d_phi0_identity));
                r.line("identity delta_b(phi0) = Delta(xi_flat) - (|phi0|^2 + |kappa|^2) xi_flat: " +
                       opt_text(rep.delta_phi0_identity));
                r.line("ricci alignment delta_b(phi0) = -kappa _| phi0: " +
                       opt_text(rep.ricci_aligned));
                r.line("Delta(xi_flat) = " + r.form(rep.laplacian_xi));
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "gysin") {
                auto formality = transverse_formality(ctx);
                auto rep = gysin_analysis(ctx, formality.formal);
                if (!rep.applicable) {
                    ordered_json j;
                    j["analysis"] = "gysin";
                    j["applicable"] = false;
                    j["reason"] = rep.reason;
                    j["ok"] = true;
                    r.json(j);
                    r.heading("gysin");
                    r.line("not applicable: " + rep.reason);
                    r.line("");
                    continue;
                }
                bool ok = rep.subcomplex_iso && rep.re_representation_ok &&
                          rep.exact_sequence && rep.lemmas_ok;
                ordered_json j;
                j["analysis"] = "gysin";
                j["applicable"] = true;
                auto dims_json = [](const std::vector<int>& v) {
                    ordered_json a = ordered_json::array();
                    for (int x : v)
                        a.push_back(x);
                    return a;
                };
                j["dims_basic_twisted"] = dims_json(rep.dims_basic_twisted);
                j["dims_basic_plain"] = dims_json(rep.dims_basic_plain);
                j["dims_subcomplex"] = dims_json(rep.dims_subcomplex);
                j["dims_full_twisted"] = dims_json(rep.dims_full_twisted);
                j["subcomplex_iso"] = rep.subcomplex_iso;
                j["re_representation_ok"] = rep.re_representation_ok;
                ordered_json nodes = ordered_json::array();
                for (const auto& node : rep.nodes) {
                    ordered_json nj;
                    nj["label"] = node.label;
                    nj["dim"] = node.dim;
                    nj["rank_in"] = node.rank_in;
                    nj["rank_out"] = node.rank_out;
                    nj["composite_zero"] = node.composite_zero;
                    nj["exact"] = node.exact;
                    nodes.push_back(nj);
                }
                j["nodes"] = nodes;
                j["exact_sequence"] = rep.exact_sequence;
                j["phi0_class_nonzero"] = rep.phi0_class_nonzero;
                j["lemma_h1"] = rep.lemma_h1;
                j["lemma_h2"] = rep.lemma_h2;
                j["prop_minimal"] = rep.prop_minimal;
                j["lemmas_ok"] = rep.lemmas_ok;
                j["ok"] = ok;
                r.json(j);
                r.heading("gysin");
                auto dims_text = [](const std::vector<int>& v) {
                    std::string s;
                    for (int x : v)
                        s += (s.empty() ? "" : ",") + std::to_string(x);
                    return s;
                };
                r.line("dims H_tw(F) = " + dims_text(rep.dims_basic_twisted) +
                       "; H(F) = " + dims_text(rep.dims_basic_plain) +
                       "; H(G) = " + dims_text(rep.dims_subcomplex) +
                       "; H_tw(M) = " + dims_text(rep.dims_full_twisted));
                r.line("subcomplex iso: " + yesno(rep.subcomplex_iso) +
                       ", re-representation: " + yesno(rep.re_representation_ok));
                for (const auto& node : rep.nodes)
                    r.line("  node " + node.label + ": dim " + std::to_string(node.dim) +
                           ", rank in " + std::to_string(node.rank_in) + ", rank out " +
                           std::to_string(node.rank_out) +
                           ", composite zero: " + yesno(node.composite_zero) +
                           ", exact: " + yesno(node.exact));
                r.line("exact: " + yesno(rep.exact_sequence));
                r.line("[phi0] nonzero: " + yesno(rep.phi0_class_nonzero) +
                       "; lemma H^1: " + rep.lemma_h1 + "; lemma H^2: " + rep.lemma_h2);
                r.line("minimal-flow betti windows: " + rep.prop_minimal);
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            } else if (name == "diagnostics") {
                auto rows = run_diagnostics(ctx);
                bool ok = std::none_of(rows.begin(), rows.end(),
                                       [](const DiagnosticResult& row) {
                                           return row.status == "FALSIFIED";
                                       });
                ordered_json j;
                j["analysis"] = "diagnostics";
                ordered_json arr = ordered_json::array();
                for (const auto& row : rows) {
                    ordered_json rj;
                    rj["name"] = row.name;
                    rj["status"] = row.status;
                    rj["detail"] = row.detail;
                    arr.push_back(rj);
                }
                j["rows"] = arr;
                j["ok"] = ok;
                r.json(j);
                r.heading("diagnostics");
                for (const auto& row : rows)
                    r.line("  " + row.name + ": " + row.status +
                           (row.detail.empty() ? "" : "  [" + row.detail + "]"));
                r.line("result: " + passfail(ok));
                r.line("");
                failed = failed || !ok;
            }
        }
    } catch (const ModelError& e) {
        ordered_json j;
        j["analysis"] = "error";
        j["message"] = e.what();
        j["ok"] = false;
        r.json(j);
        r.line(std::string("check failed: ") + e.what());
        result.exit_code = 1;
        result.output = r.str();
        return result;
    }

    result.exit_code = failed ? 1 : 0;
    result.output = r.str();
    return result;
}

} // namespace folcoh

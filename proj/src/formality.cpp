#include "folcoh/formality.hpp"

#include <sstream>

namespace folcoh {

namespace {

long long binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    long long out = 1;
    for (int i = 0; i < r; ++i)
        out = out * (n - i) / (i + 1);
    return out;
}

} // namespace

TransverseFormalityReport transverse_formality(const FoliationContext& ctx) {
    TransverseFormalityReport rep;
    CohomologyReport plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
    CohomologyReport twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
    for (const auto& deg : plain.degrees)
        rep.harmonic_plain.push_back(deg.generators);
    for (const auto& deg : twisted.degrees)
        rep.harmonic_twisted.push_back(deg.generators);

    // Wedge route, canonical order: left degree, right degree, basis order.
    for (int r = 0; r <= ctx.q; ++r)
        for (int s = 0; r + s <= ctx.q; ++s)
            for (const auto& a : rep.harmonic_plain[static_cast<std::size_t>(r)])
                for (const auto& b : rep.harmonic_twisted[static_cast<std::size_t>(s)]) {
                    if (laplacian_basic(ctx, ctx.kappa_b, wedge(a, b)).is_zero())
                        continue;
                    rep.wedge_formal = false;
                    ++rep.failure_count;
                    if (!rep.first_failure)
                        rep.first_failure = WedgePair{a, b};
                }

    // Interior route over plain harmonics only.
    for (int r = 0; r <= ctx.q; ++r)
        for (int s = r; s <= ctx.q; ++s)
            for (const auto& a : rep.harmonic_plain[static_cast<std::size_t>(r)])
                for (const auto& b : rep.harmonic_plain[static_cast<std::size_t>(s)])
                    if (!laplacian_basic(ctx, Form::zero(1), contract(a, b)).is_zero())
                        rep.interior_formal = false;

    rep.verdicts_agree = rep.wedge_formal == rep.interior_formal;
    rep.formal = rep.wedge_formal;

    for (int r = 0; r <= ctx.q; ++r) {
        bool ok = true;
        for (const auto& a : rep.harmonic_plain[static_cast<std::size_t>(r)])
            for (const auto& b : rep.harmonic_twisted[static_cast<std::size_t>(ctx.q - r)])
                if (!laplacian_basic(ctx, ctx.kappa_b, wedge(a, b)).is_zero())
                    ok = false;
        rep.formal_in_degree.push_back(ok);
    }

    for (int r = 0; r <= ctx.q; ++r)
        for (int s = r; s <= ctx.q; ++s)
            for (const auto& a : rep.harmonic_twisted[static_cast<std::size_t>(r)])
                for (const auto& b : rep.harmonic_twisted[static_cast<std::size_t>(s)])
                    if (!laplacian_basic(ctx, Form::zero(1), contract(a, b)).is_zero())
                        rep.kk_contractions_harmonic = false;

    return rep;
}

GeometricFormalityReport geometric_formality(const FoliationContext& ctx) {
    GeometricFormalityReport rep;
    const Model& m = ctx.model;
    const int n = ctx.dim();
    CohomologyReport full = compute_cohomology(ctx, Complex::Full, Form::zero(1));
    for (const auto& deg : full.degrees)
        rep.harmonic.push_back(deg.generators);

    Form zero_twist = Form::zero(1);
    for (int r = 0; r <= n; ++r)
        for (int s = r; r + s <= n; ++s)
            for (const auto& a : rep.harmonic[static_cast<std::size_t>(r)])
                for (const auto& b : rep.harmonic[static_cast<std::size_t>(s)]) {
                    if (laplacian_full(m, zero_twist, wedge(a, b)).is_zero())
                        continue;
                    rep.formal = false;
                    ++rep.failure_count;
                    if (!rep.first_failure)
                        rep.first_failure = WedgePair{a, b};
                }
    return rep;
}

std::vector<DiagnosticResult> run_diagnostics(const FoliationContext& ctx) {
    std::vector<DiagnosticResult> out;
    CohomologyReport plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
    TransverseFormalityReport formality = transverse_formality(ctx);
    TautnessReport taut = tautness(ctx, plain);
    const auto& names = ctx.model.generators;

    bool kappa_basic_harmonic =
        ctx.kappa == ctx.kappa_b && differential(ctx.kappa_b, ctx.model).is_zero() &&
        delta_basic(ctx, ctx.kappa_b).is_zero();
    std::vector<int> betti = dims(plain);

    auto add = [&](const std::string& name, bool hypothesis, bool conclusion,
                   const std::string& detail) {
        DiagnosticResult row;
        row.name = name;
        row.status = !hypothesis ? "vacuous" : conclusion ? "verified" : "FALSIFIED";
        row.detail = row.status == "FALSIFIED" ? detail : "";
        out.push_back(row);
    };

    add("taut_formal_implies_minimal", taut.taut && formality.formal,
        ctx.kappa_b.is_zero(), "kappa_b = " + ctx.kappa_b.to_string(names));

    bool maximal_betti = false;
    int maximal_r = -1;
    for (int r = 1; r <= ctx.q; ++r)
        if (betti[static_cast<std::size_t>(r)] == binomial(ctx.q, r)) {
            maximal_betti = true;
            maximal_r = r;
        }
    {
        std::ostringstream detail;
        detail << "betti " << maximal_r << " is maximal yet kappa = "
               << ctx.kappa.to_string(names);
        add("formal_maximal_betti_implies_minimal",
            formality.formal && kappa_basic_harmonic && maximal_betti,
            ctx.kappa.is_zero(), detail.str());
    }

    for (int r = 0; r <= ctx.q; ++r) {
        std::ostringstream name;
        name << "degree_" << r << "_formality_bounds_betti";
        std::ostringstream detail;
        detail << "dim " << betti[static_cast<std::size_t>(r)] << " exceeds "
               << binomial(ctx.q, r);
        add(name.str(), formality.formal_in_degree[static_cast<std::size_t>(r)],
            betti[static_cast<std::size_t>(r)] <= binomial(ctx.q, r), detail.str());
    }

    {
        std::ostringstream detail;
        detail << "dim H^1 = " << betti[1 <= ctx.q ? 1 : 0] << " outside [1, " << ctx.q - 1
               << "]";
        bool window = ctx.q >= 1 && betti[1] >= 1 && betti[1] <= ctx.q - 1;
        add("formal_nontaut_h1_window",
            formality.formal && kappa_basic_harmonic && !taut.taut, window, detail.str());
    }

    {
        bool closure = true;
        for (int r = 0; r <= ctx.q && closure; ++r)
            for (int s = r; r + s <= ctx.q && closure; ++s)
                for (const auto& a : formality.harmonic_plain[static_cast<std::size_t>(r)]) {
                    for (const auto& b : formality.harmonic_plain[static_cast<std::size_t>(s)])
                        if (!laplacian_basic(ctx, Form::zero(1), wedge(a, b)).is_zero()) {
                            closure = false;
                            break;
                        }
                    if (!closure)
                        break;
                }
        std::ostringstream detail;
        detail << "harmonic wedge closure " << (closure ? "holds" : "fails") << ", dim H^1 = "
               << (ctx.q >= 1 ? betti[1] : 0) << ", q - 1 = " << ctx.q - 1;
        bool conclusion = closure && (ctx.q < 1 || betti[1] != ctx.q - 1);
        add("taut_formal_wedge_closure_and_h1", taut.taut && formality.formal, conclusion,
            detail.str());
    }

    return out;
}

} // namespace folcoh

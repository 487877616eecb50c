#include "doctest.h"
#include "folcoh/cohomology.hpp"
#include "folcoh/linalg.hpp"
#include "test_helpers.hpp"

using namespace folcoh;
using namespace folcoh::testing;

namespace {

FoliationContext context_for(const std::string& name,
                             const std::map<std::string, Scalar>& overrides = {}) {
    return make_context(load_manifest(name + ".fol", overrides));
}

const std::vector<std::string> kAllManifests = {
    "hopf", "carriere", "solv-flow", "solv-codim2", "solv-codim3",
    "doublesolv", "torus", "heisenberg3"};

std::map<std::string, Scalar> doublesolv_binding(const Scalar& k1, const Scalar& k2) {
    return {{"k1", k1}, {"k2", k2}, {"n1", Scalar(1)}, {"n2", Scalar(1)}};
}

std::vector<FoliationContext> bundled_contexts() {
    std::vector<FoliationContext> out;
    for (const auto& name : kAllManifests) {
        if (name == "doublesolv") {
            out.push_back(context_for(name, doublesolv_binding(Scalar(1), Scalar(2))));
            out.push_back(context_for(name, doublesolv_binding(Scalar(1), Scalar(1))));
            out.push_back(context_for(name, doublesolv_binding(Scalar(1), Scalar(-1))));
        } else {
            out.push_back(context_for(name));
        }
    }
    return out;
}

Form expr(const FoliationContext& ctx, const std::string& text, int degree) {
    return parse_form_expr(text, ctx.model, degree);
}

// Rank-nullity of the twisted differential straight from `differential` over
// raw monomial coordinates, sharing nothing with compute_cohomology beyond
// the form algebra. Kernel dimensions come from ranks alone.
std::vector<int> oracle_full_dims(const Model& m, const Form& omega) {
    int n = m.dim();
    std::vector<int> kernel_dim(n + 1, 0);
    std::vector<int> image_rank(n + 2, 0);
    for (int r = 0; r <= n; ++r) {
        auto domain = all_monomials(n, r);
        auto targets = all_indices(n, r + 1);
        RatMatrix images;
        for (const auto& mono : domain) {
            Form d = differential(mono, m) - wedge(omega, mono);
            std::vector<Scalar> row;
            for (const auto& t : targets)
                row.push_back(d.coefficient(t));
            images.append_row(row);
        }
        image_rank[r + 1] = images.rank();
        kernel_dim[r] = static_cast<int>(domain.size()) - image_rank[r + 1];
    }
    std::vector<int> out(n + 1);
    for (int r = 0; r <= n; ++r)
        out[r] = kernel_dim[r] - image_rank[r];
    return out;
}

// Same idea for the basic complex, over a basic subspace assembled from the
// leafwise contraction constraints rather than from ctx.basic_bases.
std::vector<std::vector<Scalar>> oracle_basic_space(const FoliationContext& ctx, int r) {
    const Model& m = ctx.model;
    auto columns = all_monomials(m.dim(), r);
    RatMatrix constraints;
    for (int l : ctx.leafwise) {
        Form el = Form::monomial({l});
        for (const auto& target : all_indices(m.dim(), r - 1)) {
            std::vector<Scalar> row;
            for (const auto& mono : columns)
                row.push_back(contract(el, mono).coefficient(target));
            constraints.append_row(row);
        }
        for (const auto& target : all_indices(m.dim(), r)) {
            std::vector<Scalar> row;
            for (const auto& mono : columns)
                row.push_back(contract(el, differential(mono, m)).coefficient(target));
            constraints.append_row(row);
        }
    }
    if (constraints.rows() == 0) {
        std::vector<std::vector<Scalar>> everything;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::vector<Scalar> v(columns.size(), Scalar(0));
            v[i] = 1;
            everything.push_back(std::move(v));
        }
        return everything;
    }
    return constraints.kernel();
}

std::vector<int> oracle_basic_dims(const FoliationContext& ctx, const Form& omega) {
    int q = ctx.q;
    std::vector<int> kernel_dim(q + 1, 0);
    std::vector<int> image_rank(q + 2, 0);
    for (int r = 0; r <= q; ++r) {
        auto space = oracle_basic_space(ctx, r);
        auto monos = all_monomials(ctx.dim(), r);
        auto targets = all_indices(ctx.dim(), r + 1);
        RatMatrix images;
        for (const auto& v : space) {
            Form a = Form::zero(r);
            for (std::size_t i = 0; i < v.size(); ++i)
                a = a + monos[i] * v[i];
            Form d = differential(a, ctx.model) - wedge(omega, a);
            std::vector<Scalar> row;
            for (const auto& t : targets)
                row.push_back(d.coefficient(t));
            images.append_row(row);
        }
        image_rank[r + 1] = images.rank();
        kernel_dim[r] = static_cast<int>(space.size()) - image_rank[r + 1];
    }
    std::vector<int> out(q + 1);
    for (int r = 0; r <= q; ++r)
        out[r] = kernel_dim[r] - image_rank[r];
    return out;
}

std::vector<Form> generators_at(const CohomologyReport& rep, int degree) {
    return rep.degrees.at(degree).generators;
}

} // namespace

TEST_CASE("cohomology dims match the independent rank-nullity oracle") {
    for (const auto& ctx : bundled_contexts()) {
        Form zero1 = Form::zero(1);
        CAPTURE(ctx.model.generators.front());

        auto full = compute_cohomology(ctx, Complex::Full, zero1);
        CHECK(dims(full) == oracle_full_dims(ctx.model, zero1));

        auto basic = compute_cohomology(ctx, Complex::Basic, zero1);
        CHECK(dims(basic) == oracle_basic_dims(ctx, zero1));

        auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
        CHECK(dims(twisted) == oracle_basic_dims(ctx, ctx.kappa_b));
    }
}

TEST_CASE("basic cohomology of the round one-dimensional sphere foliation") {
    auto ctx = context_for("hopf");
    auto rep = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
    CHECK(dims(rep) == std::vector<int>{1, 0, 1});
    CHECK(generators_at(rep, 0) == std::vector<Form>{Form::scalar(Scalar(1))});
    CHECK(generators_at(rep, 2) == std::vector<Form>{expr(ctx, "e1^e2", 2)});

    // kappa_b vanishes, so the twisted complex is the plain one.
    auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
    CHECK(dims(twisted) == std::vector<int>{1, 0, 1});

    auto full = compute_cohomology(ctx, Complex::Full, Form::zero(1));
    CHECK(dims(full) == std::vector<int>{1, 0, 0, 1});
    CHECK(generators_at(full, 3) == std::vector<Form>{expr(ctx, "xi^e1^e2", 3)});
}

TEST_CASE("basic and twisted cohomology of the hyperbolic suspension flow") {
    auto ctx = context_for("carriere");
    auto plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
    CHECK(dims(plain) == std::vector<int>{1, 1, 0});
    CHECK(generators_at(plain, 1) == std::vector<Form>{expr(ctx, "zeta", 1)});

    auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
    CHECK(dims(twisted) == std::vector<int>{0, 1, 1});
    CHECK(generators_at(twisted, 1) == std::vector<Form>{expr(ctx, "mu", 1)});
    CHECK(generators_at(twisted, 2) == std::vector<Form>{expr(ctx, "mu^zeta", 2)});

    auto full = compute_cohomology(ctx, Complex::Full, Form::zero(1));
    CHECK(dims(full) == std::vector<int>{1, 1, 1, 1});
    CHECK(generators_at(full, 1) == std::vector<Form>{expr(ctx, "zeta", 1)});
    CHECK(generators_at(full, 2) == std::vector<Form>{expr(ctx, "chi^mu", 2)});
}

TEST_CASE("cohomology of the solvable model under its three splits") {
    auto flow = context_for("solv-flow");
    auto flow_basic = compute_cohomology(flow, Complex::Basic, Form::zero(1));
    CHECK(dims(flow_basic) == std::vector<int>{1, 1, 1, 1});
    CHECK(generators_at(flow_basic, 1) == std::vector<Form>{expr(flow, "gamma", 1)});
    CHECK(generators_at(flow_basic, 2) == std::vector<Form>{expr(flow, "alpha^beta", 2)});
    CHECK(generators_at(flow_basic, 3) ==
          std::vector<Form>{expr(flow, "alpha^beta^gamma", 3)});

    // The ambient complex is shared by all three splits.
    for (const char* name : {"solv-flow", "solv-codim2", "solv-codim3"}) {
        auto ctx = context_for(name);
        auto full = compute_cohomology(ctx, Complex::Full, Form::zero(1));
        CAPTURE(name);
        CHECK(dims(full) == std::vector<int>{1, 1, 0, 1, 1});
        CHECK(generators_at(full, 1) == std::vector<Form>{expr(ctx, "gamma", 1)});
        CHECK(generators_at(full, 3) ==
              std::vector<Form>{expr(ctx, "alpha^beta^eta", 3)});
    }

    auto codim2 = context_for("solv-codim2");
    auto c2_basic = compute_cohomology(codim2, Complex::Basic, Form::zero(1));
    CHECK(dims(c2_basic) == std::vector<int>{1, 1, 0});
    CHECK(generators_at(c2_basic, 1) == std::vector<Form>{expr(codim2, "gamma", 1)});
    auto c2_twisted = compute_cohomology(codim2, Complex::Basic, codim2.kappa_b);
    CHECK(dims(c2_twisted) == std::vector<int>{0, 1, 1});
    CHECK(generators_at(c2_twisted, 1) == std::vector<Form>{expr(codim2, "alpha", 1)});
    CHECK(generators_at(c2_twisted, 2) ==
          std::vector<Form>{expr(codim2, "alpha^gamma", 2)});

    auto codim3 = context_for("solv-codim3");
    auto c3_basic = compute_cohomology(codim3, Complex::Basic, Form::zero(1));
    CHECK(dims(c3_basic) == std::vector<int>{1, 1});
    CHECK(generators_at(c3_basic, 1) == std::vector<Form>{expr(codim3, "gamma", 1)});
}

TEST_CASE("cohomology of the seven-dimensional two-parameter model") {
    auto generic = context_for("doublesolv", doublesolv_binding(Scalar(1), Scalar(2)));
    auto g_basic = compute_cohomology(generic, Complex::Basic, Form::zero(1));
    CHECK(dims(g_basic) == std::vector<int>{1, 1, 1, 1, 0});
    CHECK(generators_at(g_basic, 1) == std::vector<Form>{expr(generic, "zeta", 1)});
    CHECK(generators_at(g_basic, 2) == std::vector<Form>{expr(generic, "xi^upsilon", 2)});
    CHECK(generators_at(g_basic, 3) ==
          std::vector<Form>{expr(generic, "xi^upsilon^zeta", 3)});

    auto g_twisted = compute_cohomology(generic, Complex::Basic, generic.kappa_b);
    CHECK(dims(g_twisted) == std::vector<int>{0, 1, 1, 1, 1});
    CHECK(generators_at(g_twisted, 1) == std::vector<Form>{expr(generic, "beta", 1)});
    CHECK(generators_at(g_twisted, 2) == std::vector<Form>{expr(generic, "beta^zeta", 2)});
    CHECK(generators_at(g_twisted, 3) ==
          std::vector<Form>{expr(generic, "xi^upsilon^beta", 3)});
    CHECK(generators_at(g_twisted, 4) ==
          std::vector<Form>{expr(generic, "xi^upsilon^beta^zeta", 4)});

    auto g_full = compute_cohomology(generic, Complex::Full, Form::zero(1));
    CHECK(dims(g_full)[1] == 1);
    CHECK(generators_at(g_full, 1) == std::vector<Form>{expr(generic, "zeta", 1)});
    CHECK(dims(g_full)[2] == 0);
    CHECK(dims(g_full)[3] >= 2);

    for (const Scalar& k2 : {Scalar(1), Scalar(-1)}) {
        auto ctx = context_for("doublesolv", doublesolv_binding(Scalar(1), k2));
        CAPTURE(k2);
        auto basic = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
        CHECK(dims(basic) == std::vector<int>{1, 1, 2, 2, 0});
        auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
        CHECK(dims(twisted) == std::vector<int>{0, 2, 2, 1, 1});
        auto full = compute_cohomology(ctx, Complex::Full, Form::zero(1));
        CHECK(dims(full)[1] == 1);
        CHECK(generators_at(full, 1) == std::vector<Form>{expr(ctx, "zeta", 1)});
        CHECK(dims(full)[2] == 2);
        CHECK(dims(full)[3] >= 2);
    }

    auto k1k1 = context_for("doublesolv", doublesolv_binding(Scalar(1), Scalar(1)));
    auto tw = compute_cohomology(k1k1, Complex::Basic, k1k1.kappa_b);
    CHECK(generators_at(tw, 1) ==
          std::vector<Form>{expr(k1k1, "upsilon", 1), expr(k1k1, "beta", 1)});

    auto k1m1 = context_for("doublesolv", doublesolv_binding(Scalar(1), Scalar(-1)));
    auto twm = compute_cohomology(k1m1, Complex::Basic, k1m1.kappa_b);
    CHECK(generators_at(twm, 1) ==
          std::vector<Form>{expr(k1m1, "xi", 1), expr(k1m1, "beta", 1)});
}

TEST_CASE("trivial split reproduces the ambient cohomology") {
    auto torus = context_for("torus");
    auto basic = compute_cohomology(torus, Complex::Basic, Form::zero(1));
    auto full = compute_cohomology(torus, Complex::Full, Form::zero(1));
    CHECK(dims(basic) == std::vector<int>{1, 3, 3, 1});
    CHECK(dims(basic) == dims(full));
    CHECK(generators_at(basic, 1) ==
          std::vector<Form>{expr(torus, "e1", 1), expr(torus, "e2", 1),
                            expr(torus, "e3", 1)});

    auto heis = context_for("heisenberg3");
    auto heis_full = compute_cohomology(heis, Complex::Full, Form::zero(1));
    CHECK(dims(heis_full) == std::vector<int>{1, 2, 2, 1});
    CHECK(generators_at(heis_full, 1) ==
          std::vector<Form>{expr(heis, "alpha", 1), expr(heis, "beta", 1)});
    CHECK(generators_at(heis_full, 2) ==
          std::vector<Form>{expr(heis, "alpha^gamma", 2), expr(heis, "beta^gamma", 2)});
}

TEST_CASE("harmonic route agrees with rank-nullity and embeds into cohomology") {
    for (const auto& ctx : bundled_contexts()) {
        CAPTURE(ctx.model.generators.front());
        for (auto which : {Complex::Basic, Complex::Full}) {
            Form twist = Form::zero(1);
            auto rep = compute_cohomology(ctx, which, twist);
            CHECK(rep.dims_agree);
            CHECK(rep.harmonics_embed);
            CHECK(rep.hodge_kernel_split);
        }
        auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
        CHECK(twisted.dims_agree);
        CHECK(twisted.harmonics_embed);
        CHECK(twisted.hodge_kernel_split);
    }
}

TEST_CASE("cohomology rejects twists outside the complex") {
    auto carriere = context_for("carriere");
    Form mu = expr(carriere, "mu", 1);
    CHECK_THROWS_AS(compute_cohomology(carriere, Complex::Basic, mu), ModelError);

    auto hopf = context_for("hopf");
    Form xi = expr(hopf, "xi", 1);
    CHECK_THROWS_AS(compute_cohomology(hopf, Complex::Basic, xi), ModelError);
}

TEST_CASE("duality pairs plain against twisted basic cohomology") {
    for (const auto& ctx : bundled_contexts()) {
        CAPTURE(ctx.model.generators.front());
        auto plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
        auto twisted = compute_cohomology(ctx, Complex::Basic, ctx.kappa_b);
        auto pairing = duality_check(ctx, plain, twisted);
        REQUIRE(pairing.size() == static_cast<std::size_t>(ctx.q) + 1);
        for (const auto& deg : pairing) {
            CAPTURE(deg.degree);
            CHECK(deg.dims_match);
            CHECK(deg.pairing_nonsingular);
        }
    }
}

TEST_CASE("tautness is decided consistently along both routes") {
    std::map<std::string, bool> expected = {
        {"hopf", true},         {"carriere", false},    {"solv-flow", true},
        {"solv-codim2", false}, {"solv-codim3", true},  {"torus", true},
        {"heisenberg3", true}};
    for (const auto& [name, taut] : expected) {
        auto ctx = context_for(name);
        auto plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
        auto rep = tautness(ctx, plain);
        CAPTURE(name);
        CHECK(rep.routes_agree);
        CHECK(rep.taut == taut);
        CHECK(rep.kappa_b_zero == taut);
        CHECK((rep.top_dim > 0) == taut);
    }
    for (const Scalar& k2 : {Scalar(2), Scalar(1), Scalar(-1)}) {
        auto ctx = context_for("doublesolv", doublesolv_binding(Scalar(1), k2));
        auto plain = compute_cohomology(ctx, Complex::Basic, Form::zero(1));
        auto rep = tautness(ctx, plain);
        CHECK(rep.routes_agree);
        CHECK_FALSE(rep.taut);
    }
}

TEST_CASE("long exact sequence requires a one-dimensional foliation") {
    for (const char* name : {"solv-codim2", "solv-codim3", "doublesolv", "torus",
                             "heisenberg3"}) {
        auto ctx = name == std::string("doublesolv")
                       ? context_for(name, doublesolv_binding(Scalar(1), Scalar(2)))
                       : context_for(name);
        auto rep = gysin_analysis(ctx);
        CAPTURE(name);
        CHECK_FALSE(rep.applicable);
        CHECK_FALSE(rep.reason.empty());
    }
}

TEST_CASE("long exact sequence of the taut sphere flow") {
    auto ctx = context_for("hopf");
    auto rep = gysin_analysis(ctx, true);
    REQUIRE(rep.applicable);
    CHECK(rep.dims_basic_twisted == std::vector<int>{1, 0, 1});
    CHECK(rep.dims_basic_plain == std::vector<int>{1, 0, 1});
    CHECK(rep.dims_subcomplex == std::vector<int>{1, 0, 0, 1});
    CHECK(rep.dims_full_twisted == std::vector<int>{1, 0, 0, 1});
    CHECK(rep.subcomplex_iso);
    CHECK(rep.re_representation_ok);
    CHECK(rep.exact_sequence);
    for (const auto& node : rep.nodes) {
        CAPTURE(node.label);
        CHECK(node.composite_zero);
        CHECK(node.exact);
    }
    CHECK(rep.phi0_class_nonzero);
    CHECK(rep.lemma_h1 == "verified");
    CHECK(rep.lemma_h2 == "verified");
    CHECK(rep.lemmas_ok);
}

TEST_CASE("long exact sequence of the hyperbolic suspension flow") {
    auto ctx = context_for("carriere");
    auto rep = gysin_analysis(ctx, true);
    REQUIRE(rep.applicable);
    CHECK(rep.dims_basic_twisted == std::vector<int>{0, 0, 0});
    CHECK(rep.dims_basic_plain == std::vector<int>{1, 1, 0});
    CHECK(rep.dims_subcomplex == std::vector<int>{0, 1, 1, 0});
    CHECK(rep.dims_full_twisted == std::vector<int>{0, 1, 1, 0});
    CHECK(rep.subcomplex_iso);
    CHECK(rep.re_representation_ok);
    CHECK(rep.exact_sequence);
    // phi0 vanishes identically for a Riemannian flow of this kind, so the
    // connecting map is zero and the window lemmas do not engage.
    CHECK(ctx.phi0.is_zero());
    CHECK_FALSE(rep.phi0_class_nonzero);
    CHECK(rep.lemma_h1 == "vacuous");
    CHECK(rep.lemma_h2 == "vacuous");
    CHECK(rep.lemmas_ok);
}

TEST_CASE("long exact sequence of the solvable flow") {
    auto ctx = context_for("solv-flow");
    auto rep = gysin_analysis(ctx, true);
    REQUIRE(rep.applicable);
    CHECK(rep.dims_basic_twisted == std::vector<int>{1, 1, 1, 1});
    CHECK(rep.dims_basic_plain == std::vector<int>{1, 1, 1, 1});
    CHECK(rep.dims_subcomplex == std::vector<int>{1, 1, 0, 1, 1});
    CHECK(rep.dims_full_twisted == std::vector<int>{1, 1, 0, 1, 1});
    CHECK(rep.subcomplex_iso);
    CHECK(rep.re_representation_ok);
    CHECK(rep.exact_sequence);
    CHECK(rep.phi0_class_nonzero);
    CHECK(rep.lemma_h1 == "verified");
    CHECK(rep.lemma_h2 == "verified");
    CHECK(rep.lemmas_ok);
}

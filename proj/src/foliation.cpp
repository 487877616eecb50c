#include "folcoh/foliation.hpp"

#include "folcoh/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace folcoh {

namespace {

int parity(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

std::vector<MultiIndex> transverse_index_sets(const FoliationContext& ctx, int r) {
    std::vector<MultiIndex> out;
    for (const auto& positions : all_index_sets(ctx.q, r)) {
        MultiIndex idx;
        idx.reserve(positions.size());
        for (int pos : positions)
            idx.push_back(ctx.transverse[static_cast<std::size_t>(pos)]);
        out.push_back(std::move(idx));
    }
    return out;
}

std::vector<Scalar> coordinates(const Form& a, const std::vector<MultiIndex>& order) {
    std::vector<Scalar> v;
    v.reserve(order.size());
    for (const auto& idx : order)
        v.push_back(a.coefficient(idx));
    return v;
}

bool contains_leafwise(const Model& m, const MultiIndex& idx) {
    return std::any_of(idx.begin(), idx.end(), [&](int i) { return m.is_leafwise(i); });
}

// Terms of a whose multi-index touches a leafwise generator.
Form leafwise_part(const Model& m, const Form& a) {
    Form out(a.degree());
    for (const auto& [idx, c] : a.terms())
        if (contains_leafwise(m, idx))
            out.add_term(idx, c);
    return out;
}

std::vector<Form> basic_basis_for_degree(const Model& m, const FoliationContext& ctx, int r) {
    auto candidates = transverse_index_sets(ctx, r);
    if (candidates.empty())
        return {};
    auto constraint_rows = all_index_sets(m.dim(), r + 1);
    std::erase_if(constraint_rows, [&](const MultiIndex& idx) { return !contains_leafwise(m, idx); });

    RatMatrix mat(constraint_rows.size(), candidates.size());
    for (std::size_t col = 0; col < candidates.size(); ++col) {
        Form d = differential(Form::monomial(candidates[col]), m);
        for (std::size_t row = 0; row < constraint_rows.size(); ++row)
            mat.at(row, col) = d.coefficient(constraint_rows[row]);
    }

    std::vector<Form> basis;
    for (const auto& vec : canonical_basis(mat.kernel())) {
        Form b(r);
        for (std::size_t col = 0; col < candidates.size(); ++col)
            b.add_term(candidates[col], vec[col]);
        basis.push_back(std::move(b));
    }
    return basis;
}

} // namespace

FoliationContext make_context(const Model& model) {
    FoliationContext ctx;
    ctx.model = model;
    ctx.leafwise = model.leafwise;
    ctx.p = static_cast<int>(ctx.leafwise.size());
    ctx.q = model.dim() - ctx.p;
    for (int i = 0; i < model.dim(); ++i)
        if (!model.is_leafwise(i))
            ctx.transverse.push_back(i);
    ctx.split_sign = ctx.p == 0 || ctx.q == 0
                         ? 1
                         : merge_sign(ctx.leafwise, ctx.transverse);

    ctx.chi = Form::monomial(ctx.leafwise);

    // d chi = -kappa ^ chi + phi0, where phi0 carries no term containing the
    // whole leafwise index set. Contracting the all-leafwise part with chi
    // recovers kappa up to the fixed sign.
    Form dchi = differential(ctx.chi, model);
    Form all_leafwise(dchi.degree());
    for (const auto& [idx, c] : dchi.terms())
        if (std::includes(idx.begin(), idx.end(), ctx.leafwise.begin(), ctx.leafwise.end()))
            all_leafwise.add_term(idx, c);
    ctx.kappa = contract(ctx.chi, all_leafwise) * Scalar(parity(ctx.p + 1));
    ctx.phi0 = dchi - all_leafwise;
    if (all_leafwise != -wedge(ctx.kappa, ctx.chi))
        throw ModelError("mean curvature decomposition residual is nonzero");

    for (int r = 0; r <= ctx.q; ++r)
        ctx.basic_bases.push_back(basic_basis_for_degree(model, ctx, r));

    ctx.kappa_b = basic_project(ctx, ctx.kappa);
    ctx.nu = basic_star(ctx, Form::scalar(Scalar(1)));
    return ctx;
}

bool is_transverse(const FoliationContext& ctx, const Form& a) {
    for (const auto& [idx, c] : a.terms())
        if (contains_leafwise(ctx.model, idx))
            return false;
    return true;
}

bool is_basic(const FoliationContext& ctx, const Form& a) {
    return is_transverse(ctx, a) && is_transverse(ctx, differential(a, ctx.model));
}

Form basic_project(const FoliationContext& ctx, const Form& a) {
    int r = a.degree();
    if (r > ctx.q || a.is_zero())
        return Form::zero(r);
    const auto& basis = ctx.basic_bases[static_cast<std::size_t>(r)];
    if (basis.empty())
        return Form::zero(r);

    // Solve the Gram system of the (independent) basis; monomial coordinates
    // make the inner products exact sums of products.
    RatMatrix gram(basis.size(), basis.size());
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            gram.at(i, j) = inner_product(basis[i], basis[j]);
        rhs.push_back(inner_product(basis[i], a));
    }
    auto sol = gram.solve(rhs);
    if (!sol)
        throw ModelError("singular Gram matrix for an independent basis");
    Form out(r);
    for (std::size_t i = 0; i < basis.size(); ++i)
        out = out + basis[i] * (*sol)[i];
    return out;
}

Form basic_star(const FoliationContext& ctx, const Form& a) {
    if (!is_transverse(ctx, a))
        throw ModelError("basic_star applied to a non-transverse form: " +
                         a.to_string(ctx.model.generators));
    int r = a.degree();
    return hodge(wedge(a, ctx.chi), ctx.dim()) * Scalar(parity(static_cast<long>(ctx.p) * (ctx.q - r)));
}

Form transverse_star_direct(const FoliationContext& ctx, const Form& a) {
    if (!is_transverse(ctx, a))
        throw ModelError("transverse star applied to a non-transverse form: " +
                         a.to_string(ctx.model.generators));
    int r = a.degree();
    std::vector<int> position(static_cast<std::size_t>(ctx.dim()), -1);
    for (std::size_t i = 0; i < ctx.transverse.size(); ++i)
        position[static_cast<std::size_t>(ctx.transverse[i])] = static_cast<int>(i);

    int overall = parity(static_cast<long>(ctx.p) * ctx.q) * ctx.split_sign;
    Form out(ctx.q - r);
    for (const auto& [idx, c] : a.terms()) {
        MultiIndex pos;
        pos.reserve(idx.size());
        for (int i : idx)
            pos.push_back(position[static_cast<std::size_t>(i)]);
        MultiIndex comp;
        std::size_t at = 0;
        for (int i = 0; i < ctx.q; ++i) {
            if (at < pos.size() && pos[at] == i)
                ++at;
            else
                comp.push_back(i);
        }
        int s = merge_sign(pos, comp);
        MultiIndex image;
        image.reserve(comp.size());
        for (int i : comp)
            image.push_back(ctx.transverse[static_cast<std::size_t>(i)]);
        out.add_term(image, c * s * overall);
    }
    return out;
}

Form delta_basic(const FoliationContext& ctx, const Form& a) {
    int r = a.degree();
    if (r == 0 || a.is_zero())
        return Form::zero(std::max(r - 1, 0));
    if (!is_basic(ctx, a))
        throw ModelError("delta_basic applied to a non-basic form: " +
                         a.to_string(ctx.model.generators));
    Form star_a = basic_star(ctx, a);
    Form inner = differential(star_a, ctx.model) - wedge(ctx.kappa_b, star_a);
    return basic_star(ctx, inner) * Scalar(parity(static_cast<long>(ctx.q) * (r + 1) + 1));
}

Form twisted_d(const Model& m, const Form& omega, const Form& a) {
    return differential(a, m) - wedge(omega, a);
}

Form twisted_delta_basic(const FoliationContext& ctx, const Form& omega, const Form& a) {
    return delta_basic(ctx, a) - contract(omega, a);
}

Form laplacian_basic(const FoliationContext& ctx, const Form& omega, const Form& a) {
    Form da = twisted_d(ctx.model, omega, a);
    Form upper = twisted_delta_basic(ctx, omega, da);
    if (a.degree() == 0)
        return upper;
    Form lower = twisted_d(ctx.model, omega, twisted_delta_basic(ctx, omega, a));
    return upper + lower;
}

Form delta_full(const Model& m, const Form& a) {
    int r = a.degree();
    if (r == 0 || a.is_zero())
        return Form::zero(std::max(r - 1, 0));
    int n = m.dim();
    return hodge(differential(hodge(a, n), m), n) * Scalar(parity(static_cast<long>(n) * (r + 1) + 1));
}

Form twisted_delta_full(const Model& m, const Form& omega, const Form& a) {
    return delta_full(m, a) - contract(omega, a);
}

Form laplacian_full(const Model& m, const Form& omega, const Form& a) {
    Form da = twisted_d(m, omega, a);
    Form upper = twisted_delta_full(m, omega, da);
    if (a.degree() == 0)
        return upper;
    Form lower = twisted_d(m, omega, twisted_delta_full(m, omega, a));
    return upper + lower;
}

Scalar norm_squared(const Form& a) { return inner_product(a, a); }

FlowReport flow_quantities(const FoliationContext& ctx) {
    if (ctx.p != 1)
        throw ModelError("flow quantities require exactly one leafwise generator");
    FlowReport rep;
    rep.xi_flat = ctx.chi;
    rep.kappa = ctx.kappa;
    rep.kappa_b = ctx.kappa_b;
    rep.phi0 = ctx.phi0;
    rep.phi0_norm_sq = norm_squared(ctx.phi0);
    rep.kappa_norm_sq = norm_squared(ctx.kappa);
    rep.kappa_is_basic = ctx.kappa == ctx.kappa_b;
    rep.kappa_b_harmonic = differential(ctx.kappa_b, ctx.model).is_zero() &&
                           delta_basic(ctx, ctx.kappa_b).is_zero();
    rep.phi0_is_basic = is_basic(ctx, ctx.phi0);

    Form delta_kappa = delta_basic(ctx, ctx.kappa_b);
    rep.lambda = -delta_kappa.coefficient({}) + rep.phi0_norm_sq / 2;

    if (!ctx.phi0.is_zero())
        rep.d_phi0_identity =
            differential(ctx.phi0, ctx.model) == -wedge(ctx.kappa, ctx.phi0);

    rep.laplacian_xi = laplacian_full(ctx.model, Form::zero(1), ctx.chi);
    if (rep.phi0_is_basic) {
        rep.delta_b_phi0 = delta_basic(ctx, ctx.phi0);
        Form expected = rep.laplacian_xi -
                        ctx.chi * (rep.phi0_norm_sq + rep.kappa_norm_sq);
        rep.delta_phi0_identity = rep.delta_b_phi0 == expected;
        rep.ricci_aligned = rep.delta_b_phi0 == -contract(ctx.kappa, ctx.phi0);
    }
    return rep;
}

std::vector<CheckResult> context_checks(const FoliationContext& ctx) {
    std::vector<CheckResult> checks;
    const auto& names = ctx.model.generators;
    auto record = [&](const std::string& name, bool pass, const std::string& witness) {
        checks.push_back({name, pass, pass ? "" : witness});
    };

    Form dchi = differential(ctx.chi, ctx.model);
    Form residual = dchi + wedge(ctx.kappa, ctx.chi) - ctx.phi0;
    record("mean_curvature_decomposition", residual.is_zero() && contract(ctx.chi, ctx.phi0).is_zero(),
           "residual " + residual.to_string(names));

    Form dkb = differential(ctx.kappa_b, ctx.model);
    record("kappa_b_closed", dkb.is_zero(), "d kappa_b = " + dkb.to_string(names));

    Form vol = Form::monomial(all_index_sets(ctx.dim(), ctx.dim()).front());
    Form chi_nu = wedge(ctx.chi, ctx.nu);
    Form expected_vol = vol * Scalar(parity(static_cast<long>(ctx.p) * ctx.q));
    record("chi_nu_volume", chi_nu == expected_vol, "chi ^ nu = " + chi_nu.to_string(names));

    bool star_routes = true;
    bool star_square = true;
    std::string star_witness;
    for (int r = 0; r <= ctx.q && (star_routes && star_square); ++r)
        for (const auto& idx : transverse_index_sets(ctx, r)) {
            Form mono = Form::monomial(idx);
            Form via_ambient = basic_star(ctx, mono);
            Form direct = transverse_star_direct(ctx, mono);
            if (via_ambient != direct) {
                star_routes = false;
                star_witness = "monomial " + mono.to_string(names);
                break;
            }
            Form twice = basic_star(ctx, via_ambient);
            if (twice != mono * Scalar(parity(static_cast<long>(r) * (ctx.q - r)))) {
                star_square = false;
                star_witness = "monomial " + mono.to_string(names);
                break;
            }
        }
    record("basic_star_routes_agree", star_routes, star_witness);
    record("basic_star_involution", star_square, star_witness);

    bool star_basic = true;
    std::string star_basic_witness;
    for (const auto& basis : ctx.basic_bases)
        for (const auto& b : basis)
            if (!is_basic(ctx, basic_star(ctx, b))) {
                star_basic = false;
                star_basic_witness = b.to_string(names);
            }
    record("basic_star_preserves_basic", star_basic, star_basic_witness);

    // The remaining identities apply delta_basic to starred forms, which only
    // makes sense when the star stays inside the basic subspace.
    if (star_basic) {
        Form delta_nu = delta_basic(ctx, ctx.nu);
        Form star_kappa = basic_star(ctx, ctx.kappa_b);
        record("delta_nu_is_star_kappa", delta_nu == star_kappa,
               "delta nu = " + delta_nu.to_string(names) +
                   ", star kappa_b = " + star_kappa.to_string(names));

        // Under the transverse star the basic codifferential turns into the
        // kappa_b-twisted differential (degree-dependent sign), and the basic
        // Laplacian into the twisted one with no sign at all.
        bool intertwine_delta = true;
        bool intertwine_laplace = true;
        std::string intertwine_witness;
        for (int r = 0; r <= ctx.q; ++r)
            for (const auto& b : ctx.basic_bases[static_cast<std::size_t>(r)]) {
                int c = parity(static_cast<long>(ctx.q) * (r + 1) + 1 +
                               static_cast<long>(ctx.q - r + 1) * (r - 1));
                Form lhs = basic_star(ctx, delta_basic(ctx, b));
                Form rhs = twisted_d(ctx.model, ctx.kappa_b, basic_star(ctx, b)) * Scalar(c);
                if (lhs != rhs) {
                    intertwine_delta = false;
                    intertwine_witness = b.to_string(names);
                }
                Form lap_lhs = laplacian_basic(ctx, Form::zero(1), basic_star(ctx, b));
                Form lap_rhs = basic_star(ctx, laplacian_basic(ctx, ctx.kappa_b, b));
                if (lap_lhs != lap_rhs) {
                    intertwine_laplace = false;
                    intertwine_witness = b.to_string(names);
                }
            }
        record("star_delta_intertwine", intertwine_delta, intertwine_witness);
        record("star_laplacian_intertwine", intertwine_laplace, intertwine_witness);
    }

    if (validate_model(ctx.model).unimodular) {
        bool adjoint = true;
        std::string adjoint_witness;
        for (int r = 0; r + 1 <= ctx.q && adjoint; ++r)
            for (const auto& a : ctx.basic_bases[static_cast<std::size_t>(r)]) {
                for (const auto& b : ctx.basic_bases[static_cast<std::size_t>(r) + 1])
                    if (inner_product(differential(a, ctx.model), b) !=
                        inner_product(a, delta_basic(ctx, b))) {
                        adjoint = false;
                        adjoint_witness = a.to_string(names) + " vs " + b.to_string(names);
                        break;
                    }
                if (!adjoint)
                    break;
            }
        record("basic_adjointness", adjoint, adjoint_witness);
    }
    return checks;
}

} // namespace folcoh

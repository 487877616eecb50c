#include "folcoh/cohomology.hpp"

#include "folcoh/linalg.hpp"

#include <functional>
#include <sstream>

namespace folcoh {

namespace {

using FormOp = std::function<Form(const Form&)>;

std::vector<Scalar> full_coords(const Form& a, int n) {
    std::vector<Scalar> v;
    for (const auto& idx : all_index_sets(n, a.degree()))
        v.push_back(a.coefficient(idx));
    return v;
}

Form form_from_coords(const std::vector<Scalar>& v, int n, int degree) {
    auto order = all_index_sets(n, degree);
    Form out(degree);
    for (std::size_t i = 0; i < order.size(); ++i)
        out.add_term(order[i], v[i]);
    return out;
}

std::vector<Form> combine(const std::vector<Form>& basis,
                          const std::vector<std::vector<Scalar>>& weights, int degree) {
    std::vector<Form> out;
    for (const auto& w : weights) {
        Form f(degree);
        for (std::size_t i = 0; i < basis.size(); ++i)
            f = f + basis[i] * w[i];
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Form> canonical_forms(const std::vector<Form>& forms, int n, int degree) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& f : forms)
        if (!f.is_zero())
            rows.push_back(full_coords(f, n));
    std::vector<Form> out;
    for (const auto& row : canonical_basis(rows))
        out.push_back(form_from_coords(row, n, degree));
    return out;
}

// Matrix of op over the given input basis, with rows indexed by full
// monomial coordinates of the output degree.
RatMatrix operator_matrix(const std::vector<Form>& basis, int n, int out_degree,
                          const FormOp& op) {
    auto out_order = all_index_sets(n, out_degree);
    RatMatrix m(out_order.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        Form image = op(basis[col]);
        for (std::size_t row = 0; row < out_order.size(); ++row)
            m.at(row, col) = image.coefficient(out_order[row]);
    }
    return m;
}

// Cohomology classes of one degree: cocycles modulo coboundaries, with a
// deterministic complement basis for quotient coordinates.
class ClassSpace {
public:
    ClassSpace() = default;
    ClassSpace(const std::vector<Form>& kernel_basis, const std::vector<Form>& image_basis,
               int n, int degree)
        : n_(n), degree_(degree) {
        for (const auto& f : image_basis)
            image_rows_.push_back(full_coords(f, n));
        image_rows_ = canonical_basis(image_rows_);
        std::vector<std::vector<Scalar>> accumulated = image_rows_;
        for (const auto& f : kernel_basis) {
            auto v = full_coords(f, n);
            if (!in_span(accumulated, v)) {
                accumulated.push_back(v);
                reps_.push_back(f);
                rep_rows_.push_back(v);
            }
        }
    }

    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<Form>& reps() const { return reps_; }

    // Quotient coordinates of a cocycle lying in the span of coboundaries
    // and representatives; throws when it does not.
    std::vector<Scalar> class_coords(const Form& z) const {
        if (z.is_zero())
            return std::vector<Scalar>(reps_.size(), Scalar(0));
        RatMatrix m;
        for (const auto& row : image_rows_)
            m.append_row(row);
        for (const auto& row : rep_rows_)
            m.append_row(row);
        if (m.rows() == 0)
            throw ModelError("class outside its cohomology space");
        auto sol = m.transposed().solve(full_coords(z, n_));
        if (!sol)
            throw ModelError("class outside its cohomology space");
        return std::vector<Scalar>(sol->begin() + static_cast<long>(image_rows_.size()),
                                   sol->end());
    }

private:
    int n_ = 0;
    int degree_ = 0;
    std::vector<Form> reps_;
    std::vector<std::vector<Scalar>> image_rows_;
    std::vector<std::vector<Scalar>> rep_rows_;
};

// Kernel and image form bases of a complex given by per-degree bases and a
// degree-raising operator.
struct ComplexData {
    std::vector<std::vector<Form>> kernels;  // per degree
    std::vector<std::vector<Form>> images;   // per degree (image landing there)
    std::vector<int> dims;                   // rank-nullity dimensions
};

ComplexData complex_data(const std::vector<std::vector<Form>>& bases, int n, const FormOp& op) {
    int top = static_cast<int>(bases.size()) - 1;
    ComplexData data;
    data.kernels.resize(bases.size());
    data.images.resize(bases.size());
    std::vector<std::size_t> ranks(bases.size(), 0);
    for (int r = 0; r <= top; ++r) {
        const auto& basis = bases[static_cast<std::size_t>(r)];
        int out_degree = r + 1;
        RatMatrix m = operator_matrix(basis, n, out_degree, op);
        auto kernel_weights = m.kernel();
        data.kernels[static_cast<std::size_t>(r)] =
            canonical_forms(combine(basis, kernel_weights, r), n, r);
        ranks[static_cast<std::size_t>(r)] = basis.size() - kernel_weights.size();
        if (r + 1 <= top) {
            std::vector<Form> images;
            for (const auto& b : basis)
                images.push_back(op(b));
            data.images[static_cast<std::size_t>(r) + 1] = canonical_forms(images, n, r + 1);
        }
    }
    for (int r = 0; r <= top; ++r) {
        std::size_t image_rank = data.images[static_cast<std::size_t>(r)].size();
        data.dims.push_back(static_cast<int>(
            data.kernels[static_cast<std::size_t>(r)].size() - image_rank));
    }
    return data;
}

std::vector<std::vector<Form>> complex_bases(const FoliationContext& ctx, Complex which) {
    if (which == Complex::Basic)
        return ctx.basic_bases;
    std::vector<std::vector<Form>> bases;
    for (int r = 0; r <= ctx.dim(); ++r) {
        std::vector<Form> monos;
        for (const auto& idx : all_index_sets(ctx.dim(), r))
            monos.push_back(Form::monomial(idx));
        bases.push_back(std::move(monos));
    }
    return bases;
}

} // namespace

CohomologyReport compute_cohomology(const FoliationContext& ctx, Complex which,
                                    const Form& twist) {
    const Model& m = ctx.model;
    const int n = ctx.dim();
    CohomologyReport rep;
    rep.complex = which;
    rep.twist = twist;
    rep.twist_closed = differential(twist, m).is_zero();
    if (!rep.twist_closed)
        throw ModelError("twist one-form is not closed: " + twist.to_string(m.generators));
    if (which == Complex::Basic && !is_basic(ctx, twist))
        throw ModelError("twist one-form is not basic: " + twist.to_string(m.generators));

    auto bases = complex_bases(ctx, which);
    FormOp d_tw = [&](const Form& a) { return twisted_d(m, twist, a); };
    FormOp delta_tw = which == Complex::Basic
                          ? FormOp([&](const Form& a) { return twisted_delta_basic(ctx, twist, a); })
                          : FormOp([&](const Form& a) { return twisted_delta_full(m, twist, a); });
    FormOp lap = which == Complex::Basic
                     ? FormOp([&](const Form& a) { return laplacian_basic(ctx, twist, a); })
                     : FormOp([&](const Form& a) { return laplacian_full(m, twist, a); });

    ComplexData data = complex_data(bases, n, d_tw);
    int top = static_cast<int>(bases.size()) - 1;
    for (int r = 0; r <= top; ++r) {
        const auto& basis = bases[static_cast<std::size_t>(r)];
        CohomologyDegree deg;
        deg.degree = r;
        deg.dim = data.dims[static_cast<std::size_t>(r)];
        deg.kernel_basis = data.kernels[static_cast<std::size_t>(r)];
        deg.image_basis = data.images[static_cast<std::size_t>(r)];

        RatMatrix lap_matrix = operator_matrix(basis, n, r, lap);
        auto harmonic_weights = lap_matrix.kernel();
        deg.dim_harmonic = static_cast<int>(harmonic_weights.size());
        deg.generators = canonical_forms(combine(basis, harmonic_weights, r), n, r);

        if (deg.dim != deg.dim_harmonic)
            rep.dims_agree = false;

        // ker Laplacian vs ker d intersect ker delta: stack both operator
        // matrices over the same basis.
        RatMatrix d_matrix = operator_matrix(basis, n, r + 1, d_tw);
        RatMatrix stacked;
        for (std::size_t row = 0; row < d_matrix.rows(); ++row) {
            std::vector<Scalar> v;
            for (std::size_t col = 0; col < d_matrix.cols(); ++col)
                v.push_back(d_matrix.at(row, col));
            stacked.append_row(v);
        }
        if (r > 0) {
            RatMatrix delta_matrix = operator_matrix(basis, n, r - 1, delta_tw);
            for (std::size_t row = 0; row < delta_matrix.rows(); ++row) {
                std::vector<Scalar> v;
                for (std::size_t col = 0; col < delta_matrix.cols(); ++col)
                    v.push_back(delta_matrix.at(row, col));
                stacked.append_row(v);
            }
        }
        if (!basis.empty() &&
            stacked.kernel().size() != static_cast<std::size_t>(deg.dim_harmonic))
            rep.hodge_kernel_split = false;

        // Harmonic representatives must be closed, co-closed, and span a
        // complement of the exact forms inside the closed ones.
        std::vector<std::vector<Scalar>> image_rows;
        for (const auto& f : deg.image_basis)
            image_rows.push_back(full_coords(f, n));
        std::size_t base_rank = span_rank(image_rows);
        for (const auto& g : deg.generators) {
            if (!d_tw(g).is_zero() || !delta_tw(g).is_zero())
                rep.harmonics_embed = false;
            image_rows.push_back(full_coords(g, n));
        }
        if (span_rank(image_rows) != base_rank + deg.generators.size())
            rep.harmonics_embed = false;

        rep.degrees.push_back(std::move(deg));
    }
    return rep;
}

std::vector<int> dims(const CohomologyReport& rep) {
    std::vector<int> out;
    for (const auto& deg : rep.degrees)
        out.push_back(deg.dim);
    return out;
}

std::vector<DualityDegree> duality_check(const FoliationContext& ctx,
                                         const CohomologyReport& plain,
                                         const CohomologyReport& twisted) {
    std::vector<DualityDegree> out;
    const int n = ctx.dim();
    MultiIndex vol_index = all_index_sets(n, n).front();
    for (int r = 0; r <= ctx.q; ++r) {
        DualityDegree deg;
        deg.degree = r;
        const auto& a_gens = plain.degrees[static_cast<std::size_t>(r)].generators;
        const auto& b_gens = twisted.degrees[static_cast<std::size_t>(ctx.q - r)].generators;
        deg.dim_plain = static_cast<int>(a_gens.size());
        deg.dim_twisted = static_cast<int>(b_gens.size());
        deg.dims_match = deg.dim_plain == deg.dim_twisted;
        if (deg.dims_match) {
            RatMatrix pairing(a_gens.size(), b_gens.size());
            for (std::size_t i = 0; i < a_gens.size(); ++i)
                for (std::size_t j = 0; j < b_gens.size(); ++j)
                    pairing.at(i, j) =
                        wedge(wedge(a_gens[i], b_gens[j]), ctx.chi).coefficient(vol_index);
            deg.pairing_nonsingular = pairing.rank() == a_gens.size();
        }
        out.push_back(deg);
    }
    return out;
}

TautnessReport tautness(const FoliationContext& ctx, const CohomologyReport& basic_plain) {
    TautnessReport rep;
    rep.kappa_b_zero = ctx.kappa_b.is_zero();
    rep.top_dim = basic_plain.degrees[static_cast<std::size_t>(ctx.q)].dim;
    rep.taut = rep.kappa_b_zero;
    rep.routes_agree = rep.kappa_b_zero == (rep.top_dim > 0);
    return rep;
}

namespace {

struct SequenceSpaces {
    std::vector<ClassSpace> twisted;  // H^r_{-kappa}(F), r = 0..q
    std::vector<ClassSpace> plain;    // H^r(F), r = 0..q
    std::vector<ClassSpace> sub;      // H^r(G), r = 0..q+1
};

int map_rank(const std::vector<Form>& sources, const FormOp& op, const ClassSpace& target) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& s : sources)
        rows.push_back(target.class_coords(op(s)));
    return static_cast<int>(span_rank(rows));
}

bool composite_vanishes(const std::vector<Form>& sources, const FormOp& first,
                        const FormOp& second, const ClassSpace& target) {
    for (const auto& s : sources)
        for (const Scalar& c : target.class_coords(second(first(s))))
            if (c != 0)
                return false;
    return true;
}

} // namespace

GysinReport gysin_analysis(const FoliationContext& ctx,
                           std::optional<bool> transversely_formal) {
    GysinReport rep;
    if (ctx.p != 1) {
        rep.reason = "requires a one-dimensional foliation";
        return rep;
    }
    if (ctx.kappa != ctx.kappa_b) {
        rep.reason = "requires a basic mean curvature form";
        return rep;
    }
    if (!differential(ctx.kappa_b, ctx.model).is_zero()) {
        rep.reason = "requires a closed mean curvature form";
        return rep;
    }
    rep.applicable = true;

    const Model& m = ctx.model;
    const int n = ctx.dim();
    const int q = ctx.q;
    Form minus_kappa = -ctx.kappa_b;
    FormOp d_tw = [&](const Form& a) { return twisted_d(m, minus_kappa, a); };
    FormOp d_plain = [&](const Form& a) { return differential(a, m); };

    // Subcomplex bases: G^r = basic^r + chi ^ basic^{r-1}.
    std::vector<std::vector<Form>> g_bases(static_cast<std::size_t>(q) + 2);
    for (int r = 0; r <= q + 1; ++r) {
        std::vector<Form>& basis = g_bases[static_cast<std::size_t>(r)];
        if (r <= q)
            basis = ctx.basic_bases[static_cast<std::size_t>(r)];
        if (r >= 1)
            for (const auto& c : ctx.basic_bases[static_cast<std::size_t>(r) - 1])
                basis.push_back(wedge(ctx.chi, c));
    }

    ComplexData twisted_data = complex_data(ctx.basic_bases, n, d_tw);
    ComplexData plain_data = complex_data(ctx.basic_bases, n, d_plain);
    ComplexData sub_data = complex_data(g_bases, n, d_tw);
    ComplexData full_data = complex_data(complex_bases(ctx, Complex::Full), n, d_tw);

    rep.dims_basic_twisted = twisted_data.dims;
    rep.dims_basic_plain = plain_data.dims;
    rep.dims_subcomplex = sub_data.dims;
    rep.dims_full_twisted = full_data.dims;

    SequenceSpaces spaces;
    for (int r = 0; r <= q; ++r) {
        spaces.twisted.emplace_back(twisted_data.kernels[static_cast<std::size_t>(r)],
                                    twisted_data.images[static_cast<std::size_t>(r)], n, r);
        spaces.plain.emplace_back(plain_data.kernels[static_cast<std::size_t>(r)],
                                  plain_data.images[static_cast<std::size_t>(r)], n, r);
    }
    for (int r = 0; r <= q + 1; ++r)
        spaces.sub.emplace_back(sub_data.kernels[static_cast<std::size_t>(r)],
                                sub_data.images[static_cast<std::size_t>(r)], n, r);

    // Inclusion G -> full twisted complex must induce isomorphisms; since the
    // dimensions are checked equal, injectivity suffices.
    rep.subcomplex_iso = true;
    for (int r = 0; r <= q + 1; ++r) {
        ClassSpace full_space(full_data.kernels[static_cast<std::size_t>(r)],
                              full_data.images[static_cast<std::size_t>(r)], n, r);
        int sub_dim = spaces.sub[static_cast<std::size_t>(r)].dim();
        if (sub_dim != full_space.dim() ||
            map_rank(spaces.sub[static_cast<std::size_t>(r)].reps(),
                     [](const Form& a) { return a; }, full_space) != sub_dim)
            rep.subcomplex_iso = false;
    }
    for (int r = q + 2; r <= n; ++r)
        if (full_data.dims[static_cast<std::size_t>(r)] != 0)
            rep.subcomplex_iso = false;

    // Every full twisted class must be reachable from G: solve
    // g + d_tw(u) = generator with g in G^r, u over all (r-1)-monomials.
    rep.re_representation_ok = true;
    for (int r = 0; r <= q + 1; ++r) {
        ClassSpace full_space(full_data.kernels[static_cast<std::size_t>(r)],
                              full_data.images[static_cast<std::size_t>(r)], n, r);
        auto out_order = all_index_sets(n, r);
        for (const auto& gen : full_space.reps()) {
            std::vector<std::vector<Scalar>> cols;
            for (const auto& g : g_bases[static_cast<std::size_t>(r)])
                cols.push_back(full_coords(g, n));
            if (r >= 1)
                for (const auto& idx : all_index_sets(n, r - 1))
                    cols.push_back(full_coords(d_tw(Form::monomial(idx)), n));
            RatMatrix mat(out_order.size(), cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t row = 0; row < out_order.size(); ++row)
                    mat.at(row, c) = cols[c][row];
            if (!mat.solve(full_coords(gen, n)))
                rep.re_representation_ok = false;
        }
    }

    // The three maps of the sequence, as operations on representatives.
    FormOp incl = [](const Form& a) { return a; };
    FormOp fiber = [&](const Form& a) { return contract(ctx.chi, a); };
    FormOp connecting = [&](const Form& a) { return wedge(ctx.phi0, a); };

    auto twisted_at = [&](int r) -> const ClassSpace* {
        return (r >= 0 && r <= q) ? &spaces.twisted[static_cast<std::size_t>(r)] : nullptr;
    };
    auto plain_at = [&](int r) -> const ClassSpace* {
        return (r >= 0 && r <= q) ? &spaces.plain[static_cast<std::size_t>(r)] : nullptr;
    };
    auto sub_at = [&](int r) -> const ClassSpace* {
        return (r >= 0 && r <= q + 1) ? &spaces.sub[static_cast<std::size_t>(r)] : nullptr;
    };

    auto add_node = [&](const std::string& label, const ClassSpace& at, int rank_in,
                        int rank_out, bool composite) {
        GysinNode node;
        node.label = label;
        node.dim = at.dim();
        node.rank_in = rank_in;
        node.rank_out = rank_out;
        node.composite_zero = composite;
        node.exact = composite && rank_in + rank_out == node.dim;
        rep.nodes.push_back(node);
    };

    rep.exact_sequence = true;
    for (int r = 0; r <= q; ++r) {
        // Node H^r_{-kappa}(F): in from H^{r-2}(F) by phi0, out by inclusion.
        const ClassSpace& at = *twisted_at(r);
        const ClassSpace* pre = plain_at(r - 2);
        int rank_in = pre ? map_rank(pre->reps(), connecting, at) : 0;
        int rank_out = map_rank(at.reps(), incl, *sub_at(r));
        bool comp = pre ? composite_vanishes(pre->reps(), connecting, incl, *sub_at(r)) : true;
        std::ostringstream label;
        label << "H^" << r << "_tw(F)";
        add_node(label.str(), at, rank_in, rank_out, comp);
    }
    for (int r = 0; r <= q + 1; ++r) {
        // Node H^r(G): in by inclusion, out by fiber contraction.
        const ClassSpace& at = *sub_at(r);
        const ClassSpace* pre = twisted_at(r);
        const ClassSpace* post = plain_at(r - 1);
        int rank_in = pre ? map_rank(pre->reps(), incl, at) : 0;
        int rank_out = post ? map_rank(at.reps(), fiber, *post) : 0;
        bool comp = pre && post ? composite_vanishes(pre->reps(), incl, fiber, *post) : true;
        std::ostringstream label;
        label << "H^" << r << "(G)";
        add_node(label.str(), at, rank_in, rank_out, comp);
    }
    for (int r = 0; r <= q; ++r) {
        // Node H^r(F): in by fiber contraction from H^{r+1}(G), out by phi0.
        const ClassSpace& at = *plain_at(r);
        const ClassSpace* pre = sub_at(r + 1);
        const ClassSpace* post = twisted_at(r + 2);
        int rank_in = pre ? map_rank(pre->reps(), fiber, at) : 0;
        int rank_out = post ? map_rank(at.reps(), connecting, *post) : 0;
        bool comp = pre && post ? composite_vanishes(pre->reps(), fiber, connecting, *post) : true;
        std::ostringstream label;
        label << "H^" << r << "(F)";
        add_node(label.str(), at, rank_in, rank_out, comp);
    }
    for (const auto& node : rep.nodes)
        if (!node.exact)
            rep.exact_sequence = false;

    // Flow observations driven by the class of phi0.
    if (q >= 2) {
        const ClassSpace& h2 = *twisted_at(2);
        for (const Scalar& c : h2.class_coords(wedge(ctx.phi0, Form::scalar(Scalar(1)))))
            if (c != 0)
                rep.phi0_class_nonzero = true;
    }
    auto verdict = [&](bool hypothesis, bool conclusion) -> std::string {
        if (!hypothesis)
            return "vacuous";
        return conclusion ? "verified" : "FALSIFIED";
    };
    bool h1_iso = q >= 1 && rep.dims_basic_twisted[1] == rep.dims_full_twisted[1] &&
                  map_rank(spaces.twisted[1].reps(), incl, spaces.sub[1]) ==
                      rep.dims_basic_twisted[1] &&
                  rep.subcomplex_iso;
    rep.lemma_h1 = verdict(rep.phi0_class_nonzero, h1_iso);
    bool h2_window = q >= 2 && 1 <= rep.dims_basic_twisted[2] &&
                     rep.dims_basic_twisted[2] <= 1 + rep.dims_full_twisted[2];
    rep.lemma_h2 = verdict(rep.phi0_class_nonzero, h2_window);

    // Minimal flow with positive lambda and a transversely formal quotient:
    // a vanishing basic betti number pins the neighbouring full ones.
    FlowReport flow = flow_quantities(ctx);
    bool minimal = ctx.kappa.is_zero();
    bool hyp_base = minimal && flow.lambda > 0 && transversely_formal.value_or(false);
    if (!transversely_formal.has_value()) {
        rep.prop_minimal = "not evaluated (formality verdict not supplied)";
    } else {
        std::ostringstream out;
        bool any = false;
        bool all_hold = true;
        for (int r = 1; r + 1 <= q; ++r) {
            if (!hyp_base || rep.dims_basic_plain[static_cast<std::size_t>(r)] != 0)
                continue;
            bool holds = rep.dims_full_twisted[static_cast<std::size_t>(r) + 1] <=
                             rep.dims_basic_plain[static_cast<std::size_t>(r) + 1] &&
                         rep.dims_basic_plain[static_cast<std::size_t>(r) + 1] <=
                             rep.dims_full_twisted[static_cast<std::size_t>(r) + 2];
            if (!holds)
                all_hold = false;
            if (any)
                out << ", ";
            out << "r=" << r << ": " << (holds ? "verified" : "FALSIFIED");
            any = true;
        }
        rep.prop_minimal = any ? out.str() : "vacuous";
        if (any && !all_hold)
            rep.lemmas_ok = false;
    }
    if (rep.lemma_h1 == "FALSIFIED" || rep.lemma_h2 == "FALSIFIED")
        rep.lemmas_ok = false;
    return rep;
}

} // namespace folcoh

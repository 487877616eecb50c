#pragma once

#include "folcoh/model.hpp"

#include <optional>

namespace folcoh {

// Derived data for the leafwise/transverse split of a coframe model.
//
// chi is the wedge of the leafwise generators in ascending index order.
// Writing d chi = -kappa ^ chi + phi0 with contract(chi, phi0) = 0 recovers
// the mean curvature one-form kappa and the curvature term phi0; kappa_b is
// the component of kappa inside the basic subspace.
//
// basic_bases[r] is an RREF-canonical basis (over transverse monomial
// coordinates, lexicographic order) of the forms annihilated by leafwise
// contraction together with their differentials.
struct FoliationContext {
    Model model;
    int p = 0;                   // leafwise rank
    int q = 0;                   // transverse rank
    std::vector<int> leafwise;   // ascending generator indices
    std::vector<int> transverse; // ascending generator indices
    int split_sign = 1;          // parity of sorting (leafwise | transverse)
    Form chi;
    Form kappa;
    Form kappa_b;
    Form phi0;
    Form nu;                     // basic_star of the constant 1
    std::vector<std::vector<Form>> basic_bases; // degree 0..q

    int dim() const { return model.dim(); }
};

// Assumes the model already passed validate_model. A model with no leafwise
// generators is handled as the trivial split p = 0 (everything transverse,
// chi = 1, kappa = 0, every form basic).
FoliationContext make_context(const Model& model);

// True when every monomial of a uses only transverse indices.
bool is_transverse(const FoliationContext& ctx, const Form& a);

// Transverse with a transverse differential.
bool is_basic(const FoliationContext& ctx, const Form& a);

// Component of a in the span of basic_bases[deg a] with respect to the
// coefficient inner product.
Form basic_project(const FoliationContext& ctx, const Form& a);

// Star operator of the local quotient, computed through the ambient star as
// (-1)^{p(q-r)} hodge(a ^ chi) on transverse r-forms. Throws ModelError on
// non-transverse input. Squares to (-1)^{r(q-r)}.
Form basic_star(const FoliationContext& ctx, const Form& a);

// The same operator computed inside the transverse index set (star of the
// q-dimensional quotient times the split orientation factor). Used as an
// independent route to cross-check basic_star.
Form transverse_star_direct(const FoliationContext& ctx, const Form& a);

// Codifferential of the basic complex on basic r-forms:
//   (-1)^{q(r+1)+1} basic_star((d - kappa_b ^) basic_star(a)).
// Throws ModelError when a is not basic.
Form delta_basic(const FoliationContext& ctx, const Form& a);

// d a - omega ^ a. Callers are responsible for omega being closed; that is
// what makes the square of the operator vanish.
Form twisted_d(const Model& m, const Form& omega, const Form& a);

// delta_basic(a) - contract(omega, a): the adjoint of twisted_d on the basic
// complex (wedging and contraction by omega are adjoint to each other).
Form twisted_delta_basic(const FoliationContext& ctx, const Form& omega, const Form& a);

Form laplacian_basic(const FoliationContext& ctx, const Form& omega, const Form& a);

// Codifferential of the full complex: (-1)^{n(r+1)+1} hodge(d(hodge(a))).
Form delta_full(const Model& m, const Form& a);
Form twisted_delta_full(const Model& m, const Form& omega, const Form& a);
Form laplacian_full(const Model& m, const Form& omega, const Form& a);

Scalar norm_squared(const Form& a);

// Mean curvature data of a one-dimensional foliation (p == 1).
//
// lambda = -delta_b kappa_b + |phi0|^2 / 2 as a number (the degree-0 part).
// The two structural identities
//   d phi0 = -kappa ^ phi0
//   delta_b phi0 = laplacian(xi_flat) - (|phi0|^2 + |kappa|^2) xi_flat
// hold whenever kappa is basic (first) resp. basic harmonic (second); the
// report records the hypotheses alongside the outcomes so callers can tell a
// falsified identity from an inapplicable one. ricci_aligned records whether
// delta_b phi0 = -contract(kappa, phi0), which needs the flow direction to
// be a Ricci eigenvector and is reported without being enforced.
struct FlowReport {
    Form xi_flat;
    Form kappa;
    Form kappa_b;
    Form phi0;
    Scalar lambda;
    Scalar phi0_norm_sq;
    Scalar kappa_norm_sq;
    bool kappa_is_basic = false;
    bool kappa_b_harmonic = false;
    bool phi0_is_basic = false;
    std::optional<bool> d_phi0_identity;      // unset when phi0 vanishes trivially rules nothing out
    std::optional<bool> delta_phi0_identity;  // unset when phi0 is not basic
    std::optional<bool> ricci_aligned;
    Form delta_b_phi0;
    Form laplacian_xi;
};

// Requires p == 1; throws ModelError otherwise.
FlowReport flow_quantities(const FoliationContext& ctx);

// Runtime verification of the operator conventions on the concrete model:
// the Rummler decomposition residual, closedness of kappa_b, the volume
// normalization chi ^ nu = (-1)^{pq} vol, agreement of the two basic_star
// routes, the star involution sign, preservation of the basic subspace by
// basic_star, delta_basic(nu) = basic_star(kappa_b), the intertwining of
// delta_basic with the kappa_b-twisted differential under basic_star, the
// matching Laplacian intertwining, and (on unimodular models) pointwise
// adjointness of d and delta_basic across consecutive basic degrees.
std::vector<CheckResult> context_checks(const FoliationContext& ctx);

} // namespace folcoh

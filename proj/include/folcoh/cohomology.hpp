#pragma once

#include "folcoh/foliation.hpp"

namespace folcoh {

enum class Complex { Basic, Full };

struct CohomologyDegree {
    int degree = 0;
    int dim = 0;                 // dimension by rank-nullity (always valid)
    int dim_harmonic = 0;        // kernel of the twisted Laplacian
    std::vector<Form> generators;   // harmonic representatives, RREF-canonical
    std::vector<Form> kernel_basis; // closed forms
    std::vector<Form> image_basis;  // exact forms
};

// Cohomology of the basic or full complex twisted by a closed one-form
// (d_omega = d - omega ^). Two independent routes are recorded: rank-nullity
// of the twisted differential, and the kernel of the twisted Laplacian. They
// coincide exactly when the combinatorial codifferential is a genuine
// adjoint, which holds on unimodular models; callers decide how to treat a
// mismatch elsewhere.
struct CohomologyReport {
    Complex complex = Complex::Basic;
    Form twist;
    bool twist_closed = true;
    bool dims_agree = true;          // dim == dim_harmonic in every degree
    bool harmonics_embed = true;     // generators closed, co-closed, independent mod exact
    bool hodge_kernel_split = true;  // ker Laplacian == ker d intersect ker delta
    std::vector<CohomologyDegree> degrees;  // 0..q (basic) or 0..n (full)
};

// For the basic complex the twist must itself be basic. Throws ModelError on
// a twist that is not closed or lies outside the complex.
CohomologyReport compute_cohomology(const FoliationContext& ctx, Complex which,
                                    const Form& twist);

std::vector<int> dims(const CohomologyReport& rep);

// Pairing of H^r(F) with the kappa_b-twisted H^{q-r}(F): the volume
// coefficient of a_i ^ b_j ^ chi must assemble into a nonsingular matrix.
struct DualityDegree {
    int degree = 0;
    int dim_plain = 0;
    int dim_twisted = 0;
    bool dims_match = false;
    bool pairing_nonsingular = false;
};

std::vector<DualityDegree> duality_check(const FoliationContext& ctx,
                                         const CohomologyReport& plain,
                                         const CohomologyReport& twisted);

// Tautness of the foliation, decided along two routes that must agree:
// vanishing of kappa_b (exactness of the mean curvature class reduces to
// that over constant basic functions) and non-vanishing of top basic
// cohomology.
struct TautnessReport {
    bool kappa_b_zero = false;
    int top_dim = 0;          // dim H^q(F)
    bool taut = false;
    bool routes_agree = false;
};

TautnessReport tautness(const FoliationContext& ctx, const CohomologyReport& basic_plain);

// Long exact sequence of a one-dimensional foliation with basic mean
// curvature, built from the subcomplex G^r = basic^r + chi ^ basic^{r-1} of
// the (d + kappa ^)-twisted full complex:
//   ... -> H^r_{-k}(F) -> H^r(G) -> H^{r-1}(F) -> H^{r+1}_{-k}(F) -> ...
// with H^r(G) checked to be isomorphic to the twisted cohomology of the full
// complex through the inclusion.
struct GysinNode {
    std::string label;
    int dim = 0;
    int rank_in = 0;
    int rank_out = 0;
    bool composite_zero = false;
    bool exact = false;
};

struct GysinReport {
    bool applicable = false;
    std::string reason;
    std::vector<int> dims_basic_twisted;  // H^r_{-kappa}(F), r = 0..q
    std::vector<int> dims_basic_plain;    // H^r(F),          r = 0..q
    std::vector<int> dims_subcomplex;     // H^r(G),          r = 0..q+1
    std::vector<int> dims_full_twisted;   // H^r_{-kappa}(M), r = 0..n
    bool subcomplex_iso = false;
    bool re_representation_ok = false;  // full classes re-represented inside G
    std::vector<GysinNode> nodes;
    bool exact_sequence = false;
    bool phi0_class_nonzero = false;  // [phi0] in H^2_{-kappa}(F)
    std::string lemma_h1;             // nonzero [phi0] forces H^1_{-k}(F) = H^1_{-k}(M)
    std::string lemma_h2;             // and pins dim H^2_{-k}(F) into [1, 1 + dim H^2_{-k}(M)]
    std::string prop_minimal;         // betti windows for minimal formal flows with lambda > 0
    bool lemmas_ok = true;
};

GysinReport gysin_analysis(const FoliationContext& ctx,
                           std::optional<bool> transversely_formal = std::nullopt);

} // namespace folcoh

#pragma once

#include "folcoh/cohomology.hpp"

namespace folcoh {

struct WedgePair {
    Form left;
    Form right;
};

// Transverse formality of the foliation.
//
// H collects the harmonic representatives of the plain basic complex, K the
// representatives of the kappa_b-twisted one. Two equivalent formulations
// are evaluated independently and must agree:
//   wedge route:    every H x K product is twisted-harmonic,
//   interior route: every H x H contraction is plain-harmonic.
// The transverse star turns one family of products into the other, so a
// verdict mismatch indicates an operator bug rather than a property of the
// model. K x K contractions under the plain Laplacian are recorded as an
// extra observable without feeding the verdict.
struct TransverseFormalityReport {
    std::vector<std::vector<Form>> harmonic_plain;    // degree 0..q
    std::vector<std::vector<Form>> harmonic_twisted;  // degree 0..q
    bool wedge_formal = true;
    bool interior_formal = true;
    bool verdicts_agree = true;
    std::vector<bool> formal_in_degree;  // r: H^r x K^{q-r} products harmonic
    std::optional<WedgePair> first_failure;
    int failure_count = 0;
    bool kk_contractions_harmonic = true;
    bool formal = true;
};

TransverseFormalityReport transverse_formality(const FoliationContext& ctx);

// Wedge closure of the harmonic forms of the full complex.
struct GeometricFormalityReport {
    std::vector<std::vector<Form>> harmonic;  // degree 0..n
    bool formal = true;
    std::optional<WedgePair> first_failure;
    int failure_count = 0;
};

GeometricFormalityReport geometric_formality(const FoliationContext& ctx);

// Consequences of formality that the model must not contradict. Each row
// evaluates a hypothesis and a conclusion; a true hypothesis with a false
// conclusion is reported as FALSIFIED and treated as a failed check by the
// driver.
struct DiagnosticResult {
    std::string name;
    std::string status;  // "verified" | "vacuous" | "FALSIFIED"
    std::string detail;
};

std::vector<DiagnosticResult> run_diagnostics(const FoliationContext& ctx);

} // namespace folcoh

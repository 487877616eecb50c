#pragma once

#include "folcoh/form.hpp"

#include <map>
#include <string>
#include <vector>

namespace folcoh {

// Manifest or expression syntax problem, or an unbound parameter. Maps to
// the usage exit code in the CLI.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency breach (an invariant that valid inputs cannot reach).
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constant-coefficient coframe model: generators e^0..e^{n-1} (orthonormal,
// orientation = declaration order), structure equations d e^i as invariant
// 2-forms, and an optional set of leafwise generators defining a foliation.
// Parameters are bound to exact rationals at parse time.
struct Model {
    std::vector<std::string> generators;
    std::map<std::string, int> generator_index;
    std::vector<Form> d_generator;      // degree-2 form per generator
    std::vector<int> leafwise;          // sorted generator indices
    std::vector<std::string> param_order;
    std::map<std::string, Scalar> params;

    int dim() const { return static_cast<int>(generators.size()); }
    bool is_leafwise(int i) const;
    bool has_foliation() const { return !leafwise.empty(); }

    // Structure constants c^k_{ij} of d e^k = sum_{i<j} c^k_{ij} e^i ^ e^j,
    // extended antisymmetrically in (i, j). The dual bracket satisfies
    // [X_i, X_j] = -sum_k c^k_{ij} X_k.
    Scalar structure_constant(int k, int i, int j) const;

    bool operator==(const Model& other) const;
};

// Parses the line-oriented manifest grammar:
//   generator <name>
//   param <name> = <rational>
//   d <name> = <sum of terms>       (omitted lines mean d = 0)
//   leafwise <name> [<name> ...]
//   # comment
// A term is a signed product of rationals and parameter names followed by a
// wedge monomial <name>^<name>...; '/' divides by the next factor. Wedge
// monomials may only reference declared generators. `overrides` binds or
// re-binds parameters; every referenced parameter must end up bound.
Model parse_manifest(const std::string& text,
                     const std::map<std::string, Scalar>& overrides = {});

// Canonical manifest text for a parsed model; parse_manifest(echo_manifest(m))
// reproduces m exactly (coefficients are echoed as bound rationals).
std::string echo_manifest(const Model& m);

// Parses a standalone form expression (e.g. a twist 1-form) over the model's
// generators, binding parameters from the model. expected_degree < 0 skips
// the homogeneity check.
Form parse_form_expr(const std::string& text, const Model& m, int expected_degree = -1);

// Invariant exterior derivative: extends the structure equations to all
// degrees by the graded Leibniz rule.
Form differential(const Form& a, const Model& m);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness;
};

// Structural validation. `checks` carries d^2 = 0, normal-bundle
// involutivity, and the bundle-like (Riemannian) bracket condition;
// non-unimodularity is a warning only (adjointness of the combinatorial
// codifferentials can fail on non-unimodular models).
struct ValidationReport {
    std::vector<CheckResult> checks;
    bool unimodular = true;
    std::string unimodular_witness;
    bool ok() const;
};

ValidationReport validate_model(const Model& m);

} // namespace folcoh

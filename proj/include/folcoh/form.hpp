#pragma once

#include "folcoh/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace folcoh {

// Strictly increasing list of generator indices. The empty index is the
// degree-0 monomial (the constant function 1).
using MultiIndex = std::vector<int>;

// Homogeneous exterior form over an orthonormal coframe, stored sparsely as
// multi-index -> coefficient. Invariants: every key is strictly increasing,
// has size == degree, and maps to a nonzero coefficient.
class Form {
public:
    Form() = default;
    explicit Form(int degree) : degree_(degree) {}

    static Form zero(int degree) { return Form(degree); }
    static Form scalar(const Scalar& c);
    // idx must be strictly increasing; throws otherwise.
    static Form monomial(const MultiIndex& idx, const Scalar& coeff = Scalar(1));

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Scalar>& terms() const { return terms_; }

    Scalar coefficient(const MultiIndex& idx) const;
    // Adds c * e^idx, dropping the term if the total cancels.
    void add_term(const MultiIndex& idx, const Scalar& c);

    Form operator+(const Form& other) const;
    Form operator-(const Form& other) const;
    Form operator-() const;
    Form operator*(const Scalar& c) const;
    bool operator==(const Form& other) const;
    bool operator!=(const Form& other) const { return !(*this == other); }

    // Largest generator index used, or -1 for scalar/zero forms.
    int max_index() const;

    // Renders as a sum of "<coeff> name^name" terms in lexicographic
    // multi-index order; "0" when zero. Degree-0 terms render as the bare
    // coefficient.
    std::string to_string(const std::vector<std::string>& names) const;

private:
    int degree_ = 0;
    std::map<MultiIndex, Scalar> terms_;
};

// Sign of the permutation that sorts the concatenation (a, b) of two
// disjoint increasing multi-indices; 0 if they intersect.
int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex* merged = nullptr);

// Exterior product. Degrees add.
Form wedge(const Form& a, const Form& b);

// Interior product (contraction) characterized by
//   <contract(a, b), c> = <b, wedge(a, c)>
// for the monomial inner product below. Returns zero when deg a > deg b.
Form contract(const Form& a, const Form& b);

// Pointwise inner product of same-degree forms; monomials are orthonormal.
Scalar inner_product(const Form& a, const Form& b);

// Hodge star for the n-dimensional model whose orientation is the generator
// order 0..n-1: hodge(e^I) = sign(I, I^c) e^{I^c}, so that a ^ hodge(b)
// = <a,b> vol. Satisfies hodge(hodge(a)) = (-1)^{r(n-r)} a.
Form hodge(const Form& a, int n);

// All strictly increasing r-element subsets of {0..n-1} in lexicographic
// order; the coordinate system used for operator matrices.
std::vector<MultiIndex> all_index_sets(int n, int r);

} // namespace folcoh

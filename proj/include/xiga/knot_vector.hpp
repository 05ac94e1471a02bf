#pragma once

#include <array>
#include <vector>

namespace xiga {

// Open (clamped) knot vector together with its polynomial degree.
// End knots carry multiplicity degree+1, so the basis interpolates the
// first and last control point and the parametric domain is
// [front(), back()].
class KnotVector {
public:
    KnotVector(std::vector<double> knots, int degree);

    // Uniform open knot vector on [0,1] with n_elements nonempty spans.
    static KnotVector open_uniform(int degree, int n_elements);

    int degree() const { return degree_; }
    int num_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
    int num_elements() const { return static_cast<int>(element_spans_.size()); }
    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }

    // Span index i with knots[i] <= u < knots[i+1] (right limit at
    // repeated knots); u == back() returns the last nonempty span.
    // Throws std::domain_error outside [front(), back()].
    int find_span(double u) const;

    // Indices of the nonempty spans, in parametric order.
    const std::vector<int>& element_spans() const { return element_spans_; }

    // Greville abscissa of basis function i.
    double greville(int i) const;

    bool operator==(const KnotVector&) const = default;

private:
    std::vector<double> knots_;
    int degree_;
    std::vector<int> element_spans_;
};

// Values and first two derivatives of the degree+1 basis functions that
// are nonzero on the span containing u. Function k in the arrays is the
// global basis function span - degree + k.
struct BasisEval {
    int span = 0;
    int degree = 0;
    std::array<double, 16> value{};
    std::array<double, 16> d1{};
    std::array<double, 16> d2{};

    int count() const { return degree + 1; }
    int first_index() const { return span - degree; }
};

// Span-local evaluation of nonzero basis functions with derivatives up
// to second order. Degrees above 15 are rejected (fixed local storage).
BasisEval eval_basis(const KnotVector& kv, double u);

// Same, but forcing evaluation relative to a given nonempty span whose
// closure contains u. Used to probe one-sided limits at interior knots.
BasisEval eval_basis_in_span(const KnotVector& kv, double u, int span);

} // namespace xiga

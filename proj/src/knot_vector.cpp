#include "xiga/knot_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace xiga {

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
    if (degree_ < 1 || degree_ > 15)
        throw std::invalid_argument(fmt::format("knot vector: degree {} out of range [1,15]", degree_));
    const auto n = static_cast<int>(knots_.size());
    if (n < 2 * (degree_ + 1))
        throw std::invalid_argument("knot vector: too few knots for degree");
    if (!std::is_sorted(knots_.begin(), knots_.end()))
        throw std::invalid_argument("knot vector: knots must be non-decreasing");

    auto multiplicity_at = [&](int start) {
        int m = 1;
        while (start + m < n && knots_[start + m] == knots_[start]) ++m;
        return m;
    };
    if (multiplicity_at(0) != degree_ + 1)
        throw std::invalid_argument("knot vector: first knot must have multiplicity degree+1");
    int last_start = n - 1;
    while (last_start > 0 && knots_[last_start - 1] == knots_[n - 1]) --last_start;
    if (n - last_start != degree_ + 1)
        throw std::invalid_argument("knot vector: last knot must have multiplicity degree+1");
    // Interior multiplicities above the degree would make the basis
    // discontinuous; reject them here so downstream code can assume
    // C^0 continuity at worst.
    for (int i = degree_ + 1; i < n - degree_ - 1;) {
        int m = multiplicity_at(i);
        if (m > degree_)
            throw std::invalid_argument("knot vector: interior knot multiplicity exceeds degree");
        i += m;
    }
    if (knots_.front() == knots_.back())
        throw std::invalid_argument("knot vector: zero-length parametric domain");

    for (int i = degree_; i < n - degree_ - 1; ++i)
        if (knots_[i] < knots_[i + 1]) element_spans_.push_back(i);
}

KnotVector KnotVector::open_uniform(int degree, int n_elements) {
    if (n_elements < 1)
        throw std::invalid_argument("knot vector: need at least one element");
    std::vector<double> k;
    k.reserve(2 * (degree + 1) + n_elements - 1);
    for (int i = 0; i <= degree; ++i) k.push_back(0.0);
    for (int i = 1; i < n_elements; ++i)
        k.push_back(static_cast<double>(i) / n_elements);
    for (int i = 0; i <= degree; ++i) k.push_back(1.0);
    return KnotVector(std::move(k), degree);
}

int KnotVector::find_span(double u) const {
    if (u < front() || u > back())
        throw std::domain_error(
            fmt::format("parameter {} outside knot range [{}, {}]", u, front(), back()));
    if (u == back()) return element_spans_.back();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    int span = static_cast<int>(it - knots_.begin()) - 1;
    return std::clamp(span, degree_, static_cast<int>(knots_.size()) - degree_ - 2);
}

double KnotVector::greville(int i) const {
    if (i < 0 || i >= num_basis())
        throw std::out_of_range("greville: basis index out of range");
    double s = 0.0;
    for (int k = 1; k <= degree_; ++k) s += knots_[i + k];
    return s / degree_;
}

namespace {

// Basis values and derivatives on one span, after Cox-de Boor with the
// inverted triangular scheme for derivatives (The NURBS Book, A2.3),
// specialized to two derivative orders.
void ders_basis(const std::vector<double>& U, int p, double u, int span,
                BasisEval& out) {
    constexpr int kMaxP = 15;
    double ndu[kMaxP + 1][kMaxP + 1];
    double left[kMaxP + 1], right[kMaxP + 1];
    double a[2][kMaxP + 1];

    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = u - U[span + 1 - j];
        right[j] = U[span + j] - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    for (int j = 0; j <= p; ++j) out.value[j] = ndu[j][p];

    const int nder = std::min(2, p);
    double ders[3][kMaxP + 1] = {};
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int k = 1; k <= nder; ++k) {
            double d = 0.0;
            int rk = r - k, pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            int j1 = (rk >= -1) ? 1 : -rk;
            int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double rfact = static_cast<double>(p);
    for (int k = 1; k <= nder; ++k) {
        for (int j = 0; j <= p; ++j) ders[k][j] *= rfact;
        rfact *= (p - k);
    }
    for (int j = 0; j <= p; ++j) {
        out.d1[j] = ders[1][j];
        out.d2[j] = ders[2][j];
    }
}

} // namespace

BasisEval eval_basis(const KnotVector& kv, double u) {
    return eval_basis_in_span(kv, u, kv.find_span(u));
}

BasisEval eval_basis_in_span(const KnotVector& kv, double u, int span) {
    const auto& U = kv.knots();
    const int p = kv.degree();
    if (span < p || span >= static_cast<int>(U.size()) - p - 1 || U[span] == U[span + 1])
        throw std::invalid_argument("eval_basis: not a nonempty span index");
    if (u < U[span] - 1e-12 || u > U[span + 1] + 1e-12)
        throw std::domain_error("eval_basis: parameter outside requested span");
    BasisEval out;
    out.span = span;
    out.degree = p;
    ders_basis(U, p, u, span, out);
    return out;
}

} // namespace xiga

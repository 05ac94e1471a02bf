#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "xiga/patch.hpp"
#include "xiga/quadrature.hpp"

namespace xiga {

// Local frame at a crack tip. The tangent points ahead of the tip
// (away from the crack), so the crack faces sit at theta = +-pi.
struct TipFrame {
    Eigen::Vector2d tip;
    Eigen::Vector2d tangent;
    Eigen::Vector2d normal;

    // (r, theta) of x in this frame, theta in (-pi, pi].
    std::pair<double, double> polar(const Eigen::Vector2d& x) const;
};

// Near-tip enrichment basis evaluated at a physical point: the
// r^{3/2} set spans the translation variables (second derivatives
// included, they enter the bending curvatures), the r^{1/2} set spans
// the shear rotations (first derivatives only).
struct BranchEval {
    std::array<double, 4> t{}, t_x{}, t_y{}, t_xx{}, t_yy{}, t_xy{};
    std::array<double, 4> s{}, s_x{}, s_y{};
};

BranchEval eval_branches(const TipFrame& frame, const Eigen::Vector2d& x);

// Anchor-value helpers for shifted enrichment: when the anchor point
// happens to sit exactly on the crack line (or tip), it is nudged to
// the side consistent with element classification.
int anchor_heaviside(const class CrackModel& crack, const Eigen::Vector2d& x);
BranchEval anchor_branches(const TipFrame& frame, double scale,
                           const Eigen::Vector2d& x);

// Straight through crack lying along a parametric coordinate line of
// the patch. Physical endpoints a, b; endpoints strictly inside the
// domain are tips and carry a local frame.
class CrackModel {
public:
    // Locates the parametric trace of segment a-b on the patch (the
    // segment must follow a u- or v-coordinate line) and identifies
    // which endpoints are interior tips.
    static CrackModel on_patch(const Patch& patch, const Eigen::Vector2d& a,
                               const Eigen::Vector2d& b);

    const Eigen::Vector2d& a() const { return a_; }
    const Eigen::Vector2d& b() const { return b_; }
    Eigen::Vector2d tangent() const { return tangent_; }
    Eigen::Vector2d normal() const { return normal_; }
    double length() const { return (b_ - a_).norm(); }

    const std::vector<TipFrame>& tips() const { return tips_; }

    // +1 / -1 side of the crack line; throws when x is within
    // 1e-14 * scale of the line (side undefined).
    int heaviside(const Eigen::Vector2d& x) const;

    // Parametric trace: the crack occupies {cross = cross_line,
    // along in [along_lo, along_hi]} with "along" being u when
    // along_u(), else v.
    bool along_u() const { return along_u_; }
    double cross_line() const { return cross_line_; }
    double along_lo() const { return along_lo_; }
    double along_hi() const { return along_hi_; }
    // Tip id at the lo/hi parametric end, or -1 when that end reaches
    // the domain boundary.
    int tip_at_lo() const { return tip_at_lo_; }
    int tip_at_hi() const { return tip_at_hi_; }

    double scale() const { return scale_; }

private:
    Eigen::Vector2d a_, b_, tangent_, normal_;
    std::vector<TipFrame> tips_;
    bool along_u_ = true;
    double cross_line_ = 0, along_lo_ = 0, along_hi_ = 0;
    int tip_at_lo_ = -1, tip_at_hi_ = -1;
    double scale_ = 1.0;
};

enum class ElementCut { Standard, Cut, Tip };

// Where enrichment lives: element classification plus the control
// point sets. Control points supporting a tip element get the branch
// set; control points supporting only cut elements get the step set.
struct EnrichmentPlan {
    std::vector<ElementCut> element_class; // per element, v-major
    std::vector<int> element_tip;          // tip id for Tip elements, else -1
    std::vector<signed char> heaviside_cp; // 0/1 per control point
    std::vector<int> tip_cp;               // tip id per control point, else -1
    int n_heaviside_cp = 0;
    int n_tip_cp = 0;

    bool any_enrichment() const { return n_heaviside_cp + n_tip_cp > 0; }
};

// Parametric rectangles of the nonempty spans, v-major.
struct ElementRect {
    int span_u, span_v;
    double u0, u1, v0, v1;
};
std::vector<ElementRect> element_grid(const Patch& patch);

EnrichmentPlan classify(const Patch& patch, const CrackModel& crack);
EnrichmentPlan no_enrichment(const Patch& patch);

// How enriched elements are integrated. Conforming subdivides cut
// elements along the crack trace and clusters a dense rule around each
// tip; FullGauss keeps the plain (p+1) x (q+1) tensor rule everywhere,
// sampling the discontinuity instead of resolving it. FullGauss exists
// to expose quadrature sensitivity: it under-integrates the enriched
// energy and drifts a few tenths of a percent soft on the benchmark
// problems, so Conforming is the default everywhere.
enum class CutQuadrature { Conforming, FullGauss };

// Quadrature for one element in parameter space. Standard elements get
// the (p+1) x (q+1) tensor rule; cut elements a crack-conforming
// sub-triangulation; tip elements a dense tensor rule on the four
// quadrants meeting at the tip (under FullGauss, every class gets the
// plain tensor rule).
std::vector<QuadPoint2D> element_quadrature(const Patch& patch,
                                            const EnrichmentPlan& plan,
                                            const CrackModel* crack,
                                            int element_id,
                                            CutQuadrature mode = CutQuadrature::Conforming);

} // namespace xiga

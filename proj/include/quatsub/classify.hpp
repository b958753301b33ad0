#ifndef QUATSUB_CLASSIFY_HPP
#define QUATSUB_CLASSIFY_HPP

#include "quatsub/structure.hpp"

#include <array>
#include <string>
#include <vector>

namespace quatsub {

enum class PerRVerdict { InvariantMixed, AntiInvariant, LagrangianVertical };
enum class OverallVerdict { HAntiInvariant, HLagrangian, None };

inline const char* per_r_name(PerRVerdict v) {
    switch (v) {
        case PerRVerdict::InvariantMixed: return "invariant-mixed";
        case PerRVerdict::AntiInvariant: return "anti-invariant";
        case PerRVerdict::LagrangianVertical: return "Lagrangian-vertical";
    }
    return "?";
}
inline const char* overall_name(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::HAntiInvariant: return "h-anti-invariant";
        case OverallVerdict::HLagrangian: return "h-Lagrangian";
        case OverallVerdict::None: return "none";
    }
    return "?";
}

struct ObstructionReport {
    bool equal_dims = false;  // dim ker == dim horizontal
    std::string note;
};

// Remark-level dimension obstructions: with m = n no h-anti-invariant submersion
// exists (K = IJ would map ker back into ker), and the I,J-vertical pattern is
// equally impossible.
inline ObstructionReport dimension_obstruction(const SubmersionFixture& fix) {
    ObstructionReport rep;
    rep.equal_dims = fix.fiber_dim() == fix.base_dim();
    if (rep.equal_dims)
        rep.note =
            "dim ker F_* = dim (ker F_*)^perp: h-anti-invariance impossible a priori; "
            "so is the pattern I(ker)=ker, J(ker)=ker, K(ker)=(ker)^perp";
    return rep;
}

struct ClassificationVerdict {
    std::array<PerRVerdict, 3> per_r{PerRVerdict::InvariantMixed, PerRVerdict::InvariantMixed,
                                     PerRVerdict::InvariantMixed};
    OverallVerdict overall = OverallVerdict::None;
    double worst_angle = 0.0;  // worst principal-angle residual behind the verdict
    VectorXd offending_point;  // set when verdicts differ across samples
    bool uniform = true;
    ObstructionReport obstruction;
};

namespace detail {

// Maximal principal angle of span(R Vb) against the range of projector P,
// measured through the g-norm of the projection complement (stable near 0).
inline double subspace_angle(const MatrixXd& G, const MatrixXd& cols, const MatrixXd& P) {
    double worst = 0.0;
    for (int c = 0; c < cols.cols(); ++c) {
        VectorXd w = cols.col(c);
        double s = gnorm(G, VectorXd(w - P * w)) / std::max(1e-300, gnorm(G, w));
        worst = std::max(worst, std::asin(std::min(1.0, s)));
    }
    return worst;
}

}  // namespace detail

inline ClassificationVerdict classify(const SubmersionFixture& fix, const StructureTriple& triple,
                                      const std::vector<VectorXd>& points,
                                      double angle_tol = 1e-8) {
    ClassificationVerdict out;
    bool first = true;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        std::array<PerRVerdict, 3> here;
        for (RTag r : kRTags) {
            MatrixXd RV = triple.eval(r, p) * ctx.Vb;
            double ah = detail::subspace_angle(ctx.G.val, RV, ctx.Ph.val);
            double av = detail::subspace_angle(ctx.G.val, RV, ctx.Pv.val);
            out.worst_angle = std::max(out.worst_angle, std::min(ah, av));
            PerRVerdict v = PerRVerdict::InvariantMixed;
            if (ah < angle_tol) v = PerRVerdict::AntiInvariant;
            else if (av < angle_tol) v = PerRVerdict::LagrangianVertical;
            here[static_cast<int>(r)] = v;
        }
        if (first) {
            out.per_r = here;
            first = false;
        } else if (here != out.per_r) {
            out.uniform = false;
            out.offending_point = p;
            out.overall = OverallVerdict::None;
            return out;
        }
    }

    out.obstruction = dimension_obstruction(fix);
    const bool all_anti = out.per_r[0] == PerRVerdict::AntiInvariant &&
                          out.per_r[1] == PerRVerdict::AntiInvariant &&
                          out.per_r[2] == PerRVerdict::AntiInvariant;
    if (all_anti) {
        if (out.obstruction.equal_dims)
            throw std::logic_error(
                "internal inconsistency: all three structures measured anti-invariant with "
                "dim ker = dim horizontal (contradicts K = IJ)");
        out.overall = OverallVerdict::HAntiInvariant;
    } else if (out.per_r[0] == PerRVerdict::AntiInvariant &&
               out.per_r[2] == PerRVerdict::AntiInvariant &&
               out.per_r[1] == PerRVerdict::LagrangianVertical &&
               fix.fiber_dim() == fix.base_dim()) {
        out.overall = OverallVerdict::HLagrangian;
    } else {
        out.overall = OverallVerdict::None;
    }
    return out;
}

}  // namespace quatsub

#endif  // QUATSUB_CLASSIFY_HPP

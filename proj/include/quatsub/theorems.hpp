#ifndef QUATSUB_THEOREMS_HPP
#define QUATSUB_THEOREMS_HPP

#include "quatsub/classify.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace quatsub {

// ---------------------------------------------------------------------------
// Foliation flags

enum class FoliationTag { Vertical, Horizontal };

struct FoliationFlags {
    FoliationTag tag = FoliationTag::Vertical;
    bool totally_geodesic = false;
    bool umbilic = false;
    bool spheric = false;
    double tg_residual = 0.0;
    double umbilic_residual = 0.0;
    double spheric_residual = 0.0;
    bool spheric_checked = false;
};

namespace detail {

// Second fundamental form of the distribution at ctx.p over its g-orthonormal
// frame: h(b_i, b_j) = complement part of nabla_{b_i} (projected extension of b_j).
inline std::vector<std::vector<VectorXd>> dist_sff(const PointContext& ctx, FoliationTag tag) {
    const bool vert = tag == FoliationTag::Vertical;
    const MatrixXd& B = vert ? ctx.Vb : ctx.Hb;
    const MatJet& own = vert ? ctx.Pv : ctx.Ph;
    const MatrixXd& Pc = vert ? ctx.Ph.val : ctx.Pv.val;
    const int k = static_cast<int>(B.cols());
    std::vector<std::vector<VectorXd>> h(k, std::vector<VectorXd>(k));
    for (int j = 0; j < k; ++j) {
        VecJet ext = own.apply(VectorXd(B.col(j)));
        for (int i = 0; i < k; ++i)
            h[i][j] = Pc * covariant_derivative(ctx.Gamma, VectorXd(B.col(i)), ext);
    }
    return h;
}

inline VectorXd dist_mean_curvature(const SubmersionFixture& fix, FoliationTag tag,
                                    const VectorXd& q) {
    PointContext ctx = point_context(fix, q);
    MeanCurvatureReport mc = mean_curvatures(ctx);
    return tag == FoliationTag::Vertical ? mc.H : mc.H_perp;
}

}  // namespace detail

inline FoliationFlags foliation_flags(const SubmersionFixture& fix, FoliationTag tag,
                                      const std::vector<VectorXd>& points,
                                      double tol = kDefaultTol, bool check_spheric = true,
                                      double spheric_tol = 1e-4, double fd_step = 1e-5) {
    FoliationFlags f;
    f.tag = tag;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        auto h = detail::dist_sff(ctx, tag);
        const int k = static_cast<int>(h.size());
        VectorXd H = VectorXd::Zero(ctx.dim());
        for (int i = 0; i < k; ++i) H += h[i][i];
        H /= std::max(1, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                f.tg_residual = std::max(f.tg_residual, gnorm(ctx.G.val, h[i][j]));
                VectorXd dev = h[i][j] - (i == j ? 1.0 : 0.0) * H;
                f.umbilic_residual = std::max(f.umbilic_residual, gnorm(ctx.G.val, dev));
            }
        if (check_spheric) {
            // nabla_{b_i} H through central differences of the end-to-end H pipeline.
            const MatrixXd& B = tag == FoliationTag::Vertical ? ctx.Vb : ctx.Hb;
            const MatrixXd& Pc = tag == FoliationTag::Vertical ? ctx.Ph.val : ctx.Pv.val;
            MatrixXd dH(ctx.dim(), ctx.dim());
            for (int c = 0; c < ctx.dim(); ++c) {
                VectorXd pp = p, pm = p;
                pp(c) += fd_step;
                pm(c) -= fd_step;
                dH.col(c) =
                    (detail::dist_mean_curvature(fix, tag, pp) -
                     detail::dist_mean_curvature(fix, tag, pm)) /
                    (2.0 * fd_step);
            }
            for (int i = 0; i < k; ++i) {
                VectorXd b = B.col(i);
                VectorXd nab = dH * b;
                for (int c = 0; c < ctx.dim(); ++c) nab(c) += b.dot(ctx.Gamma[c] * H);
                f.spheric_residual = std::max(f.spheric_residual, gnorm(ctx.G.val, VectorXd(Pc * nab)));
            }
        }
    }
    f.totally_geodesic = f.tg_residual < tol;
    f.umbilic = f.umbilic_residual < tol;
    f.spheric_checked = check_spheric;
    f.spheric = check_spheric && f.umbilic && f.spheric_residual < spheric_tol;
    return f;
}

// ---------------------------------------------------------------------------
// Product classification (most specific label wins; ties resolve downward)

enum class ProductType { RiemannianProduct, Warped, Twisted, DoubleTwisted, NotPerpendicularOrNone };

inline const char* product_name(ProductType t) {
    switch (t) {
        case ProductType::RiemannianProduct: return "RiemannianProduct";
        case ProductType::Warped: return "Warped";
        case ProductType::Twisted: return "Twisted";
        case ProductType::DoubleTwisted: return "DoubleTwisted";
        case ProductType::NotPerpendicularOrNone: return "NotPerpendicularOrNone";
    }
    return "?";
}

struct ProductReport {
    ProductType type = ProductType::NotPerpendicularOrNone;
    FoliationFlags horizontal;  // L1
    FoliationFlags vertical;    // L2
};

inline ProductReport product_classification(const SubmersionFixture& fix,
                                            const std::vector<VectorXd>& points,
                                            double tol = kDefaultTol) {
    ProductReport rep;
    rep.horizontal = foliation_flags(fix, FoliationTag::Horizontal, points, tol);
    rep.vertical = foliation_flags(fix, FoliationTag::Vertical, points, tol);
    const auto& h = rep.horizontal;
    const auto& v = rep.vertical;
    if (h.totally_geodesic && v.totally_geodesic) rep.type = ProductType::RiemannianProduct;
    else if (h.totally_geodesic && v.spheric) rep.type = ProductType::Warped;
    else if (h.totally_geodesic && v.umbilic) rep.type = ProductType::Twisted;
    else if (h.umbilic && v.umbilic) rep.type = ProductType::DoubleTwisted;
    else rep.type = ProductType::NotPerpendicularOrNone;
    return rep;
}

// ---------------------------------------------------------------------------
// Theorem reports

struct TheoremReport {
    std::string id;
    bool applicable = true;            // hypothesis satisfied on all samples
    std::string variant;               // "h-anti-invariant", "h-Lagrangian", "direct"
    double condition_residual = 0.0;
    double direct_residual = 0.0;
    bool condition_pass = true;
    bool direct_pass = true;
    bool equivalent = true;            // the two verdicts agree
    bool pass = false;                 // applicable && equivalent (or check-specific)
    std::string note;
};

namespace detail {

struct RContext {
    MatrixXd R;       // endomorphism value at p
    MatJet Rjet;
    MatrixXd rker;    // R(vertical basis), g-orthonormal
    MatrixXd mu;      // g-orthonormal mu_R basis
};

inline RContext r_context(const PointContext& ctx, const StructureTriple& t, RTag r) {
    RContext rc;
    rc.Rjet = t.eval_jet(r, ctx.p);
    rc.R = rc.Rjet.val;
    rc.rker = rc.R * ctx.Vb;
    MatrixXd cand(ctx.dim(), rc.rker.cols() + ctx.Hb.cols());
    cand << rc.rker, ctx.Hb;
    MatrixXd full = gram_schmidt(ctx.G.val, cand);
    rc.mu = full.rightCols(full.cols() - rc.rker.cols());
    return rc;
}

inline VectorXd q_r(const RContext& rc, const MatrixXd& G, const VectorXd& x) {
    return x - rc.rker * (rc.rker.transpose() * G * x);
}
inline double dist_to_mu(const RContext& rc, const MatrixXd& G, const VectorXd& x) {
    if (rc.mu.cols() == 0) return gnorm(G, x);
    return gnorm(G, VectorXd(x - rc.mu * (rc.mu.transpose() * G * x)));
}

inline std::string variant_name(OverallVerdict v) {
    switch (v) {
        case OverallVerdict::HAntiInvariant: return "h-anti-invariant";
        case OverallVerdict::HLagrangian: return "h-Lagrangian";
        default: return "inapplicable";
    }
}

}  // namespace detail

// Theorem 3.1(a): integrability of the horizontal distribution, measured as
// the vertical part of brackets of projector-extended horizontal frame fields.
inline TheoremReport horizontal_integrability(const SubmersionFixture& fix,
                                              const std::vector<VectorXd>& points,
                                              double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "integrability";
    rep.variant = "direct";
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (int i = 0; i < ctx.n(); ++i)
            for (int j = i + 1; j < ctx.n(); ++j) {
                VectorXd br = lie_bracket(horizontal_extension(fix, ctx.Hb.col(i)),
                                          horizontal_extension(fix, ctx.Hb.col(j)), p);
                rep.direct_residual =
                    std::max(rep.direct_residual, gnorm(ctx.G.val, VectorXd(ctx.Pv.val * br)));
            }
    }
    rep.direct_pass = rep.direct_residual < tol;
    rep.condition_residual = rep.direct_residual;
    rep.condition_pass = rep.direct_pass;
    rep.pass = true;  // a measurement, not an equivalence
    rep.note = rep.direct_pass ? "integrable" : "not integrable";
    return rep;
}

struct Thm31Sides {
    double lhs = 0.0;      // g(A_x B_R y - A_y B_R x, Rv)
    double rhs = 0.0;      // g(C_R y, R A_x v) - g(C_R x, R A_y v)
    double bracket = 0.0;  // g([X,Y], v) with projector-extended horizontal fields
};

inline Thm31Sides thm31_sides(const SubmersionFixture& fix, const StructureTriple& t, RTag r,
                              const VectorXd& x, const VectorXd& y, const VectorXd& v,
                              const PointContext& ctx) {
    detail::RContext rc = detail::r_context(ctx, t, r);
    const MatrixXd& G = ctx.G.val;
    VectorXd By = ctx.Pv.val * (rc.R * y), Bx = ctx.Pv.val * (rc.R * x);
    VectorXd Cy = ctx.Ph.val * (rc.R * y), Cx = ctx.Ph.val * (rc.R * x);
    VectorXd Rv = rc.R * v;
    Thm31Sides s;
    s.lhs = gdot(G, VectorXd(oneill_A(ctx, x, By) - oneill_A(ctx, y, Bx)), Rv);
    s.rhs = gdot(G, Cy, VectorXd(rc.R * oneill_A(ctx, x, v))) -
            gdot(G, Cx, VectorXd(rc.R * oneill_A(ctx, y, v)));
    VectorXd br = lie_bracket(horizontal_extension(fix, x), horizontal_extension(fix, y), ctx.p);
    s.bracket = gdot(G, br, v);
    return s;
}

// Theorem 3.1 / its h-Lagrangian companion as a two-path sweep; also reports
// the worst proof-identity residual |lhs - rhs - g([X,Y],v)|.
struct Thm31Report {
    TheoremReport report;
    double worst_identity_residual = 0.0;
    double max_abs_term = 0.0;  // largest |lhs| seen (nonzero-term witness)
};

inline Thm31Report thm31_check(const SubmersionFixture& fix, const StructureTriple& t,
                               const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    Thm31Report out;
    TheoremReport& rep = out.report;
    rep.id = "thm31";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return out;
    }
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (RTag r : kRTags) {
            if (cls.overall == OverallVerdict::HLagrangian) {
                // companion lemma: A_X RY = A_Y RX
                detail::RContext rc = detail::r_context(ctx, t, r);
                for (int i = 0; i < ctx.n(); ++i)
                    for (int j = i + 1; j < ctx.n(); ++j) {
                        VectorXd d = oneill_A(ctx, ctx.Hb.col(i), VectorXd(rc.R * ctx.Hb.col(j))) -
                                     oneill_A(ctx, ctx.Hb.col(j), VectorXd(rc.R * ctx.Hb.col(i)));
                        rep.condition_residual =
                            std::max(rep.condition_residual, gnorm(ctx.G.val, d));
                    }
                continue;
            }
            for (int i = 0; i < ctx.n(); ++i)
                for (int j = i + 1; j < ctx.n(); ++j)
                    for (int k = 0; k < ctx.m(); ++k) {
                        Thm31Sides s = thm31_sides(fix, t, r, ctx.Hb.col(i), ctx.Hb.col(j),
                                                   ctx.Vb.col(k), ctx);
                        out.worst_identity_residual = std::max(
                            out.worst_identity_residual, std::abs(s.lhs - s.rhs - s.bracket));
                        out.max_abs_term = std::max(out.max_abs_term, std::abs(s.lhs));
                        rep.condition_residual =
                            std::max(rep.condition_residual, std::abs(s.lhs - s.rhs));
                    }
        }
        // direct: vertical part of horizontal brackets
        for (int i = 0; i < ctx.n(); ++i)
            for (int j = i + 1; j < ctx.n(); ++j) {
                VectorXd br = lie_bracket(horizontal_extension(fix, ctx.Hb.col(i)),
                                          horizontal_extension(fix, ctx.Hb.col(j)), p);
                rep.direct_residual =
                    std::max(rep.direct_residual, gnorm(ctx.G.val, VectorXd(ctx.Pv.val * br)));
            }
    }
    rep.condition_pass = rep.condition_residual < tol;
    rep.direct_pass = rep.direct_residual < tol;
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return out;
}

// Theorem 3.2 / Lemma companion: horizontal distribution totally geodesic.
inline TheoremReport thm32_check(const SubmersionFixture& fix, const StructureTriple& t,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "thm32";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return rep;
    }
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (RTag r : kRTags) {
            detail::RContext rc = detail::r_context(ctx, t, r);
            const MatrixXd& G = ctx.G.val;
            for (int i = 0; i < ctx.n(); ++i)
                for (int j = 0; j < ctx.n(); ++j) {
                    if (cls.overall == OverallVerdict::HLagrangian) {
                        rep.condition_residual = std::max(
                            rep.condition_residual,
                            gnorm(G, oneill_A(ctx, ctx.Hb.col(i), VectorXd(rc.R * ctx.Hb.col(j)))));
                        continue;
                    }
                    VectorXd Bj = ctx.Pv.val * (rc.R * ctx.Hb.col(j));
                    VectorXd Cj = ctx.Ph.val * (rc.R * ctx.Hb.col(j));
                    for (int k = 0; k < ctx.m(); ++k) {
                        double lhs = gdot(G, oneill_A(ctx, ctx.Hb.col(i), Bj),
                                          VectorXd(rc.R * ctx.Vb.col(k)));
                        double rhs =
                            gdot(G, Cj, VectorXd(rc.R * oneill_A(ctx, ctx.Hb.col(i), ctx.Vb.col(k))));
                        rep.condition_residual = std::max(rep.condition_residual, std::abs(lhs - rhs));
                    }
                }
        }
        // direct: vertical part of nabla over horizontal frame pairs
        for (int i = 0; i < ctx.n(); ++i)
            for (int j = 0; j < ctx.n(); ++j)
                rep.direct_residual =
                    std::max(rep.direct_residual,
                             gnorm(ctx.G.val, oneill_A(ctx, ctx.Hb.col(i), VectorXd(ctx.Hb.col(j)))));
    }
    rep.condition_pass = rep.condition_residual < tol;
    rep.direct_pass = rep.direct_residual < tol;
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return rep;
}

// Theorem 3.3 / Lemma companion: vertical distribution totally geodesic.
inline TheoremReport thm33_check(const SubmersionFixture& fix, const StructureTriple& t,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "thm33";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return rep;
    }
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (RTag r : kRTags) {
            detail::RContext rc = detail::r_context(ctx, t, r);
            for (int k = 0; k < ctx.m(); ++k)
                for (int j = 0; j < ctx.n(); ++j) {
                    if (cls.overall == OverallVerdict::HLagrangian) {
                        rep.condition_residual = std::max(
                            rep.condition_residual,
                            gnorm(ctx.G.val,
                                  oneill_T(ctx, ctx.Vb.col(k), VectorXd(rc.R * ctx.Hb.col(j)))));
                        continue;
                    }
                    VectorXd Bj = ctx.Pv.val * (rc.R * ctx.Hb.col(j));
                    VectorXd Cj = ctx.Ph.val * (rc.R * ctx.Hb.col(j));
                    VectorXd w = oneill_T(ctx, ctx.Vb.col(k), Bj) +
                                 oneill_A(ctx, Cj, VectorXd(ctx.Vb.col(k)));
                    rep.condition_residual =
                        std::max(rep.condition_residual, detail::dist_to_mu(rc, ctx.G.val, w));
                }
        }
        for (int i = 0; i < ctx.m(); ++i)
            for (int j = 0; j < ctx.m(); ++j)
                rep.direct_residual =
                    std::max(rep.direct_residual,
                             gnorm(ctx.G.val, oneill_T(ctx, ctx.Vb.col(i), VectorXd(ctx.Vb.col(j)))));
    }
    rep.condition_pass = rep.condition_residual < tol;
    rep.direct_pass = rep.direct_residual < tol;
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return rep;
}

// Theorem 3.4 / Lemma companion: the map is totally geodesic.
inline TheoremReport thm34_check(const SubmersionFixture& fix, const StructureTriple& t,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "thm34";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return rep;
    }
    const bool lagr = cls.overall == OverallVerdict::HLagrangian;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (RTag r : kRTags) {
            detail::RContext rc = detail::r_context(ctx, t, r);
            const MatrixXd& G = ctx.G.val;
            for (int k = 0; k < ctx.m(); ++k) {
                // RV as a genuine field: q -> R(q) Pv(q) v_k
                VecJet RV = rc.Rjet.apply(ctx.Pv.apply(as_jet(ctx, VectorXd(ctx.Vb.col(k)))));
                for (int i = 0; i < ctx.n(); ++i) {
                    rep.condition_residual = std::max(
                        rep.condition_residual, gnorm(G, oneill_A(ctx, ctx.Hb.col(i), RV)));
                    if (!lagr) {
                        VectorXd hdv =
                            ctx.Ph.val * covariant_derivative(ctx.Gamma, VectorXd(ctx.Hb.col(i)), RV);
                        rep.condition_residual =
                            std::max(rep.condition_residual, gnorm(G, detail::q_r(rc, G, hdv)));
                    }
                }
                for (int l = 0; l < ctx.m(); ++l) {
                    VecJet RW = rc.Rjet.apply(ctx.Pv.apply(as_jet(ctx, VectorXd(ctx.Vb.col(l)))));
                    rep.condition_residual = std::max(
                        rep.condition_residual, gnorm(G, oneill_T(ctx, ctx.Vb.col(k), RW)));
                    if (!lagr) {
                        VectorXd hdv =
                            ctx.Ph.val * covariant_derivative(ctx.Gamma, VectorXd(ctx.Vb.col(k)), RW);
                        rep.condition_residual =
                            std::max(rep.condition_residual, gnorm(G, detail::q_r(rc, G, hdv)));
                    }
                }
            }
        }
        // direct: the second fundamental form of the map over a full frame
        VectorXd fp = eval_map(fix.map, p);
        MatrixXd gn = fix.base.eval(fp);
        MatrixXd frame(ctx.dim(), ctx.dim());
        frame << ctx.Vb, ctx.Hb;
        for (int i = 0; i < ctx.dim(); ++i)
            for (int j = 0; j < ctx.dim(); ++j)
                rep.direct_residual = std::max(
                    rep.direct_residual,
                    gnorm(gn, second_fundamental_form(ctx, frame.col(i), frame.col(j))));
    }
    rep.condition_pass = rep.condition_residual < tol;
    rep.direct_pass = rep.direct_residual < tol;
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return rep;
}

// Theorem 3.5 / final Lemma: harmonicity.
inline TheoremReport thm35_check(const SubmersionFixture& fix, const StructureTriple& t,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "thm35";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return rep;
    }
    const bool lagr = cls.overall == OverallVerdict::HLagrangian;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        if (!lagr) {
            VectorXd trace = VectorXd::Zero(ctx.dim());
            for (int i = 0; i < ctx.m(); ++i)
                trace += oneill_T(ctx, ctx.Vb.col(i), VectorXd(ctx.Vb.col(i)));
            for (RTag r : kRTags) {
                detail::RContext rc = detail::r_context(ctx, t, r);
                rep.condition_residual = std::max(
                    rep.condition_residual, gnorm(ctx.G.val, detail::q_r(rc, ctx.G.val, trace)));
                for (int k = 0; k < ctx.m(); ++k) {
                    double tr = 0.0;
                    for (int i = 0; i < ctx.m(); ++i)
                        tr += gdot(ctx.G.val, VectorXd(ctx.Vb.col(i)),
                                   VectorXd(rc.R * oneill_T(ctx, ctx.Vb.col(k),
                                                            VectorXd(ctx.Vb.col(i)))));
                    rep.condition_residual = std::max(rep.condition_residual, std::abs(tr));
                }
            }
        }
    }
    HarmonicityReport h = harmonicity(fix, points, tol);
    rep.direct_residual = h.worst_trace_residual;
    rep.direct_pass = h.is_harmonic;
    if (lagr) {
        // The companion lemma asserts harmonicity outright.
        rep.condition_pass = true;
        rep.condition_residual = 0.0;
        rep.note = "h-Lagrangian: harmonic by the companion lemma";
    } else {
        rep.condition_pass = rep.condition_residual < tol;
    }
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return rep;
}

// Theorem 4.4: horizontal umbilic forces totally geodesic (through H^perp = 0),
// plus the proof's literal invariant g(A_X V, X) = 0.
inline TheoremReport thm44_check(const SubmersionFixture& fix,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol,
                                 double literal_tol = 1e-8) {
    TheoremReport rep;
    rep.id = "thm44";
    rep.variant = "direct";
    double worst_literal = 0.0;
    double worst_hperp = 0.0;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        for (int i = 0; i < ctx.n(); ++i)
            for (int k = 0; k < ctx.m(); ++k)
                worst_literal = std::max(
                    worst_literal,
                    std::abs(gdot(ctx.G.val, oneill_A(ctx, ctx.Hb.col(i), VectorXd(ctx.Vb.col(k))),
                                  VectorXd(ctx.Hb.col(i)))));
        worst_hperp = std::max(worst_hperp, gnorm(ctx.G.val, mean_curvatures(ctx).H_perp));
    }
    FoliationFlags h = foliation_flags(fix, FoliationTag::Horizontal, points, tol, false);
    rep.condition_residual = worst_literal;
    rep.condition_pass = worst_literal < literal_tol;
    rep.direct_residual = h.umbilic ? std::max(worst_hperp, h.tg_residual) : 0.0;
    rep.direct_pass = !h.umbilic || (worst_hperp < tol && h.totally_geodesic);
    rep.equivalent = true;
    rep.pass = rep.condition_pass && rep.direct_pass;
    rep.note = h.umbilic ? "horizontal umbilic: geodesic forced" : "horizontal not umbilic";
    return rep;
}

// Theorem 4.6 / Lemma companion: vertical distribution totally umbilic.
inline TheoremReport thm46_check(const SubmersionFixture& fix, const StructureTriple& t,
                                 const std::vector<VectorXd>& points, double tol = kDefaultTol) {
    TheoremReport rep;
    rep.id = "thm46";
    ClassificationVerdict cls = classify(fix, t, points);
    rep.variant = detail::variant_name(cls.overall);
    if (cls.overall == OverallVerdict::None) {
        rep.applicable = false;
        return rep;
    }
    const bool lagr = cls.overall == OverallVerdict::HLagrangian;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        VectorXd H = mean_curvatures(ctx).H;
        for (RTag r : kRTags) {
            detail::RContext rc = detail::r_context(ctx, t, r);
            const MatrixXd& G = ctx.G.val;
            for (int k = 0; k < ctx.m(); ++k)
                for (int j = 0; j < ctx.n(); ++j) {
                    VectorXd x = ctx.Hb.col(j);
                    VectorXd Rv = rc.R * ctx.Vb.col(k);
                    double gHX = gdot(G, H, x);
                    VectorXd resid;
                    if (lagr) {
                        resid = oneill_T(ctx, ctx.Vb.col(k), VectorXd(rc.R * x)) + gHX * Rv;
                    } else {
                        // The pairing in the proof runs over RW in R(ker), so only
                        // the R(ker)-component of the left side is constrained.
                        VecJet Xf = ctx.Ph.apply(as_jet(ctx, x));
                        VecJet CX = ctx.Ph.apply(rc.Rjet.apply(Xf));
                        VectorXd Bx = ctx.Pv.val * (rc.R * x);
                        VectorXd hdc = ctx.Ph.val *
                                       covariant_derivative(ctx.Gamma, VectorXd(ctx.Vb.col(k)), CX);
                        VectorXd lhs = oneill_T(ctx, ctx.Vb.col(k), Bx) + hdc;
                        resid = rc.rker * (rc.rker.transpose() * G * lhs) + gHX * Rv;
                    }
                    rep.condition_residual = std::max(rep.condition_residual, gnorm(G, resid));
                }
        }
    }
    FoliationFlags v = foliation_flags(fix, FoliationTag::Vertical, points, tol, false);
    rep.direct_residual = v.umbilic_residual;
    rep.direct_pass = v.umbilic;
    rep.condition_pass = rep.condition_residual < tol;
    rep.equivalent = rep.condition_pass == rep.direct_pass;
    rep.pass = rep.equivalent;
    return rep;
}

// Six structure-vs-O'Neill commutation identities, evaluated with consistent
// projector extensions on both sides:
//   (1a) T_V RW = B_R T_V W        (1b) Hnabla_V RW = C_R T_V W + R hatnabla_V W
//   (2a) A_X C_R Y + Vnabla_X B_R Y = B_R Hnabla_X Y
//   (2b) Hnabla_X C_R Y + A_X B_R Y = R A_X Y + C_R Hnabla_X Y
//   (3a) A_X RV = B_R A_X V        (3b) Hnabla_X RV = C_R A_X V + R Vnabla_X V
struct Lemma36Report {
    std::array<double, 6> residuals{};  // worst, in the order above
    double worst = 0.0;
    bool applicable = true;
    bool pass(double tol = kDefaultTol) const { return applicable && worst < tol; }
};

inline Lemma36Report lemma36_check(const SubmersionFixture& fix, const StructureTriple& t,
                                   const std::vector<VectorXd>& points) {
    Lemma36Report rep;
    ClassificationVerdict cls = classify(fix, t, points);
    if (cls.overall != OverallVerdict::HAntiInvariant) {
        rep.applicable = false;
        return rep;
    }
    auto track = [&](int slot, const VectorXd& lhs, const VectorXd& rhs, const MatrixXd& G) {
        double r = gnorm(G, VectorXd(lhs - rhs));
        rep.residuals[slot] = std::max(rep.residuals[slot], r);
        rep.worst = std::max(rep.worst, r);
    };
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        const MatrixXd& G = ctx.G.val;
        const auto& Gam = ctx.Gamma;
        for (RTag r : kRTags) {
            detail::RContext rc = detail::r_context(ctx, t, r);
            // (1) vertical pair
            for (int k = 0; k < ctx.m(); ++k)
                for (int l = 0; l < ctx.m(); ++l) {
                    VectorXd v = ctx.Vb.col(k);
                    VecJet W = ctx.Pv.apply(as_jet(ctx, VectorXd(ctx.Vb.col(l))));
                    VecJet RW = rc.Rjet.apply(W);
                    VectorXd TVW = oneill_T(ctx, v, W);
                    VectorXd hatVW = ctx.Pv.val * covariant_derivative(Gam, v, W);
                    track(0, oneill_T(ctx, v, RW), VectorXd(ctx.Pv.val * (rc.R * TVW)), G);
                    track(1, VectorXd(ctx.Ph.val * covariant_derivative(Gam, v, RW)),
                          VectorXd(ctx.Ph.val * (rc.R * TVW) + rc.R * hatVW), G);
                }
            // (2) horizontal pair
            for (int i = 0; i < ctx.n(); ++i)
                for (int j = 0; j < ctx.n(); ++j) {
                    VectorXd x = ctx.Hb.col(i);
                    VecJet Y = ctx.Ph.apply(as_jet(ctx, VectorXd(ctx.Hb.col(j))));
                    VecJet RY = rc.Rjet.apply(Y);
                    VecJet CY = ctx.Ph.apply(RY);
                    VecJet BY = ctx.Pv.apply(RY);
                    VectorXd hXY = ctx.Ph.val * covariant_derivative(Gam, x, Y);
                    track(2,
                          VectorXd(oneill_A(ctx, x, CY) +
                                   ctx.Pv.val * covariant_derivative(Gam, x, BY)),
                          VectorXd(ctx.Pv.val * (rc.R * hXY)), G);
                    track(3,
                          VectorXd(ctx.Ph.val * covariant_derivative(Gam, x, CY) +
                                   oneill_A(ctx, x, BY)),
                          VectorXd(rc.R * oneill_A(ctx, x, Y) + ctx.Ph.val * (rc.R * hXY)), G);
                }
            // (3) mixed pair
            for (int i = 0; i < ctx.n(); ++i)
                for (int k = 0; k < ctx.m(); ++k) {
                    VectorXd x = ctx.Hb.col(i);
                    VecJet V = ctx.Pv.apply(as_jet(ctx, VectorXd(ctx.Vb.col(k))));
                    VecJet RV = rc.Rjet.apply(V);
                    VectorXd AXV = oneill_A(ctx, x, V);
                    VectorXd vXV = ctx.Pv.val * covariant_derivative(Gam, x, V);
                    track(4, oneill_A(ctx, x, RV), VectorXd(ctx.Pv.val * (rc.R * AXV)), G);
                    track(5, VectorXd(ctx.Ph.val * covariant_derivative(Gam, x, RV)),
                          VectorXd(ctx.Ph.val * (rc.R * AXV) + rc.R * vXV), G);
                }
        }
    }
    return rep;
}

// Fixture-level contrapositive of the non-existence theorems: a classified
// fixture never shows the forbidden horizontal-umbilic-but-not-geodesic pattern.
struct NonexistenceEntry {
    std::string name;
    OverallVerdict verdict = OverallVerdict::None;
    ProductType product = ProductType::NotPerpendicularOrNone;
    bool consistent = true;
};

struct NonexistenceReport {
    std::vector<NonexistenceEntry> entries;
    bool pass = true;
};

inline NonexistenceEntry nonexistence_entry(const std::string& name, const SubmersionFixture& fix,
                                            const StructureTriple* triple,
                                            const std::vector<VectorXd>& points,
                                            double tol = kDefaultTol,
                                            const ProductReport* precomputed = nullptr) {
    NonexistenceEntry e;
    e.name = name;
    if (triple) e.verdict = classify(fix, *triple, points).overall;
    ProductReport pr = precomputed ? *precomputed : product_classification(fix, points, tol);
    e.product = pr.type;
    if (e.verdict != OverallVerdict::None) {
        bool forbidden = pr.horizontal.umbilic && !pr.horizontal.totally_geodesic;
        e.consistent = !forbidden;
    }
    return e;
}

}  // namespace quatsub

#endif  // QUATSUB_THEOREMS_HPP

#ifndef QUATSUB_SUBMERSION_HPP
#define QUATSUB_SUBMERSION_HPP

#include "quatsub/field.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <string>
#include <vector>

namespace quatsub {

struct SubmersionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SubmersionFixture {
    std::string name;
    MetricField total;
    MetricField base;
    SmoothMapSpec map;

    int dim() const { return map.domain_dim; }           // total space
    int base_dim() const { return map.codomain_dim; }    // horizontal rank n
    int fiber_dim() const { return dim() - base_dim(); } // vertical rank m
};

// Rank tolerance: 1e-8 x largest singular value.
constexpr double kRankTol = 1e-8;
// Default verdict tolerance on unit-normalized inputs.
constexpr double kDefaultTol = 1e-7;

inline double gdot(const MatrixXd& G, const VectorXd& a, const VectorXd& b) {
    return a.dot(G * b);
}
inline double gnorm(const MatrixXd& G, const VectorXd& a) {
    return std::sqrt(std::max(0.0, gdot(G, a, a)));
}

// Modified Gram-Schmidt in the G inner product. Columns with residual below
// droptol (relative) are dropped.
inline MatrixXd gram_schmidt(const MatrixXd& G, const MatrixXd& cols, double droptol = 1e-10) {
    std::vector<VectorXd> basis;
    for (int c = 0; c < cols.cols(); ++c) {
        VectorXd v = cols.col(c);
        double before = gnorm(G, v);
        for (const auto& b : basis) v -= gdot(G, b, v) * b;
        double nrm = gnorm(G, v);
        if (nrm <= droptol * std::max(1.0, before)) continue;
        basis.push_back(v / nrm);
    }
    MatrixXd out(cols.rows(), static_cast<int>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i) out.col(static_cast<int>(i)) = basis[i];
    return out;
}

// Orthonormal bases of ker F_* and its g-orthogonal complement at a point,
// with the corresponding g-orthogonal projectors.
struct SplitFrame {
    VectorXd p;
    MatrixXd vertical_basis;     // dim x m, g-orthonormal
    MatrixXd horizontal_basis;   // dim x n, g-orthonormal
    MatrixXd vertical_projector;
    MatrixXd horizontal_projector;
    VectorXd singular_values;    // of the Jacobian
};

// Everything needed for per-point tensor computations, built once per point.
struct PointContext {
    const SubmersionFixture* fix = nullptr;
    VectorXd p;
    std::vector<Jet2> map_jets;
    MatrixXd J;            // codim x dim Jacobian
    MatJet G;              // total metric jet
    MatJet Ginv;
    MatJet Pv, Ph;         // projector jets (smooth Gram-based formula)
    Christoffel Gamma;     // total-space Christoffel symbols at p
    MatrixXd Vb, Hb;       // frames
    VectorXd svals;

    int dim() const { return fix->dim(); }
    int m() const { return fix->fiber_dim(); }
    int n() const { return fix->base_dim(); }
};

namespace detail {

struct ProjJets {
    MatJet J, G, Ginv, Pv, Ph;
};

inline ProjJets projector_jets(const SubmersionFixture& fix, const VectorXd& p) {
    const int d = fix.dim();
    const int c = fix.base_dim();
    auto jets = eval_jet2(fix.map, p);
    ProjJets r;
    r.J.val.resize(c, d);
    r.J.d.assign(d, MatrixXd::Zero(c, d));
    for (int a = 0; a < c; ++a) {
        r.J.val.row(a) = jets[a].g.transpose();
        for (int k = 0; k < d; ++k) r.J.d[k].row(a) = jets[a].h.col(k).transpose();
    }
    r.G = fix.total.eval_jet(p);
    r.Ginv = r.G.inverse();
    MatJet Jt = r.J.transpose();
    MatJet M = r.J * r.Ginv * Jt;
    // Smooth wherever the rank is full; SVD-based projectors are not.
    r.Ph = r.Ginv * Jt * M.inverse() * r.J;
    r.Pv = MatJet::constant(MatrixXd::Identity(d, d), d) - r.Ph;
    return r;
}

}  // namespace detail

inline PointContext point_context(const SubmersionFixture& fix, const VectorXd& p) {
    PointContext ctx;
    ctx.fix = &fix;
    ctx.p = p;
    ctx.map_jets = eval_jet2(fix.map, p);

    const int d = fix.dim();
    const int c = fix.base_dim();
    MatrixXd J(c, d);
    for (int a = 0; a < c; ++a) J.row(a) = ctx.map_jets[a].g.transpose();
    ctx.J = J;

    Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullV);
    ctx.svals = svd.singularValues();
    double smax = ctx.svals.size() > 0 ? ctx.svals(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < ctx.svals.size(); ++i)
        if (ctx.svals(i) > kRankTol * smax) ++rank;
    if (rank < c)
        throw SubmersionError("not a submersion at p (numerical rank " + std::to_string(rank) +
                              " < " + std::to_string(c) + ")");

    auto pj = detail::projector_jets(fix, p);
    ctx.G = pj.G;
    ctx.Ginv = pj.Ginv;
    ctx.Pv = pj.Pv;
    ctx.Ph = pj.Ph;
    ctx.Gamma = christoffel(fix.total, p);

    // Kernel basis from the SVD (metric-independent), then g-orthonormalized.
    MatrixXd ker = svd.matrixV().rightCols(d - rank);
    ctx.Vb = gram_schmidt(ctx.G.val, ker);
    MatrixXd hcand = ctx.Ginv.val * J.transpose();
    ctx.Hb = gram_schmidt(ctx.G.val, hcand);
    if (ctx.Vb.cols() != fix.fiber_dim() || ctx.Hb.cols() != fix.base_dim())
        throw SubmersionError("frame construction failed (degenerate metric or rank)");
    return ctx;
}

inline SplitFrame split_at(const SubmersionFixture& fix, const VectorXd& p) {
    PointContext ctx = point_context(fix, p);
    SplitFrame f;
    f.p = p;
    f.vertical_basis = ctx.Vb;
    f.horizontal_basis = ctx.Hb;
    f.vertical_projector = ctx.Pv.val;
    f.horizontal_projector = ctx.Ph.val;
    f.singular_values = ctx.svals;
    return f;
}

// Canonical extension of a tangent vector to a field: q -> P(q) u.
inline VectorField vertical_extension(const SubmersionFixture& fix, const VectorXd& u) {
    return [&fix, u](const VectorXd& q) { return detail::projector_jets(fix, q).Pv.apply(u); };
}
inline VectorField horizontal_extension(const SubmersionFixture& fix, const VectorXd& u) {
    return [&fix, u](const VectorXd& q) { return detail::projector_jets(fix, q).Ph.apply(u); };
}

// ---------------------------------------------------------------------------
// O'Neill tensors. The field arguments are jets at ctx.p; constant vectors use
// the canonical projector extension, whose jets live entirely in ctx.

inline VecJet as_jet(const PointContext& ctx, const VectorXd& v) {
    VecJet j;
    j.val = v;
    j.jac = MatrixXd::Zero(v.size(), ctx.dim());
    return j;
}

// T_u v = H nabla_{Vu} Vv + V nabla_{Vu} Hv
inline VectorXd oneill_T(const PointContext& ctx, const VectorXd& u, const VecJet& v) {
    VectorXd uv = ctx.Pv.val * u;
    VecJet Vv = ctx.Pv.apply(v);
    VecJet Hv = ctx.Ph.apply(v);
    return ctx.Ph.val * covariant_derivative(ctx.Gamma, uv, Vv) +
           ctx.Pv.val * covariant_derivative(ctx.Gamma, uv, Hv);
}
inline VectorXd oneill_T(const PointContext& ctx, const VectorXd& u, const VectorXd& v) {
    return oneill_T(ctx, u, as_jet(ctx, v));
}

// A_u v = H nabla_{Hu} Vv + V nabla_{Hu} Hv
inline VectorXd oneill_A(const PointContext& ctx, const VectorXd& u, const VecJet& v) {
    VectorXd hu = ctx.Ph.val * u;
    VecJet Vv = ctx.Pv.apply(v);
    VecJet Hv = ctx.Ph.apply(v);
    return ctx.Ph.val * covariant_derivative(ctx.Gamma, hu, Vv) +
           ctx.Pv.val * covariant_derivative(ctx.Gamma, hu, Hv);
}
inline VectorXd oneill_A(const PointContext& ctx, const VectorXd& u, const VectorXd& v) {
    return oneill_A(ctx, u, as_jet(ctx, v));
}

// hat-nabla_u v = V nabla_{Vu} Vv for vertical u, v.
inline VectorXd hat_nabla(const PointContext& ctx, const VectorXd& u, const VectorXd& v) {
    auto angle_to_vertical = [&](const VectorXd& w) {
        double nw = gnorm(ctx.G.val, w);
        if (nw == 0.0) return 0.0;
        return gnorm(ctx.G.val, VectorXd(w - ctx.Pv.val * w)) / nw;
    };
    if (angle_to_vertical(u) > 1e-8 || angle_to_vertical(v) > 1e-8)
        throw SubmersionError("hat_nabla requires vertical inputs");
    VecJet Vv = ctx.Pv.apply(as_jet(ctx, v));
    return ctx.Pv.val * covariant_derivative(ctx.Gamma, VectorXd(ctx.Pv.val * u), Vv);
}

// Full covariant derivative of the projected extension of v along u, at ctx.p.
inline VectorXd nabla_ext(const PointContext& ctx, const VectorXd& u, const VecJet& v) {
    return covariant_derivative(ctx.Gamma, u, v);
}

// ---------------------------------------------------------------------------
// Second fundamental form of the map (values in the base tangent space):
// (nabla F_*)(u,v)^a = Hess_a(u,v) + Gamma_N^a_{bc} (Ju)^b (Jv)^c - J^a_k Gamma_M^k_{ij} u^i v^j

inline VectorXd second_fundamental_form(const PointContext& ctx, const VectorXd& u,
                                        const VectorXd& v) {
    const auto& fix = *ctx.fix;
    const int c = ctx.n();
    VectorXd fp = eval_map(fix.map, ctx.p);
    Christoffel GamN = christoffel(fix.base, fp);
    VectorXd Ju = ctx.J * u, Jv = ctx.J * v;
    VectorXd r(c);
    for (int a = 0; a < c; ++a) {
        double hess = u.dot(ctx.map_jets[a].h * v);
        double conn = Ju.dot(GamN[a] * Jv);
        double pull = 0.0;
        for (int k = 0; k < ctx.dim(); ++k) {
            double gk = u.dot(ctx.Gamma[k] * v);
            pull += ctx.J(a, k) * gk;
        }
        r(a) = hess + conn - pull;
    }
    return r;
}

struct MeanCurvatureReport {
    VectorXd p;
    VectorXd H;       // (1/m) sum T_{e_i} e_i, horizontal
    VectorXd H_perp;  // (1/n) sum A_{v_i} v_i, vertical
};

inline MeanCurvatureReport mean_curvatures(const PointContext& ctx) {
    MeanCurvatureReport r;
    r.p = ctx.p;
    r.H = VectorXd::Zero(ctx.dim());
    r.H_perp = VectorXd::Zero(ctx.dim());
    for (int i = 0; i < ctx.m(); ++i) r.H += oneill_T(ctx, ctx.Vb.col(i), VectorXd(ctx.Vb.col(i)));
    for (int i = 0; i < ctx.n(); ++i)
        r.H_perp += oneill_A(ctx, ctx.Hb.col(i), VectorXd(ctx.Hb.col(i)));
    if (ctx.m() > 0) r.H /= ctx.m();
    if (ctx.n() > 0) r.H_perp /= ctx.n();
    return r;
}

// ---------------------------------------------------------------------------
// Validation and harmonicity over a sample sweep

struct ValidationReport {
    bool rank_ok = true;
    bool isometry_ok = true;
    double worst_isometry_residual = 0.0;
    VectorXd worst_point;
    std::string message;
};

inline ValidationReport validate_submersion(const SubmersionFixture& fix,
                                            const std::vector<VectorXd>& points,
                                            double tol = 1e-9) {
    ValidationReport rep;
    for (const auto& p : points) {
        PointContext ctx;
        try {
            ctx = point_context(fix, p);
        } catch (const SubmersionError& e) {
            rep.rank_ok = false;
            rep.worst_point = p;
            rep.message = e.what();
            return rep;
        }
        VectorXd fp = eval_map(fix.map, p);
        MatrixXd gn = fix.base.eval(fp);
        MatrixXd push = ctx.J * ctx.Hb;  // columns F_* h_a
        MatrixXd gram = push.transpose() * gn * push;
        double res = (gram - MatrixXd::Identity(ctx.n(), ctx.n())).cwiseAbs().maxCoeff();
        if (res > rep.worst_isometry_residual) {
            rep.worst_isometry_residual = res;
            rep.worst_point = p;
        }
    }
    if (rep.worst_isometry_residual > tol) {
        rep.isometry_ok = false;
        rep.message = "submersion but not Riemannian submersion (isometry residual " +
                      std::to_string(rep.worst_isometry_residual) + ")";
    }
    return rep;
}

struct HarmonicityReport {
    bool is_harmonic = true;
    double worst_trace_residual = 0.0;   // g_N norm of trace(nabla F_*)
    double worst_consistency = 0.0;      // | trace + m F_*(H) | cross-check
    VectorXd worst_point;
};

inline HarmonicityReport harmonicity(const SubmersionFixture& fix,
                                     const std::vector<VectorXd>& points,
                                     double tol = kDefaultTol) {
    HarmonicityReport rep;
    for (const auto& p : points) {
        PointContext ctx = point_context(fix, p);
        VectorXd fp = eval_map(fix.map, p);
        MatrixXd gn = fix.base.eval(fp);
        VectorXd trace = VectorXd::Zero(ctx.n());
        for (int i = 0; i < ctx.m(); ++i)
            trace += second_fundamental_form(ctx, ctx.Vb.col(i), ctx.Vb.col(i));
        for (int i = 0; i < ctx.n(); ++i)
            trace += second_fundamental_form(ctx, ctx.Hb.col(i), ctx.Hb.col(i));
        double tn = gnorm(gn, trace);
        // By the vanishing on horizontal pairs, trace(nabla F_*) = -m F_*(H).
        VectorXd mh = ctx.J * mean_curvatures(ctx).H * ctx.m();
        double cons = gnorm(gn, VectorXd(trace + mh));
        if (tn > rep.worst_trace_residual) {
            rep.worst_trace_residual = tn;
            rep.worst_point = p;
        }
        rep.worst_consistency = std::max(rep.worst_consistency, cons);
    }
    rep.is_harmonic = rep.worst_trace_residual < tol;
    return rep;
}

}  // namespace quatsub

#endif  // QUATSUB_SUBMERSION_HPP

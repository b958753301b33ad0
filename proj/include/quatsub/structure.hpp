#ifndef QUATSUB_STRUCTURE_HPP
#define QUATSUB_STRUCTURE_HPP

#include "quatsub/submersion.hpp"

#include <array>
#include <string>
#include <vector>

namespace quatsub {

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix-valued endomorphism field: a constant matrix or a grid of expressions.
class MatrixField {
  public:
    MatrixField() = default;
    explicit MatrixField(MatrixXd constant) : constant_(std::move(constant)) {}
    MatrixField(int dim, std::vector<std::vector<ExprPtr>> entries)
        : dim_(dim), entries_(std::move(entries)) {}

    bool is_constant() const { return entries_.empty(); }

    MatrixXd eval(const VectorXd& p) const {
        if (is_constant()) return constant_;
        MatrixXd m(entries_.size(), entries_[0].size());
        for (size_t i = 0; i < entries_.size(); ++i)
            for (size_t j = 0; j < entries_[i].size(); ++j)
                m(i, j) = eval_value(*entries_[i][j], p);
        return m;
    }

    MatJet eval_jet(const VectorXd& p) const {
        const int d = static_cast<int>(p.size());
        if (is_constant()) return MatJet::constant(constant_, d);
        MatJet m;
        const int r = static_cast<int>(entries_.size());
        const int c = static_cast<int>(entries_[0].size());
        m.val.resize(r, c);
        m.d.assign(d, MatrixXd::Zero(r, c));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                Jet2 e = quatsub::eval_jet(*entries_[i][j], p);
                m.val(i, j) = e.v;
                for (int k = 0; k < d; ++k) m.d[k](i, j) = e.g(k);
            }
        return m;
    }

  private:
    MatrixXd constant_;
    int dim_ = 0;
    std::vector<std::vector<ExprPtr>> entries_;
};

enum class RTag { I = 0, J = 1, K = 2 };
inline const char* rtag_name(RTag r) {
    switch (r) {
        case RTag::I: return "I";
        case RTag::J: return "J";
        case RTag::K: return "K";
    }
    return "?";
}
inline constexpr std::array<RTag, 3> kRTags{RTag::I, RTag::J, RTag::K};

struct StructureTriple {
    int dim = 0;
    MatrixField I, J, K;

    const MatrixField& field(RTag r) const {
        switch (r) {
            case RTag::I: return I;
            case RTag::J: return J;
            case RTag::K: return K;
        }
        throw std::logic_error("bad RTag");
    }
    MatrixXd eval(RTag r, const VectorXd& p) const { return field(r).eval(p); }
    MatJet eval_jet(RTag r, const VectorXd& p) const { return field(r).eval_jet(p); }
};

// The canonical constant triple on R^{4m}: per 4-block action
// I: e1->e2, e3->e4;  J: e1->e3, e2->-e4;  K: e1->e4, e2->e3 (and skew images).
inline StructureTriple canonical_structure(int m) {
    if (m < 1) throw StructureError("canonical structure needs m >= 1");
    const int d = 4 * m;
    MatrixXd I = MatrixXd::Zero(d, d), J = MatrixXd::Zero(d, d), K = MatrixXd::Zero(d, d);
    for (int k = 0; k < m; ++k) {
        int b = 4 * k;
        I(b + 1, b + 0) = 1;  I(b + 0, b + 1) = -1;
        I(b + 3, b + 2) = 1;  I(b + 2, b + 3) = -1;
        J(b + 2, b + 0) = 1;  J(b + 3, b + 1) = -1;
        J(b + 0, b + 2) = -1; J(b + 1, b + 3) = 1;
        K(b + 3, b + 0) = 1;  K(b + 2, b + 1) = 1;
        K(b + 1, b + 2) = -1; K(b + 0, b + 3) = -1;
    }
    StructureTriple t;
    t.dim = d;
    t.I = MatrixField(I);
    t.J = MatrixField(J);
    t.K = MatrixField(K);
    return t;
}

struct StructureReport {
    double worst_square = 0.0;        // R^2 + Id
    double worst_anticommute = 0.0;   // IJ + JI, etc.
    double worst_cyclic = 0.0;        // IJ - K, JK - I, KI - J
    double worst_metric = 0.0;        // R^T g R - g
    double worst_parallel = 0.0;      // nabla R (only if checked)
    bool parallel_checked = false;
    bool pass(double tol = 1e-10) const {
        return worst_square < tol && worst_anticommute < tol && worst_cyclic < tol &&
               worst_metric < tol && (!parallel_checked || worst_parallel < 1e-6);
    }
};

inline StructureReport validate_structure(const StructureTriple& t, const MetricField& g,
                                          const std::vector<VectorXd>& points,
                                          bool check_parallel = false) {
    if (t.dim % 4 != 0) throw StructureError("dimension not divisible by 4");
    if (t.dim != g.dim()) throw StructureError("structure/metric dimension mismatch");
    StructureReport rep;
    const MatrixXd Id = MatrixXd::Identity(t.dim, t.dim);
    for (const auto& p : points) {
        MatrixXd I = t.eval(RTag::I, p), J = t.eval(RTag::J, p), K = t.eval(RTag::K, p);
        MatrixXd G = g.eval(p);
        for (const MatrixXd* R : {&I, &J, &K}) {
            rep.worst_square = std::max(rep.worst_square, ((*R) * (*R) + Id).cwiseAbs().maxCoeff());
            rep.worst_metric =
                std::max(rep.worst_metric, (R->transpose() * G * (*R) - G).cwiseAbs().maxCoeff());
        }
        rep.worst_anticommute = std::max({rep.worst_anticommute,
                                          (I * J + J * I).cwiseAbs().maxCoeff(),
                                          (J * K + K * J).cwiseAbs().maxCoeff(),
                                          (K * I + I * K).cwiseAbs().maxCoeff()});
        rep.worst_cyclic = std::max({rep.worst_cyclic, (I * J - K).cwiseAbs().maxCoeff(),
                                     (J * K - I).cwiseAbs().maxCoeff(),
                                     (K * I - J).cwiseAbs().maxCoeff()});
        if (check_parallel) {
            Christoffel Gam = christoffel(g, p);
            for (RTag r : kRTags) {
                MatJet R = t.eval_jet(r, p);
                for (int k = 0; k < t.dim; ++k) {
                    // (nabla_k R)^i_j = d_k R^i_j + Gamma^i_{kl} R^l_j - Gamma^l_{kj} R^i_l
                    MatrixXd Gk(t.dim, t.dim);
                    for (int i = 0; i < t.dim; ++i)
                        for (int j = 0; j < t.dim; ++j) Gk(i, j) = Gam[i](k, j);
                    MatrixXd NR = R.d[k] + Gk * R.val - R.val * Gk;
                    rep.worst_parallel = std::max(rep.worst_parallel, NR.cwiseAbs().maxCoeff());
                }
            }
            rep.parallel_checked = true;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Decomposition operators B_R, C_R, P_R, Q_R and the mu_R complement

struct DecompositionReport {
    VectorXd B;         // vertical part of R x
    VectorXd C;         // horizontal part of R x
    VectorXd P;         // component of x in R(ker F_*)
    VectorXd Q;         // component of x in mu_R
    MatrixXd mu_basis;  // dim x (n - m), g-orthonormal
    MatrixXd rker;      // R(vertical basis), g-orthonormal
};

// Deterministic mu_R basis: horizontal frame projected off R(ker), re-orthonormalized
// in frame order.
inline MatrixXd mu_basis(const StructureTriple& t, RTag r, const SplitFrame& frame,
                         const MatrixXd& G) {
    MatrixXd R = t.eval(r, frame.p);
    MatrixXd RV = R * frame.vertical_basis;  // g-orthonormal (R is a g-isometry)
    MatrixXd cand(frame.horizontal_basis.rows(),
                  RV.cols() + frame.horizontal_basis.cols());
    cand << RV, frame.horizontal_basis;
    MatrixXd full = gram_schmidt(G, cand);
    return full.rightCols(full.cols() - RV.cols());
}

inline DecompositionReport decompose(const StructureTriple& t, RTag r, const SplitFrame& frame,
                                     const VectorXd& x, const MetricField& g) {
    if (t.dim != x.size() || t.dim != frame.vertical_basis.rows())
        throw StructureError("frame/triple dimension mismatch");
    MatrixXd G = g.eval(frame.p);
    double hres = gnorm(G, VectorXd(x - frame.horizontal_projector * x));
    if (hres > 1e-8 * std::max(1.0, gnorm(G, x)))
        throw StructureError("decompose requires a horizontal vector");
    DecompositionReport rep;
    MatrixXd R = t.eval(r, frame.p);
    VectorXd Rx = R * x;
    rep.B = frame.vertical_projector * Rx;
    rep.C = frame.horizontal_projector * Rx;
    rep.rker = R * frame.vertical_basis;
    // g-orthogonal projection onto span(R ker): columns are g-orthonormal.
    rep.P = rep.rker * (rep.rker.transpose() * G * x);
    rep.Q = x - rep.P;
    rep.mu_basis = mu_basis(t, r, frame, G);
    return rep;
}

// Projection of a horizontal vector onto mu_R given its g-orthonormal basis.
inline VectorXd project_mu(const MatrixXd& mu, const MatrixXd& G, const VectorXd& x) {
    if (mu.cols() == 0) return VectorXd::Zero(x.size());
    return mu * (mu.transpose() * G * x);
}

struct MuInvarianceReport {
    bool applicable = true;
    bool pass = true;
    double worst_residual = 0.0;
    std::string note;
};

inline MuInvarianceReport check_mu_invariance(const StructureTriple& t, RTag r,
                                              const SplitFrame& frame, const MetricField& g,
                                              double tol = 1e-9) {
    MuInvarianceReport rep;
    MatrixXd G = g.eval(frame.p);
    MatrixXd R = t.eval(r, frame.p);
    // Precondition: R(ker) lies in the horizontal space at this point.
    MatrixXd RV = R * frame.vertical_basis;
    for (int c = 0; c < RV.cols(); ++c) {
        VectorXd w = RV.col(c);
        if (gnorm(G, VectorXd(w - frame.horizontal_projector * w)) > 1e-8) {
            rep.applicable = false;
            rep.note = "not h-anti-invariant w.r.t. " + std::string(rtag_name(r)) +
                       " at this point";
            return rep;
        }
    }
    MatrixXd mu = mu_basis(t, r, frame, G);
    if (mu.cols() == 0) {
        rep.note = "mu is trivial; vacuous pass";
        return rep;
    }
    for (int c = 0; c < mu.cols(); ++c) {
        VectorXd w = R * mu.col(c);
        double resid = gnorm(G, VectorXd(w - project_mu(mu, G, w)));
        rep.worst_residual = std::max(rep.worst_residual, resid);
    }
    rep.pass = rep.worst_residual < tol;
    return rep;
}

}  // namespace quatsub

#endif  // QUATSUB_STRUCTURE_HPP

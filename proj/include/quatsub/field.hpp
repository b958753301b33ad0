#ifndef QUATSUB_FIELD_HPP
#define QUATSUB_FIELD_HPP

#include "quatsub/expr.hpp"

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

namespace quatsub {

// First-order jet of a vector field: value and Jacobian (jac(i,k) = d_k val_i).
struct VecJet {
    VectorXd val;
    MatrixXd jac;
};

// First-order jet of a matrix-valued field: value plus one partial per coordinate.
struct MatJet {
    MatrixXd val;
    std::vector<MatrixXd> d;

    int dim() const { return static_cast<int>(d.size()); }

    static MatJet constant(const MatrixXd& m, int dim) {
        MatJet j;
        j.val = m;
        j.d.assign(dim, MatrixXd::Zero(m.rows(), m.cols()));
        return j;
    }

    MatJet transpose() const {
        MatJet j;
        j.val = val.transpose();
        j.d.reserve(d.size());
        for (const auto& m : d) j.d.push_back(m.transpose());
        return j;
    }

    MatJet inverse() const {
        MatJet j;
        MatrixXd inv = val.inverse();
        j.val = inv;
        j.d.reserve(d.size());
        for (const auto& m : d) j.d.push_back(-inv * m * inv);
        return j;
    }

    VecJet apply(const VectorXd& u) const {
        VecJet r;
        r.val = val * u;
        r.jac.resize(val.rows(), dim());
        for (int k = 0; k < dim(); ++k) r.jac.col(k) = d[k] * u;
        return r;
    }

    VecJet apply(const VecJet& u) const {
        VecJet r;
        r.val = val * u.val;
        r.jac.resize(val.rows(), dim());
        for (int k = 0; k < dim(); ++k) r.jac.col(k) = d[k] * u.val + val * u.jac.col(k);
        return r;
    }
};

inline MatJet operator*(const MatJet& a, const MatJet& b) {
    MatJet r;
    r.val = a.val * b.val;
    r.d.reserve(a.d.size());
    for (size_t k = 0; k < a.d.size(); ++k) r.d.push_back(a.d[k] * b.val + a.val * b.d[k]);
    return r;
}
inline MatJet operator+(const MatJet& a, const MatJet& b) {
    MatJet r;
    r.val = a.val + b.val;
    r.d.reserve(a.d.size());
    for (size_t k = 0; k < a.d.size(); ++k) r.d.push_back(a.d[k] + b.d[k]);
    return r;
}
inline MatJet operator-(const MatJet& a, const MatJet& b) {
    MatJet r;
    r.val = a.val - b.val;
    r.d.reserve(a.d.size());
    for (size_t k = 0; k < a.d.size(); ++k) r.d.push_back(a.d[k] - b.d[k]);
    return r;
}

// ---------------------------------------------------------------------------
// Metric fields

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MetricField {
  public:
    MetricField() = default;

    // Symmetric grid of expressions; entry (i,j) must equal entry (j,i) structurally.
    MetricField(int dim, std::vector<std::vector<ExprPtr>> entries)
        : dim_(dim), entries_(std::move(entries)) {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < i; ++j)
                if (!structurally_equal(entries_[i][j], entries_[j][i]))
                    throw MetricError("metric entry grid is not symmetric");
    }

    static MetricField euclidean(int dim) {
        std::vector<std::vector<ExprPtr>> e(dim, std::vector<ExprPtr>(dim));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) e[i][j] = Expr::num(i == j ? 1.0 : 0.0);
        return MetricField(dim, std::move(e));
    }

    int dim() const { return dim_; }
    bool is_constant() const {
        for (const auto& row : entries_)
            for (const auto& e : row)
                if (e->kind != ExprKind::Number) return false;
        return true;
    }

    MatrixXd eval(const VectorXd& p) const {
        MatrixXd g(dim_, dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) g(i, j) = eval_value(*entries_[i][j], p);
        return g;
    }

    MatJet eval_jet(const VectorXd& p) const {
        MatJet j;
        j.val.resize(dim_, dim_);
        j.d.assign(dim_, MatrixXd::Zero(dim_, dim_));
        for (int i = 0; i < dim_; ++i)
            for (int jj = 0; jj < dim_; ++jj) {
                Jet2 e = quatsub::eval_jet(*entries_[i][jj], p);
                j.val(i, jj) = e.v;
                for (int k = 0; k < dim_; ++k) j.d[k](i, jj) = e.g(k);
            }
        return j;
    }

    // Smallest eigenvalue must exceed 1e-10 at every checked point.
    double min_eigenvalue(const VectorXd& p) const {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(eval(p));
        return es.eigenvalues().minCoeff();
    }

    void require_spd(const VectorXd& p) const {
        double lo = min_eigenvalue(p);
        if (lo <= 1e-10)
            throw MetricError("metric not positive-definite (smallest eigenvalue " +
                              std::to_string(lo) + ")");
    }

  private:
    int dim_ = 0;
    std::vector<std::vector<ExprPtr>> entries_;
};

// Christoffel symbols as Gamma[k](i,j) = Gamma^k_{ij}.
using Christoffel = std::vector<MatrixXd>;

inline Christoffel christoffel(const MetricField& g, const VectorXd& p) {
    g.require_spd(p);
    const int n = g.dim();
    MatJet G = g.eval_jet(p);
    MatrixXd Gi = G.val.inverse();
    Christoffel Gam(n, MatrixXd::Zero(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += Gi(k, l) * (G.d[i](l, j) + G.d[j](l, i) - G.d[l](i, j));
                Gam[k](i, j) = 0.5 * s;
                Gam[k](j, i) = Gam[k](i, j);
            }
    return Gam;
}

// ---------------------------------------------------------------------------
// Vector fields: anything that can produce a first-order jet at a point.
// Expression fields and derived projector fields share this contract.

using VectorField = std::function<VecJet(const VectorXd&)>;

inline VectorField expr_field(std::vector<ExprPtr> components) {
    return [comps = std::move(components)](const VectorXd& p) {
        VecJet r;
        const int m = static_cast<int>(comps.size());
        r.val.resize(m);
        r.jac.resize(m, p.size());
        for (int i = 0; i < m; ++i) {
            Jet2 j = eval_jet(*comps[i], p);
            r.val(i) = j.v;
            r.jac.row(i) = j.g.transpose();
        }
        return r;
    };
}

inline VectorField expr_field(const std::string& source, int dim) {
    return expr_field(detail::Parser(source, dim).parse_list());
}

inline VectorField constant_field(const VectorXd& v) {
    return [v](const VectorXd& p) {
        VecJet r;
        r.val = v;
        r.jac = MatrixXd::Zero(v.size(), p.size());
        return r;
    };
}

// nabla_U V at p: U^i d_i V^k + Gamma^k_{ij} U^i V^j.
inline VectorXd covariant_derivative(const Christoffel& Gam, const VectorXd& u, const VecJet& v) {
    const int n = static_cast<int>(u.size());
    VectorXd r = v.jac * u;
    for (int k = 0; k < n; ++k) r(k) += u.transpose() * Gam[k] * v.val;
    return r;
}

inline VectorXd covariant_derivative(const MetricField& g, const VectorField& U,
                                     const VectorField& V, const VectorXd& p) {
    return covariant_derivative(christoffel(g, p), U(p).val, V(p));
}

inline VectorXd lie_bracket(const VectorField& U, const VectorField& V, const VectorXd& p) {
    VecJet u = U(p), v = V(p);
    return v.jac * u.val - u.jac * v.val;
}

}  // namespace quatsub

#endif  // QUATSUB_FIELD_HPP

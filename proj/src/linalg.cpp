// Copyright 2025 Xanadu Quantum Technologies Inc.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flagsynth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace flagsynth {

namespace {

template <typename M> auto thin_or_full_svd(const M &a, unsigned int opts)
{
    if (a.rows() <= 16 && a.cols() <= 16) {
        Eigen::JacobiSVD<M> svd(a, opts);
        return std::make_tuple(Matrix(svd.matrixU()), RVector(svd.singularValues()),
                               Matrix(svd.matrixV()));
    }
    Eigen::BDCSVD<M> svd(a, opts);
    return std::make_tuple(Matrix(svd.matrixU()), RVector(svd.singularValues()),
                           Matrix(svd.matrixV()));
}

// Orthonormalize the columns of `w` in the order given by `order`, replacing columns whose
// norm falls below `floor` with the unit vector of largest residual.
Matrix gram_schmidt_complete(const Matrix &w, const std::vector<Eigen::Index> &order,
                             const RVector &norms, double floor)
{
    const Eigen::Index m = w.rows();
    Matrix q = Matrix::Zero(m, w.cols());
    std::vector<Eigen::Index> placed;
    auto project_out = [&](CVector &v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index p : placed) {
                v -= q.col(p) * q.col(p).dot(v);
            }
        }
    };
    for (Eigen::Index j : order) {
        CVector v;
        double nv = 0.0;
        if (norms(j) > floor) {
            v = w.col(j) / norms(j);
            project_out(v);
            nv = v.norm();
        }
        if (nv <= 1e-3) {
            double best = -1.0;
            for (Eigen::Index e = 0; e < m; ++e) {
                CVector u = CVector::Unit(m, e);
                project_out(u);
                const double nu = u.norm();
                if (nu > best) {
                    best = nu;
                    v = u;
                }
            }
            nv = best;
            if (nv <= 1e-8) {
                throw NumericalBreakdown("unable to complete orthonormal basis");
            }
        }
        q.col(j) = v / nv;
        placed.push_back(j);
    }
    return q;
}

} // namespace

double frob_dist(const Matrix &a, const Matrix &b) { return (a - b).norm(); }

double unitarity_error(const Matrix &u)
{
    if (u.rows() != u.cols()) {
        return INFINITY;
    }
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

int log2_dim(Eigen::Index dim)
{
    if (dim < 1 || (dim & (dim - 1)) != 0) {
        throw InvalidArgument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

bool is_unitary(const Matrix &u, double tol)
{
    if (u.rows() != u.cols() || u.rows() < 1 || (u.rows() & (u.rows() - 1)) != 0) {
        return false;
    }
    if (!u.allFinite()) {
        return false;
    }
    return unitarity_error(u) <= tol;
}

void require_unitary(const Matrix &u, const char *where, double tol)
{
    if (!is_unitary(u, tol)) {
        throw NonUnitaryInput(std::string(where) + ": input is not a power-of-two unitary");
    }
}

Matrix rz(double theta)
{
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * theta / 2.0);
    m(1, 1) = std::exp(kI * theta / 2.0);
    return m;
}

Matrix ry(double theta)
{
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

Matrix rx(double theta)
{
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Matrix m(2, 2);
    m << Cplx(c, 0), Cplx(0, -s), Cplx(0, -s), Cplx(c, 0);
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b)
{
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

Matrix direct_sum(const Matrix &a, const Matrix &b)
{
    Matrix r = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    r.topLeftCorner(a.rows(), a.cols()) = a;
    r.bottomRightCorner(b.rows(), b.cols()) = b;
    return r;
}

Matrix haar_unitary(Eigen::Index dim, std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = Cplx(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) {
            q.col(j) *= r(j, j) / a;
        }
    }
    return q;
}

Matrix closest_unitary(const Matrix &m)
{
    auto [u, s, v] = thin_or_full_svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    (void)s;
    return u * v.adjoint();
}

double principal_arg(Cplx z)
{
    const double a = std::abs(z);
    if (a > 0 && std::abs(z / a + 1.0) < kTol.degenerate) {
        return kPi;
    }
    return std::arg(z);
}

Matrix csd_middle(const RVector &theta_y)
{
    const Eigen::Index m = theta_y.size();
    Matrix a = Matrix::Zero(2 * m, 2 * m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double c = std::cos(theta_y(j) / 2.0), s = std::sin(theta_y(j) / 2.0);
        a(j, j) = c;
        a(j, m + j) = -s;
        a(m + j, j) = s;
        a(m + j, m + j) = c;
    }
    return a;
}

Matrix csd_reassemble(const CsdResult &r)
{
    return direct_sum(r.k00, r.k01) * csd_middle(r.theta_y) * direct_sum(r.k10, r.k11);
}

CsdResult csd(const Matrix &u)
{
    require_unitary(u, "csd");
    const int n = log2_dim(u.rows());
    if (n < 1) {
        throw InvalidArgument("csd requires at least one qubit");
    }
    const Eigen::Index m = u.rows() / 2;
    const Matrix u11 = u.topLeftCorner(m, m);
    const Matrix u12 = u.topRightCorner(m, m);
    const Matrix u21 = u.bottomLeftCorner(m, m);
    const Matrix u22 = u.bottomRightCorner(m, m);

    auto [l, c, r] = thin_or_full_svd(u11, Eigen::ComputeFullU | Eigen::ComputeFullV);
    (void)l;

    // Inside a cluster of (nearly) equal cosines the right factor is re-chosen so that the
    // sine columns are orthogonal; both Gram matrices then stay diagonal.
    for (Eigen::Index i0 = 0; i0 < m;) {
        Eigen::Index i1 = i0 + 1;
        while (i1 < m && std::abs(c(i1 - 1) - c(i1)) < kTol.csd_cluster) {
            ++i1;
        }
        const Eigen::Index sz = i1 - i0;
        if (sz > 1) {
            auto [qw, sw, vw] = thin_or_full_svd(Matrix(u21 * r.middleCols(i0, sz)),
                                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
            (void)qw;
            (void)sw;
            r.middleCols(i0, sz) = r.middleCols(i0, sz) * vw;
        }
        i0 = i1;
    }

    // Both outer factors come from the data columns, so small cosines or sines only
    // contribute errors proportional to their size.
    const Matrix x = u11 * r;
    const Matrix w = u21 * r;
    RVector cn(m), s(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        cn(j) = x.col(j).norm();
        s(j) = w.col(j).norm();
    }
    auto descending = [&](const RVector &v) {
        std::vector<Eigen::Index> order(static_cast<size_t>(m));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return v(a) > v(b); });
        return order;
    };
    const double floor = 1e-13;
    const Matrix k00 = gram_schmidt_complete(x, descending(cn), cn, floor);
    const Matrix k01 = gram_schmidt_complete(w, descending(s), s, floor);

    CsdResult res;
    res.theta_y.resize(m);
    RVector cc(m), ss(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        res.theta_y(j) = 2.0 * std::atan2(s(j), cn(j));
        cc(j) = std::cos(res.theta_y(j) / 2.0);
        ss(j) = std::sin(res.theta_y(j) / 2.0);
    }
    res.k00 = k00;
    res.k01 = k01;
    res.k10 = r.adjoint();
    Matrix k11 = cc.asDiagonal() * (k01.adjoint() * u22) - ss.asDiagonal() * (k00.adjoint() * u12);
    res.k11 = closest_unitary(k11);

    const double resid = frob_dist(csd_reassemble(res), u);
    if (!(resid <= kTol.csd_breakdown)) {
        throw NumericalBreakdown("csd reassembly residual " + std::to_string(resid));
    }
    return res;
}

EigResult eig_unitary(const Matrix &x)
{
    require_unitary(x, "eig_unitary");
    Eigen::ComplexSchur<Matrix> schur(x);
    EigResult out;
    out.basis = schur.matrixU();
    const Matrix &t = schur.matrixT();
    out.phases.resize(x.rows());
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
        out.phases(j) = principal_arg(t(j, j));
    }
    // Schur vectors of a normal matrix are an orthonormal eigenbasis; reorthonormalize once
    // more to keep degenerate clusters at machine precision.
    Eigen::HouseholderQR<Matrix> qr(out.basis);
    Matrix q = qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
    Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
        const double a = std::abs(rr(j, j));
        if (a > 0) {
            q.col(j) *= rr(j, j) / a;
        }
    }
    out.basis = q;
    CVector ev(x.rows());
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
        ev(j) = std::exp(kI * out.phases(j));
    }
    const double resid = frob_dist(out.basis * ev.asDiagonal() * out.basis.adjoint(), x);
    if (!(resid <= kTol.unitarity)) {
        throw NumericalBreakdown("eig_unitary residual " + std::to_string(resid));
    }
    return out;
}

RealEigResult eig_symmetric_unitary_real_basis(const Matrix &s)
{
    if (s.rows() != s.cols() || (s - s.transpose()).norm() > kTol.unitarity) {
        throw NotSymmetric("matrix is not complex symmetric");
    }
    const Eigen::Index d = s.rows();
    const RMatrix a = (s.real() + s.real().transpose()) / 2.0;
    const RMatrix b = (s.imag() + s.imag().transpose()) / 2.0;
    constexpr double t1 = 0.5772156649015329;
    constexpr double t2 = 0.8346268416740731;

    Eigen::SelfAdjointEigenSolver<RMatrix> es(a + t1 * b);
    RMatrix o = es.eigenvectors();
    const RVector lam = es.eigenvalues();
    for (Eigen::Index i0 = 0; i0 < d;) {
        Eigen::Index i1 = i0 + 1;
        while (i1 < d && std::abs(lam(i1) - lam(i1 - 1)) < 1e-7) {
            ++i1;
        }
        const Eigen::Index sz = i1 - i0;
        if (sz > 1) {
            const RMatrix oc = o.middleCols(i0, sz);
            Eigen::SelfAdjointEigenSolver<RMatrix> inner(oc.transpose() * (a + t2 * b) * oc);
            o.middleCols(i0, sz) = oc * inner.eigenvectors();
        }
        i0 = i1;
    }

    RealEigResult out;
    out.basis = o;
    out.phases.resize(d);
    const Matrix oc = o.cast<Cplx>();
    const Matrix dm = oc.transpose() * s * oc;
    CVector ev(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        out.phases(j) = principal_arg(dm(j, j));
        ev(j) = std::exp(kI * out.phases(j));
    }
    const double resid = frob_dist(oc * ev.asDiagonal() * oc.transpose(), s);
    if (!(resid <= kTol.reconstruction)) {
        throw NumericalBreakdown("eig_symmetric_unitary_real_basis residual " +
                                 std::to_string(resid));
    }
    return out;
}

EulerAngles euler_zyz(const Matrix &u)
{
    if (u.rows() != 2 || u.cols() != 2) {
        throw InvalidArgument("euler_zyz expects a 2x2 matrix");
    }
    const double m00 = std::abs(u(0, 0)), m01 = std::abs(u(0, 1));
    const double m10 = std::abs(u(1, 0)), m11 = std::abs(u(1, 1));
    EulerAngles e;
    e.theta_y = 2.0 * std::atan2(m01 + m10, m00 + m11);
    const double a = std::arg(u(0, 0)), d = std::arg(u(1, 1));
    const double b = std::arg(u(1, 0)), f = std::arg(-u(0, 1));
    if (m01 < kTol.kernel) {
        e.theta_y = 0.0;
        e.theta_z = 0.0;
        e.phi = -(a + d) / 2.0;
        e.omega = d - a;
    }
    else if (m00 < kTol.kernel) {
        e.theta_y = kPi;
        e.theta_z = 0.0;
        e.phi = -(b + f) / 2.0;
        e.omega = b - f;
    }
    else {
        e.phi = -(a + d) / 2.0;
        e.theta_z = d - b;
        e.omega = b - a;
    }
    return e;
}

Matrix euler_matrix(const EulerAngles &e)
{
    Matrix delta = Matrix::Zero(2, 2);
    delta(0, 0) = std::exp(-kI * (e.phi + e.omega / 2.0));
    delta(1, 1) = std::exp(-kI * (e.phi - e.omega / 2.0));
    return delta * ry(e.theta_y) * rz(e.theta_z);
}

} // namespace flagsynth

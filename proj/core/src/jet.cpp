#include "holocurve/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace holocurve {

WirtingerJet::WirtingerJet(Point base, int p, int q, int rows, int cols)
    : base_(std::move(base)), p_(p), q_(q), rows_(rows), cols_(cols) {
    if (base_.empty()) throw std::invalid_argument("WirtingerJet: empty base point");
    if (p < 0 || q < 0) throw std::invalid_argument("WirtingerJet: negative caps");
    itab_ = IndexTable::get(m(), p);
    jtab_ = IndexTable::get(m(), q);
    c_.assign(static_cast<size_t>(itab_->size()) * jtab_->size(), CMatrix::Zero(rows, cols));
}

WirtingerJet WirtingerJet::constant(const Point& base, int p, int q, const CMatrix& value) {
    WirtingerJet j(base, p, q, static_cast<int>(value.rows()), static_cast<int>(value.cols()));
    j.c_[0] = value;
    return j;
}

WirtingerJet WirtingerJet::identity(const Point& base, int p, int q, int n) {
    return constant(base, p, q, CMatrix::Identity(n, n));
}

WirtingerJet WirtingerJet::zero(const Point& base, int p, int q, int rows, int cols) {
    return WirtingerJet(base, p, q, rows, cols);
}

WirtingerJet WirtingerJet::coordinate(const Point& base, int p, int q, int coord) {
    WirtingerJet j(base, p, q, 1, 1);
    j.c_[0](0, 0) = base.at(coord);
    if (p >= 1) {
        MultiIndex e = MultiIndex::unit(j.m(), coord);
        j.coeff(e, MultiIndex::zero(j.m()))(0, 0) = 1.0;
    }
    return j;
}

WirtingerJet WirtingerJet::coordinate_conj(const Point& base, int p, int q, int coord) {
    WirtingerJet j(base, p, q, 1, 1);
    j.c_[0](0, 0) = std::conj(base.at(coord));
    if (q >= 1) {
        MultiIndex e = MultiIndex::unit(j.m(), coord);
        j.coeff(MultiIndex::zero(j.m()), e)(0, 0) = 1.0;
    }
    return j;
}

const CMatrix& WirtingerJet::coeff(const MultiIndex& I, const MultiIndex& J) const {
    int a = itab_->position(I), b = jtab_->position(J);
    if (a < 0 || b < 0) throw std::out_of_range("WirtingerJet::coeff: index beyond caps");
    return c_[idx(a, b)];
}

CMatrix& WirtingerJet::coeff(const MultiIndex& I, const MultiIndex& J) {
    int a = itab_->position(I), b = jtab_->position(J);
    if (a < 0 || b < 0) throw std::out_of_range("WirtingerJet::coeff: index beyond caps");
    return c_[idx(a, b)];
}

CMatrix WirtingerJet::extract(const MultiIndex& I, const MultiIndex& J) const {
    return coeff(I, J) * static_cast<double>(factorial(I)) * static_cast<double>(factorial(J));
}

bool WirtingerJet::same_lattice(const WirtingerJet& o) const {
    if (m() != o.m() || p_ != o.p_ || q_ != o.q_) return false;
    for (int k = 0; k < m(); ++k)
        if (base_[k] != o.base_[k]) return false;
    return true;
}

WirtingerJet WirtingerJet::operator+(const WirtingerJet& o) const {
    if (!same_lattice(o) || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("jet_add: base/caps/shape mismatch");
    WirtingerJet r(*this);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
}

WirtingerJet WirtingerJet::operator-(const WirtingerJet& o) const {
    if (!same_lattice(o) || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("jet_sub: base/caps/shape mismatch");
    WirtingerJet r(*this);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
}

WirtingerJet WirtingerJet::scaled(Complex s) const {
    WirtingerJet r(*this);
    for (auto& mtx : r.c_) mtx *= s;
    return r;
}

WirtingerJet WirtingerJet::operator*(const WirtingerJet& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("jet_mul: inner dimension mismatch");
    if (m() != o.m()) throw std::invalid_argument("jet_mul: variable count mismatch");
    for (int k = 0; k < m(); ++k)
        if (base_[k] != o.base_[k]) throw std::invalid_argument("jet_mul: base point mismatch");
    int rp = std::min(p_, o.p_), rq = std::min(q_, o.q_);
    WirtingerJet a = truncated(rp, rq);
    WirtingerJet b = o.truncated(rp, rq);
    WirtingerJet r(base_, rp, rq, rows_, o.cols_);
    const IndexTable& it = *r.itab_;
    const IndexTable& jt = *r.jtab_;
    for (int io = 0; io < it.size(); ++io) {
        for (int jo = 0; jo < jt.size(); ++jo) {
            CMatrix& out = r.c_[static_cast<size_t>(io) * jt.size() + jo];
            for (const auto& [ia, ib] : it.splits(io)) {
                for (const auto& [ja, jb] : jt.splits(jo)) {
                    out.noalias() += a.coeff(ia, ja) * b.coeff(ib, jb);
                }
            }
        }
    }
    return r;
}

WirtingerJet WirtingerJet::adjoint() const {
    WirtingerJet r(base_, q_, p_, cols_, rows_);
    for (int a = 0; a < itab_->size(); ++a)
        for (int b = 0; b < jtab_->size(); ++b)
            r.coeff(b, a) = c_[idx(a, b)].adjoint();
    return r;
}

WirtingerJet WirtingerJet::transposed() const {
    WirtingerJet r(base_, p_, q_, cols_, rows_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k].transpose();
    return r;
}

WirtingerJet WirtingerJet::d(int coord) const {
    if (p_ < 1) throw std::out_of_range("jet d: holomorphic cap exhausted");
    WirtingerJet r(base_, p_ - 1, q_, rows_, cols_);
    for (int a = 0; a < r.itab_->size(); ++a) {
        MultiIndex up = r.itab_->at(a).plus_unit(coord);
        int src = itab_->position(up);
        double mul = up[coord];
        for (int b = 0; b < jtab_->size(); ++b)
            r.coeff(a, b) = mul * c_[idx(src, b)];
    }
    return r;
}

WirtingerJet WirtingerJet::dbar(int coord) const {
    if (q_ < 1) throw std::out_of_range("jet dbar: antiholomorphic cap exhausted");
    WirtingerJet r(base_, p_, q_ - 1, rows_, cols_);
    for (int b = 0; b < r.jtab_->size(); ++b) {
        MultiIndex up = r.jtab_->at(b).plus_unit(coord);
        int src = jtab_->position(up);
        double mul = up[coord];
        for (int a = 0; a < itab_->size(); ++a)
            r.coeff(a, b) = mul * c_[idx(a, src)];
    }
    return r;
}

WirtingerJet WirtingerJet::d_sum() const {
    WirtingerJet r = d(0);
    for (int k = 1; k < m(); ++k) r = r + d(k);
    return r;
}

WirtingerJet WirtingerJet::dbar_sum() const {
    WirtingerJet r = dbar(0);
    for (int k = 1; k < m(); ++k) r = r + dbar(k);
    return r;
}

WirtingerJet WirtingerJet::truncated(int p, int q) const {
    if (p > p_ || q > q_) throw std::invalid_argument("jet truncated: caps can only shrink");
    if (p == p_ && q == q_) return *this;
    WirtingerJet r(base_, p, q, rows_, cols_);
    for (int a = 0; a < r.itab_->size(); ++a) {
        int sa = itab_->position(r.itab_->at(a));
        for (int b = 0; b < r.jtab_->size(); ++b)
            r.coeff(a, b) = c_[idx(sa, jtab_->position(r.jtab_->at(b)))];
    }
    return r;
}

WirtingerJet WirtingerJet::trace() const {
    if (rows_ != cols_) throw std::invalid_argument("jet trace: square shape required");
    WirtingerJet r(base_, p_, q_, 1, 1);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k](0, 0) = c_[k].trace();
    return r;
}

double WirtingerJet::max_abs() const {
    double r = 0.0;
    for (const auto& mtx : c_) r = std::max(r, mtx.cwiseAbs().maxCoeff());
    return r;
}

WirtingerJet jet_invert(const WirtingerJet& h, const JetInvertOptions& opts) {
    if (h.rows() != h.cols()) throw std::invalid_argument("jet_invert: square shape required");
    const CMatrix& h0 = h.value();
    Eigen::JacobiSVD<CMatrix> svd(h0);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= 0.0 || smax / smin > opts.max_condition)
        throw std::domain_error("jet_invert: constant term singular or ill-conditioned");
    Eigen::PartialPivLU<CMatrix> lu(h0);
    CMatrix h0inv = lu.inverse();

    WirtingerJet g = WirtingerJet::zero(h.base(), h.p(), h.q(), h.rows(), h.cols());
    const IndexTable& it = g.itab();
    const IndexTable& jt = g.jtab();
    // grlex recursion: g_{I,J} = -h0^{-1} sum_{(I1,J1) != 0} h_{I1,J1} g_{I-I1, J-J1}
    g.coeff(0, 0) = h0inv;
    for (int d = 1; d <= h.p() + h.q(); ++d) {
        for (int io = 0; io < it.size(); ++io) {
            for (int jo = 0; jo < jt.size(); ++jo) {
                if (it.at(io).total_degree() + jt.at(jo).total_degree() != d) continue;
                CMatrix acc = CMatrix::Zero(h.rows(), h.cols());
                for (const auto& [ia, ib] : it.splits(io)) {
                    for (const auto& [ja, jb] : jt.splits(jo)) {
                        if (it.at(ia).total_degree() + jt.at(ja).total_degree() == 0) continue;
                        acc.noalias() += h.coeff(ia, ja) * g.coeff(ib, jb);
                    }
                }
                g.coeff(io, jo) = -h0inv * acc;
            }
        }
    }
    return g;
}

WirtingerJet jet_log(const WirtingerJet& h) {
    if (h.rows() != 1 || h.cols() != 1) throw std::invalid_argument("jet_log: scalar jet required");
    Complex h0 = h.value()(0, 0);
    if (std::abs(h0.imag()) > 1e-12 * std::max(1.0, std::abs(h0.real())) || h0.real() <= 0.0)
        throw std::domain_error("jet_log: constant term must be real positive");
    // h = h0 (1 + u), log h = log h0 + sum_{k>=1} (-1)^{k+1} u^k / k
    WirtingerJet u = h.scaled(1.0 / h0);
    u.coeff(0, 0)(0, 0) -= 1.0;
    int kmax = h.p() + h.q();  // u has zero constant term, powers terminate
    WirtingerJet acc = WirtingerJet::zero(h.base(), h.p(), h.q(), 1, 1);
    acc.coeff(0, 0)(0, 0) = std::log(h0.real());
    WirtingerJet upow = u;
    for (int k = 1; k <= kmax; ++k) {
        double sign = (k % 2 == 1) ? 1.0 : -1.0;
        acc = acc + upow.scaled(sign / k);
        if (k < kmax) upow = upow * u;
    }
    return acc;
}

double rel_residual(const CMatrix& a, const CMatrix& b) {
    double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

double rel_residual(const WirtingerJet& a, const WirtingerJet& b) {
    double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    return (a - b).max_abs() / scale;
}

}  // namespace holocurve

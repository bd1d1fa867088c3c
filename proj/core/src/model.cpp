#include "holocurve/model.hpp"

#include <cmath>
#include <stdexcept>

namespace holocurve {

// ---------- ScalarPoly ----------

ScalarPoly ScalarPoly::constant(int m, Complex c) {
    ScalarPoly p(m);
    p.add_term(MultiIndex::zero(m), c);
    return p;
}

ScalarPoly ScalarPoly::coordinate(int m, int coord) {
    ScalarPoly p(m);
    p.add_term(MultiIndex::unit(m, coord), 1.0);
    return p;
}

void ScalarPoly::add_term(const MultiIndex& mono, Complex c) {
    if (mono.dim() != m_) throw std::invalid_argument("ScalarPoly: monomial dimension mismatch");
    if (c == Complex(0.0, 0.0)) return;
    auto it = terms_.find(mono.entries());
    if (it == terms_.end())
        terms_[mono.entries()] = c;
    else {
        it->second += c;
        if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
    }
}

Complex ScalarPoly::eval(const Point& z) const {
    Complex acc = 0.0;
    for (const auto& [mono, c] : terms_) {
        Complex t = c;
        for (int k = 0; k < m_; ++k)
            for (int r = 0; r < mono[k]; ++r) t *= z[k];
        acc += t;
    }
    return acc;
}

ScalarPoly ScalarPoly::derivative(int coord) const {
    ScalarPoly r(m_);
    for (const auto& [mono, c] : terms_) {
        if (mono[coord] == 0) continue;
        std::vector<int> e = mono;
        double mul = e[coord];
        e[coord] -= 1;
        r.add_term(MultiIndex(e), mul * c);
    }
    return r;
}

ScalarPoly ScalarPoly::operator*(const ScalarPoly& o) const {
    ScalarPoly r(m_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            std::vector<int> e = ma;
            for (int k = 0; k < m_; ++k) e[k] += mb[k];
            r.add_term(MultiIndex(e), ca * cb);
        }
    return r;
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& o) const {
    ScalarPoly r = *this;
    for (const auto& [mono, c] : o.terms_) r.add_term(MultiIndex(mono), c);
    return r;
}

ScalarPoly ScalarPoly::scaled(Complex s) const {
    ScalarPoly r(m_);
    for (const auto& [mono, c] : terms_) r.add_term(MultiIndex(mono), s * c);
    return r;
}

// ---------- PolynomialSection ----------

int PolynomialSection::degree() const {
    int d = 0;
    for (const auto& [mono, v] : terms_) d = std::max(d, MultiIndex(mono).total_degree());
    return d;
}

void PolynomialSection::add_term(const MultiIndex& mono, const CVector& coeff) {
    if (mono.dim() != m_) throw std::invalid_argument("PolynomialSection: monomial dim mismatch");
    if (coeff.size() != dim_) throw std::invalid_argument("PolynomialSection: coeff dim mismatch");
    auto it = terms_.find(mono.entries());
    if (it == terms_.end())
        terms_[mono.entries()] = coeff;
    else
        it->second += coeff;
}

CVector PolynomialSection::eval(const Point& z) const {
    CVector acc = CVector::Zero(dim_);
    for (const auto& [mono, v] : terms_) {
        Complex t = 1.0;
        for (int k = 0; k < m_; ++k)
            for (int r = 0; r < mono[k]; ++r) t *= z[k];
        acc += t * v;
    }
    return acc;
}

PolynomialSection PolynomialSection::derivative(int coord) const {
    PolynomialSection r(m_, dim_);
    for (const auto& [mono, v] : terms_) {
        if (mono[coord] == 0) continue;
        std::vector<int> e = mono;
        double mul = e[coord];
        e[coord] -= 1;
        r.add_term(MultiIndex(e), mul * v);
    }
    return r;
}

PolynomialSection PolynomialSection::scaled(Complex s) const {
    PolynomialSection r(m_, dim_);
    for (const auto& [mono, v] : terms_) r.add_term(MultiIndex(mono), s * v);
    return r;
}

PolynomialSection PolynomialSection::scaled_by(const ScalarPoly& phi) const {
    PolynomialSection r(m_, dim_);
    for (const auto& [pm, pc] : phi.terms())
        for (const auto& [mono, v] : terms_) {
            std::vector<int> e = mono;
            for (int k = 0; k < m_; ++k) e[k] += pm[k];
            r.add_term(MultiIndex(e), pc * v);
        }
    return r;
}

PolynomialSection PolynomialSection::plus(const PolynomialSection& o) const {
    PolynomialSection r = *this;
    for (const auto& [mono, v] : o.terms_) r.add_term(MultiIndex(mono), v);
    return r;
}

PolynomialSection PolynomialSection::apply_linear(const CMatrix& U) const {
    if (U.cols() != dim_) throw std::invalid_argument("apply_linear: shape mismatch");
    PolynomialSection r(m_, static_cast<int>(U.rows()));
    for (const auto& [mono, v] : terms_) r.add_term(MultiIndex(mono), U * v);
    return r;
}

PolynomialSection PolynomialSection::embedded(int total_dim, int offset) const {
    if (offset + dim_ > total_dim) throw std::invalid_argument("embedded: does not fit");
    PolynomialSection r(m_, total_dim);
    for (const auto& [mono, v] : terms_) {
        CVector w = CVector::Zero(total_dim);
        w.segment(offset, dim_) = v;
        r.add_term(MultiIndex(mono), w);
    }
    return r;
}

// ---------- Frame ----------

CMatrix Frame::eval(const Point& z) const {
    CMatrix out(dim(), n());
    for (int k = 0; k < n(); ++k) out.col(k) = sections[k].eval(z);
    return out;
}

Frame Frame::apply_linear(const CMatrix& U) const {
    Frame r;
    for (const auto& s : sections) r.sections.push_back(s.apply_linear(U));
    return r;
}

Frame Frame::scaled_by(const ScalarPoly& phi) const {
    Frame r;
    for (const auto& s : sections) r.sections.push_back(s.scaled_by(phi));
    return r;
}

WirtingerJet section_eval_jet(const PolynomialSection& s, const Point& base, int p, int q) {
    WirtingerJet j(base, p, q, s.dim(), 1);
    MultiIndex z = MultiIndex::zero(s.m());
    for (int a = 0; a < j.itab().size(); ++a) {
        const MultiIndex& I = j.itab().at(a);
        CVector acc = CVector::Zero(s.dim());
        bool any = false;
        for (const auto& [mono, v] : s.terms()) {
            MultiIndex M(mono);
            if (!I.leq(M)) continue;
            // Taylor shift: coeff of (z-base)^I in v * z^M is C(M,I) base^{M-I} v
            Complex c = static_cast<double>(multinomial(M, I));
            for (int k = 0; k < s.m(); ++k)
                for (int r = 0; r < M[k] - I[k]; ++r) c *= base[k];
            acc += c * v;
            any = true;
        }
        if (any) j.coeff(I, z).col(0) = acc;
    }
    return j;
}

WirtingerJet frame_eval_jet(const Frame& f, const Point& base, int p, int q) {
    WirtingerJet j(base, p, q, f.dim(), f.n());
    MultiIndex z = MultiIndex::zero(f.m());
    for (int k = 0; k < f.n(); ++k) {
        WirtingerJet sj = section_eval_jet(f.sections[k], base, p, q);
        for (int a = 0; a < j.itab().size(); ++a)
            j.coeff(a, 0).col(k) = sj.coeff(a, 0).col(0);
    }
    return j;
}

double frame_min_singular(const Frame& f, const std::vector<Point>& points) {
    double smin = std::numeric_limits<double>::infinity();
    for (const auto& z : points) {
        Eigen::JacobiSVD<CMatrix> svd(f.eval(z));
        smin = std::min(smin, svd.singularValues().minCoeff());
    }
    return smin;
}

// ---------- kernels ----------

DiagonalKernelSpec DiagonalKernelSpec::hardy(int m, int N) {
    DiagonalKernelSpec s;
    s.m = m;
    s.truncation = N;
    s.weights.assign(enumerate_total_degree(m, N).size(), 1.0);
    return s;
}

DiagonalKernelSpec DiagonalKernelSpec::bergman(int N) {
    DiagonalKernelSpec s;
    s.m = 1;
    s.truncation = N;
    s.weights.resize(N + 1);
    for (int j = 0; j <= N; ++j) s.weights[j] = std::sqrt(j + 1.0);
    return s;
}

DiagonalKernelSpec DiagonalKernelSpec::drury_arveson(int m, int N) {
    DiagonalKernelSpec s;
    s.m = m;
    s.truncation = N;
    auto idx = enumerate_total_degree(m, N);
    s.weights.resize(idx.size());
    for (size_t k = 0; k < idx.size(); ++k)
        s.weights[k] = std::sqrt(static_cast<double>(factorial(idx[k].total_degree())) /
                                 static_cast<double>(factorial(idx[k])));
    return s;
}

DiagonalKernelSpec DiagonalKernelSpec::explicit_weights(int m, int N, std::vector<double> w) {
    DiagonalKernelSpec s;
    s.m = m;
    s.truncation = N;
    s.weights = std::move(w);
    s.validate();
    return s;
}

DiagonalKernelSpec DiagonalKernelSpec::preset(const std::string& name, int m, int N) {
    if (name == "hardy") return hardy(m, N);
    if (name == "bergman") {
        if (m != 1) throw std::invalid_argument("bergman preset requires m = 1");
        return bergman(N);
    }
    if (name == "drury-arveson") return drury_arveson(m, N);
    throw std::invalid_argument("unknown kernel preset: " + name);
}

double DiagonalKernelSpec::weight(const MultiIndex& I) const {
    auto tab = IndexTable::get(m, truncation);
    int pos = tab->position(I);
    if (pos < 0) throw std::out_of_range("kernel weight: index beyond truncation");
    return weights.at(pos);
}

int DiagonalKernelSpec::dim() const {
    return static_cast<int>(enumerate_total_degree(m, truncation).size());
}

void DiagonalKernelSpec::validate() const {
    if (static_cast<int>(weights.size()) != dim())
        throw std::invalid_argument("kernel: weight count does not match truncation");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("kernel: weights must be positive");
}

PolynomialSection section_from_kernel(const DiagonalKernelSpec& spec) {
    spec.validate();
    auto idx = enumerate_total_degree(spec.m, spec.truncation);
    PolynomialSection s(spec.m, static_cast<int>(idx.size()));
    for (size_t pos = 0; pos < idx.size(); ++pos) {
        CVector v = CVector::Zero(static_cast<int>(idx.size()));
        v(static_cast<int>(pos)) = spec.weights[pos];
        s.add_term(idx[pos], v);
    }
    return s;
}

Frame jet_frame(const PolynomialSection& t, int k) {
    if (t.m() != 1) throw std::invalid_argument("jet_frame: m = 1 required");
    Frame f;
    PolynomialSection cur = t;
    f.sections.push_back(cur);
    for (int r = 1; r <= k; ++r) {
        cur = cur.derivative(0);
        f.sections.push_back(cur);
    }
    return f;
}

Frame jet_frame_partial(const PolynomialSection& t, int coord) {
    Frame f;
    f.sections.push_back(t);
    f.sections.push_back(t.derivative(coord));
    return f;
}

Frame ofb_frame(const std::vector<PolynomialSection>& t, int n) {
    if (static_cast<int>(t.size()) < n) throw std::invalid_argument("ofb_frame: need n sections");
    for (const auto& s : t)
        if (s.m() != 1 || s.dim() != t[0].dim())
            throw std::invalid_argument("ofb_frame: sections must share dimension, m = 1");
    Frame f;
    for (int k = 0; k < n; ++k) {
        PolynomialSection gk(1, t[0].dim());
        for (int i = 0; i <= k; ++i) {
            PolynomialSection d = t[i];
            for (int r = 0; r < k - i; ++r) d = d.derivative(0);
            double coef = static_cast<double>(factorial(i)) *
                          static_cast<double>(multinomial(MultiIndex({k}), MultiIndex({i})));
            gk = gk.plus(d.scaled(coef));
        }
        f.sections.push_back(gk);
    }
    return f;
}

PolynomialSection Fb2Model::t0() const {
    return section_from_kernel(kernel0).scaled(-coupling);
}

PolynomialSection Fb2Model::t1() const { return section_from_kernel(kernel1); }

Frame fb2_frame(const Fb2Model& model) {
    int D = model.dim();
    PolynomialSection t0e = model.t0().embedded(D, 0);
    PolynomialSection t1e = model.t1().embedded(D, model.dim0());
    Frame f;
    f.sections.push_back(t0e);
    f.sections.push_back(t0e.derivative(0).plus(t1e.scaled(-1.0)));
    return f;
}

}  // namespace holocurve

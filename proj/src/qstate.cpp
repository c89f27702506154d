#include "otto/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace otto {

HilbertLayout::HilbertLayout(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw std::domain_error("layout needs at least one factor");
    total_ = 1;
    for (int d : dims_) {
        if (d < 1) throw std::domain_error("layout factor dimension must be >= 1");
        total_ *= d;
    }
}

int HilbertLayout::index(const std::vector<int>& digits) const {
    if (digits.size() != dims_.size()) throw std::domain_error("multi-index rank mismatch");
    int flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims_[k]) throw std::out_of_range("multi-index digit out of range");
        flat = flat * dims_[k] + digits[k];
    }
    return flat;
}

std::vector<int> HilbertLayout::digits(int flat) const {
    if (flat < 0 || flat >= total_) throw std::out_of_range("flat index out of range");
    std::vector<int> out(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        out[k] = flat % dims_[k];
        flat /= dims_[k];
    }
    return out;
}

Operator::Operator(HilbertLayout layout, Matrix m) : layout_(std::move(layout)), m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::domain_error("operator matrix must be square");
    if (m_.rows() != layout_.total_dim()) throw std::domain_error("operator dimension does not match layout");
}

Operator Operator::identity(const HilbertLayout& layout) {
    return {layout, Matrix::Identity(layout.total_dim(), layout.total_dim())};
}

Operator Operator::zero(const HilbertLayout& layout) {
    return {layout, Matrix::Zero(layout.total_dim(), layout.total_dim())};
}

Operator Operator::ket_bra(const HilbertLayout& layout, int i, int j) {
    Matrix m = Matrix::Zero(layout.total_dim(), layout.total_dim());
    if (i < 0 || j < 0 || i >= layout.total_dim() || j >= layout.total_dim())
        throw std::out_of_range("ket_bra index out of range");
    m(i, j) = 1.0;
    return {layout, m};
}

Operator Operator::diagonal(const HilbertLayout& layout, const std::vector<double>& d) {
    if (static_cast<int>(d.size()) != layout.total_dim()) throw std::domain_error("diagonal length mismatch");
    Matrix m = Matrix::Zero(layout.total_dim(), layout.total_dim());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return {layout, m};
}

double Operator::max_abs() const {
    return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

static void require_same(const HilbertLayout& a, const HilbertLayout& b) {
    if (a != b) throw std::domain_error("layout mismatch");
}

Operator Operator::operator+(const Operator& o) const {
    require_same(layout_, o.layout_);
    return {layout_, m_ + o.m_};
}

Operator Operator::operator-(const Operator& o) const {
    require_same(layout_, o.layout_);
    return {layout_, m_ - o.m_};
}

Operator Operator::operator*(const Operator& o) const {
    require_same(layout_, o.layout_);
    return {layout_, m_ * o.m_};
}

std::vector<std::string> DensityMatrix::violations(double herm_tol, double trace_tol, double psd_tol) const {
    std::vector<std::string> out;
    const Matrix& m = op_.matrix();
    if (!m.allFinite()) {
        out.emplace_back("non-finite entries");
        return out;
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) out.emplace_back("not Hermitian (residual " + std::to_string(herm) + ")");
    cplx tr = m.trace();
    if (std::abs(tr - 1.0) > trace_tol) out.emplace_back("trace differs from 1");
    Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) out.emplace_back("negative eigenvalue");
    return out;
}

void DensityMatrix::validate() const {
    auto v = violations();
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid density matrix:";
    for (auto& s : v) os << ' ' << s << ';';
    throw std::domain_error(os.str());
}

DensityMatrix gibbs_qubit(double beta, double omega) {
    if (!std::isfinite(beta) || !std::isfinite(omega)) throw std::domain_error("gibbs_qubit: non-finite input");
    if (beta < 0) throw std::domain_error("gibbs_qubit: beta must be >= 0");
    if (omega <= 0) throw std::domain_error("gibbs_qubit: omega must be > 0");
    double a = std::exp(-beta * omega);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0 / (1.0 + a);
    m(1, 1) = a / (1.0 + a);
    return DensityMatrix(Operator(HilbertLayout({2}), m));
}

Operator tensor(const Operator& a, const Operator& b) {
    const Matrix& A = a.matrix();
    const Matrix& B = b.matrix();
    const Eigen::Index nb = B.rows();
    Matrix k(A.rows() * nb, A.cols() * nb);
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) k.block(i * nb, j * nb, nb, nb) = A(i, j) * B;
    std::vector<int> dims = a.layout().factor_dims();
    dims.insert(dims.end(), b.layout().factor_dims().begin(), b.layout().factor_dims().end());
    return {HilbertLayout(dims), k};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.op(), b.op()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    const HilbertLayout& L = rho.layout();
    if (keep.empty()) throw std::domain_error("partial_trace: keep set is empty");
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (auto k : keep)
        if (k >= L.factor_count()) throw std::domain_error("partial_trace: factor index out of range");

    std::vector<int> kept_dims;
    for (auto k : keep) kept_dims.push_back(L.factor_dims()[k]);
    HilbertLayout out_layout(kept_dims);
    Matrix out = Matrix::Zero(out_layout.total_dim(), out_layout.total_dim());

    std::vector<bool> is_kept(L.factor_count(), false);
    for (auto k : keep) is_kept[k] = true;

    const int n = L.total_dim();
    std::vector<std::vector<int>> dig(n);
    std::vector<int> reduced(n);
    for (int i = 0; i < n; ++i) {
        dig[i] = L.digits(i);
        std::vector<int> r;
        for (auto k : keep) r.push_back(dig[i][k]);
        reduced[i] = out_layout.index(r);
    }
    // Sum entries whose traced-out digits agree.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            bool match = true;
            for (std::size_t f = 0; f < L.factor_count() && match; ++f)
                if (!is_kept[f] && dig[i][f] != dig[j][f]) match = false;
            if (match) out(reduced[i], reduced[j]) += rho.matrix()(i, j);
        }
    }
    return DensityMatrix(Operator(out_layout, out));
}

cplx expectation(const Operator& obs, const DensityMatrix& rho) {
    if (obs.dim() != rho.dim()) throw std::domain_error("expectation: dimension mismatch");
    // Tr[A B] without forming the product.
    return (obs.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Matrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l < -1e-10) throw std::domain_error("von_neumann_entropy: negative eigenvalue");
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0) s -= l * std::log(l);
    }
    return s;
}

Operator embed(const HilbertLayout& layout, std::size_t factor, const Matrix& local) {
    if (factor >= layout.factor_count()) throw std::domain_error("embed: factor index out of range");
    if (local.rows() != layout.factor_dims()[factor] || local.cols() != local.rows())
        throw std::domain_error("embed: local operator dimension mismatch");
    Operator out;
    for (std::size_t f = 0; f < layout.factor_count(); ++f) {
        int d = layout.factor_dims()[f];
        Operator piece(HilbertLayout({d}), f == factor ? local : Matrix(Matrix::Identity(d, d)));
        out = (f == 0) ? piece : tensor(out, piece);
    }
    return out;
}

}  // namespace otto

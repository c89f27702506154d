// qstate.hpp: dense states and operators on small tensor-product spaces
//
// Matrices are Eigen::MatrixXcd (column-major). Factor order is fixed by the
// caller; the engine code always uses (catalyst, hot, cold) with the first
// factor varying slowest in the flat basis index.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace otto {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Thrown when a numerical cross-check between two independent routes fails.
struct NumericalInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class HilbertLayout {
public:
    HilbertLayout() = default;
    explicit HilbertLayout(std::vector<int> factor_dims);

    const std::vector<int>& factor_dims() const { return dims_; }
    std::size_t factor_count() const { return dims_.size(); }
    int total_dim() const { return total_; }

    // Flat index of a multi-index; first factor slowest.
    int index(const std::vector<int>& digits) const;
    std::vector<int> digits(int flat) const;

    bool operator==(const HilbertLayout& o) const { return dims_ == o.dims_; }
    bool operator!=(const HilbertLayout& o) const { return !(*this == o); }

private:
    std::vector<int> dims_;
    int total_ = 0;
};

class Operator {
public:
    Operator() = default;
    Operator(HilbertLayout layout, Matrix m);

    static Operator identity(const HilbertLayout& layout);
    static Operator zero(const HilbertLayout& layout);
    // |i><j| in the flat basis.
    static Operator ket_bra(const HilbertLayout& layout, int i, int j);
    static Operator diagonal(const HilbertLayout& layout, const std::vector<double>& d);

    const HilbertLayout& layout() const { return layout_; }
    const Matrix& matrix() const { return m_; }
    int dim() const { return layout_.total_dim(); }
    cplx operator()(int i, int j) const { return m_(i, j); }

    Operator adjoint() const { return {layout_, m_.adjoint()}; }
    double max_abs() const;

    Operator operator+(const Operator& o) const;
    Operator operator-(const Operator& o) const;
    Operator operator*(const Operator& o) const;
    Operator operator*(cplx s) const { return {layout_, m_ * s}; }

private:
    HilbertLayout layout_;
    Matrix m_;
};

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Operator op) : op_(std::move(op)) {}

    const Operator& op() const { return op_; }
    const HilbertLayout& layout() const { return op_.layout(); }
    const Matrix& matrix() const { return op_.matrix(); }
    int dim() const { return op_.dim(); }
    double population(int i) const { return op_(i, i).real(); }

    // Empty list means valid: Hermitian to 1e-12, unit trace to 1e-12,
    // eigenvalues >= -1e-10.
    std::vector<std::string> violations(double herm_tol = 1e-12, double trace_tol = 1e-12,
                                        double psd_tol = 1e-10) const;
    // Throws std::domain_error listing the violations.
    void validate() const;

private:
    Operator op_;
};

// diag(1, a)/(1 + a) with a = exp(-beta*omega), basis {|0>, |1>}, H = omega|1><1|.
DensityMatrix gibbs_qubit(double beta, double omega);

Operator tensor(const Operator& a, const Operator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// keep: factor indices to retain, any order; result keeps them in layout order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);

cplx expectation(const Operator& obs, const DensityMatrix& rho);

// Nats. Eigenvalues below -1e-10 throw; the rest are clamped to [0, 1].
double von_neumann_entropy(const DensityMatrix& rho);

// Single-factor operator embedded as I (x) ... (x) local (x) ... (x) I.
Operator embed(const HilbertLayout& layout, std::size_t factor, const Matrix& local);

}  // namespace otto

#include "jrsp/tensor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jrsp {

namespace {

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

void check_targets(std::span<const QubitAddress> targets, std::size_t num_qubits) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].index >= num_qubits) {
            throw std::out_of_range("qubit address " + std::to_string(targets[i].index) +
                                    " outside register of " + std::to_string(num_qubits));
        }
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate qubit address " +
                                            std::to_string(targets[i].index));
            }
        }
    }
}

// Bit position (from the least significant end) of a qubit.
std::size_t bit_of(QubitAddress q, std::size_t num_qubits) { return num_qubits - 1 - q.index; }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows > kMaxDimension || cols > kMaxDimension) {
        throw std::length_error("matrix dimension exceeds 2^12");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), 1);
    std::copy(entries.begin(), entries.end(), m.data_.begin());
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in *");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex lhs = a(r, k);
            if (lhs == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += lhs * b(k, c);
        }
    }
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

QuantumState::QuantumState(std::size_t num_qubits, ComplexMatrix rho)
    : num_qubits_(num_qubits), rho_(std::move(rho)) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (num_qubits > 12 || rho_.rows() != dim || rho_.cols() != dim) {
        throw std::invalid_argument("density matrix shape does not match " +
                                    std::to_string(num_qubits) + " qubits");
    }
    if (!rho_.all_finite()) throw std::invalid_argument("density matrix has non-finite entries");
}

QuantumState QuantumState::from_pure(std::span<const Complex> amplitudes) {
    if (!is_power_of_two(amplitudes.size())) {
        throw std::invalid_argument("state vector length is not a power of two");
    }
    return {log2_exact(amplitudes.size()), ComplexMatrix::outer(amplitudes)};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() * b.rows() > kMaxDimension || a.cols() * b.cols() > kMaxDimension) {
        throw std::length_error("Kronecker product exceeds 2^12 x 2^12");
    }
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    m(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return m;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const QubitAddress> targets,
                             std::size_t num_qubits) {
    check_targets(targets, num_qubits);
    const std::size_t k = targets.size();
    if (op.rows() != op.cols() || op.rows() != (std::size_t{1} << k)) {
        throw std::invalid_argument("operator size does not match number of targets");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    std::size_t target_mask = 0;
    for (auto q : targets) target_mask |= std::size_t{1} << bit_of(q, num_qubits);

    // Local index of a global basis index: target bits gathered in target order.
    auto local_index = [&](std::size_t global) {
        std::size_t local = 0;
        for (auto q : targets) local = (local << 1) | ((global >> bit_of(q, num_qubits)) & 1U);
        return local;
    };

    ComplexMatrix full(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) continue;
            full(r, c) = op(local_index(r), local_index(c));
        }
    }
    return full;
}

QuantumState apply_unitary(const QuantumState& state, const ComplexMatrix& u,
                           std::span<const QubitAddress> targets) {
    if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
    const double defect = max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
    if (defect > kStructuralTolerance) {
        std::ostringstream msg;
        msg << "operator is not unitary (defect " << defect << ")";
        throw std::invalid_argument(msg.str());
    }
    const ComplexMatrix full = embed_operator(u, targets, state.num_qubits());
    return {state.num_qubits(), full * state.rho() * full.adjoint()};
}

QuantumState apply_operator_sum(const QuantumState& state, std::span<const ComplexMatrix> ops,
                                std::span<const QubitAddress> targets) {
    ComplexMatrix out(state.dimension(), state.dimension());
    for (const auto& op : ops) {
        const ComplexMatrix full = embed_operator(op, targets, state.num_qubits());
        out += full * state.rho() * full.adjoint();
    }
    return {state.num_qubits(), std::move(out)};
}

QuantumState apply_correlated_kraus(const QuantumState& state, std::span<const ComplexMatrix> kraus_ops,
                                    QubitPair pair_a, QubitPair pair_b) {
    const std::array<QubitAddress, 4> targets{pair_a.first, pair_a.second, pair_b.first, pair_b.second};
    check_targets(targets, state.num_qubits());
    for (const auto& e : kraus_ops) {
        if (e.rows() != 2 || e.cols() != 2) throw std::invalid_argument("Kraus operators must be 2x2");
    }
    std::vector<ComplexMatrix> products;
    products.reserve(kraus_ops.size() * kraus_ops.size());
    for (const auto& ei : kraus_ops) {
        const ComplexMatrix on_a = kron(ei, ei);
        for (const auto& ej : kraus_ops) products.push_back(kron(on_a, kron(ej, ej)));
    }
    return apply_operator_sum(state, products, targets);
}

ProjectionResult project_two_qubit(const QuantumState& state, std::span<const Complex> basis_vector,
                                   QubitPair targets) {
    const std::size_t n = state.num_qubits();
    const std::array<QubitAddress, 2> pair{targets.first, targets.second};
    check_targets(pair, n);
    if (basis_vector.size() != 4) throw std::invalid_argument("two-qubit basis vector must have 4 entries");
    double norm = 0.0;
    for (auto z : basis_vector) norm += std::norm(z);
    if (std::abs(norm - 1.0) > kStructuralTolerance) {
        throw std::invalid_argument("basis vector is not normalized");
    }

    const std::size_t first_bit = bit_of(targets.first, n);
    const std::size_t second_bit = bit_of(targets.second, n);
    const std::size_t rest = n - 2;
    const std::size_t rest_dim = std::size_t{1} << rest;

    // Global index for remaining-register index `r` and pair value `v`.
    auto global_index = [&](std::size_t r, std::size_t v) {
        std::size_t g = 0;
        std::size_t r_bit = 0;
        for (std::size_t b = 0; b < n; ++b) {
            if (b == first_bit) {
                g |= ((v >> 1) & 1U) << b;
            } else if (b == second_bit) {
                g |= (v & 1U) << b;
            } else {
                g |= ((r >> r_bit) & 1U) << b;
                ++r_bit;
            }
        }
        return g;
    };

    ComplexMatrix reduced(rest_dim, rest_dim);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        for (std::size_t c = 0; c < rest_dim; ++c) {
            Complex acc = 0.0;
            for (std::size_t s = 0; s < 4; ++s) {
                const Complex bra = std::conj(basis_vector[s]);
                if (bra == Complex{}) continue;
                for (std::size_t t = 0; t < 4; ++t) {
                    acc += bra * state.rho()(global_index(r, s), global_index(c, t)) * basis_vector[t];
                }
            }
            reduced(r, c) = acc;
        }
    }
    const double weight = reduced.trace().real();
    return {weight, QuantumState(rest, std::move(reduced))};
}

double pure_overlap(const QuantumState& state, std::span<const Complex> psi) {
    if (psi.size() != state.dimension()) throw std::invalid_argument("overlap dimension mismatch");
    Complex acc = 0.0;
    for (std::size_t r = 0; r < psi.size(); ++r) {
        Complex row = 0.0;
        for (std::size_t c = 0; c < psi.size(); ++c) row += state.rho()(r, c) * psi[c];
        acc += std::conj(psi[r]) * row;
    }
    return acc.real();
}

std::vector<std::string> validate_state(const QuantumState& state, bool allow_subnormalized) {
    std::vector<std::string> violations;
    const ComplexMatrix& rho = state.rho();
    if (!is_power_of_two(rho.rows())) violations.emplace_back("dimension is not a power of two");
    if (!rho.all_finite()) {
        violations.emplace_back("non-finite entries");
        return violations;
    }

    const double herm = max_abs_diff(rho, rho.adjoint());
    if (herm >= kStructuralTolerance) {
        std::ostringstream msg;
        msg << "not Hermitian (defect " << herm << ")";
        violations.push_back(msg.str());
    }

    const auto dim = static_cast<Eigen::Index>(rho.rows());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto ur = static_cast<std::size_t>(r);
            const auto uc = static_cast<std::size_t>(c);
            m(r, c) = 0.5 * (rho(ur, uc) + std::conj(rho(uc, ur)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest <= -kPsdTolerance) {
        std::ostringstream msg;
        msg << "not positive semidefinite (eigenvalue " << smallest << ")";
        violations.push_back(msg.str());
    }

    const double tr = state.trace();
    const bool trace_ok = allow_subnormalized
                              ? (tr > 0.0 && tr <= 1.0 + kStructuralTolerance)
                              : std::abs(tr - 1.0) < kStructuralTolerance;
    if (!trace_ok) {
        std::ostringstream msg;
        msg << "trace out of range (" << tr << ")";
        violations.push_back(msg.str());
    }
    return violations;
}

}  // namespace jrsp

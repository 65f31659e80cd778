// Dense complex linear algebra for small qubit registers.
//
// Qubit index 0 is the most significant bit of a computational basis index,
// so for a register q0 q1 ... q(n-1) the basis state |b0 b1 ... b(n-1)> sits
// at index sum_k b_k * 2^(n-1-k).

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace jrsp {

using Complex = std::complex<double>;

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 12;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix column(std::span<const Complex> entries);
    static ComplexMatrix diagonal(std::span<const Complex> entries);
    // |v><v|
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Largest absolute entry of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_power_of_two(std::size_t n);

struct QubitAddress {
    std::size_t index = 0;
    friend bool operator==(QubitAddress, QubitAddress) = default;
};

using QubitPair = std::pair<QubitAddress, QubitAddress>;

// Density operator over num_qubits qubits. May be sub-normalized; the
// constructor only checks shape and finiteness, use validate_state() for the
// physical invariants.
class QuantumState {
public:
    QuantumState(std::size_t num_qubits, ComplexMatrix rho);

    static QuantumState from_pure(std::span<const Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return rho_.rows(); }
    const ComplexMatrix& rho() const { return rho_; }
    double trace() const { return rho_.trace().real(); }

private:
    std::size_t num_qubits_;
    ComplexMatrix rho_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Lifts a 2^k x 2^k operator acting on `targets` (in order) to the full
// 2^n x 2^n register.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const QubitAddress> targets,
                             std::size_t num_qubits);

QuantumState apply_unitary(const QuantumState& state, const ComplexMatrix& u,
                           std::span<const QubitAddress> targets);

// rho -> sum_k K_k rho K_k^dagger for an arbitrary operator list on the
// given targets. No completeness requirement.
QuantumState apply_operator_sum(const QuantumState& state, std::span<const ComplexMatrix> ops,
                                std::span<const QubitAddress> targets);

// rho -> sum_{i,j} (E_i x E_i x E_j x E_j) rho (...)^dagger with E_i on both
// qubits of pair_a and E_j on both qubits of pair_b. Trace-decreasing in
// general; the output is not renormalized.
QuantumState apply_correlated_kraus(const QuantumState& state, std::span<const ComplexMatrix> kraus_ops,
                                    QubitPair pair_a, QubitPair pair_b);

struct ProjectionResult {
    double weight;
    QuantumState reduced;
};

// Returns <b|rho|b> over the two target qubits, where `basis_vector` is the
// ket |b> in the order |00>,|01>,|10>,|11> of (first, second). The remaining
// qubits keep their relative order in the reduced state.
ProjectionResult project_two_qubit(const QuantumState& state, std::span<const Complex> basis_vector,
                                   QubitPair targets);

// <psi|rho|psi>
double pure_overlap(const QuantumState& state, std::span<const Complex> psi);

std::vector<std::string> validate_state(const QuantumState& state, bool allow_subnormalized);

}  // namespace jrsp

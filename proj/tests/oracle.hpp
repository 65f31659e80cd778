// Brute-force reference for the JRSP pipeline, written against physical qubit
// labels and pure-state amplitudes only. Shares no code with the library
// beyond std::complex: the noisy density matrix is never formed; each Kraus
// product is applied to the channel ket and its branches are summed
// incoherently.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

enum class Kind { BitFlip, PhaseFlip, BitPhaseFlip, AmplitudeDamping, PhaseDamping, Depolarizing };

inline std::vector<M2> kraus(Kind kind, double l, bool printed_phase_damping = false) {
    const double a = std::sqrt(1 - l), b = std::sqrt(l), t = std::sqrt(l / 3);
    const C i{0, 1};
    const M2 id{{{1, 0}, {0, 1}}}, x{{{0, 1}, {1, 0}}}, y{{{0, -i}, {i, 0}}}, z{{{1, 0}, {0, -1}}};
    auto s = [](double k, M2 m) {
        for (auto& row : m)
            for (auto& e : row) e *= k;
        return m;
    };
    switch (kind) {
        case Kind::BitFlip: return {s(a, id), s(b, x)};
        case Kind::PhaseFlip: return {s(a, id), s(b, z)};
        case Kind::BitPhaseFlip: return {s(a, id), s(b, y)};
        case Kind::AmplitudeDamping: return {M2{{{1, 0}, {0, a}}}, M2{{{0, b}, {0, 0}}}};
        case Kind::PhaseDamping:
            return {printed_phase_damping ? M2{{{a, 0}, {0, 0}}} : s(a, id), M2{{{b, 0}, {0, 0}}},
                    M2{{{0, 0}, {0, b}}}};
        case Kind::Depolarizing: return {s(a, id), s(t, x), s(t, y), s(t, z)};
    }
    return {};
}

// Ket over physical labels 1..6, bit of label L is bit (6-L) of the index
// (label 1 most significant). GHZ on (1,2,3) times GHZ on (4,5,6).
inline std::array<C, 64> channel_ket_by_label() {
    std::array<C, 64> v{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const int idx = (x << 5) | (x << 4) | (x << 3) | (y << 2) | (y << 1) | y;
            v[idx] = 0.5;
        }
    return v;
}

inline int bit(int idx, int label) { return (idx >> (6 - label)) & 1; }

inline std::array<C, 64> apply_on_label(const std::array<C, 64>& v, const M2& m, int label) {
    std::array<C, 64> out{};
    for (int idx = 0; idx < 64; ++idx) {
        const int b = bit(idx, label);
        const int flipped = idx ^ (1 << (6 - label));
        // out[idx] = sum_c m[b][c] v[idx with label bit c]
        out[idx] += m[b][b] * v[idx] + m[b][1 - b] * v[flipped];
    }
    return out;
}

// Sender basis rows written out from the 4x4 table; ket entries.
inline std::array<std::array<C, 4>, 4> basis(const std::array<double, 4>& t) {
    auto em = [&](int n) { return std::polar(0.5, -t[n]); };
    auto ep = [&](int n) { return std::polar(0.5, t[n]); };
    return {{{em(0), em(1), em(2), em(3)},
             {em(0), -em(1), em(2), -em(3)},
             {ep(2), ep(3), -ep(0), -ep(1)},
             {ep(2), -ep(3), -ep(0), ep(1)}}};
}

// Receiver amplitudes on (3,6) after projecting (1,4) onto Alice's ket a and
// (2,5) onto Bob's ket b.
inline std::array<C, 4> receiver_ket(const std::array<C, 64>& v, const std::array<C, 4>& a,
                                     const std::array<C, 4>& b) {
    std::array<C, 4> out{};
    for (int idx = 0; idx < 64; ++idx) {
        const int pa = 2 * bit(idx, 1) + bit(idx, 4);
        const int pb = 2 * bit(idx, 2) + bit(idx, 5);
        const int pc = 2 * bit(idx, 3) + bit(idx, 6);
        out[pc] += std::conj(a[pa]) * std::conj(b[pb]) * v[idx];
    }
    return out;
}

struct Result {
    double fidelity;                 // 4 * sum of case-1 overlaps
    std::array<double, 16> weights;  // (alice-1)*4 + (bob-1)
    double trace;
};

inline Result run(Kind kind, double lambda, const std::array<double, 4>& alpha, const std::array<double, 4>& beta,
                  bool printed_phase_damping = false) {
    const auto ops = kraus(kind, lambda, printed_phase_damping);
    const auto ket = channel_ket_by_label();
    const auto A = basis(alpha);
    const auto B = basis(beta);
    std::array<C, 4> psi{};
    for (int n = 0; n < 4; ++n) psi[n] = std::polar(0.5, alpha[n] + beta[n]);

    Result r{0.0, {}, 0.0};
    for (const auto& ei : ops)
        for (const auto& ej : ops) {
            auto v = apply_on_label(ket, ei, 1);
            v = apply_on_label(v, ei, 4);
            v = apply_on_label(v, ej, 2);
            v = apply_on_label(v, ej, 5);
            for (const auto& z : v) r.trace += std::norm(z);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    auto c = receiver_ket(v, A[i], B[j]);
                    double w = 0;
                    for (const auto& z : c) w += std::norm(z);
                    r.weights[i * 4 + j] += w;
                    if (i < 2 && j < 2) {
                        if (i != j) {  // I x sigma_z: flip sign where qubit 6 is 1
                            c[1] = -c[1];
                            c[3] = -c[3];
                        }
                        C overlap = 0;
                        for (int n = 0; n < 4; ++n) overlap += std::conj(psi[n]) * c[n];
                        r.fidelity += 4.0 * std::norm(overlap);
                    }
                }
        }
    return r;
}

}  // namespace oracle

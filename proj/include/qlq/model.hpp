// model.hpp — Hamiltonian and bath-state builders for single-qubit / single-mode ladder models

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlq::model {

using Complex = std::complex<double>;

// Canonical basis ordering used everywhere: interleaved product basis
// {|g,0>, |e,0>, |g,1>, |e,1>, ..., |g,N>, |e,N>}.
// Convention: sigma_z|e> = +|e>, sigma_z|g> = -|g>, so N_exc = (sigma_z+I)/2 + a^dag a
// assigns one excitation to |e>.
enum class BasisOrdering { Interleaved };

inline int dim(int n_max) { return 2 * (n_max + 1); }

inline int basis_index(int n, bool excited) { return 2 * n + (excited ? 1 : 0); }

struct DenseOperator {
    Eigen::MatrixXcd mat;
    int n_max = 0;
    BasisOrdering basis = BasisOrdering::Interleaved;
};

struct JCParams {
    double omega0 = 1.0;
    double omega_c = 1.0;
    double g = 0.3;
    int n_max = 3;

    double detuning() const { return omega0 - omega_c; }

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("JCParams: n_max must be >= 1");
        if (!std::isfinite(omega0) || !std::isfinite(omega_c) || !std::isfinite(g))
            throw std::invalid_argument("JCParams: parameters must be finite");
    }
};

// Generalized U(1)-conserving ladder: diagonal energies E_g[n], E_e[n] and
// complex couplings v[n-1] between |g,n> and |e,n-1> (n = 1..N).
struct LadderSpec {
    Eigen::VectorXd e_ground;    // length N+1
    Eigen::VectorXd e_excited;   // length N+1
    Eigen::VectorXcd coupling;   // length N, coupling(n-1) = v_n

    int n_max() const { return static_cast<int>(coupling.size()); }

    void validate() const {
        const int n = n_max();
        if (n < 1) throw std::invalid_argument("LadderSpec: need at least one coupling");
        if (e_ground.size() != n + 1 || e_excited.size() != n + 1)
            throw std::invalid_argument("LadderSpec: diagonal arrays must have length n_max+1");
    }
};

struct BathSpec {
    enum class Kind { Vacuum, Thermal };
    Kind kind = Kind::Vacuum;
    double beta = 0.0;  // inverse temperature, Thermal only

    static BathSpec vacuum() { return {Kind::Vacuum, 0.0}; }
    static BathSpec thermal(double beta) {
        if (!(beta > 0.0)) throw std::invalid_argument("BathSpec: thermal beta must be > 0");
        return {Kind::Thermal, beta};
    }
    bool is_vacuum() const { return kind == Kind::Vacuum; }
    std::string label() const {
        return is_vacuum() ? "vacuum" : ("thermal(beta=" + std::to_string(beta) + ")");
    }
};

// Truncated Gibbs weights p_k = exp(-beta*omega_c*k)/Z, Z summed over k = 0..n_max,
// so the weights are exactly normalized on the truncated space.
inline Eigen::VectorXd thermal_weights(double beta, double omega_c, int n_max) {
    if (!(beta > 0.0)) throw std::invalid_argument("thermal_weights: beta must be > 0");
    Eigen::VectorXd p(n_max + 1);
    for (int k = 0; k <= n_max; ++k) p(k) = std::exp(-beta * omega_c * k);
    p /= p.sum();
    return p;
}

inline Eigen::VectorXd bath_state_diagonal(const BathSpec& bath, double omega_c, int n_max) {
    if (bath.is_vacuum()) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(n_max + 1);
        p(0) = 1.0;
        return p;
    }
    return thermal_weights(bath.beta, omega_c, n_max);
}

// H_JC = omega0/2 sigma_z + omega_c a^dag a + g (sigma_+ a + sigma_- a^dag),
// with the hard cutoff a^dag|n_max> = 0.
inline DenseOperator build_jc(const JCParams& p) {
    p.validate();
    const int d = dim(p.n_max);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n <= p.n_max; ++n) {
        h(basis_index(n, false), basis_index(n, false)) = -0.5 * p.omega0 + p.omega_c * n;
        h(basis_index(n, true), basis_index(n, true)) = 0.5 * p.omega0 + p.omega_c * n;
    }
    for (int n = 1; n <= p.n_max; ++n) {
        const double v = p.g * std::sqrt(static_cast<double>(n));
        h(basis_index(n - 1, true), basis_index(n, false)) = v;
        h(basis_index(n, false), basis_index(n - 1, true)) = v;
    }
    return {h, p.n_max};
}

inline DenseOperator build_ladder(const LadderSpec& spec) {
    spec.validate();
    const int N = spec.n_max();
    const int d = dim(N);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n <= N; ++n) {
        h(basis_index(n, false), basis_index(n, false)) = spec.e_ground(n);
        h(basis_index(n, true), basis_index(n, true)) = spec.e_excited(n);
    }
    for (int n = 1; n <= N; ++n) {
        const Complex v = spec.coupling(n - 1);
        h(basis_index(n - 1, true), basis_index(n, false)) = v;
        h(basis_index(n, false), basis_index(n - 1, true)) = std::conj(v);
    }
    return {h, N};
}

// JC expressed as a LadderSpec (bit-identical diagonal and couplings).
inline LadderSpec jc_ladder(const JCParams& p) {
    p.validate();
    LadderSpec s;
    s.e_ground.resize(p.n_max + 1);
    s.e_excited.resize(p.n_max + 1);
    s.coupling.resize(p.n_max);
    for (int n = 0; n <= p.n_max; ++n) {
        s.e_ground(n) = -0.5 * p.omega0 + p.omega_c * n;
        s.e_excited(n) = 0.5 * p.omega0 + p.omega_c * n;
    }
    for (int n = 1; n <= p.n_max; ++n)
        s.coupling(n - 1) = p.g * std::sqrt(static_cast<double>(n));
    return s;
}

// H(lambda) = H_JC + lambda * g (sigma_+ a^dag + sigma_- a): counter-rotating
// deformation toward the full Rabi model. lambda = 0 reproduces build_jc.
inline DenseOperator build_deformed(const JCParams& p, double lambda) {
    DenseOperator op = build_jc(p);
    for (int n = 0; n < p.n_max; ++n) {
        const double v = lambda * p.g * std::sqrt(static_cast<double>(n + 1));
        op.mat(basis_index(n + 1, true), basis_index(n, false)) += v;
        op.mat(basis_index(n, false), basis_index(n + 1, true)) += v;
    }
    return op;
}

// Counter-rotating part alone, g (sigma_+ a^dag + sigma_- a).
inline DenseOperator counter_rotating_term(const JCParams& p) {
    p.validate();
    const int d = dim(p.n_max);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < p.n_max; ++n) {
        const double v = p.g * std::sqrt(static_cast<double>(n + 1));
        h(basis_index(n + 1, true), basis_index(n, false)) = v;
        h(basis_index(n, false), basis_index(n + 1, true)) = v;
    }
    return {h, p.n_max};
}

// H_SB = omega0/2 sigma_z + omega_c a^dag a + g sigma_x (a + a^dag).
inline DenseOperator build_spin_boson(const JCParams& p) {
    p.validate();
    const int d = dim(p.n_max);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n <= p.n_max; ++n) {
        h(basis_index(n, false), basis_index(n, false)) = -0.5 * p.omega0 + p.omega_c * n;
        h(basis_index(n, true), basis_index(n, true)) = 0.5 * p.omega0 + p.omega_c * n;
    }
    for (int n = 1; n <= p.n_max; ++n) {
        const double v = p.g * std::sqrt(static_cast<double>(n));
        // sigma_x couples both |e,n-1> <-> |g,n> and |g,n-1> <-> |e,n>
        h(basis_index(n - 1, true), basis_index(n, false)) = v;
        h(basis_index(n, false), basis_index(n - 1, true)) = v;
        h(basis_index(n - 1, false), basis_index(n, true)) = v;
        h(basis_index(n, true), basis_index(n - 1, false)) = v;
    }
    return {h, p.n_max};
}

// N_exc = (sigma_z + I)/2 + a^dag a, diagonal integers 0..n_max+1.
inline DenseOperator excitation_number(int n_max) {
    const int d = dim(n_max);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n <= n_max; ++n) {
        m(basis_index(n, false), basis_index(n, false)) = n;
        m(basis_index(n, true), basis_index(n, true)) = n + 1;
    }
    return {m, n_max};
}

inline int excitation_of_index(int idx) {
    // idx = 2n + s with s = 1 for |e>
    return idx / 2 + (idx % 2);
}

// Pi = sigma_z (x) (-1)^{a^dag a}; diagonal +-1, Pi^2 = I.
inline DenseOperator parity_operator(int n_max) {
    const int d = dim(n_max);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n <= n_max; ++n) {
        const double phase = (n % 2 == 0) ? 1.0 : -1.0;
        m(basis_index(n, false), basis_index(n, false)) = -phase;
        m(basis_index(n, true), basis_index(n, true)) = phase;
    }
    return {m, n_max};
}

// Annihilation operator on the full qubit (x) Fock space (identity on the qubit),
// with the hard truncation at n_max.
inline DenseOperator annihilation(int n_max) {
    const int d = dim(n_max);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n <= n_max; ++n) {
        const double v = std::sqrt(static_cast<double>(n));
        for (int s = 0; s < 2; ++s)
            m(basis_index(n - 1, s == 1), basis_index(n, s == 1)) = v;
    }
    return {m, n_max};
}

}  // namespace qlq::model

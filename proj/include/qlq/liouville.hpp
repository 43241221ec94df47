// liouville.hpp — superoperators under column-stacking vectorization and ΔN-sector anatomy

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlq/model.hpp"

namespace qlq::liouville {

using model::BathSpec;
using model::DenseOperator;

// Column-stacking convention throughout: vec(rho)_{j*d+i} = rho_{ij}, so the
// basis unit |i><j| lives at Liouville index j*d + i and A rho B maps to
// (B^T (x) A) vec(rho).
struct Superoperator {
    Eigen::MatrixXcd mat;
    int n_max = 0;
    std::string provenance;

    int dim2() const { return static_cast<int>(mat.rows()); }
};

inline int liouville_index(int row, int col, int d) { return col * d + row; }

// L = I (x) H - H^T (x) I, the vectorized commutator [H, .].
inline Superoperator commutator_superoperator(const DenseOperator& h) {
    const int d = static_cast<int>(h.mat.rows());
    if (h.mat.cols() != d) throw std::invalid_argument("commutator_superoperator: H not square");
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d * d, d * d);
    // kron(A, B) block (p,q) = A(p,q) * B
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            if (p == q) l.block(p * d, q * d, d, d) += h.mat;
            l.block(p * d, q * d, d, d) -= h.mat(q, p) * id;  // (H^T)(p,q) = H(q,p)
        }
    return {std::move(l), h.n_max, "commutator"};
}

// Nakajima-Zwanzig projector: rho -> (Tr_B rho) (x) rho_B with rho_B diagonal
// in Fock space (vacuum or truncated Gibbs). Built by applying the map to each
// vectorized matrix unit. Idempotent with rank 4, but oblique (not Hermitian)
// whenever rho_B has support on more than one relevant channel.
inline Superoperator nz_projector(const BathSpec& bath, double omega_c, int n_max) {
    const int d = model::dim(n_max);
    const Eigen::VectorXd p = model::bath_state_diagonal(bath, omega_c, n_max);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d * d, d * d);
    // unit |i><j| with i=(n,s), j=(n',s'): Tr_B gives delta_{nn'} |s><s'|,
    // tensoring rho_B spreads it over the Fock diagonal with weights p_m.
    for (int n = 0; n <= n_max; ++n)
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp) {
                const int col = liouville_index(model::basis_index(n, s == 1),
                                                model::basis_index(n, sp == 1), d);
                for (int m = 0; m <= n_max; ++m) {
                    const int row = liouville_index(model::basis_index(m, s == 1),
                                                    model::basis_index(m, sp == 1), d);
                    proj(row, col) = p(m);
                }
            }
    return {std::move(proj), n_max, "nz_projector(" + bath.label() + ")"};
}

// QLQ with Q = I - P.
inline Superoperator projected_generator(const Superoperator& l, const Superoperator& p) {
    if (l.dim2() != p.dim2()) throw std::invalid_argument("projected_generator: dimension mismatch");
    const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(l.dim2(), l.dim2()) - p.mat;
    Eigen::MatrixXcd m = q * (l.mat * q);
    return {std::move(m), l.n_max, "projected(" + l.provenance + ")"};
}

// Photon-loss dissipator L_D rho = a rho a^dag - 1/2 {a^dag a, rho}, vectorized:
// L_D = a (x) a - 1/2 (I (x) a^dag a + (a^dag a)^T (x) I)  (a is real).
inline Superoperator lindblad_dissipator(int n_max) {
    const int d = model::dim(n_max);
    const Eigen::MatrixXcd a = model::annihilation(n_max).mat;
    const Eigen::MatrixXcd num = a.adjoint() * a;
    Eigen::MatrixXcd ld = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
            ld.block(p * d, q * d, d, d) += a(p, q) * a;  // a^T(p,q) would be a(q,p); a rho a^dag -> (conj(a) (x) a), a real
            if (p == q) ld.block(p * d, q * d, d, d) -= 0.5 * num;
            ld.block(p * d, q * d, d, d) -=
                0.5 * num(p, q) * Eigen::MatrixXcd::Identity(d, d);  // (num^T)(p,q)=num(q,p)=num(p,q), num symmetric real
        }
    return {std::move(ld), n_max, "lindblad_dissipator"};
}

struct SectorDecomposition {
    // ordered Liouville indices per ΔN, ΔN in [-(n_max+1), n_max+1]
    std::map<int, std::vector<int>> sectors;
    std::map<int, Eigen::MatrixXcd> blocks;
    double leakage = 0.0;        // Frobenius norm of A outside the diagonal blocks
    double leakage_tol = 0.0;
    bool leakage_ok = true;
    int n_max = 0;
};

inline int delta_n_of_index(int k, int d) {
    const int i = k % d;
    const int j = k / d;
    return model::excitation_of_index(i) - model::excitation_of_index(j);
}

inline SectorDecomposition sector_decompose(const Superoperator& a, double leakage_tol = -1.0) {
    const int d = model::dim(a.n_max);
    if (a.dim2() != d * d) throw std::invalid_argument("sector_decompose: dimension mismatch");
    SectorDecomposition dec;
    dec.n_max = a.n_max;
    std::vector<int> sector_of(d * d);
    for (int k = 0; k < d * d; ++k) {
        sector_of[k] = delta_n_of_index(k, d);
        dec.sectors[sector_of[k]].push_back(k);
    }
    for (const auto& [dn, idx] : dec.sectors) {
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXcd block(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) block(r, c) = a.mat(idx[r], idx[c]);
        dec.blocks[dn] = std::move(block);
    }
    double off_sq = 0.0;
    for (int r = 0; r < d * d; ++r)
        for (int c = 0; c < d * d; ++c)
            if (sector_of[r] != sector_of[c]) off_sq += std::norm(a.mat(r, c));
    dec.leakage = std::sqrt(off_sq);
    dec.leakage_tol =
        (leakage_tol > 0) ? leakage_tol : 1e-12 * std::max(1.0, a.mat.norm());
    dec.leakage_ok = dec.leakage <= dec.leakage_tol;
    return dec;
}

struct SectorRow {
    int delta_n;
    int dim;
    double frobenius;
    double herm_residual;      // ||A_dn - A_dn^dag||_F
    double projector_support;  // ||P_dn||_F, if a projector was supplied
};

struct SectorDiagnostics {
    std::vector<SectorRow> rows;  // ordered by delta_n
    double leakage;
    bool leakage_ok;
};

inline SectorDiagnostics sector_diagnostics(const SectorDecomposition& dec,
                                            const Superoperator* proj = nullptr) {
    SectorDiagnostics diag{{}, dec.leakage, dec.leakage_ok};
    for (const auto& [dn, idx] : dec.sectors) {
        const Eigen::MatrixXcd& b = dec.blocks.at(dn);
        SectorRow row{dn, static_cast<int>(idx.size()), b.norm(),
                      (b - b.adjoint()).norm(), 0.0};
        if (proj) {
            const int m = row.dim;
            Eigen::MatrixXcd pb(m, m);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) pb(r, c) = proj->mat(idx[r], idx[c]);
            row.projector_support = pb.norm();
        }
        diag.rows.push_back(row);
    }
    return diag;
}

struct ParityBlocks {
    Eigen::MatrixXcd plus, minus;
    std::vector<int> idx_plus, idx_minus;
    double commutator_residual = 0.0;  // off-block Frobenius norm relative to ||A||_F
    bool commutes = true;
};

// Liouville parity Pi_L = Pi (x) Pi with Pi = sigma_z (x) (-1)^{a^dag a};
// basis unit |i><j| has parity pi(i)*pi(j).
inline ParityBlocks liouville_parity_blocks(const Superoperator& a, double tol = 1e-12) {
    const int d = model::dim(a.n_max);
    if (a.dim2() != d * d) throw std::invalid_argument("liouville_parity_blocks: dimension mismatch");
    const Eigen::MatrixXcd pi = model::parity_operator(a.n_max).mat;
    ParityBlocks pb;
    std::vector<int> sign(d * d);
    for (int k = 0; k < d * d; ++k) {
        const double s = pi(k % d, k % d).real() * pi(k / d, k / d).real();
        sign[k] = s > 0 ? 1 : -1;
        (s > 0 ? pb.idx_plus : pb.idx_minus).push_back(k);
    }
    auto extract = [&](const std::vector<int>& idx) {
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXcd block(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) block(r, c) = a.mat(idx[r], idx[c]);
        return block;
    };
    pb.plus = extract(pb.idx_plus);
    pb.minus = extract(pb.idx_minus);
    double off_sq = 0.0;
    for (int r = 0; r < d * d; ++r)
        for (int c = 0; c < d * d; ++c)
            if (sign[r] != sign[c]) off_sq += std::norm(a.mat(r, c));
    pb.commutator_residual = std::sqrt(off_sq) / std::max(1.0, a.mat.norm());
    pb.commutes = pb.commutator_residual < tol;
    return pb;
}

// Orthonormal basis for range(Q) = ker(P), P the (oblique) NZ projector:
// the nullspace of P from its SVD. dim = d^2 - rank(P) = d^2 - 4.
inline Eigen::MatrixXcd range_q_basis(const Superoperator& p, double rank_tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p.mat, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * sv(0)) ++rank;
    return svd.matrixV().rightCols(p.dim2() - rank);
}

}  // namespace qlq::liouville

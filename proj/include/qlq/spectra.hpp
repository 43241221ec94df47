// spectra.hpp — non-symmetric eigensystems, biorthonormalization, pseudo-Hermitian metric diagnostics

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qlq::spectra {

using Complex = std::complex<double>;

struct EigOptions {
    double group_tol_rel = 1e-8;    // cluster eigenvalues within group_tol_rel * max|lambda|
    double zero_tol_abs = 1e-10;    // zero mode if |lambda| < max(zero_tol_abs, zero_tol_rel*max|lambda|)
    double zero_tol_rel = 1e-12;
    double singular_group_tol = 1e-12;  // rcond threshold flagging a near-defective group
};

struct SpectralData {
    Eigen::VectorXcd eigenvalues;                // sorted by (Re, Im)
    Eigen::MatrixXcd right;                      // columns paired with eigenvalues
    Eigen::MatrixXcd left;                       // A^dag l_n = conj(lambda_n) l_n, <l_m|r_n> = delta
    double biorth_residual = 0.0;                // max |<l_m|r_n> - delta_mn|
    std::vector<int> zero_modes;                 // indices with |lambda| below threshold
    std::vector<std::vector<int>> groups;        // degeneracy clusters (sorted index ranges)
    bool group_singular = false;                 // some cluster's overlap matrix was near-singular
    double max_abs_eigenvalue = 0.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    bool is_zero_mode(int n) const {
        return std::find(zero_modes.begin(), zero_modes.end(), n) != zero_modes.end();
    }
};

namespace detail {

inline bool lex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Sort eigenpairs of one decomposition by a lexicographic key on the mapped eigenvalue.
inline void sort_pairs(Eigen::VectorXcd& vals, Eigen::MatrixXcd& vecs,
                       const std::vector<Complex>& keys) {
    const int n = static_cast<int>(vals.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return lex_less(keys[a], keys[b]); });
    Eigen::VectorXcd v(n);
    Eigen::MatrixXcd m(vecs.rows(), n);
    for (int i = 0; i < n; ++i) {
        v(i) = vals(perm[i]);
        m.col(i) = vecs.col(perm[i]);
    }
    vals = std::move(v);
    vecs = std::move(m);
}

}  // namespace detail

// Full eigensystem of a general dense matrix with groupwise biorthonormalization.
// Right vectors have unit 2-norm; left vectors are rescaled (groupwise overlap
// solve) so that <l_m|r_n> = delta_mn; the achieved residual is reported.
// Real input takes a real-arithmetic fast path with deterministic conjugate pairing.
inline SpectralData eigendecompose(const Eigen::MatrixXcd& a, const EigOptions& opt = {}) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("eigendecompose: matrix not square");
    SpectralData sd;

    Eigen::VectorXcd rvals, lvals;
    Eigen::MatrixXcd rvecs, lvecs;
    const bool real_input = a.imag().norm() == 0.0;
    if (real_input) {
        const Eigen::MatrixXd ar = a.real();
        Eigen::EigenSolver<Eigen::MatrixXd> es(ar);
        Eigen::EigenSolver<Eigen::MatrixXd> esl(ar.transpose());
        if (es.info() != Eigen::Success || esl.info() != Eigen::Success)
            throw std::runtime_error("eigendecompose: real solver failed to converge");
        rvals = es.eigenvalues();
        rvecs = es.eigenvectors();
        lvals = esl.eigenvalues();
        lvecs = esl.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> esl(a.adjoint());
        if (es.info() != Eigen::Success || esl.info() != Eigen::Success)
            throw std::runtime_error("eigendecompose: complex solver failed to converge");
        rvals = es.eigenvalues();
        rvecs = es.eigenvectors();
        lvals = esl.eigenvalues();
        lvecs = esl.eigenvectors();
    }

    // Right pairs sorted by (Re, Im) of lambda; left pairs by the same key of
    // conj(mu), mu the eigenvalue of A^dag, so the two orders align groupwise.
    {
        std::vector<Complex> rkeys(n), lkeys(n);
        for (int i = 0; i < n; ++i) rkeys[i] = rvals(i);
        for (int i = 0; i < n; ++i) lkeys[i] = std::conj(lvals(i));
        detail::sort_pairs(rvals, rvecs, rkeys);
        detail::sort_pairs(lvals, lvecs, lkeys);
    }

    sd.eigenvalues = rvals;
    sd.max_abs_eigenvalue = rvals.size() ? rvals.cwiseAbs().maxCoeff() : 0.0;

    // Degeneracy clusters: consecutive eigenvalues within group_tol * max|lambda|.
    const double gap = opt.group_tol_rel * std::max(sd.max_abs_eigenvalue, 1e-300);
    for (int i = 0; i < n;) {
        std::vector<int> group{i};
        int j = i + 1;
        while (j < n && std::abs(rvals(j) - rvals(j - 1)) < gap) group.push_back(j++);
        sd.groups.push_back(std::move(group));
        i = j;
    }

    for (int i = 0; i < n; ++i) rvecs.col(i).normalize();

    // Groupwise overlap solve: L_g <- L_g S^{-dag} with S = L_g^dag R_g.
    sd.left = lvecs;
    for (const auto& group : sd.groups) {
        const int m = static_cast<int>(group.size());
        Eigen::MatrixXcd rg(n, m), lg(n, m);
        for (int c = 0; c < m; ++c) {
            rg.col(c) = rvecs.col(group[c]);
            lg.col(c) = lvecs.col(group[c]);
        }
        const Eigen::MatrixXcd s = lg.adjoint() * rg;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(m - 1);
        if (!(smin > opt.singular_group_tol * std::max(smax, 1e-300))) sd.group_singular = true;
        const Eigen::MatrixXcd sdag = s.adjoint();
        const Eigen::MatrixXcd lg2 = lg * sdag.fullPivLu().inverse();  // L S^{-dag}
        for (int c = 0; c < m; ++c) sd.left.col(group[c]) = lg2.col(c);
    }
    sd.right = std::move(rvecs);

    const Eigen::MatrixXcd overlap = sd.left.adjoint() * sd.right;
    sd.biorth_residual =
        (overlap - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();

    const double zthr = std::max(opt.zero_tol_abs, opt.zero_tol_rel * sd.max_abs_eigenvalue);
    for (int i = 0; i < n; ++i)
        if (std::abs(rvals(i)) < zthr) sd.zero_modes.push_back(i);
    return sd;
}

struct RealityReport {
    double max_imag = 0.0;
    int n_complex = 0;
};

inline RealityReport reality_report(const SpectralData& sd, double tol = 1e-8) {
    RealityReport rep;
    for (int i = 0; i < sd.size(); ++i) {
        const double im = std::abs(sd.eigenvalues(i).imag());
        rep.max_imag = std::max(rep.max_imag, im);
        if (im > tol) ++rep.n_complex;
    }
    return rep;
}

struct MetricResult {
    Eigen::MatrixXcd eta;            // full-space eta_osc = sum over nonzero modes |l><l|
    double intertwining_residual;    // ||A^dag eta - eta A||_F on the nonzero subspace
    double kappa;                    // sigma_max/sigma_min over the nonzero subspace
    double min_eigenvalue;           // smallest nonzero-subspace eigenvalue of eta
    double hermitization_residual;   // ||B - B^dag||_F, B = eta^{1/2} A eta^{-1/2} on span(R)
    int rank;                        // number of nonzero modes
    Eigen::VectorXcd similar_eigenvalues;  // spectrum of B (should match nonzero eigenvalues)
};

// Oscillatory-subspace metric from the nonzero-mode left eigenvectors. All
// diagnostics are restricted to the nonzero spectral subspace: eta is rank-
// deficient on the full space whenever zero modes exist, so kappa and the
// hermitized generator are computed on span of the nonzero right (resp. left)
// eigenvectors.
inline MetricResult build_metric(const Eigen::MatrixXcd& a, const SpectralData& sd,
                                 double ambiguity_factor = 10.0) {
    const int n = sd.size();
    std::vector<int> nz;
    for (int i = 0; i < n; ++i)
        if (!sd.is_zero_mode(i)) nz.push_back(i);
    const int r = static_cast<int>(nz.size());
    if (r == 0) throw std::invalid_argument("build_metric: no nonzero modes");

    // Refuse an ambiguous zero/nonzero split: any eigenvalue within a factor
    // ambiguity_factor of the zero threshold on either side.
    const double zthr = std::max(1e-10, 1e-12 * sd.max_abs_eigenvalue);
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(sd.eigenvalues(i));
        if (m >= zthr && m < ambiguity_factor * zthr)
            throw std::runtime_error("build_metric: eigenvalue too close to zero-mode threshold");
    }

    Eigen::MatrixXcd lnz(n, r), rnz(n, r);
    Eigen::VectorXcd vals(r);
    for (int c = 0; c < r; ++c) {
        lnz.col(c) = sd.left.col(nz[c]);
        rnz.col(c) = sd.right.col(nz[c]);
        vals(c) = sd.eigenvalues(nz[c]);
    }

    MetricResult res;
    res.rank = r;
    res.eta = lnz * lnz.adjoint();

    // All diagnostics live on the invariant subspace span(R): W orthonormal
    // basis of span(R) with R = W T, so eta_W = W^dag eta W = (T T^dag)^{-1}
    // exactly (the dual-basis identity); the triangular form is far more
    // accurate than squaring the left eigenvectors. B = eta_W^{1/2} A_W
    // eta_W^{-1/2} is similar to A on that subspace and Hermitian exactly when
    // the nonzero spectrum is real.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(rnz);
    const Eigen::MatrixXcd w =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, r);
    const Eigen::MatrixXcd t = w.adjoint() * rnz;
    const Eigen::MatrixXcd tinv =
        t.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(r, r));
    const Eigen::MatrixXcd etaw = tinv.adjoint() * tinv;
    const Eigen::MatrixXcd aw = w.adjoint() * a * w;
    res.intertwining_residual = (aw.adjoint() * etaw - etaw * aw).norm();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ehw(etaw);
    const Eigen::VectorXd evw = ehw.eigenvalues();
    res.min_eigenvalue = evw(0);
    res.kappa = evw(r - 1) / evw(0);
    if (evw(0) <= 0)
        throw std::runtime_error("build_metric: restricted metric not positive definite");
    const Eigen::MatrixXcd half =
        ehw.eigenvectors() * evw.cwiseSqrt().asDiagonal() * ehw.eigenvectors().adjoint();
    const Eigen::MatrixXcd halfinv =
        ehw.eigenvectors() * evw.cwiseSqrt().cwiseInverse().asDiagonal() *
        ehw.eigenvectors().adjoint();
    const Eigen::MatrixXcd b = half * aw * halfinv;
    res.hermitization_residual = (b - b.adjoint()).norm();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> esb(b);
    res.similar_eigenvalues = esb.eigenvalues();
    return res;
}

inline int numerical_rank(const Eigen::MatrixXcd& a, double tol = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return rank;
}

inline int zero_mode_count(const Eigen::MatrixXcd& a, double tol = 1e-10) {
    return static_cast<int>(a.rows()) - numerical_rank(a, tol);
}

// 1 / sigma_min(A - z I), the resolvent norm probe.
inline double resolvent_norm(const Eigen::MatrixXcd& a, Complex z) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd shifted = a - z * Eigen::MatrixXcd::Identity(n, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted);
    return 1.0 / svd.singularValues()(n - 1);
}

// Biorthogonal spectral projector onto eigenvalue group j.
inline Eigen::MatrixXcd spectral_projector(const SpectralData& sd, int group_index) {
    const auto& group = sd.groups.at(group_index);
    Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(sd.right.rows(), sd.right.rows());
    for (int idx : group) pi += sd.right.col(idx) * sd.left.col(idx).adjoint();
    return pi;
}

struct WeightEntry {
    Complex eigenvalue;  // group representative (mean)
    int multiplicity;
    double weight;       // ||P L Q Pi_j Q L P||_F
};

struct ReducedWeights {
    std::vector<WeightEntry> entries;  // nonzero groups only, ordered as sd.groups
    double sum_sq = 0.0;               // sum of weight^2 over nonzero groups
};

// Memory-kernel weight carried by each nonzero eigenvalue group of QLQ.
inline ReducedWeights reduced_weights(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& p,
                                      const SpectralData& sd) {
    const int n = static_cast<int>(l.rows());
    const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(n, n) - p;
    const Eigen::MatrixXcd plq = p * l * q;
    const Eigen::MatrixXcd qlp = q * l * p;
    ReducedWeights rw;
    for (int gi = 0; gi < static_cast<int>(sd.groups.size()); ++gi) {
        const auto& group = sd.groups[gi];
        bool zero = true;
        for (int idx : group) zero = zero && sd.is_zero_mode(idx);
        if (zero) continue;
        Complex mean = 0.0;
        for (int idx : group) mean += sd.eigenvalues(idx);
        mean /= static_cast<double>(group.size());
        const double w = (plq * spectral_projector(sd, gi) * qlp).norm();
        rw.entries.push_back({mean, static_cast<int>(group.size()), w});
        rw.sum_sq += w * w;
    }
    return rw;
}

}  // namespace qlq::spectra

// scan.hpp — parameter sweeps: deformation reality scans, phase maps, dissipative κ sweeps

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <tuple>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "qlq/liouville.hpp"
#include "qlq/model.hpp"
#include "qlq/oracles.hpp"
#include "qlq/spectra.hpp"

namespace qlq::scan {

using model::BathSpec;
using model::JCParams;

struct ScanGrid {
    std::string parameter = "lambda";
    std::vector<double> points;  // strictly increasing
    double tol_imag = 1e-8;

    static ScanGrid regular(double start, double stop, double step,
                            const std::string& parameter = "lambda", double tol = 1e-8) {
        if (!(step > 0) || !(stop >= start))
            throw std::invalid_argument("ScanGrid: need step > 0 and stop >= start");
        ScanGrid g;
        g.parameter = parameter;
        g.tol_imag = tol;
        const int n = static_cast<int>(std::round((stop - start) / step));
        for (int i = 0; i <= n; ++i) g.points.push_back(start + i * step);
        return g;
    }

    void validate() const {
        if (points.empty()) throw std::invalid_argument("ScanGrid: empty grid");
        if (!(tol_imag > 0)) throw std::invalid_argument("ScanGrid: tol_imag must be > 0");
        for (size_t i = 1; i < points.size(); ++i)
            if (!(points[i] > points[i - 1]))
                throw std::invalid_argument("ScanGrid: points must be strictly increasing");
    }
};

struct TracePoint {
    double value;      // grid parameter
    double max_imag;
    int n_complex;
    bool ok = true;    // eigensolver converged at this point
};

struct Interval {
    double left, right;  // closed, at grid resolution
    bool touches_end;
};

struct ScanResult {
    std::vector<TracePoint> trace;
    std::vector<Interval> complex_intervals;
    std::optional<double> lambda_first;           // left endpoint of first complex interval
    std::optional<double> lambda_onset_terminal;  // left endpoint of endpoint-touching interval
    int n_bub = 0;                                // complex intervals not touching the endpoint
    char classification = 'P';                    // P | R | B
    double max_imag_overall = 0.0;
};

namespace detail {

inline void analyze_trace(ScanResult& res, double tol_imag) {
    const int n = static_cast<int>(res.trace.size());
    for (const auto& t : res.trace) res.max_imag_overall = std::max(res.max_imag_overall, t.max_imag);
    int i = 0;
    while (i < n) {
        if (res.trace[i].ok && res.trace[i].max_imag > tol_imag) {
            int j = i;
            while (j + 1 < n && res.trace[j + 1].ok && res.trace[j + 1].max_imag > tol_imag) ++j;
            res.complex_intervals.push_back(
                {res.trace[i].value, res.trace[j].value, j == n - 1});
            i = j + 1;
        } else {
            ++i;
        }
    }
    for (const auto& iv : res.complex_intervals)
        if (!iv.touches_end) ++res.n_bub;
    if (!res.complex_intervals.empty()) {
        res.lambda_first = res.complex_intervals.front().left;
        if (res.complex_intervals.back().touches_end)
            res.lambda_onset_terminal = res.complex_intervals.back().left;
    }
    if (res.complex_intervals.empty())
        res.classification = 'P';
    else if (res.complex_intervals.back().touches_end)
        res.classification = 'B';
    else
        res.classification = 'R';
}

// eigenvalues only, real fast path
inline Eigen::VectorXcd eigenvalues_only(const Eigen::MatrixXcd& a) {
    if (a.imag().norm() == 0.0) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(a.real(), /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigenvalues_only: real solver failed");
        return es.eigenvalues();
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues_only: complex solver failed");
    return es.eigenvalues();
}

template <typename Fn>
inline void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// Reality profile of QLQ(λ) over a deformation grid. The counter-rotating
// deformation preserves Liouville parity, so each grid point diagonalizes the
// two parity blocks instead of the full d²×d² matrix.
inline ScanResult lambda_scan(const JCParams& params, const ScanGrid& grid,
                              const BathSpec& bath = BathSpec::vacuum(), int threads = 1) {
    params.validate();
    grid.validate();
    const auto proj = liouville::nz_projector(bath, params.omega_c, params.n_max);
    ScanResult res;
    res.trace.resize(grid.points.size());
    detail::parallel_for(static_cast<int>(grid.points.size()), threads, [&](int i) {
        const double lam = grid.points[i];
        TracePoint tp{lam, 0.0, 0, true};
        try {
            const auto l = liouville::commutator_superoperator(model::build_deformed(params, lam));
            const auto qlq = liouville::projected_generator(l, proj);
            const auto pb = liouville::liouville_parity_blocks(qlq);
            for (const auto* block : {&pb.plus, &pb.minus}) {
                const Eigen::VectorXcd ev = detail::eigenvalues_only(*block);
                for (int k = 0; k < ev.size(); ++k) {
                    const double im = std::abs(ev(k).imag());
                    tp.max_imag = std::max(tp.max_imag, im);
                    if (im > grid.tol_imag) ++tp.n_complex;
                }
            }
        } catch (const std::exception&) {
            tp.ok = false;  // recorded as a gap, never interpolated
        }
        res.trace[i] = tp;
    });
    detail::analyze_trace(res, grid.tol_imag);
    return res;
}

// Bisection on the reality indicator: sharpens a real<->complex boundary
// bracketed by [lo, hi] to tol_lambda. Returns nullopt if the endpoints do not
// actually straddle a transition.
inline std::optional<double> refine_transition(const JCParams& params, double lo, double hi,
                                               double tol_lambda = 1e-4, double tol_imag = 1e-8,
                                               const BathSpec& bath = BathSpec::vacuum()) {
    const auto proj = liouville::nz_projector(bath, params.omega_c, params.n_max);
    const auto complex_at = [&](double lam) {
        const auto l = liouville::commutator_superoperator(model::build_deformed(params, lam));
        const auto qlq = liouville::projected_generator(l, proj);
        const auto pb = liouville::liouville_parity_blocks(qlq);
        double mi = 0.0;
        for (const auto* block : {&pb.plus, &pb.minus}) {
            const Eigen::VectorXcd ev = detail::eigenvalues_only(*block);
            for (int k = 0; k < ev.size(); ++k) mi = std::max(mi, std::abs(ev(k).imag()));
        }
        return mi > tol_imag;
    };
    bool clo = complex_at(lo), chi = complex_at(hi);
    if (clo == chi) return std::nullopt;
    while (hi - lo > tol_lambda) {
        const double mid = 0.5 * (lo + hi);
        (complex_at(mid) == clo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct PhaseMapRow {
    double g;
    int n_max;
    ScanResult scan;
    double g_c;  // bare-resonance bound overlay
};

inline std::vector<PhaseMapRow> phase_map(const std::vector<double>& g_list,
                                          const std::vector<int>& n_max_list,
                                          const ScanGrid& grid, double omega0 = 1.0,
                                          double omega_c = 1.0, int threads = 1) {
    std::vector<PhaseMapRow> rows;
    for (int n : n_max_list)
        for (double g : g_list) {
            JCParams p{omega0, omega_c, g, n};
            PhaseMapRow row{g, n, lambda_scan(p, grid, BathSpec::vacuum(), threads),
                            n >= 2 ? oracles::bare_resonance_bound(n) : 0.0};
            rows.push_back(std::move(row));
        }
    return rows;
}

struct ScalingRow {
    double lambda;
    double max_imag;
    double ratio;  // max_imag / (lambda * g)
};

// First-order scaling of the resonant instability: max|Im λ| ≈ (√2/4) g λ.
inline std::vector<ScalingRow> perturbation_scaling_table(
    int n_max = 4, double g = 1.0, const std::vector<double>& lambdas = {1e-4, 1e-3, 1e-2, 1e-1}) {
    JCParams p{g, g, g, n_max};  // resonance omega0 = omega_c = g
    const auto proj = liouville::nz_projector(BathSpec::vacuum(), p.omega_c, n_max);
    std::vector<ScalingRow> rows;
    for (double lam : lambdas) {
        const auto l = liouville::commutator_superoperator(model::build_deformed(p, lam));
        const auto qlq = liouville::projected_generator(l, proj);
        const Eigen::VectorXcd ev = detail::eigenvalues_only(qlq.mat);
        double mi = 0.0;
        for (int k = 0; k < ev.size(); ++k) mi = std::max(mi, std::abs(ev(k).imag()));
        rows.push_back({lam, mi, mi / (lam * g)});
    }
    return rows;
}

struct KappaSweepResult {
    std::vector<double> kappa;
    std::vector<double> lambda1_re;          // tracked lowest nonzero mode
    std::vector<double> lambda1_im;
    std::vector<double> overlap;             // tracking quality vs previous point
    std::vector<int> n_complex;              // census over the ΔN=0 nonzero modes
    bool tracking_ok = true;                 // all overlaps >= 0.7
    double slope_at_zero = 0.0;              // central difference at Δκ = 1e-4
    bool slope_valid = false;
};

// Dissipative sweep QLQ(κ) = Q([H,·] + κ L_D)Q restricted to the ΔN=0 sector
// (both terms preserve ΔN). The projected Hamiltonian and dissipator blocks
// are assembled once; each κ point only re-sums and re-diagonalizes the block.
inline KappaSweepResult kappa_sweep(const JCParams& params, const std::vector<double>& kappas,
                                    double track_threshold = 0.7) {
    params.validate();
    const auto l = liouville::commutator_superoperator(model::build_jc(params));
    const auto ld = liouville::lindblad_dissipator(params.n_max);
    const auto proj = liouville::nz_projector(BathSpec::vacuum(), params.omega_c, params.n_max);
    const int d2 = l.dim2();
    const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(d2, d2) - proj.mat;
    const liouville::Superoperator qhq{q * l.mat * q, params.n_max, "qhq"};
    const liouville::Superoperator qdq{q * ld.mat * q, params.n_max, "qdq"};
    const auto dech = liouville::sector_decompose(qhq);
    const auto decd = liouville::sector_decompose(qdq);
    const Eigen::MatrixXcd& hb = dech.blocks.at(0);
    const Eigen::MatrixXcd& db = decd.blocks.at(0);

    const double delta = params.detuning();
    const double lam1 = std::sqrt(delta * delta + 2.0 * params.g * params.g);

    KappaSweepResult res;
    Eigen::VectorXcd prev_vec;
    const auto track = [&](double kap, const Eigen::VectorXcd* ref)
        -> std::tuple<std::complex<double>, Eigen::VectorXcd, double> {
        Eigen::MatrixXcd m = hb + kap * db;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
        if (es.info() != Eigen::Success) throw std::runtime_error("kappa_sweep: solver failed");
        int best = -1;
        double best_score = -1.0;
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            double score;
            if (ref)
                score = std::abs(ref->dot(es.eigenvectors().col(i)));
            else
                score = -std::abs(es.eigenvalues()(i) - std::complex<double>(lam1, 0.0));
            if (best < 0 || score > best_score) {
                best = i;
                best_score = score;
            }
        }
        return {es.eigenvalues()(best), es.eigenvectors().col(best),
                ref ? best_score : 1.0};
    };

    for (double kap : kappas) {
        auto [ev, vec, ov] = track(kap, prev_vec.size() ? &prev_vec : nullptr);
        res.kappa.push_back(kap);
        res.lambda1_re.push_back(ev.real());
        res.lambda1_im.push_back(ev.imag());
        res.overlap.push_back(ov);
        if (ov < track_threshold) res.tracking_ok = false;
        prev_vec = vec;
        // census: nonzero ΔN=0 modes with |Im| above tolerance
        Eigen::MatrixXcd m = hb + kap * db;
        const Eigen::VectorXcd all = detail::eigenvalues_only(m);
        int nc = 0;
        for (int i = 0; i < all.size(); ++i)
            if (std::abs(all(i).imag()) > 1e-8) ++nc;
        res.n_complex.push_back(nc);
    }

    // slope by central difference at κ=0 with its own tracking
    {
        const double h = 1e-4;
        auto [e0, v0, o0] = track(0.0, nullptr);
        auto [ep, vp, op_] = track(h, &v0);
        auto [em, vm, om] = track(-h, &v0);
        if (op_ >= track_threshold && om >= track_threshold) {
            res.slope_at_zero = (ep.real() - em.real()) / (2.0 * h);
            res.slope_valid = true;
        }
    }
    return res;
}

struct ContinuationResult {
    std::vector<double> g;
    std::vector<double> max_imag_plus, max_imag_minus;  // per parity block
    std::optional<double> g_c;      // first coupling with a complex mode, bracketed to 1e-3
    char unstable_block = ' ';      // '+' or '-' parity
};

// Continuation in g of the σx-coupled (parity-conserving, U(1)-breaking) model:
// per-g parity-block reality traces and the first exceptional point.
inline ContinuationResult sigmax_continuation(int n_max, const std::vector<double>& g_grid,
                                              double omega0 = 1.0, double omega_c = 1.0,
                                              double tol_imag = 1e-8) {
    const auto proj = liouville::nz_projector(BathSpec::vacuum(), omega_c, n_max);
    const auto probe = [&](double g) -> std::pair<double, double> {
        JCParams p{omega0, omega_c, g, n_max};
        const auto l = liouville::commutator_superoperator(model::build_spin_boson(p));
        const auto qlq = liouville::projected_generator(l, proj);
        const auto pb = liouville::liouville_parity_blocks(qlq);
        double mp = 0.0, mm = 0.0;
        const Eigen::VectorXcd evp = detail::eigenvalues_only(pb.plus);
        const Eigen::VectorXcd evm = detail::eigenvalues_only(pb.minus);
        for (int i = 0; i < evp.size(); ++i) mp = std::max(mp, std::abs(evp(i).imag()));
        for (int i = 0; i < evm.size(); ++i) mm = std::max(mm, std::abs(evm(i).imag()));
        return {mp, mm};
    };
    ContinuationResult res;
    std::optional<double> lo, hi;
    for (double g : g_grid) {
        auto [mp, mm] = probe(g);
        res.g.push_back(g);
        res.max_imag_plus.push_back(mp);
        res.max_imag_minus.push_back(mm);
        if (!hi && (mp > tol_imag || mm > tol_imag)) {
            hi = g;
            res.unstable_block = (mm > tol_imag) ? '-' : '+';
        }
        if (!hi) lo = g;
    }
    if (hi) {
        double a = lo.value_or(0.0), b = *hi;
        while (b - a > 1e-3) {
            const double mid = 0.5 * (a + b);
            auto [mp, mm] = probe(mid);
            ((mp > tol_imag || mm > tol_imag) ? b : a) = mid;
        }
        res.g_c = 0.5 * (a + b);
    }
    return res;
}

}  // namespace qlq::scan

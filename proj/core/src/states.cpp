#include "entsim/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "entsim/hermitian.hpp"
#include "entsim/tomography.hpp"

namespace entsim {

double PureState::norm_sq() const {
    double n = 0.0;
    for (const Complex& z : c) n += std::norm(z);
    return n;
}

DensityOperator::DensityOperator(CMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 4)
        throw std::invalid_argument("DensityOperator: matrix must be 4x4");
    if (!m_.all_finite())
        throw std::invalid_argument("DensityOperator: non-finite entries");
    if (!is_hermitian(m_, 1e-10))
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    if (std::abs(trace(m_) - Complex(1.0)) > 1e-10)
        throw std::invalid_argument("DensityOperator: trace is not 1");
}

double DensityOperator::min_eigenvalue() const {
    return hermitian_eigenvalues(m_).min();
}

PureState make_psi1(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return PureState{{c, 0.0, 0.0, s * std::polar(1.0, phi)}};
}

PureState make_psi2(double theta, double phi) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double c = std::cos(theta / 2.0) * inv_sqrt2;
    const double s = std::sin(theta / 2.0) * inv_sqrt2;
    return PureState{{c * std::polar(1.0, -phi), c, s * std::polar(1.0, phi), s}};
}

PureState make_psi3(double alpha, double beta, double gamma,
                    double phi1, double phi2, double phi3) {
    const double ca = std::cos(alpha);
    const double cb = std::cos(beta);
    return PureState{{std::sin(alpha),
                      ca * std::sin(beta) * std::polar(1.0, phi1),
                      ca * cb * std::sin(gamma) * std::polar(1.0, phi2),
                      ca * cb * std::cos(gamma) * std::polar(1.0, phi3)}};
}

DensityOperator pure_to_density(const PureState& psi) {
    if (std::abs(psi.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("pure_to_density: state norm differs from 1");
    CMatrix rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho(i, j) = psi.c[i] * std::conj(psi.c[j]);
    return DensityOperator(rho);
}

namespace {

// Modified Gram-Schmidt QR of a Ginibre draw, one re-orthogonalization
// pass. Normalizing each residual makes the R diagonal real and positive,
// which is the canonical decomposition whose Q factor is Haar-distributed
// (equivalent to phase-correcting an arbitrary QR by conj(R_kk)/|R_kk|).
// Returns false on a numerically rank-deficient draw.
bool try_haar_unitary(int n, Rng& rng, CMatrix& q) {
    q = CMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = rng.standard_normal_complex();

    for (int k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                Complex proj = 0.0;
                for (int r = 0; r < n; ++r) proj += std::conj(q(r, j)) * q(r, k);
                for (int r = 0; r < n; ++r) q(r, k) -= proj * q(r, j);
            }
        }
        double nrm = 0.0;
        for (int r = 0; r < n; ++r) nrm += std::norm(q(r, k));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) return false;
        for (int r = 0; r < n; ++r) q(r, k) /= nrm;
    }
    return true;
}

}  // namespace

CMatrix random_haar_unitary(int dim, Rng& rng) {
    CMatrix q(dim);
    int attempts = 0;
    while (!try_haar_unitary(dim, rng, q)) {
        if (++attempts >= 10)
            throw std::runtime_error("random_haar_unitary: repeated degenerate Ginibre draws");
    }
    return q;
}

DensityOperator random_mixed_qr(Rng& rng, double eig_concentration) {
    if (!(eig_concentration > 0.0))
        throw std::invalid_argument("random_mixed_qr: eig_concentration must be > 0");

    const CMatrix q = random_haar_unitary(4, rng);

    std::array<double, 4> lam{};
    double sum = 0.0;
    for (double& l : lam) {
        l = std::pow(rng.exponential(), eig_concentration);
        sum += l;
    }
    for (double& l : lam) l /= sum;

    CMatrix rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += q(i, k) * lam[k] * std::conj(q(j, k));
            rho(i, j) = acc;
        }

    // Kill roundoff skew so the DensityOperator checks see an exactly
    // Hermitian, exactly unit-trace matrix.
    for (int i = 0; i < 4; ++i) {
        rho(i, i) = rho(i, i).real();
        for (int j = i + 1; j < 4; ++j) {
            const Complex m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = m;
            rho(j, i) = std::conj(m);
        }
    }
    const double tr = trace(rho).real();
    rho *= Complex(1.0 / tr);

    return DensityOperator(rho);
}

namespace {

double entangled_fraction_at(double concentration, int samples, std::uint64_t seed) {
    int entangled = 0;
    for (int i = 0; i < samples; ++i) {
        Rng r = Rng::substream(seed, static_cast<std::uint64_t>(i));
        if (ppt_label(random_mixed_qr(r, concentration)).entangled) ++entangled;
    }
    return static_cast<double>(entangled) / samples;
}

}  // namespace

double calibrate_entanglement_rate(double target, int samples, Rng& rng) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("calibrate_entanglement_rate: target must be in (0,1)");
    if (samples < 1)
        throw std::invalid_argument("calibrate_entanglement_rate: samples must be >= 1");

    // Common random numbers across evaluations: the fraction is then a
    // deterministic, monotone function of the concentration.
    const std::uint64_t seed = rng.next_u64();

    double lo = 0.05, hi = 8.0;
    const double f_lo = entangled_fraction_at(lo, samples, seed);
    const double f_hi = entangled_fraction_at(hi, samples, seed);
    if (target < f_lo || target > f_hi)
        throw std::runtime_error(
            "calibrate_entanglement_rate: target " + std::to_string(target) +
            " outside achievable range [" + std::to_string(f_lo) + ", " +
            std::to_string(f_hi) + "]");

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 40; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f = entangled_fraction_at(mid, samples, seed);
        if (std::abs(f - target) <= 0.005) return mid;
        (f < target ? lo : hi) = mid;
        if (hi - lo < 1e-6) break;
    }

    const double achieved = entangled_fraction_at(mid, samples, seed);
    if (std::abs(achieved - target) <= 0.02) return mid;
    throw std::runtime_error(
        "calibrate_entanglement_rate: bisection stalled at fraction " +
        std::to_string(achieved) + " for target " + std::to_string(target));
}

}  // namespace entsim

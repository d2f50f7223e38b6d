#pragma once

#include <array>
#include <cstdint>

#include "entsim/cmatrix.hpp"
#include "entsim/rng.hpp"

namespace entsim {

enum class Family { Psi1, Psi2, Psi3, MixedQR };

/// Two-qubit pure state, amplitudes ordered |00>, |01>, |10>, |11>.
struct PureState {
    std::array<Complex, 4> c;

    double norm_sq() const;
};

/// 4x4 Hermitian unit-trace state. Construction checks finiteness,
/// Hermiticity (1e-10) and trace (1e-10); positivity is guaranteed by the
/// generators and verified separately where it matters.
class DensityOperator {
public:
    explicit DensityOperator(CMatrix m);

    const CMatrix& matrix() const { return m_; }

    /// Smallest eigenvalue; an eigensolve, so not for hot loops.
    double min_eigenvalue() const;

private:
    CMatrix m_;
};

/// Generative parameters carried with every dataset sample. Fields unused
/// by a family stay zero.
struct GenParams {
    Family family = Family::Psi1;
    double theta = 0.0, phi = 0.0;                      // Psi1, Psi2
    double alpha = 0.0, beta = 0.0, gamma = 0.0;        // Psi3
    double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;          // Psi3
    double noise_p = 0.0;
    std::uint64_t seed_index = 0;
};

/// cos(theta/2)|00> + sin(theta/2) e^{i phi}|11>
PureState make_psi1(double theta, double phi);

/// cos(theta/2)|0>((e^{-i phi}|0>+|1>)/sqrt2) + sin(theta/2)|1>((e^{i phi}|0>+|1>)/sqrt2)
PureState make_psi2(double theta, double phi);

/// Hyperspherical four-component state:
/// (sin a, cos a sin b e^{i p1}, cos a cos b sin g e^{i p2}, cos a cos b cos g e^{i p3})
PureState make_psi3(double alpha, double beta, double gamma,
                    double phi1, double phi2, double phi3);

/// |psi><psi|; throws when the norm is off by more than 1e-9.
DensityOperator pure_to_density(const PureState& psi);

/// Haar-distributed unitary (dim 2 or 4): QR of a complex Ginibre matrix in
/// the canonical form with positive-real R diagonal. Redraws degenerate
/// matrices, giving up after 10 attempts.
CMatrix random_haar_unitary(int dim, Rng& rng);

/// Random mixed state Q diag(lambda) Q^dag with Q Haar-distributed and
/// lambda sampled by powering i.i.d. exponentials with `eig_concentration`
/// and normalizing. Larger concentration gives purer spectra and a higher
/// entangled fraction.
DensityOperator random_mixed_qr(Rng& rng, double eig_concentration);

/// Bisection over eig_concentration until the empirical PPT-entangled
/// fraction over `samples` draws lands within +-0.02 of `target`. Throws
/// when the target is outside the reachable range, reporting that range.
double calibrate_entanglement_rate(double target, int samples, Rng& rng);

/// Concentration found by calibrate_entanglement_rate for the 42% rate at
/// 10^5 samples; default for MixedQR dataset generation.
inline constexpr double kDefaultEigConcentration = 1.074804687;

}  // namespace entsim

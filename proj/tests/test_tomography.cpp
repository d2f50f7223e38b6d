#include <doctest.h>

#include <cmath>

#include "entsim/channels.hpp"
#include "entsim/hermitian.hpp"
#include "entsim/tomography.hpp"
#include "helpers.hpp"

using namespace entsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

TEST_SUITE_BEGIN("tomography");

TEST_CASE("rotated Pauli axes") {
    const auto [sa, sb] = rotated_paulis();

    CHECK(max_abs_diff(sa * sa, identity2()) < 1e-12);
    CHECK(max_abs_diff(sb * sb, identity2()) < 1e-12);
    CHECK(std::abs(trace(sa * sb)) < 1e-12);
    CHECK(std::abs(trace(sa)) < 1e-15);
    CHECK(is_hermitian(sa, 1e-15));

    CHECK(std::abs(sa(0, 1) - Complex(kInvSqrt2, -kInvSqrt2)) < 1e-15);
    CHECK(std::abs(sa(1, 0) - Complex(kInvSqrt2, kInvSqrt2)) < 1e-15);
}

TEST_CASE("features of reference states") {
    CMatrix mixed = CMatrix::identity(4);
    mixed *= Complex(0.25);
    for (double f : extract_features(DensityOperator(mixed)).f)
        CHECK(std::abs(f) < 1e-15);

    const FeatureVector bell = extract_features(pure_to_density(make_psi1(kPi / 2, 0.0)));
    CHECK(bell.f[0] == doctest::Approx(kInvSqrt2).epsilon(1e-12));  // <sx sa>
    CHECK(bell.f[8] == doctest::Approx(1.0).epsilon(1e-12));        // <sz sz>

    const FeatureVector ground = extract_features(pure_to_density(make_psi1(0.0, 0.0)));
    for (int i = 0; i < 8; ++i) CHECK(std::abs(ground.f[i]) < 1e-15);
    CHECK(ground.f[11] == doctest::Approx(1.0).epsilon(1e-15));  // <sz I>
    CHECK(ground.f[14] == doctest::Approx(1.0).epsilon(1e-15));  // <I sz>
}

TEST_CASE("features ignore a global phase") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        PureState psi = test::random_pure(rng);
        PureState rotated = psi;
        const Complex phase = std::polar(1.0, rng.angle());
        for (Complex& c : rotated.c) c *= phase;

        const FeatureVector a = extract_features(pure_to_density(psi));
        const FeatureVector b = extract_features(pure_to_density(rotated));
        for (int i = 0; i < 15; ++i) CHECK(std::abs(a.f[i] - b.f[i]) < 1e-12);
    }
}

TEST_CASE("partial transpose is an exact involution") {
    Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = test::random_density(rng).matrix();
        const CMatrix pt = partial_transpose(rho);
        CHECK(max_abs_diff(partial_transpose(pt), rho) == 0.0);
        CHECK(trace(pt) == trace(rho));
        CHECK(is_hermitian(pt, 0.0));
    }
}

TEST_CASE("ppt_label on reference states") {
    const EntanglementLabel sep = ppt_label(pure_to_density(make_psi1(0.0, 0.0)));
    CHECK_FALSE(sep.entangled);
    CHECK(std::abs(sep.min_pt_eigenvalue) < 1e-12);

    const EntanglementLabel bell = ppt_label(pure_to_density(make_psi1(kPi / 2, 0.0)));
    CHECK(bell.entangled);
    CHECK(bell.min_pt_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));

    const DensityOperator noisy =
        depolarize(pure_to_density(make_psi1(kPi / 2, 0.0)), NoiseStrength(0.7));
    CHECK_FALSE(ppt_label(noisy).entangled);
}

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(pure_to_density(make_psi1(kPi / 2, 0.0))) ==
          doctest::Approx(1.0).epsilon(1e-9));

    CMatrix mixed = CMatrix::identity(4);
    mixed *= Complex(0.25);
    CHECK(concurrence(DensityOperator(mixed)) == doctest::Approx(0.0).epsilon(1e-9));

    // dephased (c1, c2, c3, 0) keeps C = 2 (1-p)^2 |c2 c3|
    Rng rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        PureState psi{};
        psi.c[0] = rng.standard_normal_complex();
        psi.c[1] = rng.standard_normal_complex();
        psi.c[2] = rng.standard_normal_complex();
        double nrm = 0.0;
        for (const Complex& c : psi.c) nrm += std::norm(c);
        for (Complex& c : psi.c) c /= std::sqrt(nrm);

        const double p = rng.uniform();
        const DensityOperator noisy =
            dephase_global_closed_form(pure_to_density(psi), NoiseStrength(p));
        const double expected = 2.0 * (1 - p) * (1 - p) * std::abs(psi.c[1] * psi.c[2]);
        CHECK(std::abs(concurrence(noisy) - expected) < 1e-9);
    }
}

TEST_CASE("concurrence_pure closed form") {
    CHECK(concurrence_pure(make_psi1(0.0, 0.0)) == 0.0);
    CHECK(concurrence_pure(make_psi1(kPi / 2, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));

    const double h = 0.5;
    const PureState uniform{{h, h, h, h}};
    CHECK(concurrence_pure(uniform) < 1e-15);

    PureState unnormalized{{0.5, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(concurrence_pure(unnormalized), std::invalid_argument);
}

TEST_CASE("pure concurrence agrees with the eigenvalue route") {
    Rng rng(64);
    for (int trial = 0; trial < 2000; ++trial) {
        const PureState psi = test::random_pure(rng);
        CHECK(std::abs(concurrence_pure(psi) - concurrence(pure_to_density(psi))) < 1e-9);
    }
}

TEST_CASE("PPT and concurrence agree away from the boundary") {
    Rng rng(65);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const DensityOperator rho = test::random_density(rng);
        const double c = concurrence(rho);
        const double min_pt = ppt_label(rho).min_pt_eigenvalue;
        const bool borderline = std::abs(min_pt) <= 1e-8 && c <= 1e-8;
        if (borderline) continue;
        ++checked;
        CHECK((min_pt < -1e-8) == (c > 1e-8));
    }
    CHECK(checked > 1900);
}

TEST_CASE("concurrence is invariant under local unitaries") {
    Rng rng(66);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityOperator rho = test::random_density(rng);
        const CMatrix u = kron(random_haar_unitary(2, rng), random_haar_unitary(2, rng));
        const DensityOperator rotated(u * rho.matrix() * dagger(u));
        CHECK(std::abs(concurrence(rotated) - concurrence(rho)) < 1e-8);
    }
}

TEST_SUITE_END();

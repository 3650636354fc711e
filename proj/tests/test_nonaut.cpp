#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stabrad/eig.hpp"
#include "stabrad/expm.hpp"
#include "stabrad/nonaut.hpp"
#include "stabrad/radius.hpp"
#include "stabrad/transfer.hpp"

#include "helpers.hpp"

using namespace stabrad;
using std::numbers::pi;

TEST_CASE("constant family reduces to the matrix exponential") {
    auto fam = EvolutionFamily::constant(testutil::stephen1_A(), 1e-3);
    Matrix U = fam.propagate(1.0, 0.0);
    CHECK((U - expm(testutil::stephen1_A())).max_abs() < 1e-10);
    CHECK((fam.propagate(0.7, 0.7) - Matrix::identity(2)).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("Hale family: explicit solution through one period") {
    auto fam = EvolutionFamily::hale(1.5, 1e-3);
    Matrix x = fam.propagate(2 * pi, 0.0) * testutil::basis_col(2, 0);
    double target = std::exp(pi);  // x(t) = e^{(a-1)t} (cos t, -sin t)
    CHECK(std::abs(x(0, 0).real() - target) < 0.005 * target);
    CHECK(std::abs(x(1, 0)) < 0.005 * target);
}

TEST_CASE("Hale frozen-time spectra are constant despite instability") {
    auto fam = EvolutionFamily::hale(1.5, 1e-3);
    for (double t : {0.0, 0.4, 1.1, 2.9, 5.0}) {
        for (cd l : eigenvalues(fam.generator_at(t)))
            CHECK(std::abs(l.real() + 0.25) < 1e-10);
    }
}

TEST_CASE("cocycle defect at non-lattice splits shrinks faster than quadratically") {
    // Split inside a lattice cell (s = 1/3 is never on the step lattice);
    // splitting at lattice points is exact by associativity.  The partial
    // cells sample the generator at their own midpoints, which cancels the
    // h^2 term, so the single-split defect is third order.
    double prev = -1.0;
    for (double h : {4e-3, 2e-3, 1e-3}) {
        auto fam = EvolutionFamily::hale(1.5, h);
        Matrix whole = fam.propagate(2.0, 0.0);
        Matrix split = fam.propagate(2.0, 1.0 / 3.0) * fam.propagate(1.0 / 3.0, 0.0);
        double defect = (whole - split).max_abs();
        if (prev >= 0.0) CHECK(prev / defect > 5.0);
        prev = defect;
    }

    // Constant generators commute across the split, so the defect sits at
    // rounding level no matter where the interval is cut.
    auto cfam = EvolutionFamily::constant(testutil::stephen1_A(), 2e-3);
    Matrix whole = cfam.propagate(2.0, 0.0);
    Matrix split = cfam.propagate(2.0, 1.0 / 3.0) * cfam.propagate(1.0 / 3.0, 0.0);
    CHECK((whole - split).max_abs() < 1e-12);
}

TEST_CASE("datko test: stable, unstable, and autonomous embeddings") {
    auto scalar = TimeVaryingSystem::unstructured(
        EvolutionFamily::constant(Matrix(1, 1, {cd(-1.0)}), 1e-3), NormSpec::l2());
    auto r = datko_test(scalar, 1.0, 40.0);
    CHECK(r.verdict == DatkoVerdict::stable);
    CHECK(r.sup_integral == doctest::Approx(1.0).epsilon(1e-3));

    auto hale = TimeVaryingSystem::unstructured(EvolutionFamily::hale(1.5, 1e-3), NormSpec::l2());
    auto rh = datko_test(hale, 2.0, 40.0);
    CHECK(rh.verdict == DatkoVerdict::unstable);
    CHECK(std::abs(rh.growth_exponent - 0.5) < 0.05);

    auto stephen = TimeVaryingSystem::unstructured(
        EvolutionFamily::constant(testutil::stephen1_A(), 1e-3), NormSpec::l1());
    auto rs = datko_test(stephen, 1.0, 40.0);
    CHECK(rs.verdict == DatkoVerdict::stable);
    // The worst basis probe of the autonomous reduction is the io_norm_l1 witness integral.
    CHECK(rs.sup_integral == doctest::Approx(1.262434309).epsilon(1e-3));
}

TEST_CASE("perturbed family: zero and constant perturbations") {
    auto sys = TimeVaryingSystem::unstructured(
        EvolutionFamily::constant(testutil::stephen1_A(), 1e-3), NormSpec::l1());
    auto zero = perturbed_family(sys, [](double) { return Matrix::zeros(2, 2); });
    CHECK((zero.propagate(1.5, 0.0) - sys.family.propagate(1.5, 0.0)).max_abs() < 1e-12);

    Matrix d(2, 2, {0.1, 0.0, 0.0, -0.2});
    auto pert = perturbed_family(sys, [d](double) { return d; });
    CHECK((pert.propagate(1.0, 0.0) - expm(testutil::stephen1_A() + d)).max_abs() < 1e-9);
}

TEST_CASE("destabilizer flips the datko verdict, sub-radius perturbations do not") {
    auto lti = testutil::stephen1();
    auto sup = sup_transfer_real_axis(lti, 1e-9);
    auto pert = destabilizing_perturbation(lti, sup.argmax);
    auto sys = TimeVaryingSystem::unstructured(EvolutionFamily::constant(lti.A, 1e-3),
                                               NormSpec::l1());

    Matrix at_radius = pert.delta;
    auto flipped = TimeVaryingSystem::unstructured(
        perturbed_family(sys, [at_radius](double) { return at_radius; }), NormSpec::l1());
    CHECK(datko_test(flipped, 1.0, 40.0).verdict != DatkoVerdict::stable);

    // At 0.9x the radius the closed loop decays slowly (abscissa about
    // -0.11), so saturation needs a long horizon.
    Matrix below = pert.delta * cd(0.9);
    auto still = TimeVaryingSystem::unstructured(
        perturbed_family(sys, [below](double) { return below; }), NormSpec::l1());
    CHECK(datko_test(still, 1.0, 250.0).verdict == DatkoVerdict::stable);
}

TEST_CASE("mild solution residual is small for the perturbed family") {
    auto sys = TimeVaryingSystem::unstructured(EvolutionFamily::hale(0.5, 1e-3), NormSpec::l2());
    Matrix d(2, 2, {0.05, 0.02, 0.0, -0.1});
    auto delta = [d](double) { return d; };
    auto pert = perturbed_family(sys, delta);
    double res = mild_solution_residual(sys, delta, pert, 2.0, testutil::basis_col(2, 0));
    CHECK(res < 1e-4);
}

TEST_CASE("nonautonomous frequency response: autonomous identities") {
    auto sys = TimeVaryingSystem::unstructured(
        EvolutionFamily::constant(-Matrix::identity(2), 1e-3), NormSpec::l2());
    Matrix e1 = testutil::basis_col(2, 0);
    for (double t : {0.5, 1.0, 5.0}) {
        Matrix y = nonaut_freq_response(sys, 0.0, e1, t);
        CHECK(std::abs(y(0, 0) - cd(1.0 - std::exp(-t))) < 1e-6);
        CHECK(std::abs(y(1, 0)) < 1e-9);
    }

    // Zero input map gives zero output.
    auto zsys = sys;
    zsys.B = [](double) { return Matrix::zeros(2, 2); };
    CHECK(vec_pnorm(nonaut_freq_response(zsys, 1.0, e1, 2.0), 2.0) == doctest::Approx(0.0));
}

TEST_CASE("frequency response converges to the transfer value for large t") {
    auto lti = testutil::stephen1();
    auto sys = TimeVaryingSystem::unstructured(EvolutionFamily::constant(lti.A, 1e-3),
                                               NormSpec::l2());
    double omega = 1.0;
    Matrix e1 = testutil::basis_col(2, 0);
    // C(i omega - A)^{-1} B e1 = -(A - i omega)^{-1} e1.
    Matrix ref = resolvent_apply(lti.A, cd(0.0, omega), e1) * cd(-1.0);
    Matrix y = nonaut_freq_response(sys, omega, e1, 25.0);
    CHECK(vec_pnorm(y - ref, 2.0) < 1e-6);
}

TEST_CASE("exponential bound fit brackets the samples") {
    auto fam = EvolutionFamily::constant(testutil::stephen1_A(), 1e-3);
    auto [M, omega] = exponential_bound_fit(fam, 8.0);
    CHECK(std::abs(omega + 1.0) < 0.05);
    for (double t : {0.5, 2.0, 6.0}) {
        double n = induced_pnorm(fam.propagate(t, 0.0), NormSpec::l2(), NormSpec::l2());
        CHECK(n <= M * std::exp(omega * t) * (1.0 + 1e-6));
    }
}

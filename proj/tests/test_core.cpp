#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "radial_sw/core.hpp"
#include "radial_sw/plan.hpp"

using namespace rsw;

TEST(SurfaceArea, LowDimensions) {
  EXPECT_DOUBLE_EQ(surface_area(1), 2.0);
  EXPECT_DOUBLE_EQ(surface_area(2), 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(surface_area(3), 4.0 * std::numbers::pi);
}

TEST(SurfaceArea, MatchesHighPrecisionReference) {
  // 2 pi^{n/2} / Gamma(n/2) at 30 digits
  const double ref[] = {2.0, 6.2831853071795864769, 12.566370614359172954, 19.739208802178717238,
                        26.318945069571622984};
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(surface_area(n) / ref[n - 1], 1.0, 1e-15) << n;
}

TEST(SurfaceArea, GammaClosedFormUpToTen) {
  for (int n = 1; n <= 10; ++n) {
    const double g = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
    EXPECT_NEAR(surface_area(n) / g, 1.0, 1e-14) << n;
  }
}

TEST(SurfaceArea, RejectsNonPositiveDimension) {
  EXPECT_THROW(surface_area(0), DomainError);
  EXPECT_THROW(surface_area(-3), DomainError);
}

TEST(JumpBrackets, Examples) {
  auto j = jump_brackets(1, 1, 1, 1);
  EXPECT_EQ(j.rho, 0);
  EXPECT_EQ(j.rho_u, 0);
  EXPECT_EQ(j.rho_u2, 0);
  EXPECT_EQ(j.rho_u3, 0);

  j = jump_brackets(0, 5, 2, 1);
  EXPECT_EQ(j.rho, 2);
  EXPECT_EQ(j.rho_u, 2);
  EXPECT_EQ(j.rho_u2, 2);
  EXPECT_EQ(j.rho_u3, 2);

  j = jump_brackets(1, 1, 1, -1);
  EXPECT_EQ(j.rho, 0);
  EXPECT_EQ(j.rho_u, -2);
  EXPECT_EQ(j.rho_u2, 0);
  EXPECT_EQ(j.rho_u3, -2);
}

TEST(JumpBrackets, AntisymmetricUnderSwap) {
  const auto a = jump_brackets(0.3, -1.2, 2.5, 0.7);
  const auto b = jump_brackets(2.5, 0.7, 0.3, -1.2);
  EXPECT_DOUBLE_EQ(a.rho, -b.rho);
  EXPECT_DOUBLE_EQ(a.rho_u, -b.rho_u);
  EXPECT_DOUBLE_EQ(a.rho_u2, -b.rho_u2);
  EXPECT_DOUBLE_EQ(a.rho_u3, -b.rho_u3);
}

TEST(Influx, DefinitionOfKappas) {
  const Fluxes k = influx(OuterStates{1.0, 1.0, 1.0, -1.0}, 0.0);
  EXPECT_DOUBLE_EQ(k.kappa1, 2.0);  // 0 [rho] - [rho u]
  EXPECT_DOUBLE_EQ(k.kappa2, 0.0);
}

TEST(PseudoRiemannData, Validation) {
  PseudoRiemannData d{2, 1.0, 1.0, 0.0, 1.0, 0.0};
  EXPECT_NO_THROW(d.validate());
  d.R = 0.0;
  EXPECT_THROW(d.validate(), DomainError);
  d.R = 1.0;
  d.rho_l = -1.0;
  EXPECT_THROW(d.validate(), DomainError);
  d.rho_l = 1.0;
  d.n = 0;
  EXPECT_THROW(d.validate(), DomainError);
  d.n = 2;
  d.u_r = std::nan("");
  EXPECT_THROW(d.validate(), DomainError);
}

TEST(RegionProfile, PowerLawDensity) {
  const auto p = RegionProfile::power_law(3.0, 1.0);
  EXPECT_DOUBLE_EQ(p.density_at(2.0, 1), 3.0);
  EXPECT_DOUBLE_EQ(p.density_at(2.0, 3), 0.75);
  EXPECT_TRUE(std::isinf(p.density_at(0.0, 2)));
  EXPECT_EQ(RegionProfile::vacuum().density_at(0.5, 3), 0.0);
  EXPECT_TRUE(RegionProfile::vacuum().is_vacuum());
}

TEST(PiecewiseLinearLaw, RightContinuousWithJumps) {
  PiecewiseLinearLaw law;
  law.pieces = {{0.0, 0.0, 1.0}, {2.0, 5.0, 0.0}};
  EXPECT_EQ(law(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(law(1.0), 1.0);
  EXPECT_DOUBLE_EQ(law(2.0), 5.0);
  EXPECT_DOUBLE_EQ(law(9.0), 5.0);
}

TEST(Front, AbsorbedMotionKinematics) {
  Front f{FrontKind::ShadowWave, AbsorbedMotion{-1.0, 1.0, 0.0, 0.0}, SqrtMass{1.0, 1.0, 0.0}};
  EXPECT_DOUBLE_EQ(f.position(1.0), 1.0);
  EXPECT_DOUBLE_EQ(f.speed(1.0), 0.0);
  EXPECT_DOUBLE_EQ(f.acceleration(1.0), -0.5);
  EXPECT_DOUBLE_EQ(f.solid_angle_mass(1.0), 2.0);
  EXPECT_DOUBLE_EQ(f.lineal_mass(1.0, 2), 2.0);
  EXPECT_DOUBLE_EQ(f.lineal_mass(2.25, 2), 3.0 / 0.75);
}

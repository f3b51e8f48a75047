#include "hmortar/errors.hpp"
#include "hmortar/machine.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace hmortar;
using hmortar::testing::pi;

TEST_CASE("rotate_point basics") {
    const Eigen::Vector2d e1(1.0, 0.0);
    CHECK((rotate_point(e1, 0.0) - e1).norm() == doctest::Approx(0.0));
    const Eigen::Vector2d q = rotate_point(e1, pi / 2.0);
    CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.y() == doctest::Approx(1.0));
}

TEST_CASE("rotate_point is an isometry") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector2d p(dist(rng), dist(rng));
        const double alpha = 4.0 * pi * dist(rng);
        CHECK(rotate_point(p, alpha).norm() == doctest::Approx(p.norm()).epsilon(1e-15));
    }
}

TEST_CASE("default_config matches the reference machine") {
    const MachineConfig cfg = default_config();
    CHECK(cfg.r_rotor_in == doctest::Approx(0.016));
    CHECK(cfg.r_rotor_out == doctest::Approx(0.044));
    CHECK(cfg.r_stator_in == doctest::Approx(0.045));
    CHECK(cfg.r_stator_out == doctest::Approx(0.0675));
    CHECK(cfg.r_gamma == doctest::Approx(0.0445));
    CHECK(cfg.pole_pairs == 3);
    CHECK(cfg.slots == 36);
    CHECK(cfg.mu_r_iron == doctest::Approx(500.0));
    CHECK(cfg.mu_r_magnet == doctest::Approx(1.05));
    CHECK(cfg.b_remanence == doctest::Approx(0.94));
    CHECK(cfg.axial_length == doctest::Approx(0.1));
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation rejects bad radii ordering") {
    MachineConfig cfg = default_config();
    cfg.r_gamma = cfg.r_stator_in + 1e-3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config validation rejects resolution not divisible by symmetry") {
    MachineConfig cfg = default_config();
    cfg.angular_divisions_rotor = 2 * cfg.pole_pairs + 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("material_at region values") {
    const MachineConfig cfg = default_config();

    // rotor iron
    const Material iron = material_at({0.5 * (cfg.r_rotor_in + cfg.r_magnet_in()), 0.0}, cfg);
    CHECK(iron.region == RegionKind::RotorIron);
    CHECK(iron.nu == doctest::Approx(1.0 / (mu0 * 500.0)).epsilon(1e-14));
    CHECK(iron.m_perp.norm() == 0.0);
    CHECK(iron.current_density == 0.0);

    // air gap is vacuum
    const Material gap = material_at({cfg.r_gamma - 1e-4, 0.0}, cfg);
    CHECK(gap.region == RegionKind::AirGapRotor);
    CHECK(gap.nu == doctest::Approx(1.0 / mu0).epsilon(1e-14));

    // positive magnet at angle theta: M = B_rem/(mu0 mu_r) (cos, sin), M_perp rotated
    const double r_mag = 0.5 * (cfg.r_magnet_in() + cfg.r_rotor_out);
    const double theta = 0.1;
    const Material mag = material_at({r_mag * std::cos(theta), r_mag * std::sin(theta)}, cfg);
    CHECK(mag.region == RegionKind::MagnetPos);
    const double mmag = cfg.b_remanence / (mu0 * cfg.mu_r_magnet);
    CHECK(mag.m_perp.x() == doctest::Approx(mmag * std::sin(theta)).epsilon(1e-13));
    CHECK(mag.m_perp.y() == doctest::Approx(-mmag * std::cos(theta)).epsilon(1e-13));

    CHECK_THROWS_AS(material_at({2.0 * cfg.r_stator_out, 0.0}, cfg), DomainError);
    CHECK_THROWS_AS(material_at({0.5 * cfg.r_rotor_in, 0.0}, cfg), DomainError);
}

TEST_CASE("magnet pattern anti-periodicity and periodicity") {
    const MachineConfig cfg = default_config();
    const double r = 0.5 * (cfg.r_magnet_in() + cfg.r_rotor_out);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * pi);
    const double pole_pitch = pi / cfg.pole_pairs;
    for (int i = 0; i < 200; ++i) {
        const double theta = dist(rng);
        const Eigen::Vector2d p(r * std::cos(theta), r * std::sin(theta));
        const Material a = material_at(p, cfg);
        const Material b = material_at(rotate_point(p, pole_pitch), cfg);
        const Material c = material_at(rotate_point(p, 2.0 * pole_pitch), cfg);
        // half-pole rotation flips the magnet sign, full pole pitch restores it
        CHECK((a.m_perp + rotate_point(b.m_perp, -pole_pitch)).norm() <= 1e-10 * a.m_perp.norm() + 1e-30);
        CHECK((a.m_perp - rotate_point(c.m_perp, -2.0 * pole_pitch)).norm() <=
              1e-10 * a.m_perp.norm() + 1e-30);
    }
}

TEST_CASE("stator pattern invariant under slot pitch rotation") {
    MachineConfig cfg = default_config();
    cfg.current_density = {1.0e6};
    const double r = 0.5 * (cfg.r_stator_in + cfg.r_slot_out());
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * pi);
    const double slot_pitch = 2.0 * pi / cfg.slots;
    for (int i = 0; i < 200; ++i) {
        const double theta = dist(rng);
        const Eigen::Vector2d p(r * std::cos(theta), r * std::sin(theta));
        const Material a = material_at(p, cfg);
        const Material b = material_at(rotate_point(p, slot_pitch), cfg);
        CHECK(a.region == b.region);
        CHECK(a.nu == doctest::Approx(b.nu));
        CHECK(a.current_density == doctest::Approx(b.current_density));
    }
}

TEST_CASE("slot current pattern cycles") {
    MachineConfig cfg = default_config();
    cfg.current_density = {1.0, -2.0, 3.0};
    CHECK(slot_current(cfg, 0) == 1.0);
    CHECK(slot_current(cfg, 4) == -2.0);
    cfg.current_density.clear();
    CHECK(slot_current(cfg, 7) == 0.0);
}

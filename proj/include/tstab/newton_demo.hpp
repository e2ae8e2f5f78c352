#pragma once

// Two balls dropped from the same height in different gravitational fields,
// and the pseudo ball whose energy is the difference of theirs.

#include "tstab/common.hpp"

#include <limits>
#include <vector>

namespace tstab::newton {

struct Ball {
    double mass = 1.0;            // kg
    double gravity = 9.8;         // m/s², constant for this ball
    double initial_height = 8.0;  // m
};

/// Validates mass > 0, gravity > 0, initial_height ≥ 0.
void validate(const Ball& b);

struct BallState {
    double t = 0.0;
    double h = 0.0;
    double v = 0.0;  // downward positive
};

struct Energy {
    double ke = 0.0;
    double pe = 0.0;
    double total = 0.0;
};

/// sqrt(2·h₀/g): end of the closed-form validity window.
double impact_time(const Ball& b);

/// v = g·t, h = h₀ − g·t²/2. Throws ValidationError for t < 0 or t > impact.
BallState ball_state(const Ball& b, double t);

/// KE = m·v²/2, PE = m·g·h.
Energy ball_energy(const Ball& b, const BallState& s);

/// Componentwise difference e1 − e2.
Energy pseudo_ball(const Energy& e1, const Energy& e2);

struct EarthState {
    double mass = std::numeric_limits<double>::infinity();
    double h = 0.0;
    double v = 0.0;
    double force = 0.0;
};

/// Ball relative to Earth: h and v differences, F_ball − (m_ball/m_Earth)·F_Earth.
struct RelativeBallMotion {
    double h = 0.0;
    double v = 0.0;
    double force = 0.0;
};

RelativeBallMotion relative_to_earth(const Ball& b, const BallState& s, const EarthState& earth = {});

/// Default pair: 1 kg at 9.8 m/s² and 0.5 kg at 6 m/s², both from 8 m.
Ball demo_ball_1();
Ball demo_ball_2();

struct DemoRow {
    double t = 0.0;
    BallState ball1;
    BallState ball2;
    Energy e1;
    Energy e2;
    Energy e3;
};

/// Rows on t = 0, step, 2·step, … up to the earlier impact time.
std::vector<DemoRow> demo_rows(const Ball& b1, const Ball& b2, double step);

/// Least-squares fit of a free fall KE = a·t²/2, PE = c − a·t²/2 with
/// a = m·g², c = m·g·h₀ to given energy series.
struct FreeFallFit {
    double mg2 = 0.0;   // a
    double mgh0 = 0.0;  // c
    double residual = 0.0;  // RMS over both series, J
    /// Mass and gravity once h₀ is fixed; NaN when a ≤ 0 or c ≤ 0.
    double mass_for(double h0) const;
    double gravity_for(double h0) const;
};

FreeFallFit fit_free_fall(const std::vector<double>& t, const std::vector<double>& ke, const std::vector<double>& pe);

}  // namespace tstab::newton

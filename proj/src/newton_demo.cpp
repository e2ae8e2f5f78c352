#include "tstab/newton_demo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tstab::newton {

void validate(const Ball& b) {
    if (!(b.mass > 0.0)) throw ValidationError("ball: mass must be > 0");
    if (!(b.gravity > 0.0)) throw ValidationError("ball: gravity must be > 0");
    if (!(b.initial_height >= 0.0)) throw ValidationError("ball: initial height must be >= 0");
}

double impact_time(const Ball& b) {
    validate(b);
    return std::sqrt(2.0 * b.initial_height / b.gravity);
}

BallState ball_state(const Ball& b, double t) {
    const double t_end = impact_time(b);
    if (!(t >= 0.0)) throw ValidationError("ball_state: t must be >= 0");
    if (t > t_end * (1.0 + 1e-12)) {
        throw ValidationError("ball_state: t = " + std::to_string(t) + " s is past impact at " +
                              std::to_string(t_end) + " s");
    }
    return BallState{t, b.initial_height - 0.5 * b.gravity * t * t, b.gravity * t};
}

Energy ball_energy(const Ball& b, const BallState& s) {
    const double ke = 0.5 * b.mass * s.v * s.v;
    const double pe = b.mass * b.gravity * s.h;
    return Energy{ke, pe, ke + pe};
}

Energy pseudo_ball(const Energy& e1, const Energy& e2) {
    return Energy{e1.ke - e2.ke, e1.pe - e2.pe, e1.total - e2.total};
}

RelativeBallMotion relative_to_earth(const Ball& b, const BallState& s, const EarthState& earth) {
    // h and force are upward-positive, v downward-positive as in the closed form;
    // gravity is the only force on the ball, so PE = ∫[−F]dh = m·g·h.
    const double ratio = std::isinf(earth.mass) ? 0.0 : b.mass / earth.mass;
    return RelativeBallMotion{s.h - earth.h, s.v - earth.v, -b.mass * b.gravity - ratio * earth.force};
}

Ball demo_ball_1() { return Ball{1.0, 9.8, 8.0}; }
Ball demo_ball_2() { return Ball{0.5, 6.0, 8.0}; }

std::vector<DemoRow> demo_rows(const Ball& b1, const Ball& b2, double step) {
    if (!(step > 0.0)) throw ValidationError("demo_rows: step must be > 0");
    const double t_end = std::min(impact_time(b1), impact_time(b2));
    std::vector<DemoRow> rows;
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * step;
        if (t > t_end) break;
        DemoRow r;
        r.t = t;
        r.ball1 = ball_state(b1, t);
        r.ball2 = ball_state(b2, t);
        r.e1 = ball_energy(b1, r.ball1);
        r.e2 = ball_energy(b2, r.ball2);
        r.e3 = pseudo_ball(r.e1, r.e2);
        rows.push_back(r);
    }
    return rows;
}

double FreeFallFit::mass_for(double h0) const {
    if (!(mg2 > 0.0 && mgh0 > 0.0 && h0 > 0.0)) return std::nan("");
    const double g = gravity_for(h0);
    return mg2 / (g * g);
}

double FreeFallFit::gravity_for(double h0) const {
    if (!(mg2 > 0.0 && mgh0 > 0.0 && h0 > 0.0)) return std::nan("");
    // a/c = g/h₀
    return mg2 / mgh0 * h0;
}

FreeFallFit fit_free_fall(const std::vector<double>& t, const std::vector<double>& ke, const std::vector<double>& pe) {
    const auto n = static_cast<Index>(t.size());
    if (n == 0 || ke.size() != t.size() || pe.size() != t.size()) {
        throw ValidationError("fit_free_fall: series must be non-empty and of equal length");
    }
    Matrix a(2 * n, 2);
    Vector y(2 * n);
    for (Index k = 0; k < n; ++k) {
        const double half_t2 = 0.5 * t[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k)];
        a(k, 0) = half_t2;
        a(k, 1) = 0.0;
        y[k] = ke[static_cast<std::size_t>(k)];
        a(n + k, 0) = -half_t2;
        a(n + k, 1) = 1.0;
        y[n + k] = pe[static_cast<std::size_t>(k)];
    }
    const Vector x = a.colPivHouseholderQr().solve(y);
    FreeFallFit fit;
    fit.mg2 = x[0];
    fit.mgh0 = x[1];
    fit.residual = std::sqrt((a * x - y).squaredNorm() / static_cast<double>(2 * n));
    return fit;
}

}  // namespace tstab::newton

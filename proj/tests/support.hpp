#pragma once

#include "tstab/scenario.hpp"

#include <array>
#include <string>

namespace support {

inline std::string data(const std::string& name) { return std::string(TSTAB_DATA_DIR) + "/" + name; }

inline tstab::Matrix square(const std::array<double, 9>& a) {
    tstab::Matrix m(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = a[static_cast<std::size_t>(3 * r + c)];
    return m;
}

inline tstab::ReducedNetwork network(tstab::Matrix g, tstab::Matrix b) { return {std::move(g), std::move(b)}; }

/// Lossless two-machine system, coupling susceptance b12 per stage.
inline tstab::SystemModel two_machine(double m1, double m2, double pm, double pre, double fault, double post) {
    auto net = [](double b12) {
        tstab::Matrix b(2, 2);
        b << -b12, b12, b12, -b12;
        return tstab::ReducedNetwork{tstab::Matrix::Zero(2, 2), b};
    };
    tstab::SystemModel model;
    model.machines = {{0, m1, pm, 1.0}, {1, m2, -pm, 1.0}};
    model.pre_fault = net(pre);
    model.during_fault = net(fault);
    model.post_fault = net(post);
    return model;
}

}  // namespace support

#pragma once

// Frozen outputs of tests/oracles/freeze.py (numpy/scipy, independent of the
// library). Regenerate with: cd tests/oracles && PYTHONPATH=. python3 freeze.py

#include <array>

namespace oracle {

// WSCC 9-bus, Anderson-Fouad data, loads as constant admittance. Row-major 3×3.
inline constexpr std::array<double, 9> kPreG = {0.84548413527221811, 0.28711100502509757, 0.20959432291684074,
                                                0.28711100502509757, 0.41998702907036223, 0.21327061407885753,
                                                0.20959432291684083, 0.21327061407885756, 0.27699834053296241};
inline constexpr std::array<double, 9> kPreB = {-2.9882821682184026, 1.5129404041995869, 1.2256158561194104,
                                                1.5129404041995869,  -2.723866611137673, 1.0879296135909968,
                                                1.2256158561194106,  1.0879296135909968, -2.3681319257471682};
// Bolted fault at bus 7.
inline constexpr std::array<double, 9> kFaultG = {0.65677636673381146, 0, 0.070143830576312183, 0, 0, 0,
                                                  0.070143830576312183, 0, 0.17401996624825053};
inline constexpr std::array<double, 9> kFaultB = {-3.8159955625259823, 0, 0.6305588002937883, 0, -5.4854635216675804, 0,
                                                  0.6305588002937883,  0, -2.7959119780308774};
// Line 5-7 opened.
inline constexpr std::array<double, 9> kPostG = {1.1386111904408098, 0.12900209069156543, 0.18239107092818294,
                                                 0.12900209069156543, 0.37444659140500247, 0.19212546323144453,
                                                 0.18239107092818296, 0.19212546323144453, 0.26912011966874916};
inline constexpr std::array<double, 9> kPostB = {-2.2965837880097233, 0.70633063895157089, 1.0637047979733409,
                                                 0.70633063895157122, -2.0150767812920307, 1.2066852589178356,
                                                 1.0637047979733412,  1.2066852589178356, -2.3516452895365147};

// COI-referenced equilibria, rad.
inline constexpr std::array<double, 3> kPreSep = {-0.076328111231151949, 0.22840532772818301, 0.11382141263922295};
inline constexpr std::array<double, 3> kPostSep = {-0.18323634131969771, 0.54508131967096862, 0.280128459436364};

// DOP853 (rtol 1e-12) synchronous-frame state (δ0, δ1, δ2, ω0, ω1, ω2) for
// the bundled fault cleared at 0.1 s.
inline constexpr std::array<double, 6> kStateT05 = {0.33692236279019205, 1.9342043165236833, 1.4799383798165384,
                                                    2.6738430397353037,  1.7347434700565632, 2.1446051730161728};
inline constexpr std::array<double, 6> kStateT1 = {2.3125155168140648, 2.2938026717802322, 2.3353889479498391,
                                                   3.5361586057952383, 3.1405117887835625, 3.7448048859867722};
inline constexpr std::array<double, 6> kStateT2 = {6.8246127454051546, 7.0300095267507716, 6.9455389712844369,
                                                   6.6774730845299484, 3.0378514683783067, 5.2748779296686852};

// Adaptive-quadrature energies (KE, PE) at t = 0.1, 0.5, 1.0 s. PE is zero at
// the post-fault equilibrium, reached along a straight path to δ(0).
struct EnergyPoint {
    double t;
    std::array<double, 3> imke;
    std::array<double, 3> impe;
    double emke;  // group {1, 2}
    double empe;
};
inline constexpr std::array<EnergyPoint, 3> kEnergies = {{
    {0.1,
     {0.084894735669455337, 0.21783087830072301, 0.018492283697903095},
     {0.0052925092389459992, 0.014025618517708484, 0.00088581993417714399},
     0.21327434125674011,
     0.013295953072123626},
    {0.5,
     {0.0033187244358222306, 0.0085349049337247167, 0.00071468614308238315},
     {0.086868520472750857, 0.22332159188446554, 0.018663417489288649},
     0.0083373693584311813,
     0.21823292497055499},
    {1.0,
     {0.00020814187701660077, 0.0019398528649072861, 0.00056603768425883062},
     {0.089979103031377475, 0.22991664395347433, 0.018812065947980572},
     0.00052289840304701443,
     0.22604739592579848},
}};

// Continuous-time critical clearing time bracket for the bundled fault, 2 s horizon.
inline constexpr double kWsccCctLow = 0.16203002929687504;
inline constexpr double kWsccCctHigh = 0.16203613281250004;

// Bundled two-machine lossless case: equal-area critical clearing time.
inline constexpr double kSmibCct = 0.29051067241767797;
inline constexpr double kSmibCriticalAngle = 1.2554813539532017;

}  // namespace oracle

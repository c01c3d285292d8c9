#pragma once

#include <array>

// Printed reference values at alpha = 0.5, beta = 0.1625.
namespace ref {

struct TunedRow {
  double inv_sigma, c_l1, r_sc, c2, c1, xi, delta, delta_over_sigma;
};
inline constexpr std::array<TunedRow, 11> kTuned = {{
    {6, 3.0661, 1.5568, 0.9533, 0.9524, 0.2846, 0.2204, 1.3224},
    {7, 2.8162, 2.0436, 0.9715, 0.9715, 0.1496, 0.1687, 1.1809},
    {8, 2.7160, 2.1558, 0.9820, 0.9820, 0.1039, 0.1342, 1.0736},
    {9, 2.6615, 2.2272, 0.9875, 0.9875, 0.0792, 0.1120, 1.0080},
    {10, 2.6269, 2.2777, 0.9907, 0.9907, 0.0636, 0.0963, 0.9630},
    {11, 2.6033, 2.3155, 0.9928, 0.9928, 0.0530, 0.0846, 0.9306},
    {12, 2.5857, 2.3448, 0.9943, 0.9943, 0.0452, 0.0754, 0.9048},
    {13, 2.5728, 2.3684, 0.9954, 0.9954, 0.0394, 0.0681, 0.8853},
    {14, 2.5624, 2.3877, 0.9961, 0.9961, 0.0348, 0.0620, 0.8680},
    {15, 2.5541, 2.4039, 0.9967, 0.9967, 0.0312, 0.0570, 0.8550},
    {100, 2.4871, 2.5699, 0.9999, 0.9999, 0.0026, 0.0072, 0.7171},
}};

struct Limit {
  double c_l1, r_sc, delta_over_sigma;
};
inline constexpr Limit kLimit = {2.4807, 2.5981, 0.6939};

struct FixedRow {
  double inv_sigma, c_l1, c2, c1, xi, delta;
};
inline constexpr std::array<FixedRow, 10> kFixedRsc = {{
    {6, 5.05, 0.7957, 0.8511, 0.9392, 0.3059},
    {7, 4.54, 0.8464, 0.9009, 0.8016, 0.2114},
    {8, 4.37, 0.8723, 0.9218, 0.7500, 0.1693},
    {9, 4.27, 0.8901, 0.9349, 0.7171, 0.1426},
    {10, 4.22, 0.9026, 0.9436, 0.7007, 0.1239},
    {11, 4.17, 0.9130, 0.9505, 0.6828, 0.1095},
    {12, 4.14, 0.9210, 0.9557, 0.6719, 0.0984},
    {13, 4.12, 0.9275, 0.9598, 0.6646, 0.0894},
    {14, 4.10, 0.9332, 0.9632, 0.6570, 0.0819},
    {15, 4.09, 0.9378, 0.9660, 0.6533, 0.0757},
}};

struct SimRow {
  double inv_sigma, gamma1, c2, c2_sim, c1, c1_sim, xi, xi_sim, delta, delta_mean, delta_median;
};
inline constexpr std::array<SimRow, 9> kSimulated = {{
    {7, 3.5060, 0.8273, 0.8025, 0.8884, 0.8473, 0.9720, 1.0353, 0.2247, 0.2997, 0.2341},
    {8, 3.0630, 0.8670, 0.8579, 0.9186, 0.9081, 0.7998, 0.8360, 0.1725, 0.1907, 0.1722},
    {9, 3.0664, 0.8815, 0.8788, 0.9299, 0.9271, 0.8064, 0.8257, 0.1475, 0.1517, 0.1474},
    {10, 3.0703, 0.8931, 0.8899, 0.9382, 0.9364, 0.8102, 0.8344, 0.1292, 0.1302, 0.1289},
    {11, 3.0741, 0.9026, 0.8993, 0.9447, 0.9428, 0.8125, 0.8331, 0.1152, 0.1163, 0.1152},
    {12, 3.0775, 0.9106, 0.9065, 0.9499, 0.9478, 0.8141, 0.8370, 0.1040, 0.1046, 0.1053},
    {13, 3.0805, 0.9173, 0.9147, 0.9542, 0.9528, 0.8151, 0.8310, 0.0948, 0.0955, 0.0946},
    {14, 3.0832, 0.9231, 0.9201, 0.9578, 0.9562, 0.8158, 0.8319, 0.0872, 0.0879, 0.0874},
    {15, 3.0856, 0.9282, 0.9269, 0.9608, 0.9602, 0.8162, 0.8228, 0.0807, 0.0806, 0.0804},
}};

struct IntervalRow {
  double inv_sigma, delta_lb, delta, delta_ub;
};
inline constexpr std::array<IntervalRow, 8> kIntervals = {{
    {8, 0.1495, 0.1725, 0.2015},
    {9, 0.1311, 0.1475, 0.1669},
    {10, 0.1170, 0.1292, 0.1432},
    {11, 0.1056, 0.1152, 0.1260},
    {12, 0.0962, 0.1040, 0.1130},
    {13, 0.0884, 0.0948, 0.1014},
    {14, 0.0818, 0.0872, 0.0925},
    {15, 0.0761, 0.0807, 0.0856},
}};

inline constexpr double kAlphaW = 0.45;
inline constexpr double kIdealMlRatio = 0.6939;
inline constexpr double kLimitRatioPractical = 1.1178;

}  // namespace ref

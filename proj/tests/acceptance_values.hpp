#pragma once

// Frozen output of oracles/constraint_oracle.py (independent float arithmetic).

#include <array>

namespace biphasic::testing {

struct OracleRow {
  const char* name;
  double lhs;
  double rhs;
};

struct OracleDerived {
  double alpha1, alpha2, a0, alpha, alpha3, alpha4;
  double alpha_star, alpha3_star, alpha4_star, alpha5_star;
};

inline constexpr std::array<OracleRow, 12> kReferenceCk3Rows{{
    {"assu.1", 2298.8505747126437, 979.9999999999999},
    {"assu.2", 31034.4827586207, 0.04000000000000001},
    {"P4.1", 0.0013333333333333333, 0.009708129562778499},
    {"P4.2", 4.597701149425288, 1.9785834332743455},
    {"P4.3", 62068.9655172414, 0.08000000000000002},
    {"Rassup1", 2298.8505747126437, 3432.342123239134},
    {"Nasum1.1", 0.0026666666666666666, -15.027681937150541},
    {"Nasum1.2", 31034.4827586207, 0.04000000000000001},
    {"Nasum2", 9.195402298850576, -15.009931329727406},
    {"P14.1", 0.0013333333333333333, 0.009708129562778499},
    {"P14.2", 4.597701149425288, 1.9697081295627783},
    {"P14.3", 31034.4827586207, 9.748129562778496},
}};
inline constexpr OracleDerived kReferenceCk3Derived{3448.2758620689656, 31034.4827586207, 2.0, 0.6666666666666666, 0.6666666666666666, 6.472086375185665, 0.6666666666666666, 0.6666666666666666, 6.472086375185664, -17.941503214509165};

inline constexpr std::array<OracleRow, 12> kReferenceCk2Rows{{
    {"assu.1", 3448.2758620689656, 979.9999999999999},
    {"assu.2", 31034.4827586207, 0.04000000000000001},
    {"P4.1", 0.002, 0.006472086375185665},
    {"P4.2", 6.8965517241379315, 1.9723889555162302},
    {"P4.3", 62068.9655172414, 0.08000000000000002},
    {"Rassup1", 3448.2758620689656, 2288.2280821594227},
    {"Nasum1.1", 0.004, 14.594535767093134},
    {"Nasum1.2", 31034.4827586207, 0.04000000000000001},
    {"Nasum2", 13.793103448275863, 14.606369505375223},
    {"P14.1", 0.002, 0.006472086375185665},
    {"P14.2", 6.8965517241379315, 1.9664720863751854},
    {"P14.3", 31034.4827586207, 6.512086375185665},
}};
inline constexpr OracleDerived kReferenceCk2Derived{3448.2758620689656, 31034.4827586207, 2.0, 1.0, 1.0, 6.472086375185665, 1.0, 1.0, 6.472086375185664, 11.68718657610969};

inline constexpr std::array<OracleRow, 12> kUniqueCk3Rows{{
    {"assu.1", 2298.8505747126437, 9.799999999999999},
    {"assu.2", 31034.4827586207, 0.04000000000000001},
    {"P4.1", 0.13333333333333333, 0.009708129562778499},
    {"P4.2", 459.7701149425288, 1.9785834332743455},
    {"P4.3", 62068.9655172414, 0.08000000000000002},
    {"Rassup1", 2298.8505747126437, 0.34323421232391343},
    {"Nasum1.1", 0.26666666666666666, 0.04838605000325913},
    {"Nasum1.2", 31034.4827586207, 0.04000000000000001},
    {"Nasum2", 919.5402298850576, 0.0661366574263937},
    {"P14.1", 0.13333333333333333, 0.009708129562778499},
    {"P14.2", 459.7701149425288, 1.9697081295627783},
    {"P14.3", 31034.4827586207, 0.13708129562778498},
}};
inline constexpr OracleDerived kUniqueCk3Derived{3448.2758620689656, 31034.4827586207, 2.0, 0.6666666666666666, 0.6666666666666666, 6.472086375185665, 0.6666666666666666, 0.6666666666666666, 6.472086375185664, 0.0025740695371421905};

inline constexpr std::array<OracleRow, 12> kUniqueCk2Rows{{
    {"assu.1", 3448.2758620689656, 9.799999999999999},
    {"assu.2", 31034.4827586207, 0.04000000000000001},
    {"P4.1", 0.2, 0.006472086375185665},
    {"P4.2", 689.6551724137931, 1.9723889555162302},
    {"P4.3", 62068.9655172414, 0.08000000000000002},
    {"Rassup1", 3448.2758620689656, 0.22882280821594228},
    {"Nasum1.1", 0.4, 0.04189966229273921},
    {"Nasum1.2", 31034.4827586207, 0.04000000000000001},
    {"Nasum2", 1379.3103448275863, 0.05373340057482892},
    {"P14.1", 0.2, 0.006472086375185665},
    {"P14.2", 689.6551724137931, 1.9664720863751854},
    {"P14.3", 31034.4827586207, 0.10472086375185666},
}};
inline constexpr OracleDerived kUniqueCk2Derived{3448.2758620689656, 31034.4827586207, 2.0, 1.0, 1.0, 6.472086375185665, 1.0, 1.0, 6.472086375185664, 0.001143936003716869};

}  // namespace biphasic::testing

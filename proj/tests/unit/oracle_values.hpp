#pragma once

// Generated by tests/oracles/derived_values.py (mpmath, 30 digits). Do not edit by hand.

namespace oracle {

inline constexpr double kPoissonTransformA2Xi1 = 0.13533528323661269189;
inline constexpr double kPoissonH2Alpha1 = 2.0037418731973212882;
inline constexpr double kMqFloorK1 = 0.043180013246241670506;
inline constexpr double kMqU2At1 = 0.3062413018273432577;
inline constexpr double kMqU2At2 = 0.03923197291387902786;
inline constexpr double kMqU2At3 = 0.0028381188370028246381;
inline constexpr double kMqH2Bound = 2.0024945821315475255;
inline constexpr double kMqCertifiedH2K1 = 2.0013670068933016833;
inline constexpr double kMqBandSupJ2K1 = 0.000014521876213523397123;
inline constexpr double kMqPublishedJ2K1 = 0.000013982479046814963955;
inline constexpr double kMqCertifiedH2K2 = 2.0000009327670327101;
inline constexpr double kMqBandSupJ2K2 = 0.00000000021088488876089663782;
inline constexpr double kMqPublishedJ2K2 = 0.00000000019550972029461950297;
inline constexpr double kMqCertifiedH2K3 = 2.0000000006370071608;
inline constexpr double kMqBandSupJ2K3 = 0.0000000000000030624442498883924734;
inline constexpr double kMqPublishedJ2K3 = 0.0000000000000027337105674681715217;
inline constexpr double kMqSpatial0K1 = 1.0382794271800315522;
inline constexpr double kMqSpatialK1At0p5 = 0.85819638907799349949;
inline constexpr double kMqSpatialK1At1 = 0.51090204370343254627;
inline constexpr double kMqSpatialK1At2p5 = 0.072273331344729865392;
inline constexpr double kMqClosedRatio = -1.2533141373155002512;
inline constexpr double kMqSpatial13K2 = 0.40150715033882192408;
inline constexpr double kK1At1Integral = 0.60190723019723457474;
inline constexpr double kK1At1em5 = 99999.999939355715096;
inline constexpr double kK1At0p5 = 1.6564411200033008937;
inline constexpr double kK1At1p99 = 0.14171756162240130536;
inline constexpr double kK1At2p01 = 0.13804087731920766671;
inline constexpr double kK1At7 = 0.00045418248688489697124;
inline constexpr double kK1At24p9 = 0.0000000000039123824362567576415;
inline constexpr double kK1At25p1 = 0.0000000000031900323186042706601;
inline constexpr double kK1At50 = 0.000000000000000000000034441022267175556126;
inline constexpr double kSinc3Lower = 0.65001992468957211708;
inline constexpr double kSinc3Middle = 1.0;
inline constexpr double kSinc3Upper = 1.3499800753104278829;
inline constexpr double kSincPoissonBoundA1 = 0.39856960540187077497;
inline constexpr double kSincPoissonBoundA2 = 0.28209429989289139425;
inline constexpr double kSincPoissonBoundA4 = 0.19947114019950339918;
inline constexpr double kSincPoissonBoundA8 = 0.14104739588693907174;
inline constexpr double kSincPoissonBoundA16 = 0.099735570100358169485;
inline constexpr double kSincPoissonBoundA1Quad = 0.39856960540187077497;
inline constexpr double kSincMqBoundK1 = 0.33860178230101030171;
inline constexpr double kSincMqBoundK2 = 0.23425917257457058113;
inline constexpr double kSincMqBoundK3 = 0.19000655586581881743;
inline constexpr double kEdgeBoundA1 = 0.42575726291164798089;
inline constexpr double kEdgeDecay8 = 0.74186100587897529003;
inline constexpr double kSincDecay8 = 0.35388397402938802834;
inline constexpr double kTriangleAt0 = 1.2533141373155002512;
inline constexpr double kTriangleAt0p7 = 0.82297354082298151856;
inline constexpr double kTriangleNorm = 1.4472025091165353187;
inline constexpr double kPoisson5Lower = 0.25288476389071364932;
inline constexpr double kPoissonN8A0 = 2.1769381864179499117;
inline constexpr double kPoissonN8A1 = -0.98142089897517925865;

}  // namespace oracle
